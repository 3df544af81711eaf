// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#include "venuerank/review_scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "venuerank/rng.hpp"

namespace venuerank {

namespace {

// Frozen list; changing it changes every trained model.
const std::vector<std::string> kStopwords = {
    "about", "above", "after", "again", "all",   "and",   "any",  "are",
    "because", "been", "before", "being", "but",  "can",  "could", "did",
    "does",  "doing", "down",  "for",   "from",  "had",   "has",  "have",
    "her",   "here",  "his",   "how",   "into",  "its",   "just", "more",
    "most",  "not",   "now",   "off",   "once",  "only",  "our",  "out",
    "over",  "she",   "some",  "such",  "that",  "the",   "their", "then",
    "they",  "this",
};

bool is_stopword(const std::string& token) {
  return std::binary_search(kStopwords.begin(), kStopwords.end(), token);
}

}  // namespace

const std::vector<std::string>& stopwords() { return kStopwords; }

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  const auto flush = [&] {
    if (current.size() >= 2 && !is_stopword(current)) {
      tokens.push_back(current);
    }
    current.clear();
  };
  for (const char c : text) {
    const unsigned char byte = static_cast<unsigned char>(c);
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || byte >= 0x80) {
      current.push_back(c);
    } else if (c >= 'A' && c <= 'Z') {
      current.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

const Vocabulary::Entry* Vocabulary::find(const std::string& term) const {
  const auto it = terms.find(term);
  return it == terms.end() ? nullptr : &it->second;
}

Vocabulary build_vocabulary(
    const std::vector<std::vector<std::string>>& corpus) {
  constexpr std::size_t kMinDfCorpusSize = 10;
  constexpr std::int64_t kMinDf = 2;

  std::map<std::string, std::int64_t> document_frequency;
  bool any_token = false;
  for (const std::vector<std::string>& doc : corpus) {
    std::set<std::string> distinct(doc.begin(), doc.end());
    if (!distinct.empty()) any_token = true;
    for (const std::string& term : distinct) ++document_frequency[term];
  }
  if (corpus.empty() || !any_token) {
    throw Error(ErrorCode::kEmptyCorpus, "no tokens in any document");
  }

  Vocabulary vocab;
  vocab.document_count = static_cast<std::int64_t>(corpus.size());
  const bool prune = corpus.size() >= kMinDfCorpusSize;
  std::size_t index = 0;
  for (const auto& [term, df] : document_frequency) {
    if (prune && df < kMinDf) continue;
    vocab.terms.emplace(term, Vocabulary::Entry{index++, df});
  }
  return vocab;
}

double SparseVector::norm() const {
  double sum = 0.0;
  for (const auto& [index, value] : entries) sum += value * value;
  return std::sqrt(sum);
}

SparseVector tfidf_vector(const std::vector<std::string>& tokens,
                          const Vocabulary& vocab) {
  std::map<std::size_t, double> weights;
  std::map<std::string, std::int64_t> term_counts;
  for (const std::string& token : tokens) ++term_counts[token];

  for (const auto& [term, tf] : term_counts) {
    const Vocabulary::Entry* entry = vocab.find(term);
    if (entry == nullptr) continue;
    const double idf =
        std::log(static_cast<double>(1 + vocab.document_count) /
                 static_cast<double>(1 + entry->document_frequency)) +
        1.0;
    weights[entry->index] = static_cast<double>(tf) * idf;
  }

  SparseVector vec;
  vec.entries.assign(weights.begin(), weights.end());
  double norm = vec.norm();
  if (norm > 0.0) {
    for (auto& [index, value] : vec.entries) value /= norm;
  }
  return vec;
}

TrainingSet assemble_training_set(const UserHistory& user,
                                  const Catalog& catalog, Source source) {
  if (source == Source::kFoursquare) {
    throw Error(ErrorCode::kInvalidArgument,
                "Foursquare carries no review corpus");
  }

  std::vector<std::vector<std::string>> positive_docs;
  std::vector<std::vector<std::string>> negative_docs;
  for (const RatedVenue& rated : user.rated) {
    const Polarity pol = polarity(rated.rating);
    if (pol == Polarity::kNeutral) continue;
    const VenueRecord* venue = catalog.find(rated.venue_id);
    if (venue == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "history venue '" + rated.venue_id + "' not in catalog");
    }
    for (const Review& review : venue->reviews) {
      if (review.source != source) continue;
      if (pol == Polarity::kPositive &&
          review.stars >= kPositiveReviewStarsMin) {
        positive_docs.push_back(tokenize(review.text));
      } else if (pol == Polarity::kNegative &&
                 review.stars <= kNegativeReviewStarsMax) {
        negative_docs.push_back(tokenize(review.text));
      }
    }
  }

  if (positive_docs.empty()) {
    throw Error(ErrorCode::kTrainingUnderflow,
                "user '" + user.user_id + "' has no positive " +
                    std::string(to_string(source)) + " review documents");
  }

  TrainingSet set;
  set.n_pos = static_cast<std::int64_t>(positive_docs.size());
  set.n_neg = static_cast<std::int64_t>(negative_docs.size());
  set.negative_free = negative_docs.empty();

  std::vector<std::vector<std::string>> corpus;
  corpus.reserve(positive_docs.size() + negative_docs.size());
  corpus.insert(corpus.end(), positive_docs.begin(), positive_docs.end());
  corpus.insert(corpus.end(), negative_docs.begin(), negative_docs.end());
  set.vocabulary = build_vocabulary(corpus);

  for (const auto& doc : positive_docs) {
    set.documents.push_back({tfidf_vector(doc, set.vocabulary), +1});
  }
  for (const auto& doc : negative_docs) {
    set.documents.push_back({tfidf_vector(doc, set.vocabulary), -1});
  }
  if (set.negative_free) {
    // Synthetic all-zero counterexample keeps the trainer two-class and
    // orients the weights toward the positive vocabulary.
    set.documents.push_back({SparseVector{}, -1});
  }
  return set;
}

double SvmModel::raw_score(const SparseVector& x) const {
  double score = bias;
  for (const auto& [index, value] : x.entries) {
    score += weights[index] * value;
  }
  return score;
}

double svm_objective(const SvmModel& model,
                     const std::vector<LabeledDocument>& data,
                     double lambda_reg) {
  double reg = model.bias * model.bias;
  for (const double w : model.weights) reg += w * w;
  double hinge = 0.0;
  for (const LabeledDocument& doc : data) {
    hinge += std::max(0.0, 1.0 - doc.label * model.raw_score(doc.vector));
  }
  return 0.5 * lambda_reg * reg + hinge / static_cast<double>(data.size());
}

SvmModel train_linear_svm(const std::vector<LabeledDocument>& data,
                          std::size_t dimension, const SvmConfig& config) {
  if (data.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty training set");
  }
  if (!(config.lambda_reg > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda_reg must be positive");
  }
  if (config.epochs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "epochs must be >= 1");
  }
  bool has_pos = false, has_neg = false;
  for (const LabeledDocument& doc : data) {
    if (doc.label == 1) {
      has_pos = true;
    } else if (doc.label == -1) {
      has_neg = true;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "labels must be +1 or -1");
    }
    for (const auto& [index, value] : doc.vector.entries) {
      if (index >= dimension) {
        throw Error(ErrorCode::kInvalidArgument,
                    "document index exceeds dimension");
      }
      (void)value;
    }
  }
  if (!has_pos || !has_neg) {
    throw Error(ErrorCode::kInvalidArgument,
                "training set must contain both labels");
  }

  const double lambda = config.lambda_reg;
  const double radius = 1.0 / std::sqrt(lambda);
  const std::size_t n = data.size();

  SvmModel model;
  model.weights.assign(dimension, 0.0);
  model.bias = 0.0;
  model.meta = {config.epochs, lambda, config.seed,
                static_cast<std::int64_t>(std::count_if(
                    data.begin(), data.end(),
                    [](const LabeledDocument& d) { return d.label == 1; })),
                static_cast<std::int64_t>(std::count_if(
                    data.begin(), data.end(),
                    [](const LabeledDocument& d) { return d.label == -1; })),
                false};

  std::vector<double> w(dimension, 0.0);
  double b = 0.0;
  std::vector<double> grad(dimension, 0.0);

  double best_objective = svm_objective(model, data, lambda);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(config.seed);

  for (int t = 1; t <= config.epochs; ++t) {
    rng.shuffle(order);

    for (std::size_t j = 0; j < dimension; ++j) grad[j] = lambda * w[j];
    double grad_b = lambda * b;
    for (const std::size_t i : order) {
      const LabeledDocument& doc = data[i];
      double score = b;
      for (const auto& [index, value] : doc.vector.entries) {
        score += w[index] * value;
      }
      if (doc.label * score < 1.0) {
        const double scale = static_cast<double>(doc.label) /
                             static_cast<double>(n);
        for (const auto& [index, value] : doc.vector.entries) {
          grad[index] -= scale * value;
        }
        grad_b -= scale;
      }
    }

    const double eta = 1.0 / (lambda * static_cast<double>(t));
    for (std::size_t j = 0; j < dimension; ++j) w[j] -= eta * grad[j];
    b -= eta * grad_b;

    double norm_sq = b * b;
    for (const double v : w) norm_sq += v * v;
    const double norm = std::sqrt(norm_sq);
    if (norm > radius) {
      const double shrink = radius / norm;
      for (double& v : w) v *= shrink;
      b *= shrink;
    }

    SvmModel candidate;
    candidate.weights = w;
    candidate.bias = b;
    const double objective = svm_objective(candidate, data, lambda);
    if (!std::isfinite(objective)) {
      throw Error(ErrorCode::kTrainingDiverged,
                  "non-finite objective at epoch " + std::to_string(t));
    }
    if (objective < best_objective) {
      best_objective = objective;
      model.weights = w;
      model.bias = b;
    }
  }

  return model;
}

ReviewScore decision_score(const SvmModel& model, const Vocabulary& vocab,
                           const VenueRecord& venue, Source source) {
  std::string joined;
  bool any = false;
  for (const Review& review : venue.reviews) {
    if (review.source != source) continue;
    if (any) joined.push_back(' ');
    joined += review.text;
    any = true;
  }
  if (!any) return {0.0, true};
  const SparseVector x = tfidf_vector(tokenize(joined), vocab);
  return {model.raw_score(x), false};
}

}  // namespace venuerank
