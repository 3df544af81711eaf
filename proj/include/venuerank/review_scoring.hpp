// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "venuerank/core_model.hpp"

namespace venuerank {

/// Lowercases, splits on any non-alphanumeric byte, drops tokens shorter than
/// two characters and the fixed 50-word stopword list. Bytes >= 0x80 are kept
/// verbatim so multi-byte UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

/// The frozen stopword list (50 common English function words).
const std::vector<std::string>& stopwords();

/// Term index and document frequencies over a review corpus. Iteration order
/// is the term order of the underlying map; indices are dense 0..V-1 assigned
/// in sorted-term order.
struct Vocabulary {
  struct Entry {
    std::size_t index = 0;
    std::int64_t document_frequency = 0;
  };

  std::map<std::string, Entry> terms;
  std::int64_t document_count = 0;

  std::size_t size() const { return terms.size(); }
  const Entry* find(const std::string& term) const;
};

/// One entry per distinct term; terms occurring in fewer than two documents
/// are pruned once the corpus reaches ten documents. Throws kEmptyCorpus when
/// every document is empty (or the corpus itself is).
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& corpus);

/// Sparse vector with strictly increasing indices; unit L2 norm unless empty.
struct SparseVector {
  std::vector<std::pair<std::size_t, double>> entries;

  bool empty() const { return entries.empty(); }
  double norm() const;
};

/// Raw term counts weighted by idf = ln((1 + N) / (1 + df)) + 1, then
/// L2-normalized. Out-of-vocabulary terms are ignored.
SparseVector tfidf_vector(const std::vector<std::string>& tokens,
                          const Vocabulary& vocab);

struct LabeledDocument {
  SparseVector vector;
  int label = 1;  // +1 or -1
};

inline constexpr int kPositiveReviewStarsMin = 4;
inline constexpr int kNegativeReviewStarsMax = 2;

/// Review documents for one user's like/dislike classifier: high-star reviews
/// of liked venues against low-star reviews of disliked venues; 3-star
/// reviews never train. When the user has no negative documents a single
/// all-zero negative is synthesized and the set is flagged negative_free.
struct TrainingSet {
  std::vector<LabeledDocument> documents;
  Vocabulary vocabulary;
  std::int64_t n_pos = 0;
  std::int64_t n_neg = 0;
  bool negative_free = false;
};

TrainingSet assemble_training_set(const UserHistory& user,
                                  const Catalog& catalog, Source source);

struct SvmConfig {
  double lambda_reg = 1e-4;
  int epochs = 50;
  std::uint64_t seed = 42;
};

struct SvmTrainingMeta {
  int epochs = 0;
  double lambda_reg = 0.0;
  std::uint64_t seed = 0;
  std::int64_t n_pos = 0;
  std::int64_t n_neg = 0;
  bool negative_free = false;
};

struct SvmModel {
  std::vector<double> weights;
  double bias = 0.0;
  SvmTrainingMeta meta;

  double raw_score(const SparseVector& x) const;
};

/// L2-regularized hinge loss minimized by epoch-based subgradient descent
/// with the 1/(lambda*t) step schedule; each epoch accumulates the averaged
/// subgradient over the seeded shuffle order and the iterate with the lowest
/// objective (the zero model included) is returned, so the final objective
/// never exceeds the initial one.
SvmModel train_linear_svm(const std::vector<LabeledDocument>& data,
                          std::size_t dimension, const SvmConfig& config);

/// Objective value used by the trainer; exposed for tests.
double svm_objective(const SvmModel& model,
                     const std::vector<LabeledDocument>& data,
                     double lambda_reg);

struct ReviewScore {
  double value = 0.0;
  bool missing = false;
};

/// Concatenates the venue's reviews from one source into a single document,
/// vectorizes it with the user's vocabulary and returns w.x + bias. A venue
/// without reviews from the source scores zero and is flagged missing.
ReviewScore decision_score(const SvmModel& model, const Vocabulary& vocab,
                           const VenueRecord& venue, Source source);

}  // namespace venuerank
