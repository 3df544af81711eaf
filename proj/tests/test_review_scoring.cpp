// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "venuerank/review_scoring.hpp"
#include "venuerank/rng.hpp"

using namespace venuerank;
using testutil::make_history;
using testutil::make_review;
using testutil::make_venue;

TEST_CASE("tokenize applies the fixed rules") {
  CHECK(tokenize("Great pizza, GREAT service!") ==
        std::vector<std::string>{"great", "pizza", "great", "service"});
  CHECK(tokenize("a I ok") == std::vector<std::string>{"ok"});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("   \t\n ") == std::vector<std::string>{});
  CHECK(tokenize("the food, THE place") ==
        std::vector<std::string>{"food", "place"});
  CHECK(tokenize("wi-fi 4k room101") ==
        std::vector<std::string>{"wi", "fi", "4k", "room101"});
}

TEST_CASE("stopword list is frozen at 50 sorted words") {
  const auto& words = stopwords();
  CHECK(words.size() == 50);
  CHECK(std::is_sorted(words.begin(), words.end()));
}

TEST_CASE("vocabulary document frequencies") {
  SUBCASE("small corpus keeps every term") {
    const Vocabulary vocab = build_vocabulary({{"aa", "bb"}, {"bb", "cc"}});
    CHECK(vocab.size() == 3);
    CHECK(vocab.document_count == 2);
    CHECK(vocab.find("bb")->document_frequency == 2);
    CHECK(vocab.find("aa")->document_frequency == 1);
    CHECK(vocab.find("cc")->document_frequency == 1);
    // Dense indices in sorted-term order.
    CHECK(vocab.find("aa")->index == 0);
    CHECK(vocab.find("bb")->index == 1);
    CHECK(vocab.find("cc")->index == 2);
  }

  SUBCASE("min-df pruning kicks in at ten documents") {
    std::vector<std::vector<std::string>> corpus(10, {"common"});
    corpus[0].push_back("rare");
    const Vocabulary vocab = build_vocabulary(corpus);
    CHECK(vocab.find("common") != nullptr);
    CHECK(vocab.find("rare") == nullptr);
  }

  SUBCASE("df counts documents, not occurrences") {
    const Vocabulary vocab = build_vocabulary({{"xx", "xx", "xx"}, {"yy"}});
    CHECK(vocab.find("xx")->document_frequency == 1);
  }

  SUBCASE("all-empty corpus is an error") {
    try {
      (void)build_vocabulary({{}, {}});
      FAIL("expected EmptyCorpus");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kEmptyCorpus);
    }
  }
}

TEST_CASE("tfidf vectors") {
  const Vocabulary vocab =
      build_vocabulary({{"apple", "apple", "banana"}, {"banana", "cherry"},
                        {"apple"}});

  SUBCASE("single repeated term normalizes to weight 1") {
    for (int k = 1; k <= 4; ++k) {
      const SparseVector vec =
          tfidf_vector(std::vector<std::string>(k, "cherry"), vocab);
      REQUIRE(vec.entries.size() == 1);
      CHECK(vec.entries[0].second == doctest::Approx(1.0).epsilon(1e-15));
    }
  }

  SUBCASE("equal tf and df give equal weights") {
    const SparseVector vec = tfidf_vector({"apple", "banana"}, vocab);
    REQUIRE(vec.entries.size() == 2);
    CHECK(vec.entries[0].second == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(vec.entries[1].second == doctest::Approx(1.0 / std::sqrt(2.0)));
  }

  SUBCASE("hand-computed weights for the 3-doc corpus") {
    // d2 = [banana, cherry]: df(banana)=2, df(cherry)=1, N=3.
    const double idf_banana = std::log(4.0 / 3.0) + 1.0;
    const double idf_cherry = std::log(4.0 / 2.0) + 1.0;
    const double norm =
        std::sqrt(idf_banana * idf_banana + idf_cherry * idf_cherry);
    const SparseVector vec = tfidf_vector({"banana", "cherry"}, vocab);
    REQUIRE(vec.entries.size() == 2);
    CHECK(vec.entries[0].second ==
          doctest::Approx(idf_banana / norm).epsilon(1e-12));
    CHECK(vec.entries[1].second ==
          doctest::Approx(idf_cherry / norm).epsilon(1e-12));
  }

  SUBCASE("out-of-vocabulary tokens vanish") {
    CHECK(tfidf_vector({"zzz"}, vocab).empty());
  }

  SUBCASE("unit norm or empty") {
    Rng rng(3);
    const std::vector<std::string> pool = {"apple", "banana", "cherry", "zzz"};
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::string> tokens;
      const int n = static_cast<int>(rng.below(6));
      for (int i = 0; i < n; ++i) tokens.push_back(pool[rng.below(4)]);
      const SparseVector vec = tfidf_vector(tokens, vocab);
      if (!vec.empty()) {
        REQUIRE(vec.norm() == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 1; i < vec.entries.size(); ++i) {
          REQUIRE(vec.entries[i - 1].first < vec.entries[i].first);
        }
      }
    }
  }
}

namespace {

Catalog review_catalog() {
  VenueRecord v1 = make_venue("v1");
  v1.reviews = {
      make_review("v1", Source::kYelp, 5, "lovely crust wonderful oven"),
      make_review("v1", Source::kYelp, 5, "wonderful slices lovely basil"),
      make_review("v1", Source::kYelp, 2, "soggy crust sadly"),
  };
  VenueRecord v2 = make_venue("v2");
  v2.reviews = {
      make_review("v2", Source::kYelp, 1, "burnt rude noisy dreadful"),
      make_review("v2", Source::kYelp, 4, "pretty nice actually"),
  };
  VenueRecord v3 = make_venue("v3");
  v3.reviews = {
      make_review("v3", Source::kYelp, 3, "average middling visit"),
  };
  return Catalog{{v1, v2, v3}};
}

}  // namespace

TEST_CASE("training set assembly") {
  const Catalog catalog = review_catalog();

  SUBCASE("high-star reviews of liked venues vs low-star of disliked") {
    const UserHistory user = make_history("u", {{"v1", 4}, {"v2", 0}});
    const TrainingSet set = assemble_training_set(user, catalog, Source::kYelp);
    CHECK(set.n_pos == 2);  // the 2-star review of v1 is discarded
    CHECK(set.n_neg == 1);  // the 4-star review of v2 is discarded too
    CHECK_FALSE(set.negative_free);
    CHECK(set.documents.size() == 3);
  }

  SUBCASE("only mid reviews on liked venues underflows") {
    const UserHistory user = make_history("u", {{"v3", 4}});
    try {
      (void)assemble_training_set(user, catalog, Source::kYelp);
      FAIL("expected TrainingUnderflow");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kTrainingUnderflow);
    }
  }

  SUBCASE("neutral venues contribute nothing") {
    const UserHistory user = make_history("u", {{"v1", 4}, {"v2", 2}});
    const TrainingSet set = assemble_training_set(user, catalog, Source::kYelp);
    CHECK(set.n_neg == 0);
    CHECK(set.negative_free);
    // One synthetic all-zero negative keeps the trainer two-class.
    CHECK(set.documents.size() == 3);
    CHECK(set.documents.back().label == -1);
    CHECK(set.documents.back().vector.empty());
  }

  SUBCASE("no review source for Foursquare") {
    const UserHistory user = make_history("u", {{"v1", 4}});
    CHECK_THROWS_AS(
        (void)assemble_training_set(user, catalog, Source::kFoursquare), Error);
  }
}

namespace {

std::vector<LabeledDocument> two_point_fixture() {
  LabeledDocument pos{{{{0, 1.0}}}, +1};
  LabeledDocument neg{{{{0, -1.0}}}, -1};
  return {pos, neg};
}

std::vector<LabeledDocument> blob_fixture(int per_class, double center,
                                          std::uint64_t seed) {
  Rng rng(seed);
  std::vector<LabeledDocument> docs;
  for (int i = 0; i < per_class; ++i) {
    const double jx = (rng.real01() - 0.5), jy = (rng.real01() - 0.5);
    docs.push_back({{{{0, center + jx}, {1, center + jy}}}, +1});
  }
  for (int i = 0; i < per_class; ++i) {
    const double jx = (rng.real01() - 0.5), jy = (rng.real01() - 0.5);
    docs.push_back({{{{0, -center + jx}, {1, -center + jy}}}, -1});
  }
  return docs;
}

int training_accuracy_count(const SvmModel& model,
                            const std::vector<LabeledDocument>& docs) {
  int correct = 0;
  for (const LabeledDocument& doc : docs) {
    const double score = model.raw_score(doc.vector);
    if ((score > 0 && doc.label == 1) || (score < 0 && doc.label == -1)) {
      ++correct;
    }
  }
  return correct;
}

}  // namespace

TEST_CASE("two symmetric points recover the analytic boundary") {
  const auto docs = two_point_fixture();
  const SvmModel model = train_linear_svm(docs, 1, SvmConfig{});
  REQUIRE(model.weights.size() == 1);
  CHECK(model.weights[0] > 0.0);
  CHECK(std::abs(model.bias) <= 1e-3 * std::abs(model.weights[0]));
  // Decision boundary -bias/w sits at the origin.
  CHECK(std::abs(model.bias / model.weights[0]) <= 1e-3);
}

TEST_CASE("separable blobs reach full training accuracy at defaults") {
  const auto docs = blob_fixture(10, 2.0, 99);
  const SvmModel model =
      train_linear_svm(docs, 2, SvmConfig{});
  CHECK(training_accuracy_count(model, docs) == static_cast<int>(docs.size()));

  SUBCASE("decision sign equals the class on every training document") {
    for (const LabeledDocument& doc : docs) {
      REQUIRE(model.raw_score(doc.vector) * doc.label > 0.0);
    }
  }
}

TEST_CASE("90/10 imbalanced separable fixture has full minority recall") {
  Rng rng(4242);
  std::vector<LabeledDocument> docs;
  for (int i = 0; i < 45; ++i) {
    docs.push_back({{{{0, 2.0 + rng.real01()}, {1, 2.0 + rng.real01()}}}, +1});
  }
  for (int i = 0; i < 5; ++i) {
    docs.push_back({{{{0, -2.0 - rng.real01()}, {1, -2.0 - rng.real01()}}}, -1});
  }
  const SvmModel model = train_linear_svm(docs, 2, SvmConfig{});
  int minority_hits = 0;
  for (const LabeledDocument& doc : docs) {
    if (doc.label == -1 && model.raw_score(doc.vector) < 0.0) ++minority_hits;
  }
  CHECK(minority_hits == 5);
  CHECK(training_accuracy_count(model, docs) == 50);
}

TEST_CASE("training is deterministic and never worse than the zero model") {
  const auto docs = blob_fixture(8, 1.5, 123);
  const SvmConfig config{1e-3, 80, 7};
  const SvmModel a = train_linear_svm(docs, 2, config);
  const SvmModel b = train_linear_svm(docs, 2, config);
  CHECK(a.weights == b.weights);
  CHECK(a.bias == b.bias);

  SvmModel zero;
  zero.weights.assign(2, 0.0);
  CHECK(svm_objective(a, docs, config.lambda_reg) <=
        svm_objective(zero, docs, config.lambda_reg));
}

TEST_CASE("objective never exceeds the zero model on random sets") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<LabeledDocument> docs;
    const int n = 4 + static_cast<int>(rng.below(10));
    for (int i = 0; i < n; ++i) {
      docs.push_back({{{{0, rng.real01() * 4 - 2}, {1, rng.real01() * 4 - 2}}},
                      i % 2 == 0 ? +1 : -1});
    }
    const SvmConfig config{1e-2, 30, rng.next_u64()};
    const SvmModel model = train_linear_svm(docs, 2, config);
    SvmModel zero;
    zero.weights.assign(2, 0.0);
    REQUIRE(svm_objective(model, docs, config.lambda_reg) <=
            svm_objective(zero, docs, config.lambda_reg) + 1e-15);
  }
}

TEST_CASE("duplicating every training point keeps the direction") {
  const auto docs = blob_fixture(10, 2.0, 5);
  std::vector<LabeledDocument> doubled = docs;
  doubled.insert(doubled.end(), docs.begin(), docs.end());

  const SvmConfig config{1e-3, 60, 17};
  const SvmModel a = train_linear_svm(docs, 2, config);
  const SvmModel b = train_linear_svm(doubled, 2, config);

  const double na = std::hypot(a.weights[0], a.weights[1]);
  const double nb = std::hypot(b.weights[0], b.weights[1]);
  REQUIRE(na > 0.0);
  REQUIRE(nb > 0.0);
  CHECK(a.weights[0] / na == doctest::Approx(b.weights[0] / nb).epsilon(1e-6));
  CHECK(a.weights[1] / na == doctest::Approx(b.weights[1] / nb).epsilon(1e-6));
  CHECK(a.bias / na == doctest::Approx(b.bias / nb).epsilon(1e-6));
}

TEST_CASE("degenerate inputs are rejected") {
  const auto docs = two_point_fixture();
  SUBCASE("single-class data") {
    std::vector<LabeledDocument> all_pos = {docs[0], docs[0]};
    CHECK_THROWS_AS((void)train_linear_svm(all_pos, 1, SvmConfig{}), Error);
  }
  SUBCASE("bad lambda") {
    CHECK_THROWS_AS((void)train_linear_svm(docs, 1, SvmConfig{0.0, 10, 1}),
                    Error);
  }
}

TEST_CASE("decision scores") {
  const Catalog catalog = review_catalog();
  const UserHistory user = make_history("u", {{"v1", 4}, {"v2", 0}});
  const TrainingSet set = assemble_training_set(user, catalog, Source::kYelp);
  const SvmModel model =
      train_linear_svm(set.documents, set.vocabulary.size(), SvmConfig{});

  SUBCASE("venue with no reviews from the source is missing") {
    const VenueRecord bare = make_venue("x");
    const ReviewScore score =
        decision_score(model, set.vocabulary, bare, Source::kYelp);
    CHECK(score.value == 0.0);
    CHECK(score.missing);
  }

  SUBCASE("all-OOV text scores exactly the bias") {
    VenueRecord oov = make_venue("x");
    oov.reviews = {make_review("x", Source::kYelp, 3, "zzzq qqqz")};
    const ReviewScore score =
        decision_score(model, set.vocabulary, oov, Source::kYelp);
    CHECK_FALSE(score.missing);
    CHECK(score.value == model.bias);
  }

  SUBCASE("a venue that reads like the liked training text scores positive") {
    VenueRecord candidate = make_venue("x");
    candidate.reviews = {
        make_review("x", Source::kYelp, 5, "lovely crust wonderful oven")};
    const ReviewScore score =
        decision_score(model, set.vocabulary, candidate, Source::kYelp);
    CHECK_FALSE(score.missing);
    CHECK(score.value > 0.0);
  }
}

TEST_CASE("negative-free users still orient toward their vocabulary") {
  const Catalog catalog = review_catalog();
  const UserHistory user = make_history("u", {{"v1", 4}});
  const TrainingSet set = assemble_training_set(user, catalog, Source::kYelp);
  REQUIRE(set.negative_free);
  const SvmModel model =
      train_linear_svm(set.documents, set.vocabulary.size(), SvmConfig{});

  VenueRecord candidate = make_venue("x");
  candidate.reviews = {
      make_review("x", Source::kYelp, 5, "wonderful lovely crust")};
  const ReviewScore positive_like =
      decision_score(model, set.vocabulary, candidate, Source::kYelp);
  CHECK(positive_like.value > model.bias);  // positive vocabulary lifts it
}
