// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "venuerank/core_model.hpp"

namespace venuerank {

/// Fixed feature layout fed to the ranker.
enum FeatureIndex : int {
  kFeatCatFoursquare = 0,
  kFeatCatYelp = 1,
  kFeatTag = 2,
  kFeatReviewYelp = 3,
  kFeatReviewTripAdvisor = 4,
  kFeatSeason = 5,
  kFeatTravel = 6,
};

inline constexpr int kFeatureCount = 7;

struct FeatureVector {
  std::array<double, kFeatureCount> values{};
  std::array<bool, kFeatureCount> missing{};
};

/// One (query, venue) pair; labels are 0..4 graded relevance and are only
/// meaningful on training data.
struct RankingInstance {
  std::string query_id;
  std::string venue_id;
  FeatureVector features;
  int label = 0;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;

  bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
  std::vector<TreeNode> nodes;

  double predict(const std::array<double, kFeatureCount>& x) const;
  std::size_t leaf_count() const;
  /// Index of the leaf an input falls into; exposed for structure tests.
  int leaf_index(const std::array<double, kFeatureCount>& x) const;
};

struct TreeConfig {
  int max_leaves = 8;
  int min_instances_per_leaf = 5;
};

struct LambdaMartConfig {
  int n_trees = 100;
  double learning_rate = 0.1;
  TreeConfig tree;
  int ndcg_cutoff = 5;
  std::uint64_t seed = 42;  // echoed into the model; training is deterministic
};

struct LambdaMartModel {
  std::vector<RegressionTree> trees;
  double learning_rate = 0.1;
  LambdaMartConfig config;
  /// Mean training NDCG@cutoff; entry 0 is the untrained baseline, then one
  /// entry per boosting round.
  std::vector<double> training_ndcg;

  double predict(const FeatureVector& features) const;
};

struct LambdaResult {
  std::vector<double> lambdas;
  std::vector<double> hessians;
};

/// Pairwise lambda gradients for one query: every pair with unequal labels
/// contributes sigmoid(score_low - score_high) weighted by the exact
/// |delta NDCG@cutoff| of swapping the two ranked positions. Positions come
/// from a stable descending sort of the current scores.
LambdaResult lambda_gradients(std::span<const RankingInstance> query_instances,
                              std::span<const double> current_scores,
                              int ndcg_cutoff = 5);

/// Greedy best-first regression tree maximizing variance reduction on the
/// targets; leaf values are the Newton step sum(lambda) / sum(hessian + eps).
/// Ties break toward the lowest feature index, then the lowest threshold.
RegressionTree fit_regression_tree(std::span<const RankingInstance> instances,
                                   std::span<const double> targets,
                                   std::span<const double> hessians,
                                   const TreeConfig& config);

/// Boosted ensemble over query-grouped instances (instances of one query must
/// be contiguous). Throws kUntrainableDataset when no query has two distinct
/// labels; stops early only on an all-zero lambda round.
LambdaMartModel train_lambdamart(const std::vector<RankingInstance>& instances,
                                 const LambdaMartConfig& config);

struct RankedItem {
  std::string venue_id;
  double score = 0.0;
};

/// Descending ensemble score, ties broken by ascending venue id.
std::vector<RankedItem> rank_candidates(
    const LambdaMartModel& model, std::span<const RankingInstance> instances);

struct FoldMetrics {
  double p_at_k = 0.0;
  double mrr = 0.0;
  std::size_t query_count = 0;
};

struct CrossValidationResult {
  std::vector<FoldMetrics> folds;
  double mean_p_at_k = 0.0;
  double mean_mrr = 0.0;
  int metric_cutoff = 5;
};

/// Query-level k-fold cross-validation: query ids are shuffled by the seed
/// and dealt round-robin into folds; each fold's model trains only on the
/// other folds. Metrics use the instances' labels as judgments.
CrossValidationResult cross_validate(
    const std::vector<RankingInstance>& instances, int k_folds,
    std::uint64_t seed, const LambdaMartConfig& config, int metric_cutoff = 5);

}  // namespace venuerank
