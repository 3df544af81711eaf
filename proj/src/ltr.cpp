// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#include "venuerank/ltr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "venuerank/evaluation.hpp"
#include "venuerank/rng.hpp"

namespace venuerank {

double RegressionTree::predict(
    const std::array<double, kFeatureCount>& x) const {
  return nodes[static_cast<std::size_t>(leaf_index(x))].value;
}

int RegressionTree::leaf_index(
    const std::array<double, kFeatureCount>& x) const {
  int node = 0;
  while (!nodes[static_cast<std::size_t>(node)].is_leaf()) {
    const TreeNode& n = nodes[static_cast<std::size_t>(node)];
    node = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                 : n.right;
  }
  return node;
}

std::size_t RegressionTree::leaf_count() const {
  std::size_t count = 0;
  for (const TreeNode& node : nodes) {
    if (node.is_leaf()) ++count;
  }
  return count;
}

double LambdaMartModel::predict(const FeatureVector& features) const {
  double score = 0.0;
  for (const RegressionTree& tree : trees) {
    score += learning_rate * tree.predict(features.values);
  }
  return score;
}

namespace {

/// Stable ranking of instances by descending score (ties keep input order).
std::vector<std::size_t> ranked_order(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&scores](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b];
                   });
  return order;
}

double position_discount(std::size_t position, int cutoff) {
  if (position >= static_cast<std::size_t>(cutoff)) return 0.0;
  return 1.0 / std::log2(static_cast<double>(position) + 2.0);
}

}  // namespace

LambdaResult lambda_gradients(std::span<const RankingInstance> query_instances,
                              std::span<const double> current_scores,
                              int ndcg_cutoff) {
  const std::size_t n = query_instances.size();
  if (current_scores.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "scores do not match instance count");
  }
  LambdaResult result;
  result.lambdas.assign(n, 0.0);
  result.hessians.assign(n, 0.0);
  if (n < 2) return result;

  const std::vector<std::size_t> order = ranked_order(current_scores);
  std::vector<std::size_t> position(n);
  for (std::size_t rank = 0; rank < n; ++rank) position[order[rank]] = rank;

  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = query_instances[i].label;
  std::vector<int> ideal = labels;
  std::sort(ideal.begin(), ideal.end(), std::greater<int>());
  const double idcg = dcg_at_k(ideal, ndcg_cutoff);
  if (idcg <= 0.0) return result;

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (labels[a] == labels[b]) continue;
      const std::size_t high = labels[a] > labels[b] ? a : b;
      const std::size_t low = labels[a] > labels[b] ? b : a;

      const double gain_gap =
          std::exp2(labels[high]) - std::exp2(labels[low]);
      const double discount_gap =
          std::abs(position_discount(position[high], ndcg_cutoff) -
                   position_discount(position[low], ndcg_cutoff));
      const double delta_ndcg = gain_gap * discount_gap / idcg;
      if (delta_ndcg == 0.0) continue;

      const double rho =
          1.0 / (1.0 + std::exp(current_scores[high] - current_scores[low]));
      const double lambda = rho * delta_ndcg;
      result.lambdas[high] += lambda;
      result.lambdas[low] -= lambda;
      const double hessian = rho * (1.0 - rho) * delta_ndcg;
      result.hessians[high] += hessian;
      result.hessians[low] += hessian;
    }
  }
  return result;
}

namespace {

constexpr double kNewtonEpsilon = 1e-9;
constexpr double kMinSplitGain = 1e-12;

struct NodeSplit {
  bool valid = false;
  double gain = 0.0;
  int feature = 0;
  double threshold = 0.0;
};

double leaf_value(const std::vector<int>& indices,
                  std::span<const double> targets,
                  std::span<const double> hessians) {
  double lambda_sum = 0.0;
  double hessian_sum = 0.0;
  for (const int i : indices) {
    lambda_sum += targets[static_cast<std::size_t>(i)];
    hessian_sum += hessians[static_cast<std::size_t>(i)] + kNewtonEpsilon;
  }
  return lambda_sum / hessian_sum;
}

/// Best variance-reduction split of one node, or invalid when no split keeps
/// both children at min_instances_per_leaf.
NodeSplit best_split(const std::vector<int>& indices,
                     std::span<const RankingInstance> instances,
                     std::span<const double> targets,
                     const TreeConfig& config) {
  NodeSplit best;
  const std::size_t n = indices.size();
  if (n < 2 * static_cast<std::size_t>(config.min_instances_per_leaf)) {
    return best;
  }

  double total_sum = 0.0;
  for (const int i : indices) total_sum += targets[static_cast<std::size_t>(i)];

  std::vector<std::pair<double, int>> values(n);
  for (int feature = 0; feature < kFeatureCount; ++feature) {
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = {instances[static_cast<std::size_t>(indices[i])]
                       .features.values[static_cast<std::size_t>(feature)],
                   indices[i]};
    }
    std::sort(values.begin(), values.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    double left_sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      left_sum += targets[static_cast<std::size_t>(values[i].second)];
      const std::size_t left_count = i + 1;
      const std::size_t right_count = n - left_count;
      if (left_count < static_cast<std::size_t>(config.min_instances_per_leaf))
        continue;
      if (right_count < static_cast<std::size_t>(config.min_instances_per_leaf))
        break;
      if (values[i].first == values[i + 1].first) continue;  // same value

      const double right_sum = total_sum - left_sum;
      const double gain =
          left_sum * left_sum / static_cast<double>(left_count) +
          right_sum * right_sum / static_cast<double>(right_count) -
          total_sum * total_sum / static_cast<double>(n);
      if (gain <= kMinSplitGain) continue;

      double threshold = (values[i].first + values[i + 1].first) / 2.0;
      if (threshold >= values[i + 1].first) threshold = values[i].first;

      const bool better =
          !best.valid || gain > best.gain ||
          (gain == best.gain &&
           (feature < best.feature ||
            (feature == best.feature && threshold < best.threshold)));
      if (better) {
        best = {true, gain, feature, threshold};
      }
    }
  }
  return best;
}

}  // namespace

RegressionTree fit_regression_tree(std::span<const RankingInstance> instances,
                                   std::span<const double> targets,
                                   std::span<const double> hessians,
                                   const TreeConfig& config) {
  if (instances.size() != targets.size() ||
      instances.size() != hessians.size()) {
    throw Error(ErrorCode::kInvalidArgument, "mismatched tree inputs");
  }
  if (config.max_leaves < 2 || config.min_instances_per_leaf < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bad tree config");
  }
  if (instances.size() <
      2 * static_cast<std::size_t>(config.min_instances_per_leaf)) {
    throw Error(ErrorCode::kInvalidArgument,
                "too few instances for the leaf minimum");
  }

  RegressionTree tree;
  std::vector<std::vector<int>> node_instances;

  std::vector<int> root(instances.size());
  std::iota(root.begin(), root.end(), 0);
  tree.nodes.push_back(
      TreeNode{-1, 0.0, -1, -1, leaf_value(root, targets, hessians)});
  node_instances.push_back(std::move(root));

  struct Candidate {
    int node;
    NodeSplit split;
  };
  std::vector<Candidate> candidates;
  candidates.push_back(
      {0, best_split(node_instances[0], instances, targets, config)});

  std::size_t leaves = 1;
  while (leaves < static_cast<std::size_t>(config.max_leaves)) {
    // Pick the splittable leaf with the highest gain; earlier-created leaves
    // win exact ties, keeping growth deterministic.
    int chosen = -1;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (!candidates[c].split.valid) continue;
      if (chosen < 0 ||
          candidates[c].split.gain >
              candidates[static_cast<std::size_t>(chosen)].split.gain) {
        chosen = static_cast<int>(c);
      }
    }
    if (chosen < 0) break;

    const Candidate picked = candidates[static_cast<std::size_t>(chosen)];
    candidates.erase(candidates.begin() + chosen);

    std::vector<int> left_idx, right_idx;
    for (const int i : node_instances[static_cast<std::size_t>(picked.node)]) {
      const double v =
          instances[static_cast<std::size_t>(i)]
              .features.values[static_cast<std::size_t>(picked.split.feature)];
      (v <= picked.split.threshold ? left_idx : right_idx).push_back(i);
    }

    const int left_node = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(
        TreeNode{-1, 0.0, -1, -1, leaf_value(left_idx, targets, hessians)});
    node_instances.push_back(left_idx);
    const int right_node = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(
        TreeNode{-1, 0.0, -1, -1, leaf_value(right_idx, targets, hessians)});
    node_instances.push_back(right_idx);

    TreeNode& parent = tree.nodes[static_cast<std::size_t>(picked.node)];
    parent.feature = picked.split.feature;
    parent.threshold = picked.split.threshold;
    parent.left = left_node;
    parent.right = right_node;
    parent.value = 0.0;
    node_instances[static_cast<std::size_t>(picked.node)].clear();

    candidates.push_back(
        {left_node,
         best_split(node_instances[static_cast<std::size_t>(left_node)],
                    instances, targets, config)});
    candidates.push_back(
        {right_node,
         best_split(node_instances[static_cast<std::size_t>(right_node)],
                    instances, targets, config)});
    ++leaves;
  }

  return tree;
}

namespace {

struct QueryGroup {
  std::size_t begin;
  std::size_t end;
};

std::vector<QueryGroup> group_queries(
    const std::vector<RankingInstance>& instances) {
  std::vector<QueryGroup> groups;
  std::set<std::string> seen;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= instances.size(); ++i) {
    if (i == instances.size() ||
        (i > begin && instances[i].query_id != instances[begin].query_id)) {
      if (!seen.insert(instances[begin].query_id).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "query '" + instances[begin].query_id +
                        "' is not contiguous");
      }
      groups.push_back({begin, i});
      begin = i;
    }
  }
  return groups;
}

double mean_training_ndcg(const std::vector<RankingInstance>& instances,
                          const std::vector<QueryGroup>& groups,
                          const std::vector<double>& scores, int cutoff) {
  double sum = 0.0;
  for (const QueryGroup& group : groups) {
    const std::size_t n = group.end - group.begin;
    const std::span<const double> group_scores(scores.data() + group.begin, n);
    const std::vector<std::size_t> order = ranked_order(group_scores);
    std::vector<int> grades(n);
    for (std::size_t rank = 0; rank < n; ++rank) {
      grades[rank] = instances[group.begin + order[rank]].label;
    }
    sum += ndcg_at_k(grades, cutoff);
  }
  return sum / static_cast<double>(groups.size());
}

}  // namespace

LambdaMartModel train_lambdamart(const std::vector<RankingInstance>& instances,
                                 const LambdaMartConfig& config) {
  if (config.n_trees < 1 || config.learning_rate <= 0.0 ||
      config.ndcg_cutoff < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bad ranker config");
  }
  const std::vector<QueryGroup> groups = group_queries(instances);
  if (groups.size() < 2) {
    throw Error(ErrorCode::kUntrainableDataset,
                "need at least two training queries");
  }
  bool any_distinct = false;
  for (const QueryGroup& group : groups) {
    for (std::size_t i = group.begin + 1; i < group.end; ++i) {
      if (instances[i].label != instances[group.begin].label) {
        any_distinct = true;
        break;
      }
    }
    if (any_distinct) break;
  }
  if (!any_distinct) {
    throw Error(ErrorCode::kUntrainableDataset,
                "no query carries two distinct labels");
  }

  LambdaMartModel model;
  model.learning_rate = config.learning_rate;
  model.config = config;

  std::vector<double> scores(instances.size(), 0.0);
  std::vector<double> lambdas(instances.size(), 0.0);
  std::vector<double> hessians(instances.size(), 0.0);

  model.training_ndcg.push_back(
      mean_training_ndcg(instances, groups, scores, config.ndcg_cutoff));

  for (int round = 0; round < config.n_trees; ++round) {
    double max_abs_lambda = 0.0;
    for (const QueryGroup& group : groups) {
      const std::size_t n = group.end - group.begin;
      const LambdaResult grad = lambda_gradients(
          std::span<const RankingInstance>(instances.data() + group.begin, n),
          std::span<const double>(scores.data() + group.begin, n),
          config.ndcg_cutoff);
      for (std::size_t i = 0; i < n; ++i) {
        lambdas[group.begin + i] = grad.lambdas[i];
        hessians[group.begin + i] = grad.hessians[i];
        max_abs_lambda = std::max(max_abs_lambda, std::abs(grad.lambdas[i]));
      }
    }
    if (max_abs_lambda == 0.0) break;

    RegressionTree tree =
        fit_regression_tree(instances, lambdas, hessians, config.tree);
    for (std::size_t i = 0; i < instances.size(); ++i) {
      scores[i] += config.learning_rate * tree.predict(instances[i].features.values);
    }
    model.trees.push_back(std::move(tree));
    model.training_ndcg.push_back(
        mean_training_ndcg(instances, groups, scores, config.ndcg_cutoff));
  }

  return model;
}

std::vector<RankedItem> rank_candidates(
    const LambdaMartModel& model, std::span<const RankingInstance> instances) {
  std::vector<RankedItem> ranked;
  ranked.reserve(instances.size());
  for (const RankingInstance& instance : instances) {
    ranked.push_back({instance.venue_id, model.predict(instance.features)});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const RankedItem& a, const RankedItem& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.venue_id < b.venue_id;
            });
  return ranked;
}

CrossValidationResult cross_validate(
    const std::vector<RankingInstance>& instances, int k_folds,
    std::uint64_t seed, const LambdaMartConfig& config, int metric_cutoff) {
  if (k_folds < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two folds");
  }
  const std::vector<QueryGroup> groups = group_queries(instances);
  if (groups.size() < static_cast<std::size_t>(k_folds)) {
    throw Error(ErrorCode::kInsufficientQueries,
                std::to_string(groups.size()) + " queries cannot fill " +
                    std::to_string(k_folds) + " folds");
  }

  // Deal shuffled query ids round-robin into folds.
  std::vector<std::string> query_ids;
  query_ids.reserve(groups.size());
  for (const QueryGroup& group : groups) {
    query_ids.push_back(instances[group.begin].query_id);
  }
  std::sort(query_ids.begin(), query_ids.end());
  Rng rng(seed);
  rng.shuffle(query_ids);
  std::map<std::string, int> fold_of;
  for (std::size_t i = 0; i < query_ids.size(); ++i) {
    fold_of[query_ids[i]] = static_cast<int>(i % static_cast<std::size_t>(k_folds));
  }

  CrossValidationResult result;
  result.metric_cutoff = metric_cutoff;
  for (int fold = 0; fold < k_folds; ++fold) {
    std::vector<RankingInstance> train;
    train.reserve(instances.size());
    for (const QueryGroup& group : groups) {
      if (fold_of[instances[group.begin].query_id] == fold) continue;
      train.insert(train.end(), instances.begin() + group.begin,
                   instances.begin() + group.end);
    }
    const LambdaMartModel model = train_lambdamart(train, config);

    FoldMetrics metrics;
    QrelSet fold_qrels;
    std::map<std::string, std::vector<std::string>> rankings;
    for (const QueryGroup& group : groups) {
      const std::string& query_id = instances[group.begin].query_id;
      if (fold_of[query_id] != fold) continue;
      for (std::size_t i = group.begin; i < group.end; ++i) {
        fold_qrels.set(query_id, instances[i].venue_id, instances[i].label);
      }
      const auto ranked = rank_candidates(
          model, std::span<const RankingInstance>(
                     instances.data() + group.begin, group.end - group.begin));
      std::vector<std::string>& ranking = rankings[query_id];
      ranking.reserve(ranked.size());
      for (const RankedItem& item : ranked) ranking.push_back(item.venue_id);
    }

    double p_sum = 0.0;
    for (const auto& [query_id, ranking] : rankings) {
      p_sum += precision_at_k(ranking, fold_qrels, query_id, metric_cutoff);
    }
    metrics.query_count = rankings.size();
    metrics.p_at_k = p_sum / static_cast<double>(rankings.size());
    metrics.mrr = mrr(rankings, fold_qrels);
    result.folds.push_back(metrics);
  }

  for (const FoldMetrics& fold : result.folds) {
    result.mean_p_at_k += fold.p_at_k;
    result.mean_mrr += fold.mrr;
  }
  result.mean_p_at_k /= static_cast<double>(result.folds.size());
  result.mean_mrr /= static_cast<double>(result.folds.size());
  return result;
}

}  // namespace venuerank
