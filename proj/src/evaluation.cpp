// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#include "venuerank/evaluation.hpp"

#include <algorithm>
#include <cmath>

namespace venuerank {

void QrelSet::set(const std::string& query_id, const std::string& venue_id,
                  int grade) {
  grades_[query_id][venue_id] = grade;
}

int QrelSet::grade(const std::string& query_id,
                   const std::string& venue_id) const {
  const auto q = grades_.find(query_id);
  if (q == grades_.end()) return 0;
  const auto v = q->second.find(venue_id);
  return v == q->second.end() ? 0 : v->second;
}

bool QrelSet::relevant(const std::string& query_id,
                       const std::string& venue_id) const {
  return grade(query_id, venue_id) >= kRelevanceThreshold;
}

std::size_t QrelSet::size() const {
  std::size_t n = 0;
  for (const auto& [query, venues] : grades_) n += venues.size();
  return n;
}

double precision_at_k(const std::vector<std::string>& ranking,
                      const QrelSet& qrels, const std::string& query_id,
                      int k) {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument, "cutoff must be >= 1");
  }
  const std::size_t depth =
      std::min(ranking.size(), static_cast<std::size_t>(k));
  int hits = 0;
  for (std::size_t i = 0; i < depth; ++i) {
    if (qrels.relevant(query_id, ranking[i])) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

double reciprocal_rank(const std::vector<std::string>& ranking,
                       const QrelSet& qrels, const std::string& query_id) {
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (qrels.relevant(query_id, ranking[i])) {
      return 1.0 / static_cast<double>(i + 1);
    }
  }
  return 0.0;
}

double mrr(const std::map<std::string, std::vector<std::string>>& rankings,
           const QrelSet& qrels) {
  if (rankings.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "mrr needs at least one query");
  }
  double sum = 0.0;
  for (const auto& [query_id, ranking] : rankings) {
    sum += reciprocal_rank(ranking, qrels, query_id);
  }
  return sum / static_cast<double>(rankings.size());
}

double dcg_at_k(std::span<const int> grades_in_rank_order, int k) {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument, "cutoff must be >= 1");
  }
  const std::size_t depth =
      std::min(grades_in_rank_order.size(), static_cast<std::size_t>(k));
  double dcg = 0.0;
  for (std::size_t i = 0; i < depth; ++i) {
    const double gain = std::exp2(grades_in_rank_order[i]) - 1.0;
    dcg += gain / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg;
}

double ndcg_at_k(std::span<const int> grades_in_rank_order, int k) {
  std::vector<int> ideal(grades_in_rank_order.begin(),
                         grades_in_rank_order.end());
  std::sort(ideal.begin(), ideal.end(), std::greater<int>());
  const double idcg = dcg_at_k(ideal, k);
  if (idcg <= 0.0) return 0.0;
  return dcg_at_k(grades_in_rank_order, k) / idcg;
}

double ndcg_at_k(const std::vector<std::string>& ranking, const QrelSet& qrels,
                 const std::string& query_id, int k) {
  std::vector<int> grades;
  grades.reserve(ranking.size());
  for (const std::string& venue_id : ranking) {
    grades.push_back(qrels.grade(query_id, venue_id));
  }
  return ndcg_at_k(grades, k);
}

}  // namespace venuerank
