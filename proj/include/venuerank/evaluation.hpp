// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "venuerank/core_model.hpp"

namespace venuerank {

/// Graded relevance judgments keyed by (query, venue). Unjudged pairs are
/// grade 0; binary relevance is grade >= 3, the same threshold as the rating
/// polarity split.
class QrelSet {
 public:
  static constexpr int kRelevanceThreshold = 3;

  void set(const std::string& query_id, const std::string& venue_id, int grade);
  int grade(const std::string& query_id, const std::string& venue_id) const;
  bool relevant(const std::string& query_id, const std::string& venue_id) const;

  bool empty() const { return grades_.empty(); }
  std::size_t size() const;

  const std::map<std::string, std::map<std::string, int>>& by_query() const {
    return grades_;
  }

 private:
  std::map<std::string, std::map<std::string, int>> grades_;
};

/// Fraction of the first k positions holding a relevant venue; rankings
/// shorter than k keep the fixed denominator k.
double precision_at_k(const std::vector<std::string>& ranking,
                      const QrelSet& qrels, const std::string& query_id,
                      int k = 5);

/// 1 / rank of the first relevant venue, 0 when none is relevant.
double reciprocal_rank(const std::vector<std::string>& ranking,
                       const QrelSet& qrels, const std::string& query_id);

/// Mean reciprocal rank over per-query rankings.
double mrr(const std::map<std::string, std::vector<std::string>>& rankings,
           const QrelSet& qrels);

/// DCG with gain 2^grade - 1 and discount 1/log2(position + 1), positions
/// 1-based, truncated at k. Grades are listed in ranked order.
double dcg_at_k(std::span<const int> grades_in_rank_order, int k);

/// DCG normalized by the ideal ordering's DCG; 0 when every grade is 0.
double ndcg_at_k(std::span<const int> grades_in_rank_order, int k);

double ndcg_at_k(const std::vector<std::string>& ranking, const QrelSet& qrels,
                 const std::string& query_id, int k);

}  // namespace venuerank
