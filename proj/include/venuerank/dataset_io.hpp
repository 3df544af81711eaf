// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#pragma once

#include <map>
#include <string>
#include <vector>

#include "venuerank/core_model.hpp"
#include "venuerank/evaluation.hpp"

namespace venuerank {

struct BundlePaths {
  std::string venues;
  std::string reviews;
  std::string profiles;
  std::string requests;
  std::string qrels;

  /// Standard layout inside one directory (venues.jsonl, reviews.jsonl,
  /// profiles.jsonl, requests.jsonl, qrels.jsonl).
  static BundlePaths in_dir(const std::string& dir);
};

/// Fully loaded and cross-validated dataset. Reviews are attached to their
/// venue records; construction fails unless validation passes cleanly.
struct DatasetBundle {
  Catalog catalog;
  std::vector<UserHistory> histories;
  std::vector<SuggestionRequest> requests;
  QrelSet qrels;

  const UserHistory* find_user(const std::string& user_id) const;
};

/// Parses the five JSONL files, attaches reviews, and validates. Parse errors
/// name the file and line; a non-empty validation report aborts the load. The
/// qrels file may be absent (ranking needs none).
DatasetBundle load_bundle(const BundlePaths& paths);

/// Serializes a bundle back to JSONL (used by the synthetic generator).
/// Output is byte-deterministic for a given bundle.
void write_bundle(const DatasetBundle& bundle, const BundlePaths& paths);

struct RunLine {
  std::string request_id;
  int rank = 0;
  std::string venue_id;
  double score = 0.0;
  std::string tag;
};

/// Tab-separated `request_id rank venue_id score tag`, rank starting at 1.
void write_run_file(const std::string& path, const std::vector<RunLine>& lines);
std::vector<RunLine> read_run_file(const std::string& path);

QrelSet load_qrels(const std::string& path);

/// One JSON object per line; `scope` distinguishes per-query / per-fold /
/// aggregate records.
struct MetricRecord {
  std::string scope;
  int cutoff = 5;
  double p_at_k = 0.0;
  double reciprocal_rank_or_mrr = 0.0;
};

void write_metric_report(const std::string& path,
                         const std::vector<MetricRecord>& records);

}  // namespace venuerank
