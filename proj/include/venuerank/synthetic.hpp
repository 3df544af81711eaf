// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#pragma once

#include <map>
#include <set>
#include <string>

#include "venuerank/config.hpp"
#include "venuerank/dataset_io.hpp"

namespace venuerank {

/// Hidden generator state behind a synthetic bundle: the latent preferences
/// that produced every rating and judgment, exposed so tests can check the
/// data against its own truth.
struct SynthTruth {
  struct VenueTruth {
    std::set<int> category_indices;
    Season season_peak = Season::kSpring;
    TripType trip_peak = TripType::kLeisure;
    GroupType group_peak = GroupType::kSolo;
    double quality = 0.5;
  };

  struct UserTruth {
    std::set<int> affinity_categories;
    ContextSignals context;
    std::string seed_venue_id;
  };

  std::map<std::string, VenueTruth> venues;
  std::map<std::string, UserTruth> users;
  double noise_level = 0.0;

  /// Integer relevance scale: 7 points per affinity-category overlap (0..3)
  /// plus 3 points per matching context axis (0..3), so 0..30 total.
  int relevance_points(const std::string& user_id, const std::string& venue_id,
                       const ContextSignals& context) const;

  /// Pre-noise grade: min(4, points / 6). Monotone in the points.
  int true_grade(const std::string& user_id, const std::string& venue_id,
                 const ContextSignals& context) const;

  /// Points at or above this bound quantize to a positive (>= 3) grade.
  static constexpr int kPositivePointsMin = 18;
};

struct SynthResult {
  DatasetBundle bundle;
  SynthTruth truth;
};

/// Seeded synthetic dataset: users carry latent category affinities and a
/// preferred context; venues carry categories, tags, peaked check-in
/// distributions and reviews written from category aspect terms plus
/// star-polarity sentiment words. Ratings and judgments are the quantized
/// relevance with label-flip noise. Fully reproducible per (config, seed).
SynthResult generate_synthetic(const SynthConfig& config);

}  // namespace venuerank
