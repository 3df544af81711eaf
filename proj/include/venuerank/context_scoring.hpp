// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#pragma once

#include <array>
#include <cstdint>

#include "venuerank/core_model.hpp"

namespace venuerank {

enum class Hemisphere { kNorthern, kSouthern };

/// Meteorological season of a UTC timestamp: Mar-May spring, Jun-Aug summer,
/// Sep-Nov fall, Dec-Feb winter. The southern mapping shifts by two seasons.
Season infer_season(std::int64_t epoch_seconds,
                    Hemisphere hemisphere = Hemisphere::kNorthern);

/// Per-season check-in counts for one venue (real-valued so derived
/// distributions and explicit counts share one type).
struct SeasonDistribution {
  std::array<double, kSeasonCount> counts{};

  double& operator[](Season season) {
    return counts[static_cast<std::size_t>(season)];
  }
  double operator[](Season season) const {
    return counts[static_cast<std::size_t>(season)];
  }
  double total() const;
};

struct SeasonDistributionResult {
  SeasonDistribution dist;
  bool missing = false;
};

/// Explicit check-in counts when the venue carries them, otherwise seasons
/// inferred from review timestamps (reviews are assumed to land close to the
/// visit). Neither available: all-zero distribution flagged missing.
SeasonDistributionResult season_distribution(
    const VenueRecord& venue, Hemisphere hemisphere = Hemisphere::kNorthern);

/// Check-ins for the user's season minus the mean of the other seasons'
/// check-ins. Linear in the counts; the four per-season scores of any
/// distribution sum to zero.
double season_score(Season user_season, const SeasonDistribution& dist);

struct TravelerDistribution {
  std::array<double, kTripTypeCount> trip{};
  std::array<double, kGroupTypeCount> group{};
};

struct TravelerDistributionResult {
  TravelerDistribution dist;
  bool missing = false;
};

TravelerDistributionResult traveler_distribution(const VenueRecord& venue);

/// Mean of the two axis scores, each computed like the season score: matching
/// count minus the mean of the other counts on that axis.
double travel_score(const ContextSignals& context,
                    const TravelerDistribution& dist);

}  // namespace venuerank
