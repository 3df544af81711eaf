// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#include "venuerank/context_scoring.hpp"

#include <numeric>

namespace venuerank {

Season infer_season(std::int64_t epoch_seconds, Hemisphere hemisphere) {
  const int month = utc_month(epoch_seconds);
  Season season;
  if (month >= 3 && month <= 5) {
    season = Season::kSpring;
  } else if (month >= 6 && month <= 8) {
    season = Season::kSummer;
  } else if (month >= 9 && month <= 11) {
    season = Season::kFall;
  } else {
    season = Season::kWinter;
  }
  if (hemisphere == Hemisphere::kSouthern) {
    season = static_cast<Season>((static_cast<int>(season) + 2) % kSeasonCount);
  }
  return season;
}

double SeasonDistribution::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0.0);
}

SeasonDistributionResult season_distribution(const VenueRecord& venue,
                                             Hemisphere hemisphere) {
  SeasonDistributionResult result;
  if (venue.season_checkins) {
    for (int s = 0; s < kSeasonCount; ++s) {
      result.dist.counts[static_cast<std::size_t>(s)] =
          static_cast<double>((*venue.season_checkins)[static_cast<std::size_t>(s)]);
    }
    return result;
  }
  if (!venue.reviews.empty()) {
    for (const Review& review : venue.reviews) {
      result.dist[infer_season(review.timestamp, hemisphere)] += 1.0;
    }
    return result;
  }
  result.missing = true;
  return result;
}

double season_score(Season user_season, const SeasonDistribution& dist) {
  const double same = dist[user_season];
  const double others = dist.total() - same;
  return same - others / static_cast<double>(kSeasonCount - 1);
}

TravelerDistributionResult traveler_distribution(const VenueRecord& venue) {
  TravelerDistributionResult result;
  if (!venue.traveler_checkins) {
    result.missing = true;
    return result;
  }
  for (int t = 0; t < kTripTypeCount; ++t) {
    result.dist.trip[static_cast<std::size_t>(t)] = static_cast<double>(
        venue.traveler_checkins->trip[static_cast<std::size_t>(t)]);
  }
  for (int g = 0; g < kGroupTypeCount; ++g) {
    result.dist.group[static_cast<std::size_t>(g)] = static_cast<double>(
        venue.traveler_checkins->group[static_cast<std::size_t>(g)]);
  }
  return result;
}

double travel_score(const ContextSignals& context,
                    const TravelerDistribution& dist) {
  const double trip_match = dist.trip[static_cast<std::size_t>(context.trip)];
  const double trip_total =
      std::accumulate(dist.trip.begin(), dist.trip.end(), 0.0);
  const double trip_sub =
      trip_match -
      (trip_total - trip_match) / static_cast<double>(kTripTypeCount - 1);

  const double group_match = dist.group[static_cast<std::size_t>(context.group)];
  const double group_total =
      std::accumulate(dist.group.begin(), dist.group.end(), 0.0);
  const double group_sub =
      group_match -
      (group_total - group_match) / static_cast<double>(kGroupTypeCount - 1);

  return (trip_sub + group_sub) / 2.0;
}

}  // namespace venuerank
