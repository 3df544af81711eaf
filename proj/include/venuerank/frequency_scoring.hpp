// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "venuerank/core_model.hpp"

namespace venuerank {

/// Item families a frequency profile can be built over. Categories come from
/// Foursquare or Yelp; taste tags are Foursquare-only venue metadata.
enum class ItemKind { kFoursquareCategory, kYelpCategory, kTasteTag };

const char* to_string(ItemKind kind);

/// A venue's item list for one kind (categories of a source, or taste tags).
const std::vector<std::string>& venue_items(const VenueRecord& venue,
                                            ItemKind kind);

/// Positive/negative item frequencies for one user and one item kind.
/// Values are occurrence counts divided by the shared denominator: the total
/// number of item slots across all liked and disliked venues in the history.
/// By construction the positive and negative values sum to exactly 1.
struct FrequencyProfile {
  std::map<std::string, double> positive;
  std::map<std::string, double> negative;
  std::int64_t denominator = 0;

  double positive_weight(const std::string& item) const;
  double negative_weight(const std::string& item) const;
};

/// Builds the profile from a rated history. Neutral venues (rating 2) are
/// skipped entirely; item lists are normalized and deduplicated per venue.
/// Throws kProfileUnderflow when the history has no liked venue and
/// kEmptyProfile when no venue contributes any item of this kind.
FrequencyProfile build_profile(const UserHistory& history,
                               const Catalog& catalog, ItemKind kind);

/// Sum over the (deduplicated, normalized) candidate items of
/// positive weight minus negative weight. Always in [-1, 1].
double similarity_score(const FrequencyProfile& profile,
                        const std::vector<std::string>& items);

/// The three profiles a user can carry; a slot is empty when the history has
/// no data of that kind.
struct UserProfiles {
  std::optional<FrequencyProfile> foursquare_categories;
  std::optional<FrequencyProfile> yelp_categories;
  std::optional<FrequencyProfile> taste_tags;

  const std::optional<FrequencyProfile>& for_kind(ItemKind kind) const;
};

/// Builds all three profiles, leaving unbuildable kinds empty. Throws
/// kProfileUnderflow only when every kind is unbuildable.
UserProfiles build_user_profiles(const UserHistory& history,
                                 const Catalog& catalog);

struct CategoryTagScores {
  double cat_foursquare = 0.0;
  double cat_yelp = 0.0;
  double tag = 0.0;
  bool cat_foursquare_missing = false;
  bool cat_yelp_missing = false;
  bool tag_missing = false;
};

/// Scores one candidate venue against prebuilt profiles. A slot is zero with
/// its missing flag set when either the profile or the venue's item list for
/// that kind is absent.
CategoryTagScores score_categories_and_tags(const UserProfiles& profiles,
                                            const VenueRecord& venue);

/// Convenience form that builds the profiles and scores in one call.
CategoryTagScores score_triple(const UserHistory& history,
                               const Catalog& catalog,
                               const VenueRecord& venue);

}  // namespace venuerank
