// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#include "venuerank/frequency_scoring.hpp"

#include <set>

namespace venuerank {

const char* to_string(ItemKind kind) {
  switch (kind) {
    case ItemKind::kFoursquareCategory: return "foursquare_categories";
    case ItemKind::kYelpCategory: return "yelp_categories";
    case ItemKind::kTasteTag: return "taste_tags";
  }
  return "unknown";
}

const std::vector<std::string>& venue_items(const VenueRecord& venue,
                                            ItemKind kind) {
  switch (kind) {
    case ItemKind::kFoursquareCategory: return venue.foursquare_categories;
    case ItemKind::kYelpCategory: return venue.yelp_categories;
    case ItemKind::kTasteTag: return venue.taste_tags;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown item kind");
}

double FrequencyProfile::positive_weight(const std::string& item) const {
  const auto it = positive.find(item);
  return it == positive.end() ? 0.0 : it->second;
}

double FrequencyProfile::negative_weight(const std::string& item) const {
  const auto it = negative.find(item);
  return it == negative.end() ? 0.0 : it->second;
}

namespace {

std::set<std::string> normalized_item_set(const std::vector<std::string>& raw) {
  std::set<std::string> items;
  for (const std::string& item : raw) {
    std::string normalized = normalize_item(item);
    if (!normalized.empty()) items.insert(std::move(normalized));
  }
  return items;
}

}  // namespace

FrequencyProfile build_profile(const UserHistory& history,
                               const Catalog& catalog, ItemKind kind) {
  std::map<std::string, std::int64_t> positive_counts;
  std::map<std::string, std::int64_t> negative_counts;
  std::int64_t denominator = 0;
  bool any_positive_venue = false;

  for (const RatedVenue& rated : history.rated) {
    const Polarity pol = polarity(rated.rating);
    if (pol == Polarity::kNeutral) continue;  // neutral venues are not in h_u
    const VenueRecord* venue = catalog.find(rated.venue_id);
    if (venue == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "history venue '" + rated.venue_id + "' not in catalog");
    }
    if (pol == Polarity::kPositive) any_positive_venue = true;
    auto& counts =
        pol == Polarity::kPositive ? positive_counts : negative_counts;
    for (const std::string& item : normalized_item_set(venue_items(*venue, kind))) {
      ++counts[item];
      ++denominator;
    }
  }

  if (!any_positive_venue) {
    throw Error(ErrorCode::kProfileUnderflow,
                "user '" + history.user_id + "' has no positively rated venue");
  }
  if (denominator == 0) {
    throw Error(ErrorCode::kEmptyProfile,
                "user '" + history.user_id + "' has no " +
                    std::string(to_string(kind)) + " occurrences");
  }

  FrequencyProfile profile;
  profile.denominator = denominator;
  for (const auto& [item, count] : positive_counts) {
    profile.positive.emplace(item, static_cast<double>(count) /
                                       static_cast<double>(denominator));
  }
  for (const auto& [item, count] : negative_counts) {
    profile.negative.emplace(item, static_cast<double>(count) /
                                       static_cast<double>(denominator));
  }
  return profile;
}

double similarity_score(const FrequencyProfile& profile,
                        const std::vector<std::string>& items) {
  double score = 0.0;
  for (const std::string& item : normalized_item_set(items)) {
    score += profile.positive_weight(item) - profile.negative_weight(item);
  }
  return score;
}

const std::optional<FrequencyProfile>& UserProfiles::for_kind(
    ItemKind kind) const {
  switch (kind) {
    case ItemKind::kFoursquareCategory: return foursquare_categories;
    case ItemKind::kYelpCategory: return yelp_categories;
    case ItemKind::kTasteTag: return taste_tags;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown item kind");
}

UserProfiles build_user_profiles(const UserHistory& history,
                                 const Catalog& catalog) {
  UserProfiles profiles;
  const auto build = [&](ItemKind kind) -> std::optional<FrequencyProfile> {
    try {
      return build_profile(history, catalog, kind);
    } catch (const Error& error) {
      if (error.code() == ErrorCode::kEmptyProfile ||
          error.code() == ErrorCode::kProfileUnderflow) {
        return std::nullopt;
      }
      throw;
    }
  };
  profiles.foursquare_categories = build(ItemKind::kFoursquareCategory);
  profiles.yelp_categories = build(ItemKind::kYelpCategory);
  profiles.taste_tags = build(ItemKind::kTasteTag);
  if (!profiles.foursquare_categories && !profiles.yelp_categories &&
      !profiles.taste_tags) {
    throw Error(ErrorCode::kProfileUnderflow,
                "user '" + history.user_id +
                    "' has no buildable profile of any kind");
  }
  return profiles;
}

namespace {

void score_slot(const std::optional<FrequencyProfile>& profile,
                const std::vector<std::string>& items, double* score,
                bool* missing) {
  if (!profile || items.empty()) {
    *score = 0.0;
    *missing = true;
    return;
  }
  *score = similarity_score(*profile, items);
  *missing = false;
}

}  // namespace

CategoryTagScores score_categories_and_tags(const UserProfiles& profiles,
                                            const VenueRecord& venue) {
  CategoryTagScores scores;
  score_slot(profiles.foursquare_categories, venue.foursquare_categories,
             &scores.cat_foursquare, &scores.cat_foursquare_missing);
  score_slot(profiles.yelp_categories, venue.yelp_categories, &scores.cat_yelp,
             &scores.cat_yelp_missing);
  score_slot(profiles.taste_tags, venue.taste_tags, &scores.tag,
             &scores.tag_missing);
  return scores;
}

CategoryTagScores score_triple(const UserHistory& history,
                               const Catalog& catalog,
                               const VenueRecord& venue) {
  return score_categories_and_tags(build_user_profiles(history, catalog),
                                   venue);
}

}  // namespace venuerank
