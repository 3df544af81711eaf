// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "venuerank/errors.hpp"

namespace venuerank {

enum class Source { kFoursquare, kYelp, kTripAdvisor };

// Enumeration order is the tie-break order wherever seasons are compared.
enum class Season : int { kSpring = 0, kSummer = 1, kFall = 2, kWinter = 3 };
enum class TripType : int { kBusiness = 0, kLeisure = 1 };
enum class GroupType : int { kFamily = 0, kCouples = 1, kFriends = 2, kSolo = 3 };

enum class Polarity { kPositive, kNegative, kNeutral };

inline constexpr int kSeasonCount = 4;
inline constexpr int kTripTypeCount = 2;
inline constexpr int kGroupTypeCount = 4;

inline constexpr int kMinRating = 0;
inline constexpr int kMaxRating = 4;
inline constexpr int kPositiveRatingMin = 3;  // 3..4 liked
inline constexpr int kNegativeRatingMax = 1;  // 0..1 disliked; 2 is neutral

inline constexpr int kMinStars = 1;
inline constexpr int kMaxStars = 5;

const char* to_string(Source source);
const char* to_string(Season season);
const char* to_string(TripType trip);
const char* to_string(GroupType group);

std::optional<Source> source_from_string(std::string_view text);
std::optional<Season> season_from_string(std::string_view text);
std::optional<TripType> trip_type_from_string(std::string_view text);
std::optional<GroupType> group_type_from_string(std::string_view text);

/// Maps a 0..4 rating onto the liked/disliked/neutral split used everywhere
/// else. Throws Error(kInvalidArgument) outside [0, 4].
Polarity polarity(int rating);

/// Canonical form for category and tag strings: surrounding whitespace
/// trimmed, ASCII letters lowercased. Multi-source vocabularies disagree in
/// casing, so all comparisons go through this form.
std::string normalize_item(std::string_view raw);

/// Strict RFC 3339 timestamp ("2015-07-04T12:30:45Z", optional fractional
/// seconds and numeric offsets). Returns seconds since the Unix epoch, UTC.
/// Throws Error(kParse) on malformed input.
std::int64_t parse_rfc3339(std::string_view text);

/// UTC calendar month (1..12) of an epoch timestamp.
int utc_month(std::int64_t epoch_seconds);

struct Review {
  std::string venue_id;
  Source source = Source::kYelp;  // only Yelp/TripAdvisor carry reviews
  int stars = 0;
  std::string text;
  std::int64_t timestamp = 0;  // epoch seconds
  std::string timestamp_text;  // original RFC 3339 form
};

struct TravelerCounts {
  std::array<std::int64_t, kTripTypeCount> trip{};
  std::array<std::int64_t, kGroupTypeCount> group{};
};

struct VenueRecord {
  std::string venue_id;
  std::vector<std::string> foursquare_categories;
  std::vector<std::string> yelp_categories;
  std::vector<std::string> taste_tags;
  std::vector<Review> reviews;
  std::optional<std::array<std::int64_t, kSeasonCount>> season_checkins;
  std::optional<TravelerCounts> traveler_checkins;

  /// Category list for a source; only Foursquare and Yelp carry categories.
  const std::vector<std::string>& categories(Source source) const;
};

struct RatedVenue {
  std::string venue_id;
  int rating = 0;
};

struct UserHistory {
  std::string user_id;
  std::vector<RatedVenue> rated;
};

struct ContextSignals {
  Season season = Season::kSpring;
  TripType trip = TripType::kLeisure;
  GroupType group = GroupType::kSolo;
};

struct SuggestionRequest {
  std::string request_id;
  std::string user_id;
  ContextSignals context;
  std::vector<std::string> candidates;
};

/// Venue lookup by id. Venues keep their ingestion order; the index is for
/// resolution only, never iterated.
class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<VenueRecord> venues);

  const std::vector<VenueRecord>& venues() const { return venues_; }
  std::vector<VenueRecord>& venues() { return venues_; }

  /// Rebuild the id index after mutating venues(). First record wins on
  /// duplicate ids; validation reports the duplicates.
  void reindex();

  const VenueRecord* find(const std::string& venue_id) const;

 private:
  std::vector<VenueRecord> venues_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct ValidationIssue {
  enum class Kind {
    kEmptyVenueId,
    kDuplicateVenueId,
    kDuplicateCategory,
    kDuplicateTag,
    kNegativeCount,
    kStarsOutOfRange,
    kDanglingReview,
    kDuplicateUserId,
    kRatingOutOfRange,
    kDuplicateRatedVenue,
    kDanglingRatedVenue,
    kNoPositiveRating,
    kDuplicateRequestId,
    kUnknownUser,
    kEmptyCandidates,
    kDuplicateCandidate,
    kDanglingCandidate,
    kGradeOutOfRange,
    kDanglingQrelRequest,
    kDanglingQrelVenue,
  };

  Kind kind;
  std::string subject;  // offending id
  std::string detail;
};

const char* to_string(ValidationIssue::Kind kind);

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool empty() const { return issues.empty(); }
  bool has(ValidationIssue::Kind kind) const;
  std::string to_string(std::size_t max_issues = 20) const;
};

/// Checks every structural invariant of an ingested dataset. Violations are
/// report entries, never exceptions; an empty report means the dataset is
/// usable.
ValidationReport validate_dataset(const Catalog& catalog,
                                  const std::vector<UserHistory>& histories,
                                  const std::vector<SuggestionRequest>& requests);

}  // namespace venuerank
