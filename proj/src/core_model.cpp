// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#include "venuerank/core_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <set>
#include <sstream>

#include "venuerank/rng.hpp"

namespace venuerank {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (const char c : data) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ULL;
  }
  return hash;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kProfileUnderflow: return "profile_underflow";
    case ErrorCode::kEmptyProfile: return "empty_profile";
    case ErrorCode::kEmptyCorpus: return "empty_corpus";
    case ErrorCode::kTrainingUnderflow: return "training_underflow";
    case ErrorCode::kTrainingDiverged: return "training_diverged";
    case ErrorCode::kUntrainableDataset: return "untrainable_dataset";
    case ErrorCode::kInsufficientQueries: return "insufficient_queries";
    case ErrorCode::kModelFormat: return "model_format";
  }
  return "unknown";
}

const char* to_string(Source source) {
  switch (source) {
    case Source::kFoursquare: return "foursquare";
    case Source::kYelp: return "yelp";
    case Source::kTripAdvisor: return "tripadvisor";
  }
  return "unknown";
}

const char* to_string(Season season) {
  switch (season) {
    case Season::kSpring: return "spring";
    case Season::kSummer: return "summer";
    case Season::kFall: return "fall";
    case Season::kWinter: return "winter";
  }
  return "unknown";
}

const char* to_string(TripType trip) {
  switch (trip) {
    case TripType::kBusiness: return "business";
    case TripType::kLeisure: return "leisure";
  }
  return "unknown";
}

const char* to_string(GroupType group) {
  switch (group) {
    case GroupType::kFamily: return "family";
    case GroupType::kCouples: return "couples";
    case GroupType::kFriends: return "friends";
    case GroupType::kSolo: return "solo";
  }
  return "unknown";
}

std::optional<Source> source_from_string(std::string_view text) {
  if (text == "foursquare") return Source::kFoursquare;
  if (text == "yelp") return Source::kYelp;
  if (text == "tripadvisor") return Source::kTripAdvisor;
  return std::nullopt;
}

std::optional<Season> season_from_string(std::string_view text) {
  if (text == "spring") return Season::kSpring;
  if (text == "summer") return Season::kSummer;
  if (text == "fall" || text == "autumn") return Season::kFall;
  if (text == "winter") return Season::kWinter;
  return std::nullopt;
}

std::optional<TripType> trip_type_from_string(std::string_view text) {
  if (text == "business") return TripType::kBusiness;
  if (text == "leisure") return TripType::kLeisure;
  return std::nullopt;
}

std::optional<GroupType> group_type_from_string(std::string_view text) {
  if (text == "family") return GroupType::kFamily;
  if (text == "couples") return GroupType::kCouples;
  if (text == "friends") return GroupType::kFriends;
  if (text == "solo") return GroupType::kSolo;
  return std::nullopt;
}

Polarity polarity(int rating) {
  if (rating < kMinRating || rating > kMaxRating) {
    throw Error(ErrorCode::kInvalidArgument,
                "rating " + std::to_string(rating) + " outside [0,4]");
  }
  if (rating >= kPositiveRatingMin) return Polarity::kPositive;
  if (rating <= kNegativeRatingMax) return Polarity::kNegative;
  return Polarity::kNeutral;
}

std::string normalize_item(std::string_view raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (begin < end && is_space(raw[begin])) ++begin;
  while (end > begin && is_space(raw[end - 1])) --end;
  std::string out;
  out.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    const char c = raw[i];
    out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

namespace {

bool parse_fixed_digits(std::string_view text, std::size_t pos, int width,
                        int* out) {
  if (pos + static_cast<std::size_t>(width) > text.size()) return false;
  int value = 0;
  for (int i = 0; i < width; ++i) {
    const char c = text[pos + static_cast<std::size_t>(i)];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  *out = value;
  return true;
}

[[noreturn]] void bad_timestamp(std::string_view text) {
  throw Error(ErrorCode::kParse,
              "malformed RFC 3339 timestamp: '" + std::string(text) + "'");
}

}  // namespace

std::int64_t parse_rfc3339(std::string_view text) {
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  if (!parse_fixed_digits(text, 0, 4, &year) || text.size() < 20 ||
      text[4] != '-' || !parse_fixed_digits(text, 5, 2, &month) ||
      text[7] != '-' || !parse_fixed_digits(text, 8, 2, &day) ||
      (text[10] != 'T' && text[10] != 't' && text[10] != ' ') ||
      !parse_fixed_digits(text, 11, 2, &hour) || text[13] != ':' ||
      !parse_fixed_digits(text, 14, 2, &minute) || text[16] != ':' ||
      !parse_fixed_digits(text, 17, 2, &second)) {
    bad_timestamp(text);
  }
  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t frac_start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == frac_start) bad_timestamp(text);
  }
  std::int64_t offset_seconds = 0;
  if (pos >= text.size()) bad_timestamp(text);
  if (text[pos] == 'Z' || text[pos] == 'z') {
    ++pos;
  } else if (text[pos] == '+' || text[pos] == '-') {
    const int sign = text[pos] == '-' ? -1 : 1;
    int off_hour = 0, off_minute = 0;
    if (!parse_fixed_digits(text, pos + 1, 2, &off_hour) ||
        pos + 3 >= text.size() || text[pos + 3] != ':' ||
        !parse_fixed_digits(text, pos + 4, 2, &off_minute)) {
      bad_timestamp(text);
    }
    if (off_hour > 23 || off_minute > 59) bad_timestamp(text);
    offset_seconds = sign * (off_hour * 3600 + off_minute * 60);
    pos += 6;
  } else {
    bad_timestamp(text);
  }
  if (pos != text.size()) bad_timestamp(text);
  if (month < 1 || month > 12 || hour > 23 || minute > 59 || second > 60) {
    bad_timestamp(text);
  }
  if (second == 60) second = 59;  // fold leap seconds

  const std::chrono::year_month_day ymd{
      std::chrono::year{year},
      std::chrono::month{static_cast<unsigned>(month)},
      std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) bad_timestamp(text);
  const auto days = std::chrono::sys_days{ymd}.time_since_epoch().count();
  return static_cast<std::int64_t>(days) * 86400 + hour * 3600 + minute * 60 +
         second - offset_seconds;
}

int utc_month(std::int64_t epoch_seconds) {
  const auto tp = std::chrono::sys_seconds{std::chrono::seconds{epoch_seconds}};
  const auto days = std::chrono::floor<std::chrono::days>(tp);
  const std::chrono::year_month_day ymd{days};
  return static_cast<int>(static_cast<unsigned>(ymd.month()));
}

const std::vector<std::string>& VenueRecord::categories(Source source) const {
  switch (source) {
    case Source::kFoursquare: return foursquare_categories;
    case Source::kYelp: return yelp_categories;
    case Source::kTripAdvisor: break;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "TripAdvisor carries no category lists");
}

Catalog::Catalog(std::vector<VenueRecord> venues) : venues_(std::move(venues)) {
  reindex();
}

void Catalog::reindex() {
  index_.clear();
  index_.reserve(venues_.size());
  for (std::size_t i = 0; i < venues_.size(); ++i) {
    index_.emplace(venues_[i].venue_id, i);  // first record wins
  }
}

const VenueRecord* Catalog::find(const std::string& venue_id) const {
  const auto it = index_.find(venue_id);
  return it == index_.end() ? nullptr : &venues_[it->second];
}

const char* to_string(ValidationIssue::Kind kind) {
  using Kind = ValidationIssue::Kind;
  switch (kind) {
    case Kind::kEmptyVenueId: return "EMPTY_VENUE_ID";
    case Kind::kDuplicateVenueId: return "DUPLICATE_VENUE_ID";
    case Kind::kDuplicateCategory: return "DUPLICATE_CATEGORY";
    case Kind::kDuplicateTag: return "DUPLICATE_TAG";
    case Kind::kNegativeCount: return "NEGATIVE_COUNT";
    case Kind::kStarsOutOfRange: return "STARS_OUT_OF_RANGE";
    case Kind::kDanglingReview: return "DANGLING_REVIEW";
    case Kind::kDuplicateUserId: return "DUPLICATE_USER_ID";
    case Kind::kRatingOutOfRange: return "RATING_OUT_OF_RANGE";
    case Kind::kDuplicateRatedVenue: return "DUPLICATE_RATED_VENUE";
    case Kind::kDanglingRatedVenue: return "DANGLING_RATED_VENUE";
    case Kind::kNoPositiveRating: return "NO_POSITIVE_RATING";
    case Kind::kDuplicateRequestId: return "DUPLICATE_REQUEST_ID";
    case Kind::kUnknownUser: return "UNKNOWN_USER";
    case Kind::kEmptyCandidates: return "EMPTY_CANDIDATES";
    case Kind::kDuplicateCandidate: return "DUPLICATE_CANDIDATE";
    case Kind::kDanglingCandidate: return "DANGLING_CANDIDATE";
    case Kind::kGradeOutOfRange: return "GRADE_OUT_OF_RANGE";
    case Kind::kDanglingQrelRequest: return "DANGLING_QREL_REQUEST";
    case Kind::kDanglingQrelVenue: return "DANGLING_QREL_VENUE";
  }
  return "UNKNOWN";
}

bool ValidationReport::has(ValidationIssue::Kind kind) const {
  return std::any_of(issues.begin(), issues.end(),
                     [kind](const ValidationIssue& i) { return i.kind == kind; });
}

std::string ValidationReport::to_string(std::size_t max_issues) const {
  std::ostringstream out;
  out << issues.size() << " validation issue(s)";
  const std::size_t shown = std::min(max_issues, issues.size());
  for (std::size_t i = 0; i < shown; ++i) {
    const ValidationIssue& issue = issues[i];
    out << "\n  " << venuerank::to_string(issue.kind) << " [" << issue.subject
        << "]";
    if (!issue.detail.empty()) out << ": " << issue.detail;
  }
  if (shown < issues.size()) {
    out << "\n  ... " << (issues.size() - shown) << " more";
  }
  return out.str();
}

namespace {

void check_duplicate_items(const std::vector<std::string>& items,
                           ValidationIssue::Kind kind,
                           const std::string& venue_id, const char* what,
                           std::vector<ValidationIssue>* issues) {
  std::set<std::string> seen;
  for (const std::string& item : items) {
    if (!seen.insert(normalize_item(item)).second) {
      issues->push_back({kind, venue_id,
                         std::string(what) + " '" + item + "' repeated"});
    }
  }
}

}  // namespace

ValidationReport validate_dataset(const Catalog& catalog,
                                  const std::vector<UserHistory>& histories,
                                  const std::vector<SuggestionRequest>& requests) {
  ValidationReport report;
  auto& issues = report.issues;
  using Kind = ValidationIssue::Kind;

  std::set<std::string> venue_ids;
  for (const VenueRecord& venue : catalog.venues()) {
    if (venue.venue_id.empty()) {
      issues.push_back({Kind::kEmptyVenueId, "", "venue with empty id"});
      continue;
    }
    if (!venue_ids.insert(venue.venue_id).second) {
      issues.push_back({Kind::kDuplicateVenueId, venue.venue_id, ""});
    }
    check_duplicate_items(venue.foursquare_categories, Kind::kDuplicateCategory,
                          venue.venue_id, "foursquare category", &issues);
    check_duplicate_items(venue.yelp_categories, Kind::kDuplicateCategory,
                          venue.venue_id, "yelp category", &issues);
    check_duplicate_items(venue.taste_tags, Kind::kDuplicateTag, venue.venue_id,
                          "taste tag", &issues);
    if (venue.season_checkins) {
      for (const std::int64_t count : *venue.season_checkins) {
        if (count < 0) {
          issues.push_back({Kind::kNegativeCount, venue.venue_id,
                            "season check-in count " + std::to_string(count)});
        }
      }
    }
    if (venue.traveler_checkins) {
      for (const std::int64_t count : venue.traveler_checkins->trip) {
        if (count < 0) {
          issues.push_back({Kind::kNegativeCount, venue.venue_id,
                            "trip check-in count " + std::to_string(count)});
        }
      }
      for (const std::int64_t count : venue.traveler_checkins->group) {
        if (count < 0) {
          issues.push_back({Kind::kNegativeCount, venue.venue_id,
                            "group check-in count " + std::to_string(count)});
        }
      }
    }
    for (const Review& review : venue.reviews) {
      if (review.stars < kMinStars || review.stars > kMaxStars) {
        issues.push_back({Kind::kStarsOutOfRange, venue.venue_id,
                          "stars " + std::to_string(review.stars)});
      }
      if (review.source == Source::kFoursquare) {
        issues.push_back({Kind::kDanglingReview, venue.venue_id,
                          "review from a source without review data"});
      }
    }
  }

  std::set<std::string> user_ids;
  for (const UserHistory& history : histories) {
    if (!user_ids.insert(history.user_id).second) {
      issues.push_back({Kind::kDuplicateUserId, history.user_id, ""});
    }
    std::set<std::string> rated_ids;
    bool any_positive = false;
    for (const RatedVenue& rated : history.rated) {
      if (rated.rating < kMinRating || rated.rating > kMaxRating) {
        issues.push_back({Kind::kRatingOutOfRange, history.user_id,
                          "venue '" + rated.venue_id + "' rated " +
                              std::to_string(rated.rating)});
      } else if (rated.rating >= kPositiveRatingMin) {
        any_positive = true;
      }
      if (!rated_ids.insert(rated.venue_id).second) {
        issues.push_back({Kind::kDuplicateRatedVenue, history.user_id,
                          "venue '" + rated.venue_id + "'"});
      }
      if (catalog.find(rated.venue_id) == nullptr) {
        issues.push_back({Kind::kDanglingRatedVenue, history.user_id,
                          "venue '" + rated.venue_id + "'"});
      }
    }
    if (!any_positive) {
      issues.push_back({Kind::kNoPositiveRating, history.user_id,
                        "profiles need at least one liked venue"});
    }
  }

  std::set<std::string> request_ids;
  for (const SuggestionRequest& request : requests) {
    if (!request_ids.insert(request.request_id).second) {
      issues.push_back({Kind::kDuplicateRequestId, request.request_id, ""});
    }
    if (user_ids.find(request.user_id) == user_ids.end()) {
      issues.push_back({Kind::kUnknownUser, request.request_id,
                        "user '" + request.user_id + "'"});
    }
    if (request.candidates.empty()) {
      issues.push_back({Kind::kEmptyCandidates, request.request_id, ""});
    }
    std::set<std::string> candidate_ids;
    for (const std::string& candidate : request.candidates) {
      if (!candidate_ids.insert(candidate).second) {
        issues.push_back({Kind::kDuplicateCandidate, request.request_id,
                          "venue '" + candidate + "'"});
      }
      if (catalog.find(candidate) == nullptr) {
        issues.push_back({Kind::kDanglingCandidate, candidate,
                          "request '" + request.request_id + "'"});
      }
    }
  }

  return report;
}

}  // namespace venuerank
