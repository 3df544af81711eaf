// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "venuerank/core_model.hpp"

using namespace venuerank;
using testutil::make_history;
using testutil::make_venue;

TEST_CASE("polarity maps the decided thresholds") {
  CHECK(polarity(4) == Polarity::kPositive);
  CHECK(polarity(3) == Polarity::kPositive);
  CHECK(polarity(2) == Polarity::kNeutral);
  CHECK(polarity(1) == Polarity::kNegative);
  CHECK(polarity(0) == Polarity::kNegative);
}

TEST_CASE("polarity partitions [0,4] into three classes") {
  int positives = 0, negatives = 0, neutrals = 0;
  for (int rating = 0; rating <= 4; ++rating) {
    switch (polarity(rating)) {
      case Polarity::kPositive: ++positives; break;
      case Polarity::kNegative: ++negatives; break;
      case Polarity::kNeutral: ++neutrals; break;
    }
  }
  CHECK(positives == 2);
  CHECK(negatives == 2);
  CHECK(neutrals == 1);
}

TEST_CASE("polarity rejects out-of-range ratings") {
  CHECK_THROWS_AS(polarity(5), Error);
  CHECK_THROWS_AS(polarity(-1), Error);
  CHECK_THROWS_AS(polarity(7), Error);
}

TEST_CASE("normalize_item trims and case-folds") {
  CHECK(normalize_item("  Pizza Place ") == "pizza place");
  CHECK(normalize_item("CAFE") == "cafe");
  CHECK(normalize_item("\tmuseum\n") == "museum");
  CHECK(normalize_item("   ") == "");
}

TEST_CASE("rfc3339 parsing") {
  CHECK(parse_rfc3339("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_rfc3339("1970-01-02T00:00:00Z") == 86400);
  CHECK(parse_rfc3339("2015-07-04T12:30:45Z") ==
        parse_rfc3339("2015-07-04T12:30:45.500Z"));
  // Offsets convert into UTC.
  CHECK(parse_rfc3339("2015-07-04T12:00:00+02:00") ==
        parse_rfc3339("2015-07-04T10:00:00Z"));
  CHECK(parse_rfc3339("2015-12-31T23:00:00-02:00") ==
        parse_rfc3339("2016-01-01T01:00:00Z"));

  CHECK_THROWS_AS(parse_rfc3339("2015-13-01T00:00:00Z"), Error);
  CHECK_THROWS_AS(parse_rfc3339("2015-02-30T00:00:00Z"), Error);
  CHECK_THROWS_AS(parse_rfc3339("2015-02-10"), Error);
  CHECK_THROWS_AS(parse_rfc3339("not a date"), Error);
  CHECK_THROWS_AS(parse_rfc3339("2015-02-10T25:00:00Z"), Error);

  CHECK(utc_month(parse_rfc3339("2015-07-04T23:59:59Z")) == 7);
  CHECK(utc_month(parse_rfc3339("2015-12-31T23:30:00-02:00")) == 1);
}

namespace {

Catalog three_venue_catalog() {
  return Catalog{{
      make_venue("v1", {"park"}, {"park"}, {"green"}),
      make_venue("v2", {"museum"}, {"museum"}, {"art"}),
      make_venue("v3", {"cafe"}, {"coffee"}, {"cozy"}),
  }};
}

}  // namespace

TEST_CASE("validate_dataset passes a well-formed dataset") {
  const Catalog catalog = three_venue_catalog();
  const std::vector<UserHistory> histories = {
      make_history("u1", {{"v1", 4}, {"v2", 1}})};
  const std::vector<SuggestionRequest> requests = {
      {"q1", "u1", {}, {"v2", "v3"}}};
  const ValidationReport report = validate_dataset(catalog, histories, requests);
  CHECK(report.empty());
}

TEST_CASE("validate_dataset reports dangling candidates") {
  const Catalog catalog = three_venue_catalog();
  const std::vector<UserHistory> histories = {make_history("u1", {{"v1", 4}})};
  const std::vector<SuggestionRequest> requests = {
      {"q1", "u1", {}, {"v1", "vX"}}};
  const ValidationReport report = validate_dataset(catalog, histories, requests);
  REQUIRE_FALSE(report.empty());
  CHECK(report.has(ValidationIssue::Kind::kDanglingCandidate));
  bool named = false;
  for (const ValidationIssue& issue : report.issues) {
    if (issue.kind == ValidationIssue::Kind::kDanglingCandidate &&
        issue.subject == "vX") {
      named = true;
    }
  }
  CHECK(named);
}

TEST_CASE("validate_dataset reports out-of-range ratings") {
  const Catalog catalog = three_venue_catalog();
  const std::vector<UserHistory> histories = {
      make_history("u1", {{"v1", 7}, {"v2", 4}})};
  const ValidationReport report = validate_dataset(catalog, histories, {});
  CHECK(report.has(ValidationIssue::Kind::kRatingOutOfRange));
}

TEST_CASE("validate_dataset reports duplicates and referential breaks") {
  std::vector<VenueRecord> venues = {
      make_venue("v1", {"park", "Park"}),  // duplicate after normalization
      make_venue("v1"),                    // duplicate id
      make_venue(""),                      // empty id
  };
  const Catalog catalog{std::move(venues)};
  const std::vector<UserHistory> histories = {
      make_history("u1", {{"v1", 4}, {"v1", 0}, {"ghost", 3}}),
      make_history("u1", {{"v1", 3}}),  // duplicate user id
      make_history("u2", {{"v1", 1}}),  // no positive rating
  };
  const std::vector<SuggestionRequest> requests = {
      {"q1", "nobody", {}, {}},
      {"q1", "u1", {}, {"v1", "v1"}},
  };
  const ValidationReport report = validate_dataset(catalog, histories, requests);
  CHECK(report.has(ValidationIssue::Kind::kDuplicateCategory));
  CHECK(report.has(ValidationIssue::Kind::kDuplicateVenueId));
  CHECK(report.has(ValidationIssue::Kind::kEmptyVenueId));
  CHECK(report.has(ValidationIssue::Kind::kDuplicateRatedVenue));
  CHECK(report.has(ValidationIssue::Kind::kDanglingRatedVenue));
  CHECK(report.has(ValidationIssue::Kind::kDuplicateUserId));
  CHECK(report.has(ValidationIssue::Kind::kNoPositiveRating));
  CHECK(report.has(ValidationIssue::Kind::kDuplicateRequestId));
  CHECK(report.has(ValidationIssue::Kind::kUnknownUser));
  CHECK(report.has(ValidationIssue::Kind::kEmptyCandidates));
  CHECK(report.has(ValidationIssue::Kind::kDuplicateCandidate));
}

TEST_CASE("catalog resolves every id to exactly one record") {
  const Catalog catalog = three_venue_catalog();
  REQUIRE(catalog.find("v2") != nullptr);
  CHECK(catalog.find("v2")->venue_id == "v2");
  CHECK(catalog.find("vX") == nullptr);
}
