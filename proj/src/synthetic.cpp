// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#include "venuerank/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <iterator>

#include "venuerank/rng.hpp"

namespace venuerank {

namespace {

const std::vector<std::string> kPositiveWords = {
    "superb", "charming", "delightful", "glorious", "pleasant"};
const std::vector<std::string> kNegativeWords = {
    "awful", "dismal", "dreadful", "shabby", "tedious"};

std::string padded_id(char prefix, int value, int width) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%c%0*d", prefix, width, value);
  return buffer;
}

std::string named_id(const char* prefix, int value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%s%03d", prefix, value);
  return buffer;
}

std::string category_name(int index) { return named_id("cat_", index); }
std::string tag_name(int index) { return named_id("tag_", index); }
std::string term_name(int index) { return named_id("term", index); }

/// First k indices of a shuffled copy of [0, n), skipping `exclude`.
std::vector<int> sample_distinct(Rng& rng, int n, int k,
                                 const std::set<int>& exclude) {
  std::vector<int> pool;
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (exclude.find(i) == exclude.end()) pool.push_back(i);
  }
  rng.shuffle(pool);
  if (static_cast<int>(pool.size()) > k) pool.resize(static_cast<std::size_t>(k));
  return pool;
}

int noisy_grade(Rng& rng, int true_grade, double noise_level) {
  if (noise_level > 0.0 && rng.real01() < noise_level) {
    return static_cast<int>(rng.below(5));
  }
  return true_grade;
}

std::string review_text(Rng& rng, const std::set<int>& category_indices,
                        int stars, int term_vocab) {
  std::vector<std::string> tokens;
  for (const int cat : category_indices) {
    tokens.push_back(term_name((2 * cat) % term_vocab));
    tokens.push_back(term_name((2 * cat + 1) % term_vocab));
  }
  if (stars >= 4) {
    tokens.push_back(kPositiveWords[rng.below(kPositiveWords.size())]);
  } else if (stars <= 2) {
    tokens.push_back(kNegativeWords[rng.below(kNegativeWords.size())]);
  } else {
    tokens.push_back(kPositiveWords[rng.below(kPositiveWords.size())]);
    tokens.push_back(kNegativeWords[rng.below(kNegativeWords.size())]);
  }
  for (int i = 0; i < 2; ++i) {
    tokens.push_back(term_name(static_cast<int>(rng.below(
        static_cast<std::uint64_t>(term_vocab)))));
  }
  std::string text;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) text.push_back(' ');
    text += tokens[i];
  }
  return text;
}

std::string timestamp_text(Rng& rng) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "2015-%02d-%02dT%02d:%02d:00Z",
                static_cast<int>(rng.below(12)) + 1,
                static_cast<int>(rng.below(28)) + 1,
                static_cast<int>(rng.below(24)),
                static_cast<int>(rng.below(60)));
  return buffer;
}

}  // namespace

int SynthTruth::relevance_points(const std::string& user_id,
                                 const std::string& venue_id,
                                 const ContextSignals& context) const {
  const UserTruth& user = users.at(user_id);
  const VenueTruth& venue = venues.at(venue_id);
  int overlap = 0;
  for (const int cat : venue.category_indices) {
    if (user.affinity_categories.find(cat) != user.affinity_categories.end()) {
      ++overlap;
    }
  }
  const int matches = (venue.season_peak == context.season ? 1 : 0) +
                      (venue.trip_peak == context.trip ? 1 : 0) +
                      (venue.group_peak == context.group ? 1 : 0);
  return 7 * overlap + 3 * matches;
}

int SynthTruth::true_grade(const std::string& user_id,
                           const std::string& venue_id,
                           const ContextSignals& context) const {
  return std::min(4, relevance_points(user_id, venue_id, context) / 6);
}

SynthResult generate_synthetic(const SynthConfig& config) {
  if (config.n_users < 1 || config.n_venues < 1 ||
      config.n_candidates_per_request < 1 || config.category_vocab_size < 1 ||
      config.tag_vocab_size < 1 || config.review_term_vocab_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "all generator counts must be >= 1");
  }
  if (config.noise_level < 0.0 || config.noise_level > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "noise_level outside [0,1]");
  }
  if (config.n_candidates_per_request > config.n_venues) {
    throw Error(ErrorCode::kInvalidArgument,
                "more candidates per request than venues");
  }
  int history_size = 16;
  if (config.n_venues < config.n_candidates_per_request + history_size) {
    history_size = config.n_venues - config.n_candidates_per_request;
  }
  if (history_size < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "not enough venues for both candidates and rated examples");
  }

  Rng rng(config.seed);
  SynthResult result;
  result.truth.noise_level = config.noise_level;
  auto& truth = result.truth;
  auto& bundle = result.bundle;

  const int cats_per_venue = std::min(3, config.category_vocab_size);

  // --- venues ---------------------------------------------------------
  std::vector<VenueRecord> venues;
  std::vector<std::string> venue_ids;
  venues.reserve(static_cast<std::size_t>(config.n_venues));
  for (int v = 0; v < config.n_venues; ++v) {
    VenueRecord venue;
    venue.venue_id = padded_id('v', v, 5);
    venue_ids.push_back(venue.venue_id);

    SynthTruth::VenueTruth venue_truth;
    for (const int cat :
         sample_distinct(rng, config.category_vocab_size, cats_per_venue, {})) {
      venue_truth.category_indices.insert(cat);
    }
    venue_truth.season_peak = static_cast<Season>(rng.below(kSeasonCount));
    venue_truth.trip_peak = static_cast<TripType>(rng.below(kTripTypeCount));
    venue_truth.group_peak = static_cast<GroupType>(rng.below(kGroupTypeCount));
    venue_truth.quality = 0.25 + 0.5 * rng.real01();

    for (const int cat : venue_truth.category_indices) {
      venue.foursquare_categories.push_back(category_name(cat));
    }
    // Yelp sees a slightly different vocabulary of the same venue.
    std::set<int> yelp_cats = venue_truth.category_indices;
    if (yelp_cats.size() > 1 && rng.real01() < 0.25) {
      yelp_cats.erase(std::prev(yelp_cats.end()));
    }
    if (rng.real01() < 0.25) {
      const auto extra =
          sample_distinct(rng, config.category_vocab_size, 1, yelp_cats);
      if (!extra.empty()) yelp_cats.insert(extra[0]);
    }
    for (const int cat : yelp_cats) {
      venue.yelp_categories.push_back(category_name(cat));
    }

    std::set<std::string> tags;
    for (const int cat : venue_truth.category_indices) {
      tags.insert(tag_name(cat % config.tag_vocab_size));
    }
    tags.insert(tag_name(static_cast<int>(
        rng.below(static_cast<std::uint64_t>(config.tag_vocab_size)))));
    venue.taste_tags.assign(tags.begin(), tags.end());

    std::array<std::int64_t, kSeasonCount> seasons{};
    for (int s = 0; s < kSeasonCount; ++s) {
      seasons[static_cast<std::size_t>(s)] =
          (static_cast<Season>(s) == venue_truth.season_peak)
              ? 30 + static_cast<std::int64_t>(rng.below(21))
              : 2 + static_cast<std::int64_t>(rng.below(7));
    }
    venue.season_checkins = seasons;

    TravelerCounts travelers;
    for (int t = 0; t < kTripTypeCount; ++t) {
      travelers.trip[static_cast<std::size_t>(t)] =
          (static_cast<TripType>(t) == venue_truth.trip_peak)
              ? 20 + static_cast<std::int64_t>(rng.below(15))
              : 3 + static_cast<std::int64_t>(rng.below(5));
    }
    for (int g = 0; g < kGroupTypeCount; ++g) {
      travelers.group[static_cast<std::size_t>(g)] =
          (static_cast<GroupType>(g) == venue_truth.group_peak)
              ? 20 + static_cast<std::int64_t>(rng.below(15))
              : 2 + static_cast<std::int64_t>(rng.below(4));
    }
    venue.traveler_checkins = travelers;

    for (const Source source : {Source::kYelp, Source::kTripAdvisor}) {
      const int n_reviews = 5 + static_cast<int>(rng.below(3));
      for (int r = 0; r < n_reviews; ++r) {
        Review review;
        review.venue_id = venue.venue_id;
        review.source = source;
        if (r == 0) {
          review.stars = 5;  // every venue keeps one praising and one
        } else if (r == 1) {
          review.stars = 1;  // damning review per source
        } else if (rng.real01() < venue_truth.quality) {
          review.stars = 4 + static_cast<int>(rng.below(2));
        } else {
          review.stars = 1 + static_cast<int>(rng.below(3));
        }
        review.text = review_text(rng, venue_truth.category_indices,
                                  review.stars, config.review_term_vocab_size);
        review.timestamp_text = timestamp_text(rng);
        review.timestamp = parse_rfc3339(review.timestamp_text);
        venue.reviews.push_back(std::move(review));
      }
    }

    truth.venues.emplace(venue.venue_id, std::move(venue_truth));
    venues.push_back(std::move(venue));
  }
  bundle.catalog = Catalog(std::move(venues));

  // --- users, histories, requests, qrels ------------------------------
  const int affinity_extra =
      std::min(7, config.category_vocab_size - cats_per_venue);
  for (int u = 0; u < config.n_users; ++u) {
    const std::string user_id = padded_id('u', u, 4);
    const std::string request_id = padded_id('q', u, 4);

    SynthTruth::UserTruth user_truth;
    const int seed_venue = static_cast<int>(
        rng.below(static_cast<std::uint64_t>(config.n_venues)));
    user_truth.seed_venue_id = venue_ids[static_cast<std::size_t>(seed_venue)];
    const SynthTruth::VenueTruth& seed_truth =
        truth.venues.at(user_truth.seed_venue_id);
    user_truth.affinity_categories = seed_truth.category_indices;
    if (affinity_extra > 0) {
      for (const int cat :
           sample_distinct(rng, config.category_vocab_size, affinity_extra,
                           user_truth.affinity_categories)) {
        user_truth.affinity_categories.insert(cat);
      }
    }
    user_truth.context = {seed_truth.season_peak, seed_truth.trip_peak,
                          seed_truth.group_peak};
    truth.users.emplace(user_id, user_truth);

    // Per-venue relevance for this user's own context.
    std::vector<int> points(static_cast<std::size_t>(config.n_venues));
    for (int v = 0; v < config.n_venues; ++v) {
      points[static_cast<std::size_t>(v)] = truth.relevance_points(
          user_id, venue_ids[static_cast<std::size_t>(v)], user_truth.context);
    }

    std::vector<int> relevant_pool, irrelevant_pool;
    for (int v = 0; v < config.n_venues; ++v) {
      const int p = points[static_cast<std::size_t>(v)];
      if (p >= SynthTruth::kPositivePointsMin) {
        relevant_pool.push_back(v);
      } else if (p / 6 <= 1) {
        irrelevant_pool.push_back(v);
      }
    }

    std::set<int> history_set;
    std::vector<int> history_venues;
    const auto take_from = [&](std::vector<int> pool, int want) {
      rng.shuffle(pool);
      for (const int v : pool) {
        if (static_cast<int>(history_venues.size()) >= history_size) break;
        if (want <= 0) break;
        if (history_set.insert(v).second) {
          history_venues.push_back(v);
          --want;
        }
      }
    };
    // Liked examples lean toward the highest-affinity venues so the
    // frequency profiles cover the user's latent categories well.
    std::vector<int> liked_pool = relevant_pool;
    rng.shuffle(liked_pool);
    std::stable_sort(liked_pool.begin(), liked_pool.end(),
                     [&points](int a, int b) {
                       return points[static_cast<std::size_t>(a)] >
                              points[static_cast<std::size_t>(b)];
                     });
    for (const int v : liked_pool) {
      if (static_cast<int>(history_venues.size()) >=
          std::min(6, history_size)) {
        break;
      }
      if (history_set.insert(v).second) history_venues.push_back(v);
    }
    take_from(irrelevant_pool, 5);
    {
      std::vector<int> rest;
      for (int v = 0; v < config.n_venues; ++v) {
        if (history_set.find(v) == history_set.end()) rest.push_back(v);
      }
      take_from(rest, history_size - static_cast<int>(history_venues.size()));
    }

    UserHistory history;
    history.user_id = user_id;
    for (const int v : history_venues) {
      const std::string& venue_id = venue_ids[static_cast<std::size_t>(v)];
      const int grade = truth.true_grade(user_id, venue_id, user_truth.context);
      history.rated.push_back(
          {venue_id, noisy_grade(rng, grade, config.noise_level)});
    }
    const bool any_positive =
        std::any_of(history.rated.begin(), history.rated.end(),
                    [](const RatedVenue& r) { return r.rating >= kPositiveRatingMin; });
    if (!any_positive) {
      history.rated[0].rating = kPositiveRatingMin;  // keep the user trainable
    }
    bundle.histories.push_back(std::move(history));

    // Candidates: a planted top slice by relevance, the rest sampled, then
    // shuffled so position encodes nothing.
    std::vector<int> non_history;
    for (int v = 0; v < config.n_venues; ++v) {
      if (history_set.find(v) == history_set.end()) non_history.push_back(v);
    }
    std::sort(non_history.begin(), non_history.end(), [&points](int a, int b) {
      const int pa = points[static_cast<std::size_t>(a)];
      const int pb = points[static_cast<std::size_t>(b)];
      if (pa != pb) return pa > pb;
      return a < b;
    });
    const int planted =
        std::min(static_cast<int>(non_history.size()),
                 std::max(1, config.n_candidates_per_request / 3));
    std::vector<int> candidates(non_history.begin(),
                                non_history.begin() + planted);
    // Fillers come from the clearly-off-profile tail first; near-boundary
    // venues only top up when the tail runs short.
    std::vector<int> remainder(non_history.begin() + planted,
                               non_history.end());
    std::vector<int> tail, boundary;
    for (const int v : remainder) {
      (points[static_cast<std::size_t>(v)] / 6 <= 1 ? tail : boundary)
          .push_back(v);
    }
    rng.shuffle(tail);
    rng.shuffle(boundary);
    tail.insert(tail.end(), boundary.begin(), boundary.end());
    for (const int v : tail) {
      if (static_cast<int>(candidates.size()) >=
          config.n_candidates_per_request) {
        break;
      }
      candidates.push_back(v);
    }
    rng.shuffle(candidates);

    SuggestionRequest request;
    request.request_id = request_id;
    request.user_id = user_id;
    request.context = user_truth.context;
    for (const int v : candidates) {
      const std::string& venue_id = venue_ids[static_cast<std::size_t>(v)];
      request.candidates.push_back(venue_id);
      const int grade = truth.true_grade(user_id, venue_id, user_truth.context);
      bundle.qrels.set(request_id, venue_id,
                       noisy_grade(rng, grade, config.noise_level));
    }
    bundle.requests.push_back(std::move(request));
  }

  return result;
}

}  // namespace venuerank
