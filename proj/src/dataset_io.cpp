// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#include "venuerank/dataset_io.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace venuerank {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& file, std::size_t line,
                             const std::string& what) {
  throw Error(ErrorCode::kParse,
              file + ":" + std::to_string(line) + ": " + what);
}

std::string require_string(const json& j, const char* key,
                           const std::string& file, std::size_t line) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    parse_fail(file, line, std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

std::int64_t require_int(const json& j, const char* key,
                         const std::string& file, std::size_t line) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) {
    parse_fail(file, line, std::string("missing integer field '") + key + "'");
  }
  return it->get<std::int64_t>();
}

std::vector<std::string> string_list(const json& j, const std::string& file,
                                     std::size_t line, const char* what) {
  if (!j.is_array()) {
    parse_fail(file, line, std::string(what) + " must be an array");
  }
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const json& item : j) {
    if (!item.is_string()) {
      parse_fail(file, line, std::string(what) + " entries must be strings");
    }
    std::string normalized = normalize_item(item.get<std::string>());
    if (normalized.empty()) {
      parse_fail(file, line, std::string(what) + " entry is empty");
    }
    out.push_back(std::move(normalized));
  }
  return out;
}

/// Runs `handler(parsed_object, line_number)` for every non-blank line.
template <typename Handler>
void for_each_jsonl(const std::string& path, Handler&& handler) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  }
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      parse_fail(path, line_number, "invalid JSON object");
    }
    handler(j, line_number);
  }
}

std::vector<VenueRecord> load_venues(const std::string& path) {
  std::vector<VenueRecord> venues;
  for_each_jsonl(path, [&](const json& j, std::size_t line) {
    VenueRecord venue;
    venue.venue_id = require_string(j, "venue_id", path, line);
    if (const auto it = j.find("categories_by_source"); it != j.end()) {
      if (!it->is_object()) {
        parse_fail(path, line, "categories_by_source must be an object");
      }
      for (const auto& [source_name, list] : it->items()) {
        const auto source = source_from_string(source_name);
        if (!source) {
          parse_fail(path, line, "unknown source '" + source_name + "'");
        }
        if (*source == Source::kTripAdvisor) {
          parse_fail(path, line, "tripadvisor carries no category list");
        }
        auto items = string_list(list, path, line, "category list");
        if (*source == Source::kFoursquare) {
          venue.foursquare_categories = std::move(items);
        } else {
          venue.yelp_categories = std::move(items);
        }
      }
    }
    if (const auto it = j.find("taste_tags"); it != j.end()) {
      venue.taste_tags = string_list(*it, path, line, "taste_tags");
    }
    if (const auto it = j.find("season_checkins"); it != j.end()) {
      if (!it->is_object()) {
        parse_fail(path, line, "season_checkins must be an object");
      }
      std::array<std::int64_t, kSeasonCount> counts{};
      for (const auto& [season_name, value] : it->items()) {
        const auto season = season_from_string(season_name);
        if (!season || !value.is_number_integer()) {
          parse_fail(path, line, "bad season_checkins entry '" + season_name + "'");
        }
        counts[static_cast<std::size_t>(*season)] = value.get<std::int64_t>();
      }
      venue.season_checkins = counts;
    }
    if (const auto it = j.find("traveler_checkins"); it != j.end()) {
      if (!it->is_object()) {
        parse_fail(path, line, "traveler_checkins must be an object");
      }
      TravelerCounts counts;
      if (const auto trip = it->find("trip"); trip != it->end()) {
        for (const auto& [name, value] : trip->items()) {
          const auto type = trip_type_from_string(name);
          if (!type || !value.is_number_integer()) {
            parse_fail(path, line, "bad trip entry '" + name + "'");
          }
          counts.trip[static_cast<std::size_t>(*type)] = value.get<std::int64_t>();
        }
      }
      if (const auto group = it->find("group"); group != it->end()) {
        for (const auto& [name, value] : group->items()) {
          const auto type = group_type_from_string(name);
          if (!type || !value.is_number_integer()) {
            parse_fail(path, line, "bad group entry '" + name + "'");
          }
          counts.group[static_cast<std::size_t>(*type)] = value.get<std::int64_t>();
        }
      }
      venue.traveler_checkins = counts;
    }
    venues.push_back(std::move(venue));
  });
  return venues;
}

std::vector<Review> load_reviews(const std::string& path) {
  std::vector<Review> reviews;
  for_each_jsonl(path, [&](const json& j, std::size_t line) {
    Review review;
    review.venue_id = require_string(j, "venue_id", path, line);
    const std::string source_name = require_string(j, "source", path, line);
    const auto source = source_from_string(source_name);
    if (!source || *source == Source::kFoursquare) {
      parse_fail(path, line, "review source must be yelp or tripadvisor");
    }
    review.source = *source;
    const std::int64_t stars = require_int(j, "stars", path, line);
    if (stars < kMinStars || stars > kMaxStars) {
      parse_fail(path, line, "stars " + std::to_string(stars) + " outside [1,5]");
    }
    review.stars = static_cast<int>(stars);
    review.text = require_string(j, "text", path, line);
    review.timestamp_text = require_string(j, "timestamp", path, line);
    try {
      review.timestamp = parse_rfc3339(review.timestamp_text);
    } catch (const Error& e) {
      parse_fail(path, line, e.what());
    }
    reviews.push_back(std::move(review));
  });
  return reviews;
}

std::vector<UserHistory> load_histories(const std::string& path) {
  std::vector<UserHistory> histories;
  for_each_jsonl(path, [&](const json& j, std::size_t line) {
    UserHistory history;
    history.user_id = require_string(j, "user_id", path, line);
    const auto it = j.find("ratings");
    if (it == j.end() || !it->is_array()) {
      parse_fail(path, line, "missing 'ratings' array");
    }
    for (const json& entry : *it) {
      if (!entry.is_object()) parse_fail(path, line, "rating must be an object");
      RatedVenue rated;
      rated.venue_id = require_string(entry, "venue_id", path, line);
      rated.rating = static_cast<int>(require_int(entry, "rating", path, line));
      history.rated.push_back(std::move(rated));
    }
    histories.push_back(std::move(history));
  });
  return histories;
}

std::vector<SuggestionRequest> load_requests(const std::string& path) {
  std::vector<SuggestionRequest> requests;
  for_each_jsonl(path, [&](const json& j, std::size_t line) {
    SuggestionRequest request;
    request.request_id = require_string(j, "request_id", path, line);
    request.user_id = require_string(j, "user_id", path, line);
    const auto ctx = j.find("context");
    if (ctx == j.end() || !ctx->is_object()) {
      parse_fail(path, line, "missing 'context' object");
    }
    const auto season = season_from_string(require_string(*ctx, "season", path, line));
    const auto trip =
        trip_type_from_string(require_string(*ctx, "trip_type", path, line));
    const auto group =
        group_type_from_string(require_string(*ctx, "group_type", path, line));
    if (!season || !trip || !group) {
      parse_fail(path, line, "bad context value");
    }
    request.context = {*season, *trip, *group};
    const auto candidates = j.find("candidates");
    if (candidates == j.end() || !candidates->is_array()) {
      parse_fail(path, line, "missing 'candidates' array");
    }
    for (const json& candidate : *candidates) {
      if (!candidate.is_string()) {
        parse_fail(path, line, "candidates must be strings");
      }
      request.candidates.push_back(candidate.get<std::string>());
    }
    requests.push_back(std::move(request));
  });
  return requests;
}

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  const auto result =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

}  // namespace

BundlePaths BundlePaths::in_dir(const std::string& dir) {
  const auto join = [&dir](const char* name) {
    return (std::filesystem::path(dir) / name).string();
  };
  return {join("venues.jsonl"), join("reviews.jsonl"), join("profiles.jsonl"),
          join("requests.jsonl"), join("qrels.jsonl")};
}

const UserHistory* DatasetBundle::find_user(const std::string& user_id) const {
  for (const UserHistory& history : histories) {
    if (history.user_id == user_id) return &history;
  }
  return nullptr;
}

QrelSet load_qrels(const std::string& path) {
  QrelSet qrels;
  for_each_jsonl(path, [&](const json& j, std::size_t line) {
    const std::string request_id = require_string(j, "request_id", path, line);
    const std::string venue_id = require_string(j, "venue_id", path, line);
    const std::int64_t grade = require_int(j, "grade", path, line);
    if (grade < kMinRating || grade > kMaxRating) {
      parse_fail(path, line,
                 "grade " + std::to_string(grade) + " outside [0,4]");
    }
    qrels.set(request_id, venue_id, static_cast<int>(grade));
  });
  return qrels;
}

DatasetBundle load_bundle(const BundlePaths& paths) {
  DatasetBundle bundle;
  bundle.catalog = Catalog(load_venues(paths.venues));
  const std::vector<Review> reviews = load_reviews(paths.reviews);
  bundle.histories = load_histories(paths.profiles);
  bundle.requests = load_requests(paths.requests);
  if (!paths.qrels.empty() && std::filesystem::exists(paths.qrels)) {
    bundle.qrels = load_qrels(paths.qrels);
  }

  // Attach reviews first so validation sees them; unresolved venue ids
  // become report entries.
  std::vector<ValidationIssue> dangling_reviews;
  for (const Review& review : reviews) {
    const VenueRecord* venue = bundle.catalog.find(review.venue_id);
    if (venue == nullptr) {
      dangling_reviews.push_back({ValidationIssue::Kind::kDanglingReview,
                                  review.venue_id,
                                  "review for unknown venue"});
      continue;
    }
    const std::size_t index =
        static_cast<std::size_t>(venue - bundle.catalog.venues().data());
    bundle.catalog.venues()[index].reviews.push_back(review);
  }

  ValidationReport report =
      validate_dataset(bundle.catalog, bundle.histories, bundle.requests);
  report.issues.insert(report.issues.end(), dangling_reviews.begin(),
                       dangling_reviews.end());

  std::set<std::string> request_ids;
  for (const SuggestionRequest& request : bundle.requests) {
    request_ids.insert(request.request_id);
  }
  for (const auto& [request_id, venues] : bundle.qrels.by_query()) {
    if (request_ids.find(request_id) == request_ids.end()) {
      report.issues.push_back({ValidationIssue::Kind::kDanglingQrelRequest,
                               request_id, "judgment for unknown request"});
    }
    for (const auto& [venue_id, grade] : venues) {
      if (grade < kMinRating || grade > kMaxRating) {
        report.issues.push_back({ValidationIssue::Kind::kGradeOutOfRange,
                                 request_id,
                                 "venue '" + venue_id + "' graded " +
                                     std::to_string(grade)});
      }
      if (bundle.catalog.find(venue_id) == nullptr) {
        report.issues.push_back({ValidationIssue::Kind::kDanglingQrelVenue,
                                 venue_id,
                                 "judgment for unknown venue"});
      }
    }
  }

  if (!report.empty()) {
    throw Error(ErrorCode::kValidation, report.to_string());
  }
  return bundle;
}

void write_bundle(const DatasetBundle& bundle, const BundlePaths& paths) {
  const auto open = [](const std::string& path) {
    const std::filesystem::path parent =
        std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(parent, ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
    return out;
  };

  {
    std::ofstream out = open(paths.venues);
    for (const VenueRecord& venue : bundle.catalog.venues()) {
      json j;
      j["venue_id"] = venue.venue_id;
      json by_source = json::object();
      if (!venue.foursquare_categories.empty()) {
        by_source["foursquare"] = venue.foursquare_categories;
      }
      if (!venue.yelp_categories.empty()) {
        by_source["yelp"] = venue.yelp_categories;
      }
      j["categories_by_source"] = by_source;
      j["taste_tags"] = venue.taste_tags;
      if (venue.season_checkins) {
        json seasons = json::object();
        for (int s = 0; s < kSeasonCount; ++s) {
          seasons[to_string(static_cast<Season>(s))] =
              (*venue.season_checkins)[static_cast<std::size_t>(s)];
        }
        j["season_checkins"] = seasons;
      }
      if (venue.traveler_checkins) {
        json trip = json::object();
        for (int t = 0; t < kTripTypeCount; ++t) {
          trip[to_string(static_cast<TripType>(t))] =
              venue.traveler_checkins->trip[static_cast<std::size_t>(t)];
        }
        json group = json::object();
        for (int g = 0; g < kGroupTypeCount; ++g) {
          group[to_string(static_cast<GroupType>(g))] =
              venue.traveler_checkins->group[static_cast<std::size_t>(g)];
        }
        j["traveler_checkins"] = {{"trip", trip}, {"group", group}};
      }
      out << j.dump() << '\n';
    }
  }

  {
    std::ofstream out = open(paths.reviews);
    for (const VenueRecord& venue : bundle.catalog.venues()) {
      for (const Review& review : venue.reviews) {
        json j;
        j["venue_id"] = review.venue_id;
        j["source"] = to_string(review.source);
        j["stars"] = review.stars;
        j["text"] = review.text;
        j["timestamp"] = review.timestamp_text;
        out << j.dump() << '\n';
      }
    }
  }

  {
    std::ofstream out = open(paths.profiles);
    for (const UserHistory& history : bundle.histories) {
      json ratings = json::array();
      for (const RatedVenue& rated : history.rated) {
        ratings.push_back({{"venue_id", rated.venue_id},
                           {"rating", rated.rating}});
      }
      json j;
      j["user_id"] = history.user_id;
      j["ratings"] = ratings;
      out << j.dump() << '\n';
    }
  }

  {
    std::ofstream out = open(paths.requests);
    for (const SuggestionRequest& request : bundle.requests) {
      json j;
      j["request_id"] = request.request_id;
      j["user_id"] = request.user_id;
      j["context"] = {{"season", to_string(request.context.season)},
                      {"trip_type", to_string(request.context.trip)},
                      {"group_type", to_string(request.context.group)}};
      j["candidates"] = request.candidates;
      out << j.dump() << '\n';
    }
  }

  {
    std::ofstream out = open(paths.qrels);
    for (const auto& [request_id, venues] : bundle.qrels.by_query()) {
      for (const auto& [venue_id, grade] : venues) {
        json j;
        j["request_id"] = request_id;
        j["venue_id"] = venue_id;
        j["grade"] = grade;
        out << j.dump() << '\n';
      }
    }
  }
}

void write_run_file(const std::string& path,
                    const std::vector<RunLine>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  for (const RunLine& line : lines) {
    out << line.request_id << '\t' << line.rank << '\t' << line.venue_id
        << '\t' << format_double(line.score) << '\t' << line.tag << '\n';
  }
}

std::vector<RunLine> read_run_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::vector<RunLine> lines;
  std::string text;
  std::size_t line_number = 0;
  while (std::getline(in, text)) {
    ++line_number;
    if (text.empty()) continue;
    std::istringstream fields(text);
    RunLine line;
    std::string rank_text, score_text;
    if (!std::getline(fields, line.request_id, '\t') ||
        !std::getline(fields, rank_text, '\t') ||
        !std::getline(fields, line.venue_id, '\t') ||
        !std::getline(fields, score_text, '\t') ||
        !std::getline(fields, line.tag)) {
      parse_fail(path, line_number, "expected 5 tab-separated fields");
    }
    try {
      line.rank = std::stoi(rank_text);
      line.score = std::stod(score_text);
    } catch (const std::exception&) {
      parse_fail(path, line_number, "bad rank or score");
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

void write_metric_report(const std::string& path,
                         const std::vector<MetricRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  for (const MetricRecord& record : records) {
    json j;
    j["scope"] = record.scope;
    j["k"] = record.cutoff;
    j["p_at_k"] = record.p_at_k;
    j["mrr"] = record.reciprocal_rank_or_mrr;
    out << j.dump() << '\n';
  }
}

}  // namespace venuerank
