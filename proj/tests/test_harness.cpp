// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "venuerank/model_io.hpp"
#include "venuerank/pipeline.hpp"
#include "venuerank/rng.hpp"
#include "venuerank/synthetic.hpp"

using namespace venuerank;
namespace fs = std::filesystem;

namespace {

const std::string kExampleDir =
    std::string(VENUERANK_SOURCE_DIR) + "/data/example";

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "venuerank_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("the shipped example fixture loads") {
  const DatasetBundle bundle = load_bundle(BundlePaths::in_dir(kExampleDir));
  CHECK(bundle.catalog.venues().size() == 5);
  CHECK(bundle.histories.size() == 2);
  CHECK(bundle.requests.size() == 2);
  CHECK(bundle.qrels.size() == 6);

  std::size_t reviews = 0;
  for (const VenueRecord& venue : bundle.catalog.venues()) {
    reviews += venue.reviews.size();
  }
  CHECK(reviews == 14);
}

TEST_CASE("parse errors name the file and line") {
  const fs::path dir = scratch_dir("parse_errors");
  for (const char* name :
       {"venues.jsonl", "reviews.jsonl", "profiles.jsonl", "requests.jsonl"}) {
    fs::copy_file(fs::path(kExampleDir) / name, dir / name);
  }
  {
    std::ofstream out(dir / "reviews.jsonl", std::ios::app);
    out << R"({"venue_id":"art_museum","source":"yelp","stars":9,)"
        << R"("text":"x","timestamp":"2015-01-01T00:00:00Z"})" << '\n';
  }
  try {
    (void)load_bundle(BundlePaths::in_dir(dir.string()));
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("reviews.jsonl:15") != std::string::npos);
    CHECK(std::string(e.what()).find("stars") != std::string::npos);
  }
}

TEST_CASE("validation failures abort the load") {
  const fs::path dir = scratch_dir("validation");
  for (const char* name :
       {"venues.jsonl", "reviews.jsonl", "profiles.jsonl", "qrels.jsonl"}) {
    fs::copy_file(fs::path(kExampleDir) / name, dir / name);
  }
  {
    std::ofstream out(dir / "requests.jsonl");
    out << R"({"request_id":"r1","user_id":"nobody",)"
        << R"("context":{"season":"fall","trip_type":"leisure","group_type":"solo"},)"
        << R"("candidates":["art_museum"]})" << '\n';
  }
  try {
    (void)load_bundle(BundlePaths::in_dir(dir.string()));
    FAIL("expected validation error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kValidation);
    CHECK(std::string(e.what()).find("UNKNOWN_USER") != std::string::npos);
  }
}

TEST_CASE("missing context values are rejected at ingestion") {
  const fs::path dir = scratch_dir("missing_context");
  for (const char* name : {"venues.jsonl", "reviews.jsonl", "profiles.jsonl"}) {
    fs::copy_file(fs::path(kExampleDir) / name, dir / name);
  }
  {
    std::ofstream out(dir / "requests.jsonl");
    out << R"({"request_id":"r1","user_id":"u_alice",)"
        << R"("context":{"season":"fall","trip_type":"leisure"},)"
        << R"("candidates":["art_museum"]})" << '\n';
  }
  CHECK_THROWS_AS((void)load_bundle(BundlePaths::in_dir(dir.string())), Error);
}

TEST_CASE("config files override defaults") {
  const fs::path dir = scratch_dir("config");
  {
    std::ofstream out(dir / "overrides.cfg");
    out << "# comment\n"
        << "seed = 9\n"
        << "svm.epochs = 12\n"
        << "ltr.trees=33\n"
        << "context.southern_hemisphere = true\n"
        << "synth.noise = 0.25\n";
  }
  PipelineConfig pipeline;
  SynthConfig synth;
  apply_config_file(&pipeline, &synth, (dir / "overrides.cfg").string());
  CHECK(pipeline.seed == 9);
  CHECK(synth.seed == 9);
  CHECK(pipeline.svm.epochs == 12);
  CHECK(pipeline.ltr.n_trees == 33);
  CHECK(pipeline.hemisphere == Hemisphere::kSouthern);
  CHECK(synth.noise_level == 0.25);

  SUBCASE("unknown keys are rejected") {
    std::ofstream out(dir / "bad.cfg");
    out << "nope = 1\n";
    out.close();
    CHECK_THROWS_AS(apply_config_file(&pipeline, &synth,
                                      (dir / "bad.cfg").string()),
                    Error);
  }
}

TEST_CASE("synthetic bundles validate and reproduce byte-identically") {
  SynthConfig config;
  config.n_users = 6;
  config.n_venues = 60;
  config.n_candidates_per_request = 12;
  config.noise_level = 0.0;
  config.seed = 31337;

  const SynthResult result = generate_synthetic(config);
  const ValidationReport report = validate_dataset(
      result.bundle.catalog, result.bundle.histories, result.bundle.requests);
  CHECK(report.empty());

  const fs::path dir_a = scratch_dir("synth_a");
  const fs::path dir_b = scratch_dir("synth_b");
  write_bundle(result.bundle, BundlePaths::in_dir(dir_a.string()));
  write_bundle(generate_synthetic(config).bundle,
               BundlePaths::in_dir(dir_b.string()));
  for (const char* name : {"venues.jsonl", "reviews.jsonl", "profiles.jsonl",
                           "requests.jsonl", "qrels.jsonl"}) {
    REQUIRE(slurp(dir_a / name) == slurp(dir_b / name));
  }

  SUBCASE("written bundles load back") {
    const DatasetBundle loaded = load_bundle(BundlePaths::in_dir(dir_a.string()));
    CHECK(loaded.catalog.venues().size() == 60);
    CHECK(loaded.histories.size() == 6);
    CHECK(loaded.qrels.size() == result.bundle.qrels.size());
  }
}

TEST_CASE("noise-free histories are self-consistent with the truth") {
  SynthConfig config;
  config.n_users = 8;
  config.n_venues = 80;
  config.n_candidates_per_request = 10;
  config.noise_level = 0.0;
  config.seed = 7;

  const SynthResult result = generate_synthetic(config);
  for (const UserHistory& history : result.bundle.histories) {
    const ContextSignals& context =
        result.truth.users.at(history.user_id).context;
    for (const RatedVenue& rated : history.rated) {
      const int points = result.truth.relevance_points(
          history.user_id, rated.venue_id, context);
      if (rated.rating >= kPositiveRatingMin) {
        REQUIRE(points >= SynthTruth::kPositivePointsMin);
      }
      REQUIRE(rated.rating ==
              result.truth.true_grade(history.user_id, rated.venue_id, context));
    }
  }

  SUBCASE("judgments also equal the truth at zero noise") {
    for (const SuggestionRequest& request : result.bundle.requests) {
      for (const std::string& venue_id : request.candidates) {
        REQUIRE(result.bundle.qrels.grade(request.request_id, venue_id) ==
                result.truth.true_grade(request.user_id, venue_id,
                                        request.context));
      }
    }
  }
}

TEST_CASE("full label noise makes ranking indistinguishable from random") {
  SynthConfig config;
  config.n_users = 200;  // 200 queries keep the statistics tight
  config.noise_level = 1.0;
  config.seed = 1405;

  const SynthResult result = generate_synthetic(config);
  PipelineConfig pipeline;
  pipeline.seed = 1405;
  const CrossValidationResult cv = cross_validate_bundle(result.bundle, pipeline);

  // Under uniform labels the held-out ranking is label-independent, so P@5
  // per query is hypergeometric in the query's relevant count. Compare the
  // observed mean against that expectation at three standard errors.
  double expectation = 0.0;
  double variance_sum = 0.0;
  const double n = static_cast<double>(config.n_candidates_per_request);
  for (const SuggestionRequest& request : result.bundle.requests) {
    int relevant = 0;
    for (const std::string& venue_id : request.candidates) {
      if (result.bundle.qrels.grade(request.request_id, venue_id) >=
          QrelSet::kRelevanceThreshold) {
        ++relevant;
      }
    }
    const double p = static_cast<double>(relevant) / n;
    expectation += p;
    variance_sum += 5.0 * p * (1.0 - p) * ((n - 5.0) / (n - 1.0)) / 25.0;
  }
  const double queries = static_cast<double>(result.bundle.requests.size());
  expectation /= queries;
  const double sigma = std::sqrt(variance_sum) / queries;
  CHECK(std::abs(cv.mean_p_at_k - expectation) <= 3.0 * sigma);
}

TEST_CASE("infeasible generator configs are rejected") {
  SynthConfig config;
  config.n_venues = 10;
  config.n_candidates_per_request = 11;
  try {
    (void)generate_synthetic(config);
    FAIL("expected invalid argument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }

  SynthConfig bad_noise;
  bad_noise.noise_level = 1.5;
  CHECK_THROWS_AS((void)generate_synthetic(bad_noise), Error);
}

TEST_CASE("model files survive a save/load round trip") {
  const DatasetBundle bundle = load_bundle(BundlePaths::in_dir(kExampleDir));
  PipelineConfig config;
  config.ltr.n_trees = 20;
  config.ltr.tree.max_leaves = 4;
  config.ltr.tree.min_instances_per_leaf = 1;
  const TrainedModels models = train_pipeline(bundle, config);

  const fs::path dir = scratch_dir("models");
  save_models(dir.string(), models);
  const TrainedModels loaded = load_models(dir.string());

  SUBCASE("svm scores are bit-identical on random vectors") {
    const SvmBundle& original = *models.users.at("u_alice").svm_yelp;
    const SvmBundle& restored = *loaded.users.at("u_alice").svm_yelp;
    REQUIRE(original.model.weights.size() == restored.model.weights.size());
    Rng rng(1);
    for (int trial = 0; trial < 100; ++trial) {
      SparseVector x;
      for (std::size_t j = 0; j < original.model.weights.size(); ++j) {
        if (rng.below(3) == 0) x.entries.push_back({j, rng.real01() * 2 - 1});
      }
      REQUIRE(original.model.raw_score(x) == restored.model.raw_score(x));
    }
  }

  SUBCASE("ranker output is identical on the fixture") {
    const std::vector<RunLine> before = rank_all(models, bundle);
    const std::vector<RunLine> after = rank_all(loaded, bundle);
    REQUIRE(before.size() == after.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
      REQUIRE(before[i].venue_id == after[i].venue_id);
      REQUIRE(before[i].score == after[i].score);
      REQUIRE(before[i].rank == after[i].rank);
    }
  }

  SUBCASE("profiles round trip") {
    const UserModels& original = models.users.at("u_alice");
    const UserModels& restored = loaded.users.at("u_alice");
    REQUIRE(original.profiles.foursquare_categories.has_value());
    CHECK(original.profiles.foursquare_categories->positive ==
          restored.profiles.foursquare_categories->positive);
    CHECK(original.profiles.foursquare_categories->denominator ==
          restored.profiles.foursquare_categories->denominator);
  }

  SUBCASE("truncation is detected as a checksum failure") {
    const fs::path ranker = dir / "ranker.vrm";
    std::string bytes = slurp(ranker);
    bytes.resize(bytes.size() / 2);
    std::ofstream out(ranker, std::ios::binary | std::ios::trunc);
    out << bytes;
    out.close();
    try {
      (void)load_models(dir.string());
      FAIL("expected model format error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kModelFormat);
      CHECK(std::string(e.what()).find("checksum") != std::string::npos);
    }
  }

  SUBCASE("corruption is detected") {
    const fs::path ranker = dir / "ranker.vrm";
    std::string bytes = slurp(ranker);
    bytes[bytes.size() / 2] ^= 0x5a;
    std::ofstream out(ranker, std::ios::binary | std::ios::trunc);
    out << bytes;
    out.close();
    try {
      (void)load_models(dir.string());
      FAIL("expected model format error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kModelFormat);
    }
  }

  SUBCASE("type confusion is detected") {
    try {
      (void)read_model_file((dir / "ranker.vrm").string(), "manifest");
      FAIL("expected model format error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kModelFormat);
    }
  }
}

TEST_CASE("run files round trip") {
  const fs::path dir = scratch_dir("runfile");
  const std::vector<RunLine> lines = {
      {"q1", 1, "v_a", 1.5, "tag"},
      {"q1", 2, "v_b", -0.25, "tag"},
      {"q2", 1, "v_c", 0.3333333333333333, "tag"},
  };
  const std::string path = (dir / "run.tsv").string();
  write_run_file(path, lines);
  const std::vector<RunLine> back = read_run_file(path);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    CHECK(back[i].request_id == lines[i].request_id);
    CHECK(back[i].rank == lines[i].rank);
    CHECK(back[i].venue_id == lines[i].venue_id);
    CHECK(back[i].score == lines[i].score);
    CHECK(back[i].tag == lines[i].tag);
  }
}

TEST_CASE("feature assembly marks absent sources") {
  const DatasetBundle bundle = load_bundle(BundlePaths::in_dir(kExampleDir));
  PipelineConfig config;
  const UserModels user = build_user_models(*bundle.find_user("u_alice"),
                                            bundle.catalog, config.svm,
                                            config.seed);

  // jazz_bar ships no check-in distributions.
  const VenueRecord& jazz = *bundle.catalog.find("jazz_bar");
  const FeatureVector with_reviews =
      assemble_features(user, ContextSignals{}, jazz);
  CHECK_FALSE(with_reviews.missing[kFeatSeason]);  // derived from reviews
  CHECK(with_reviews.missing[kFeatTravel]);
  CHECK(with_reviews.values[kFeatTravel] == 0.0);

  // A venue outside every source: all slots default and flag.
  VenueRecord bare;
  bare.venue_id = "bare";
  const FeatureVector nothing = assemble_features(user, ContextSignals{}, bare);
  for (int f = 0; f < kFeatureCount; ++f) {
    CHECK(nothing.values[static_cast<std::size_t>(f)] == 0.0);
    CHECK(nothing.missing[static_cast<std::size_t>(f)]);
  }

  SUBCASE("fully populated venues are compositional") {
    const VenueRecord& beach = *bundle.catalog.find("beach_park");
    const SuggestionRequest& request = bundle.requests[0];
    const FeatureVector features =
        assemble_features(user, request.context, beach);
    const CategoryTagScores cats =
        score_categories_and_tags(user.profiles, beach);
    CHECK(features.values[kFeatCatFoursquare] == cats.cat_foursquare);
    CHECK(features.values[kFeatCatYelp] == cats.cat_yelp);
    CHECK(features.values[kFeatTag] == cats.tag);
    const auto seasons = season_distribution(beach);
    CHECK(features.values[kFeatSeason] ==
          season_score(request.context.season, seasons.dist));
    const auto travelers = traveler_distribution(beach);
    CHECK(features.values[kFeatTravel] ==
          travel_score(request.context, travelers.dist));
    const ReviewScore yelp = decision_score(user.svm_yelp->model,
                                            user.svm_yelp->vocabulary, beach,
                                            Source::kYelp);
    CHECK(features.values[kFeatReviewYelp] == yelp.value);
  }
}

TEST_CASE("identical venues under one request get identical vectors") {
  const DatasetBundle bundle = load_bundle(BundlePaths::in_dir(kExampleDir));
  PipelineConfig config;
  const UserModels user = build_user_models(*bundle.find_user("u_bob"),
                                            bundle.catalog, config.svm,
                                            config.seed);
  const VenueRecord& venue = *bundle.catalog.find("art_museum");
  const ContextSignals context = bundle.requests[1].context;
  const FeatureVector a = assemble_features(user, context, venue);
  const FeatureVector b = assemble_features(user, context, venue);
  CHECK(a.values == b.values);
  CHECK(a.missing == b.missing);
}
