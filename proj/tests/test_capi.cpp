// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "venuerank.h"

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "venuerank_capi" / name;
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

struct SmallDataset {
  fs::path dir;
  vr_synth_config config;
};

SmallDataset make_small_dataset(const std::string& name, uint64_t seed) {
  SmallDataset out;
  out.dir = scratch_dir(name);
  vr_synth_config_defaults(&out.config);
  out.config.n_users = 12;
  out.config.n_venues = 80;
  out.config.n_candidates_per_request = 10;
  out.config.noise_level = 0.05;
  out.config.seed = seed;
  vr_error err;
  REQUIRE(vr_synth(&out.config, out.dir.string().c_str(), &err) == VR_OK);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(vr_version()) == "0.1.0");
  CHECK(std::string(vr_status_name(VR_OK)) == "ok");
  CHECK(std::string(vr_status_name(VR_ERR_VALIDATION)) == "validation");
}

TEST_CASE("defaults mirror the documented values") {
  vr_pipeline_config pipeline;
  vr_pipeline_config_defaults(&pipeline);
  CHECK(pipeline.seed == 42);
  CHECK(pipeline.svm_lambda_reg == 1e-4);
  CHECK(pipeline.svm_epochs == 50);
  CHECK(pipeline.ltr_trees == 100);
  CHECK(pipeline.ltr_learning_rate == 0.1);
  CHECK(pipeline.ltr_max_leaves == 8);
  CHECK(pipeline.ltr_min_leaf == 5);
  CHECK(pipeline.cv_folds == 5);
  CHECK(pipeline.metric_cutoff == 5);
  CHECK(pipeline.southern_hemisphere == 0);

  vr_synth_config synth;
  vr_synth_config_defaults(&synth);
  CHECK(synth.n_users == 100);
  CHECK(synth.n_venues == 500);
  CHECK(synth.n_candidates_per_request == 30);
  CHECK(synth.noise_level == 0.1);
}

TEST_CASE("error paths surface codes and messages") {
  vr_error err;
  CHECK(vr_bundle_open("/nonexistent/place", &err) == nullptr);
  CHECK(err.code == VR_ERR_IO);
  CHECK(err.message[0] != '\0');

  vr_synth_config bad;
  vr_synth_config_defaults(&bad);
  bad.n_candidates_per_request = bad.n_venues + 1;
  const fs::path dir = scratch_dir("bad_synth");
  CHECK(vr_synth(&bad, dir.string().c_str(), &err) == VR_ERR_INVALID_ARGUMENT);

  CHECK(vr_models_load(dir.string().c_str(), &err) == nullptr);
  CHECK(err.code == VR_ERR_IO);  // no manifest in an empty directory
  CHECK(vr_config_apply_file(nullptr, nullptr, "/nope.cfg", &err) == VR_ERR_IO);
}

TEST_CASE("full pipeline through the C API") {
  const SmallDataset data = make_small_dataset("pipeline", 9001);
  vr_error err;

  vr_bundle* bundle = vr_bundle_open(data.dir.string().c_str(), &err);
  REQUIRE(bundle != nullptr);
  size_t venues = 0, users = 0, requests = 0, reviews = 0, judgments = 0;
  REQUIRE(vr_bundle_counts(bundle, &venues, &users, &requests, &reviews,
                           &judgments) == VR_OK);
  CHECK(venues == 80);
  CHECK(users == 12);
  CHECK(requests == 12);
  CHECK(judgments == 12 * 10);
  CHECK(reviews > 0);

  vr_pipeline_config config;
  vr_pipeline_config_defaults(&config);
  config.ltr_trees = 30;
  config.seed = 9001;

  vr_models* models = vr_train(bundle, &config, &err);
  REQUIRE(models != nullptr);

  const fs::path model_dir = scratch_dir("pipeline_models");
  REQUIRE(vr_models_save(models, model_dir.string().c_str(), &err) == VR_OK);
  vr_models* restored = vr_models_load(model_dir.string().c_str(), &err);
  REQUIRE(restored != nullptr);

  const fs::path run_a = data.dir / "run_a.tsv";
  const fs::path run_b = data.dir / "run_b.tsv";
  REQUIRE(vr_rank_to_file(models, bundle, run_a.string().c_str(), &err) ==
          VR_OK);
  REQUIRE(vr_rank_to_file(restored, bundle, run_b.string().c_str(), &err) ==
          VR_OK);
  CHECK(slurp(run_a) == slurp(run_b));  // loaded models score identically

  vr_metrics eval_metrics;
  const fs::path report = data.dir / "metrics.jsonl";
  REQUIRE(vr_evaluate_run(run_a.string().c_str(),
                          (data.dir / "qrels.jsonl").string().c_str(), 5,
                          report.string().c_str(), &eval_metrics,
                          &err) == VR_OK);
  CHECK(eval_metrics.p_at_k > 0.0);
  CHECK(eval_metrics.mrr > 0.0);
  CHECK(fs::exists(report));

  vr_metrics cv_metrics;
  REQUIRE(vr_cross_validate(bundle, &config, nullptr, &cv_metrics, &err) ==
          VR_OK);
  CHECK(cv_metrics.p_at_k > 0.0);
  CHECK(cv_metrics.mrr > 0.0);

  vr_models_close(models);
  vr_models_close(restored);
  vr_bundle_close(bundle);
}

TEST_CASE("synthetic output is byte-identical per seed through the C API") {
  const SmallDataset a = make_small_dataset("det_a", 5150);
  const SmallDataset b = make_small_dataset("det_b", 5150);
  for (const char* name : {"venues.jsonl", "reviews.jsonl", "profiles.jsonl",
                           "requests.jsonl", "qrels.jsonl"}) {
    REQUIRE(slurp(a.dir / name) == slurp(b.dir / name));
  }
}

TEST_CASE("config file application through the C API") {
  const fs::path dir = scratch_dir("capi_config");
  {
    std::ofstream out(dir / "o.cfg");
    out << "ltr.trees = 7\nsynth.users = 3\n";
  }
  vr_pipeline_config pipeline;
  vr_pipeline_config_defaults(&pipeline);
  vr_synth_config synth;
  vr_synth_config_defaults(&synth);
  vr_error err;
  REQUIRE(vr_config_apply_file(&pipeline, &synth,
                               (dir / "o.cfg").string().c_str(), &err) == VR_OK);
  CHECK(pipeline.ltr_trees == 7);
  CHECK(synth.n_users == 3);

  {
    std::ofstream out(dir / "bad.cfg");
    out << "mystery.key = 1\n";
  }
  CHECK(vr_config_apply_file(&pipeline, &synth,
                             (dir / "bad.cfg").string().c_str(),
                             &err) == VR_ERR_INVALID_ARGUMENT);
}
