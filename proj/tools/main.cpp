// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors
//
// Command-line front end; everything behind the subcommands goes through the
// shared-library C API.

#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "venuerank.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

int exit_code_for(vr_status status) {
  switch (status) {
    case VR_OK: return kExitOk;
    case VR_ERR_INVALID_ARGUMENT: return kExitUsage;
    default: return kExitData;
  }
}

int fail(const vr_error& err) {
  std::fprintf(stderr, "error (%s): %s\n", vr_status_name(err.code),
               err.message);
  return exit_code_for(static_cast<vr_status>(err.code));
}

std::string join(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

struct BundleCloser {
  void operator()(vr_bundle* b) const { vr_bundle_close(b); }
};
struct ModelsCloser {
  void operator()(vr_models* m) const { vr_models_close(m); }
};

using BundlePtr = std::unique_ptr<vr_bundle, BundleCloser>;
using ModelsPtr = std::unique_ptr<vr_models, ModelsCloser>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"venuerank - context-aware venue suggestion ranking"};
  app.set_version_flag("--version", vr_version());
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  std::string config_path;
  std::string out_dir;
  std::string data_dir;
  std::string models_dir;
  std::string run_path;
  std::string qrels_path;

  const auto add_common = [&](CLI::App* sub, bool with_out) {
    sub->add_option("--seed", seed, "Seed governing all randomness")
        ->capture_default_str();
    sub->add_option("--config", config_path,
                    "key=value overrides for every tunable default");
    if (with_out) {
      sub->add_option("--out", out_dir, "Output directory")->required();
    }
  };

  CLI::App* synth =
      app.add_subcommand("synth", "Generate a synthetic JSONL dataset");
  add_common(synth, true);

  CLI::App* train =
      app.add_subcommand("train", "Train user models and the ranker");
  add_common(train, true);
  train->add_option("--data", data_dir, "Dataset directory")->required();

  CLI::App* rank = app.add_subcommand("rank", "Rank requests into a run file");
  add_common(rank, true);
  rank->add_option("--data", data_dir, "Dataset directory")->required();
  rank->add_option("--models", models_dir, "Trained model directory")
      ->required();

  CLI::App* eval = app.add_subcommand("eval", "Score a run against judgments");
  add_common(eval, false);
  eval->add_option("--out", out_dir, "Output directory for metrics.jsonl");
  eval->add_option("--run", run_path, "Run file")->required();
  eval->add_option("--qrels", qrels_path, "Judgments file")->required();

  CLI::App* cv = app.add_subcommand(
      "cv", "k-fold cross-validation over a judged dataset");
  add_common(cv, false);
  cv->add_option("--out", out_dir, "Output directory for cv_metrics.jsonl");
  cv->add_option("--data", data_dir, "Dataset directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints usage/help
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  vr_error err;
  vr_pipeline_config pipeline_config;
  vr_pipeline_config_defaults(&pipeline_config);
  vr_synth_config synth_config;
  vr_synth_config_defaults(&synth_config);

  if (!config_path.empty()) {
    if (vr_config_apply_file(&pipeline_config, &synth_config,
                             config_path.c_str(), &err) != VR_OK) {
      return fail(err);
    }
  }
  // An explicit --seed beats the config file; otherwise the file's seed (or
  // the default 42) stands.
  CLI::App* active = app.get_subcommands().front();
  if (active->count("--seed") > 0) {
    pipeline_config.seed = seed;
    synth_config.seed = seed;
  }

  if (synth->parsed()) {
    if (vr_synth(&synth_config, out_dir.c_str(), &err) != VR_OK) {
      return fail(err);
    }
    std::printf("wrote dataset (%d users, %d venues) to %s\n",
                synth_config.n_users, synth_config.n_venues, out_dir.c_str());
    return kExitOk;
  }

  if (train->parsed()) {
    BundlePtr bundle(vr_bundle_open(data_dir.c_str(), &err));
    if (!bundle) return fail(err);
    ModelsPtr models(vr_train(bundle.get(), &pipeline_config, &err));
    if (!models) return fail(err);
    if (vr_models_save(models.get(), out_dir.c_str(), &err) != VR_OK) {
      return fail(err);
    }
    size_t users = 0;
    vr_bundle_counts(bundle.get(), nullptr, &users, nullptr, nullptr, nullptr);
    std::printf("trained models for %zu users; saved to %s\n", users,
                out_dir.c_str());
    return kExitOk;
  }

  if (rank->parsed()) {
    BundlePtr bundle(vr_bundle_open(data_dir.c_str(), &err));
    if (!bundle) return fail(err);
    ModelsPtr models(vr_models_load(models_dir.c_str(), &err));
    if (!models) return fail(err);
    std::error_code ignored;
    std::filesystem::create_directories(out_dir, ignored);
    const std::string path = join(out_dir, "run.tsv");
    if (vr_rank_to_file(models.get(), bundle.get(), path.c_str(), &err) !=
        VR_OK) {
      return fail(err);
    }
    std::printf("wrote %s\n", path.c_str());
    return kExitOk;
  }

  if (eval->parsed()) {
    std::string report;
    if (!out_dir.empty()) {
      std::error_code ignored;
      std::filesystem::create_directories(out_dir, ignored);
      report = join(out_dir, "metrics.jsonl");
    }
    vr_metrics mean;
    if (vr_evaluate_run(run_path.c_str(), qrels_path.c_str(),
                        pipeline_config.metric_cutoff,
                        report.empty() ? nullptr : report.c_str(), &mean,
                        &err) != VR_OK) {
      return fail(err);
    }
    std::printf("P@%d  %.4f\nMRR   %.4f\n", pipeline_config.metric_cutoff,
                mean.p_at_k, mean.mrr);
    return kExitOk;
  }

  if (cv->parsed()) {
    BundlePtr bundle(vr_bundle_open(data_dir.c_str(), &err));
    if (!bundle) return fail(err);
    std::string report;
    if (!out_dir.empty()) {
      std::error_code ignored;
      std::filesystem::create_directories(out_dir, ignored);
      report = join(out_dir, "cv_metrics.jsonl");
    }
    vr_metrics mean;
    if (vr_cross_validate(bundle.get(), &pipeline_config,
                          report.empty() ? nullptr : report.c_str(), &mean,
                          &err) != VR_OK) {
      return fail(err);
    }
    std::printf("%d-fold mean  P@%d %.4f  MRR %.4f\n", pipeline_config.cv_folds,
                pipeline_config.metric_cutoff, mean.p_at_k, mean.mrr);
    return kExitOk;
  }

  return kExitUsage;
}
