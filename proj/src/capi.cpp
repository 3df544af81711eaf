// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#include "venuerank.h"

#include <cstdio>
#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include "venuerank/pipeline.hpp"
#include "venuerank/synthetic.hpp"

namespace {

using namespace venuerank;

struct BundleHandle {
  DatasetBundle data;
};

struct ModelsHandle {
  TrainedModels data;
};

vr_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return VR_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo: return VR_ERR_IO;
    case ErrorCode::kParse: return VR_ERR_PARSE;
    case ErrorCode::kValidation: return VR_ERR_VALIDATION;
    case ErrorCode::kProfileUnderflow:
    case ErrorCode::kEmptyProfile:
    case ErrorCode::kEmptyCorpus:
    case ErrorCode::kTrainingUnderflow:
    case ErrorCode::kUntrainableDataset:
    case ErrorCode::kInsufficientQueries: return VR_ERR_DATA;
    case ErrorCode::kTrainingDiverged: return VR_ERR_TRAINING;
    case ErrorCode::kModelFormat: return VR_ERR_MODEL_FORMAT;
  }
  return VR_ERR_INTERNAL;
}

void clear_error(vr_error* err) {
  if (err == nullptr) return;
  err->code = VR_OK;
  err->message[0] = '\0';
}

void fill_error(vr_error* err, vr_status status, const char* message) {
  if (err == nullptr) return;
  err->code = status;
  std::snprintf(err->message, sizeof(err->message), "%s", message);
}

/// Runs `body`, translating exceptions into status codes.
template <typename Body>
vr_status guarded(vr_error* err, Body&& body) {
  clear_error(err);
  try {
    body();
    return VR_OK;
  } catch (const Error& error) {
    const vr_status status = status_of(error.code());
    fill_error(err, status, error.what());
    return status;
  } catch (const std::exception& error) {
    fill_error(err, VR_ERR_INTERNAL, error.what());
    return VR_ERR_INTERNAL;
  } catch (...) {
    fill_error(err, VR_ERR_INTERNAL, "unknown failure");
    return VR_ERR_INTERNAL;
  }
}

PipelineConfig to_cpp(const vr_pipeline_config& c) {
  PipelineConfig out;
  out.seed = c.seed;
  out.svm.lambda_reg = c.svm_lambda_reg;
  out.svm.epochs = c.svm_epochs;
  out.svm.seed = c.seed;
  out.ltr.n_trees = c.ltr_trees;
  out.ltr.learning_rate = c.ltr_learning_rate;
  out.ltr.tree.max_leaves = c.ltr_max_leaves;
  out.ltr.tree.min_instances_per_leaf = c.ltr_min_leaf;
  out.ltr.ndcg_cutoff = c.ltr_ndcg_cutoff;
  out.ltr.seed = c.seed;
  out.cv_folds = c.cv_folds;
  out.metric_cutoff = c.metric_cutoff;
  out.hemisphere =
      c.southern_hemisphere != 0 ? Hemisphere::kSouthern : Hemisphere::kNorthern;
  out.run_tag = c.run_tag;
  return out;
}

void to_c(const PipelineConfig& in, vr_pipeline_config* c) {
  c->seed = in.seed;
  c->svm_lambda_reg = in.svm.lambda_reg;
  c->svm_epochs = in.svm.epochs;
  c->ltr_trees = in.ltr.n_trees;
  c->ltr_learning_rate = in.ltr.learning_rate;
  c->ltr_max_leaves = in.ltr.tree.max_leaves;
  c->ltr_min_leaf = in.ltr.tree.min_instances_per_leaf;
  c->ltr_ndcg_cutoff = in.ltr.ndcg_cutoff;
  c->cv_folds = in.cv_folds;
  c->metric_cutoff = in.metric_cutoff;
  c->southern_hemisphere = in.hemisphere == Hemisphere::kSouthern ? 1 : 0;
  std::snprintf(c->run_tag, sizeof(c->run_tag), "%s", in.run_tag.c_str());
}

SynthConfig to_cpp(const vr_synth_config& c) {
  SynthConfig out;
  out.seed = c.seed;
  out.n_users = c.n_users;
  out.n_venues = c.n_venues;
  out.n_candidates_per_request = c.n_candidates_per_request;
  out.category_vocab_size = c.category_vocab_size;
  out.tag_vocab_size = c.tag_vocab_size;
  out.review_term_vocab_size = c.review_term_vocab_size;
  out.noise_level = c.noise_level;
  return out;
}

void to_c(const SynthConfig& in, vr_synth_config* c) {
  c->seed = in.seed;
  c->n_users = in.n_users;
  c->n_venues = in.n_venues;
  c->n_candidates_per_request = in.n_candidates_per_request;
  c->category_vocab_size = in.category_vocab_size;
  c->tag_vocab_size = in.tag_vocab_size;
  c->review_term_vocab_size = in.review_term_vocab_size;
  c->noise_level = in.noise_level;
}

vr_status require(bool ok, const char* what, vr_error* err) {
  if (ok) return VR_OK;
  fill_error(err, VR_ERR_INVALID_ARGUMENT, what);
  return VR_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* vr_version(void) { return "0.1.0"; }

const char* vr_status_name(int code) {
  switch (code) {
    case VR_OK: return "ok";
    case VR_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case VR_ERR_IO: return "io";
    case VR_ERR_PARSE: return "parse";
    case VR_ERR_VALIDATION: return "validation";
    case VR_ERR_DATA: return "data";
    case VR_ERR_TRAINING: return "training";
    case VR_ERR_MODEL_FORMAT: return "model_format";
    case VR_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void vr_pipeline_config_defaults(vr_pipeline_config* config) {
  if (config == nullptr) return;
  to_c(PipelineConfig{}, config);
}

void vr_synth_config_defaults(vr_synth_config* config) {
  if (config == nullptr) return;
  to_c(SynthConfig{}, config);
}

vr_status vr_config_apply_file(vr_pipeline_config* pipeline,
                               vr_synth_config* synth, const char* path,
                               vr_error* err) {
  if (const vr_status bad = require(path != nullptr, "null path", err)) {
    return bad;
  }
  return guarded(err, [&] {
    PipelineConfig pipeline_cpp;
    SynthConfig synth_cpp;
    if (pipeline != nullptr) pipeline_cpp = to_cpp(*pipeline);
    if (synth != nullptr) synth_cpp = to_cpp(*synth);
    apply_config_file(pipeline != nullptr ? &pipeline_cpp : nullptr,
                      synth != nullptr ? &synth_cpp : nullptr, path);
    if (pipeline != nullptr) to_c(pipeline_cpp, pipeline);
    if (synth != nullptr) to_c(synth_cpp, synth);
  });
}

vr_status vr_synth(const vr_synth_config* config, const char* out_dir,
                   vr_error* err) {
  if (const vr_status bad = require(config != nullptr && out_dir != nullptr,
                                    "null argument", err)) {
    return bad;
  }
  return guarded(err, [&] {
    const SynthResult result = generate_synthetic(to_cpp(*config));
    write_bundle(result.bundle, BundlePaths::in_dir(out_dir));
  });
}

vr_bundle* vr_bundle_open(const char* data_dir, vr_error* err) {
  if (require(data_dir != nullptr, "null data_dir", err)) return nullptr;
  BundleHandle* handle = nullptr;
  guarded(err, [&] {
    auto owned = std::make_unique<BundleHandle>();
    owned->data = load_bundle(BundlePaths::in_dir(data_dir));
    handle = owned.release();
  });
  return reinterpret_cast<vr_bundle*>(handle);
}

void vr_bundle_close(vr_bundle* bundle) {
  delete reinterpret_cast<BundleHandle*>(bundle);
}

vr_status vr_bundle_counts(const vr_bundle* bundle, size_t* venues,
                           size_t* users, size_t* requests, size_t* reviews,
                           size_t* judgments) {
  if (bundle == nullptr) return VR_ERR_INVALID_ARGUMENT;
  const DatasetBundle& data =
      reinterpret_cast<const BundleHandle*>(bundle)->data;
  if (venues != nullptr) *venues = data.catalog.venues().size();
  if (users != nullptr) *users = data.histories.size();
  if (requests != nullptr) *requests = data.requests.size();
  if (reviews != nullptr) {
    size_t total = 0;
    for (const VenueRecord& venue : data.catalog.venues()) {
      total += venue.reviews.size();
    }
    *reviews = total;
  }
  if (judgments != nullptr) *judgments = data.qrels.size();
  return VR_OK;
}

vr_models* vr_train(const vr_bundle* bundle, const vr_pipeline_config* config,
                    vr_error* err) {
  if (require(bundle != nullptr && config != nullptr, "null argument", err)) {
    return nullptr;
  }
  ModelsHandle* handle = nullptr;
  guarded(err, [&] {
    auto owned = std::make_unique<ModelsHandle>();
    owned->data =
        train_pipeline(reinterpret_cast<const BundleHandle*>(bundle)->data,
                       to_cpp(*config));
    handle = owned.release();
  });
  return reinterpret_cast<vr_models*>(handle);
}

vr_status vr_models_save(const vr_models* models, const char* dir,
                         vr_error* err) {
  if (const vr_status bad = require(models != nullptr && dir != nullptr,
                                    "null argument", err)) {
    return bad;
  }
  return guarded(err, [&] {
    save_models(dir, reinterpret_cast<const ModelsHandle*>(models)->data);
  });
}

vr_models* vr_models_load(const char* dir, vr_error* err) {
  if (require(dir != nullptr, "null dir", err)) return nullptr;
  ModelsHandle* handle = nullptr;
  guarded(err, [&] {
    auto owned = std::make_unique<ModelsHandle>();
    owned->data = load_models(dir);
    handle = owned.release();
  });
  return reinterpret_cast<vr_models*>(handle);
}

void vr_models_close(vr_models* models) {
  delete reinterpret_cast<ModelsHandle*>(models);
}

vr_status vr_rank_to_file(const vr_models* models, const vr_bundle* bundle,
                          const char* run_path, vr_error* err) {
  if (const vr_status bad =
          require(models != nullptr && bundle != nullptr && run_path != nullptr,
                  "null argument", err)) {
    return bad;
  }
  return guarded(err, [&] {
    const std::vector<RunLine> lines =
        rank_all(reinterpret_cast<const ModelsHandle*>(models)->data,
                 reinterpret_cast<const BundleHandle*>(bundle)->data);
    write_run_file(run_path, lines);
  });
}

vr_status vr_evaluate_run(const char* run_path, const char* qrels_path,
                          int cutoff, const char* report_path,
                          vr_metrics* out_mean, vr_error* err) {
  if (const vr_status bad = require(run_path != nullptr && qrels_path != nullptr,
                                    "null argument", err)) {
    return bad;
  }
  return guarded(err, [&] {
    const std::vector<RunLine> run = read_run_file(run_path);
    const QrelSet qrels = load_qrels(qrels_path);
    const EvalResult result = evaluate_run(run, qrels, cutoff);
    if (report_path != nullptr) {
      std::vector<MetricRecord> records = result.per_query;
      records.push_back(
          {"mean", result.cutoff, result.mean_p_at_k, result.mean_mrr});
      write_metric_report(report_path, records);
    }
    if (out_mean != nullptr) {
      out_mean->p_at_k = result.mean_p_at_k;
      out_mean->mrr = result.mean_mrr;
    }
  });
}

vr_status vr_cross_validate(const vr_bundle* bundle,
                            const vr_pipeline_config* config,
                            const char* report_path, vr_metrics* out_mean,
                            vr_error* err) {
  if (const vr_status bad = require(bundle != nullptr && config != nullptr,
                                    "null argument", err)) {
    return bad;
  }
  return guarded(err, [&] {
    const CrossValidationResult result = cross_validate_bundle(
        reinterpret_cast<const BundleHandle*>(bundle)->data, to_cpp(*config));
    if (report_path != nullptr) {
      std::vector<MetricRecord> records;
      for (std::size_t i = 0; i < result.folds.size(); ++i) {
        records.push_back({"fold:" + std::to_string(i + 1),
                           result.metric_cutoff, result.folds[i].p_at_k,
                           result.folds[i].mrr});
      }
      records.push_back({"mean", result.metric_cutoff, result.mean_p_at_k,
                         result.mean_mrr});
      write_metric_report(report_path, records);
    }
    if (out_mean != nullptr) {
      out_mean->p_at_k = result.mean_p_at_k;
      out_mean->mrr = result.mean_mrr;
    }
  });
}

}  // extern "C"
