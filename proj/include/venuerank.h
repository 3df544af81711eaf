/* SPDX-License-Identifier: Apache-2.0
 * Copyright 2026 venuerank contributors
 *
 * C API of the venuerank engine. The library loads JSONL venue datasets,
 * trains per-user preference models plus a gradient-boosted ranker, ranks
 * suggestion requests, and evaluates runs. Handles are opaque; every
 * fallible call returns a vr_status and fills the caller-provided vr_error.
 */

#ifndef VENUERANK_H
#define VENUERANK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(VENUERANK_BUILD_SHARED)
#define VENUERANK_API __declspec(dllexport)
#else
#define VENUERANK_API __declspec(dllimport)
#endif
#else
#define VENUERANK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vr_status {
  VR_OK = 0,
  VR_ERR_INVALID_ARGUMENT = 1,
  VR_ERR_IO = 2,
  VR_ERR_PARSE = 3,
  VR_ERR_VALIDATION = 4,
  VR_ERR_DATA = 5,         /* dataset cannot support the operation */
  VR_ERR_TRAINING = 6,     /* training diverged */
  VR_ERR_MODEL_FORMAT = 7, /* checksum / version / type mismatch */
  VR_ERR_INTERNAL = 8
} vr_status;

typedef struct vr_error {
  int code;           /* a vr_status value */
  char message[512];  /* empty on success */
} vr_error;

typedef struct vr_bundle vr_bundle;
typedef struct vr_models vr_models;

typedef struct vr_pipeline_config {
  uint64_t seed;
  double svm_lambda_reg;
  int svm_epochs;
  int ltr_trees;
  double ltr_learning_rate;
  int ltr_max_leaves;
  int ltr_min_leaf;
  int ltr_ndcg_cutoff;
  int cv_folds;
  int metric_cutoff;
  int southern_hemisphere; /* 0 or 1 */
  char run_tag[64];
} vr_pipeline_config;

typedef struct vr_synth_config {
  uint64_t seed;
  int n_users;
  int n_venues;
  int n_candidates_per_request;
  int category_vocab_size;
  int tag_vocab_size;
  int review_term_vocab_size;
  double noise_level;
} vr_synth_config;

typedef struct vr_metrics {
  double p_at_k;
  double mrr;
} vr_metrics;

VENUERANK_API const char* vr_version(void);
VENUERANK_API const char* vr_status_name(int code);

VENUERANK_API void vr_pipeline_config_defaults(vr_pipeline_config* config);
VENUERANK_API void vr_synth_config_defaults(vr_synth_config* config);

/* Applies key=value overrides from a file onto either or both configs
 * (a null pointer skips that family). */
VENUERANK_API vr_status vr_config_apply_file(vr_pipeline_config* pipeline,
                                             vr_synth_config* synth,
                                             const char* path, vr_error* err);

/* Writes venues/reviews/profiles/requests/qrels JSONL files into out_dir. */
VENUERANK_API vr_status vr_synth(const vr_synth_config* config,
                                 const char* out_dir, vr_error* err);

/* Loads and validates the five JSONL files from data_dir (qrels optional). */
VENUERANK_API vr_bundle* vr_bundle_open(const char* data_dir, vr_error* err);
VENUERANK_API void vr_bundle_close(vr_bundle* bundle);
VENUERANK_API vr_status vr_bundle_counts(const vr_bundle* bundle,
                                         size_t* venues, size_t* users,
                                         size_t* requests, size_t* reviews,
                                         size_t* judgments);

VENUERANK_API vr_models* vr_train(const vr_bundle* bundle,
                                  const vr_pipeline_config* config,
                                  vr_error* err);
VENUERANK_API vr_status vr_models_save(const vr_models* models,
                                       const char* dir, vr_error* err);
VENUERANK_API vr_models* vr_models_load(const char* dir, vr_error* err);
VENUERANK_API void vr_models_close(vr_models* models);

/* Ranks every request in the bundle into a tab-separated run file. */
VENUERANK_API vr_status vr_rank_to_file(const vr_models* models,
                                        const vr_bundle* bundle,
                                        const char* run_path, vr_error* err);

/* Scores a run file against a qrels file; writes per-query records plus the
 * aggregate to report_path (pass NULL to skip the file). */
VENUERANK_API vr_status vr_evaluate_run(const char* run_path,
                                        const char* qrels_path, int cutoff,
                                        const char* report_path,
                                        vr_metrics* out_mean, vr_error* err);

/* Query-level k-fold cross-validation over the bundle; writes per-fold and
 * mean records to report_path (pass NULL to skip the file). */
VENUERANK_API vr_status vr_cross_validate(const vr_bundle* bundle,
                                          const vr_pipeline_config* config,
                                          const char* report_path,
                                          vr_metrics* out_mean, vr_error* err);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VENUERANK_H */
