// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#pragma once

#include <cstdint>
#include <string>

#include "venuerank/context_scoring.hpp"
#include "venuerank/ltr.hpp"
#include "venuerank/review_scoring.hpp"

namespace venuerank {

/// Every tunable of the scoring/training/evaluation pipeline with its
/// default. A key=value file can override any field (see config_keys() and
/// the README).
struct PipelineConfig {
  std::uint64_t seed = 42;
  SvmConfig svm;
  LambdaMartConfig ltr;
  int cv_folds = 5;
  int metric_cutoff = 5;
  Hemisphere hemisphere = Hemisphere::kNorthern;
  std::string run_tag = "venuerank";
};

/// Synthetic dataset generator knobs.
struct SynthConfig {
  int n_users = 100;
  int n_venues = 500;
  int n_candidates_per_request = 30;
  int category_vocab_size = 40;
  int tag_vocab_size = 60;
  int review_term_vocab_size = 300;
  double noise_level = 0.1;
  std::uint64_t seed = 42;
};

/// Applies `key=value` lines from a file; '#' starts a comment. Either
/// pointer may be null when the caller only cares about one config family.
/// Unknown keys and unparsable values throw kInvalidArgument.
void apply_config_file(PipelineConfig* pipeline, SynthConfig* synth,
                       const std::string& path);

/// Same, for one already-split line (used by tests and the file loader).
void apply_config_entry(PipelineConfig* pipeline, SynthConfig* synth,
                        const std::string& key, const std::string& value);

/// Human-readable list of accepted keys, one per line.
std::string config_keys();

}  // namespace venuerank
