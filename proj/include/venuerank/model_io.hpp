// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "venuerank/config.hpp"
#include "venuerank/frequency_scoring.hpp"
#include "venuerank/ltr.hpp"
#include "venuerank/review_scoring.hpp"

namespace venuerank {

/// Vocabulary plus the classifier trained over it; both are needed to score.
struct SvmBundle {
  Vocabulary vocabulary;
  SvmModel model;
};

/// Everything user-specific the scorer needs at ranking time.
struct UserModels {
  UserProfiles profiles;
  std::optional<SvmBundle> svm_yelp;
  std::optional<SvmBundle> svm_tripadvisor;

  const std::optional<SvmBundle>& svm_for(Source source) const;
};

struct TrainedModels {
  std::map<std::string, UserModels> users;
  LambdaMartModel ranker;
  PipelineConfig config;
};

/// Container format shared by every model file: magic + format version +
/// type tag + CBOR payload + FNV-1a checksum. Doubles round-trip bit-exactly.
void write_model_file(const std::string& path, const std::string& type,
                      const nlohmann::json& payload);

/// Verifies length, checksum, version and type before returning the payload.
/// Corruption (including truncation) throws kModelFormat.
nlohmann::json read_model_file(const std::string& path,
                               const std::string& expected_type);

/// One manifest, one ranker file, and per-user profile/SVM files under
/// `dir/users/`. Load(save(m)) reproduces every score bit-exactly.
void save_models(const std::string& dir, const TrainedModels& models);
TrainedModels load_models(const std::string& dir);

}  // namespace venuerank
