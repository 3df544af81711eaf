// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#pragma once

#include <stdexcept>
#include <string>

namespace venuerank {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kParse,
  kValidation,
  kProfileUnderflow,
  kEmptyProfile,
  kEmptyCorpus,
  kTrainingUnderflow,
  kTrainingDiverged,
  kUntrainableDataset,
  kInsufficientQueries,
  kModelFormat,
};

const char* error_code_name(ErrorCode code);

/// Single exception type for the whole library; the code discriminates the
/// failure class so callers (and the C API) can map it without string parsing.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace venuerank
