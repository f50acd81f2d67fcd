// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace loopext {

enum class ErrorCode {
  kAntipodalSingularity,
  kEndpointMismatch,
  kBoundaryMismatch,
  kMeshMismatch,
  kBaseMismatch,
  kMiddleMismatch,
  kFusionContextMismatch,
  kActionConditionViolated,
  kNonConvergence,
  kConfigError,
  kFormatError,
};

/// Base of every exception thrown by the library. The code is what the C
/// API reports; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

const char* to_string(ErrorCode code) noexcept;

}  // namespace loopext
