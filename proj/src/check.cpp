// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include "loopext/check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace loopext {

const char* to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kIndeterminate: return "indeterminate";
    case CheckStatus::kVacuous: return "vacuous";
  }
  return "unknown";
}

CheckStatus CheckReport::status() const {
  if (samples == 0) return CheckStatus::kVacuous;
  if (failed > 0) return CheckStatus::kFail;
  if (indeterminate > 0) return CheckStatus::kIndeterminate;
  return CheckStatus::kPass;
}

void CheckReport::add(CheckStatus s, double error) {
  ++samples;
  switch (s) {
    case CheckStatus::kPass: ++passed; break;
    case CheckStatus::kIndeterminate: ++indeterminate; break;
    default: ++failed; break;
  }
  max_error = std::isnan(error) ? std::numeric_limits<double>::infinity() : std::max(max_error, error);
}

void CheckReport::absorb(const CheckReport& other) {
  samples += other.samples;
  passed += other.passed;
  failed += other.failed;
  indeterminate += other.indeterminate;
  max_error = std::max(max_error, other.max_error);
}

}  // namespace loopext
