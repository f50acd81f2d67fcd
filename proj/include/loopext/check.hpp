// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

// Sampled-check outcomes shared by the checkers and the suite runner.

#pragma once

#include <string>

namespace loopext {

enum class CheckStatus { kPass, kFail, kIndeterminate, kVacuous };

const char* to_string(CheckStatus s) noexcept;

struct CheckReport {
  std::string name;
  int samples = 0;
  int passed = 0;
  int failed = 0;
  int indeterminate = 0;
  double max_error = 0.0;  // +inf once a sample is incomparable
  double tolerance = 0.0;

  /// Vacuous with no samples; otherwise fail beats indeterminate beats pass.
  CheckStatus status() const;

  /// Records one sample. NaN errors count as +inf.
  void add(CheckStatus s, double error);
  /// Adds the samples of another report of the same check.
  void absorb(const CheckReport& other);
};

}  // namespace loopext
