// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

// The check registry, suite runs, refinement studies, and their reports.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "loopext/check.hpp"
#include "loopext/mesh.hpp"
#include "loopext/serialize.hpp"

namespace loopext {

inline constexpr int kReportSchemaVersion = 1;

struct SuiteConfig {
  MeshResolution resolution;
  std::vector<double> tolerances{1e-3};  // circle tolerances in turns; the first decides pass/fail
  std::vector<std::uint64_t> seeds{1};
  std::vector<std::string> suites{"lie", "mesh", "wz", "mickelsson", "lifting"};
  int levels = 3;   // refinement levels for run_convergence
  int samples = 2;  // per seed and check
};

/// Throws Error(kConfigError) for empty or unknown suites, non-positive or
/// non-finite tolerances, no seeds, samples < 0, levels < 1, or a resolution
/// too coarse to build disks and paths.
void validate(const SuiteConfig& config);

/// What one check sees.
struct CheckContext {
  MeshResolution resolution;
  double tolerance = 1e-3;  // circle tolerance in turns
  std::uint64_t seed = 1;
  int samples = 2;
};

struct CheckInfo {
  std::string name;
  std::string suite;
  std::string anchor;       // stable identifier of the verified statement, or "plumbing"
  bool refinable = false;   // error is a discretization error, repeated by run_convergence
  bool circle = false;      // tolerance comes from the ladder rather than being fixed
};

const std::vector<CheckInfo>& list_checks();

/// Runs one registered check. Throws Error(kConfigError) for unknown names.
CheckReport run_check(const std::string& name, const CheckContext& context);

struct CheckRecord {
  CheckInfo info;
  CheckReport report;
  MeshResolution resolution;
  std::optional<double> passes_at;  // smallest ladder tolerance met, circle checks only
  double wall_time = 0.0;           // seconds
};

struct ConvergenceRecord {
  CheckInfo info;
  std::vector<CheckRecord> levels;    // coarse to fine
  std::optional<double> exponent;     // fitted decay order in the mesh size; empty for exact checks
  bool exact = false;                 // error at rounding level on every level
  bool monotone = true;
};

struct RunReport {
  std::string kind;  // "run", "convergence" or "replay"
  SuiteConfig config;
  std::vector<CheckRecord> records;
  std::vector<ConvergenceRecord> convergence;

  int count(CheckStatus s) const;
};

/// Runs every check of the selected suites at the configured resolution.
RunReport run_suite(const SuiteConfig& config);

/// Runs the refinable checks on `levels` resolutions halving down from the
/// configured one. Throws Error(kConfigError) unless levels >= 3.
RunReport run_convergence(const SuiteConfig& config);

/// Checks on a stored record: the serialization round trip plus checks that
/// depend on its kind.
RunReport replay(const Record& record, const SuiteConfig& config);

/// The resolution of level `k` of `levels`, the last being `finest`.
MeshResolution level_resolution(const MeshResolution& finest, int k, int levels);

/// Canonical JSON with sorted keys. Without timing, wall times are dropped and
/// equal configs give byte-identical output.
std::string to_json(const RunReport& report, bool with_timing = true);
std::string to_markdown(const RunReport& report);

/// 0 when nothing failed (and nothing was indeterminate unless allowed), 1 otherwise.
int exit_code(const RunReport& report, bool allow_indeterminate);

}  // namespace loopext
