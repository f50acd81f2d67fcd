// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <set>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "loopext/errors.hpp"
#include "loopext/parallel.hpp"
#include "loopext/suite.hpp"

using namespace loopext;

namespace {

const MeshResolution kSmall{17, 64, 8};

SuiteConfig small(std::vector<std::string> suites) {
  SuiteConfig c;
  c.resolution = kSmall;
  c.suites = std::move(suites);
  c.samples = 1;
  return c;
}

ErrorCode config_code(const SuiteConfig& c) {
  try {
    validate(c);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kFormatError;  // no error; never a config outcome
}

CheckRecord record(CheckStatus s) {
  CheckRecord r;
  r.info.name = "synthetic";
  if (s != CheckStatus::kVacuous) r.report.add(s, 0.0);
  return r;
}

}  // namespace

TEST_CASE("config validation") {
  SuiteConfig c;
  CHECK_NOTHROW(validate(c));
  c.suites = {};
  CHECK(config_code(c) == ErrorCode::kConfigError);
  c.suites = {"wz", "knots"};
  CHECK(config_code(c) == ErrorCode::kConfigError);
  c = SuiteConfig{};
  c.tolerances = {1e-3, 0.0};
  CHECK(config_code(c) == ErrorCode::kConfigError);
  c.tolerances = {};
  CHECK(config_code(c) == ErrorCode::kConfigError);
  c.tolerances = {NAN};
  CHECK(config_code(c) == ErrorCode::kConfigError);
  c = SuiteConfig{};
  c.seeds = {};
  CHECK(config_code(c) == ErrorCode::kConfigError);
  c = SuiteConfig{};
  c.resolution = {64, 250, 32};
  CHECK(config_code(c) == ErrorCode::kConfigError);
  c = SuiteConfig{};
  c.levels = 0;
  CHECK(config_code(c) == ErrorCode::kConfigError);
  CHECK_THROWS_AS(run_suite(SuiteConfig{{}, {1e-3}, {1}, {}}), Error);
}

TEST_CASE("registry lists anchored checks") {
  std::set<std::string> names, suites;
  for (const CheckInfo& info : list_checks()) {
    CHECK_FALSE(info.anchor.empty());
    CHECK(names.insert(info.name).second);
    suites.insert(info.suite);
  }
  CHECK(suites == std::set<std::string>{"lie", "mesh", "wz", "mickelsson", "lifting"});
  CHECK(names.count("wz.integrality") == 1);
  CHECK(names.count("lifting.fusion-concordance") == 1);
  CHECK_THROWS_AS(run_check("no.such-check", {}), Error);
}

TEST_CASE("reports record tolerances next to errors") {
  const RunReport r = run_suite(small({"lie"}));
  CHECK(r.kind == "run");
  REQUIRE_FALSE(r.records.empty());
  for (const CheckRecord& rec : r.records) {
    CHECK(rec.info.suite == "lie");
    CHECK(rec.report.status() == CheckStatus::kPass);
    CHECK(rec.report.tolerance > 0.0);
    CHECK(rec.resolution == kSmall);
  }
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j.at("schema_version") == kReportSchemaVersion);
  CHECK(j.at("records").size() == r.records.size());
  for (const auto& rec : j.at("records")) {
    CHECK(rec.contains("tolerance"));
    CHECK(rec.contains("max_error"));
    CHECK(rec.contains("anchor"));
    CHECK(rec.contains("wall_time_s"));
  }
  CHECK_FALSE(nlohmann::json::parse(to_json(r, false)).at("records")[0].contains("wall_time_s"));
  CHECK(exit_code(r, false) == 0);
}

TEST_CASE("exit codes") {
  RunReport r;
  r.records = {record(CheckStatus::kPass), record(CheckStatus::kVacuous)};
  CHECK(exit_code(r, false) == 0);
  r.records.push_back(record(CheckStatus::kIndeterminate));
  CHECK(exit_code(r, false) == 1);
  CHECK(exit_code(r, true) == 0);
  r.records.push_back(record(CheckStatus::kFail));
  CHECK(exit_code(r, true) == 1);
  CHECK(r.count(CheckStatus::kPass) == 1);
  CHECK(r.count(CheckStatus::kFail) == 1);
}

TEST_CASE("tolerance ladder") {
  SuiteConfig c = small({"wz"});
  c.tolerances = {1e-9, 1e-2};
  const RunReport r = run_suite(c);
  bool saw_ladder = false;
  for (const CheckRecord& rec : r.records) {
    if (!rec.info.circle) continue;
    saw_ladder = true;
    // The first rung decides; passes_at names the tightest rung met.
    CHECK(rec.report.tolerance == 1e-9);
    CHECK(rec.report.status() == CheckStatus::kFail);
    REQUIRE(rec.passes_at.has_value());
    CHECK(*rec.passes_at == 1e-2);
  }
  CHECK(saw_ladder);
  CHECK(exit_code(r, false) == 1);
}

TEST_CASE("same config gives the same report body on any thread count") {
  SuiteConfig c = small({"lie", "mickelsson", "lifting"});
  c.seeds = {1, 2};
  std::string bodies[3];
  const int threads[3] = {1, 4, 8};
  for (int k = 0; k < 3; ++k) {
    set_thread_count(threads[k]);
    bodies[k] = to_json(run_suite(c), false);
  }
  set_thread_count(0);
  CHECK(bodies[0] == bodies[1]);
  CHECK(bodies[0] == bodies[2]);
}

TEST_CASE("convergence study") {
  SuiteConfig c = small({"wz"});
  c.levels = 2;
  CHECK_THROWS_AS(run_convergence(c), Error);
  CHECK(config_code(c) != ErrorCode::kConfigError);

  c.resolution = {64, 256, 32};
  c.levels = 3;
  const RunReport r = run_convergence(c);
  CHECK(r.kind == "convergence");
  bool saw_integrality = false;
  for (const ConvergenceRecord& cr : r.convergence) {
    CHECK(cr.levels.size() == 3);
    CHECK(cr.levels.back().resolution == c.resolution);
    if (cr.info.name != "wz.integrality") continue;
    saw_integrality = true;
    // Second-order quadrature: halving the mesh quarters the error.
    REQUIRE(cr.exponent.has_value());
    CHECK(*cr.exponent == doctest::Approx(2.0).epsilon(0.15));
    CHECK(cr.monotone);
    CHECK_FALSE(cr.exact);
  }
  CHECK(saw_integrality);

  const RunReport exact = run_convergence(small({"mickelsson"}));
  for (const ConvergenceRecord& cr : exact.convergence) {
    if (cr.info.name == "mickelsson.product-associative") {
      CHECK(cr.exact);
      CHECK_FALSE(cr.exponent.has_value());
    }
  }
}

TEST_CASE("level resolutions halve") {
  const MeshResolution f{64, 256, 32};
  CHECK(level_resolution(f, 2, 3) == f);
  CHECK(level_resolution(f, 1, 3) == MeshResolution{32, 128, 16});
  CHECK(level_resolution(f, 0, 3) == MeshResolution{16, 64, 8});
}
