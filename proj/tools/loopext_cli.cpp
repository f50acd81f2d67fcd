// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line driver over the C interface of libloopext.
//
//   loopext run       --resolution 64x256x32 --seed 1 --seed 2 --report md
//   loopext converge  --levels 3 --suite wz
//   loopext calibrate --levels 2
//   loopext replay    --input case.json
//   loopext sample    --kind element --seed 7 --out case.json
//   loopext list
//
// Exit codes: 0 all pass, 1 any failure, 2 configuration or input error.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loopext/loopext.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string resolution;
  std::vector<double> tolerances;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> suites;
  int levels = 3;
  int samples = 2;
  std::string report = "json";
  std::string out;
  bool allow_indeterminate = false;
  bool timing = false;
  std::string input;
  std::string kind = "element";
  int threads = 0;
};

const char* const kSuites[] = {"lie", "mesh", "wz", "mickelsson", "lifting"};

int status_exit(loopext_status s) {
  switch (s) {
    case LOOPEXT_OK: return 0;
    case LOOPEXT_CONFIG_ERROR:
    case LOOPEXT_FORMAT_ERROR:
    case LOOPEXT_INVALID_ARGUMENT: return kExitConfig;
    default: return kExitFail;
  }
}

int fail(loopext_status s) {
  std::fprintf(stderr, "loopext: %s: %s\n", loopext_status_string(s), loopext_last_error());
  return status_exit(s);
}

int usage_error(const std::string& message) {
  std::fprintf(stderr, "loopext: ConfigError: %s\n", message.c_str());
  return kExitConfig;
}

bool write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    if (text.empty() || text.back() != '\n') std::fputc('\n', stdout);
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
  return static_cast<bool>(f);
}

struct ConfigHandle {
  loopext_config* p = nullptr;
  ~ConfigHandle() { loopext_config_destroy(p); }
};

struct ReportHandle {
  loopext_report* p = nullptr;
  ~ReportHandle() { loopext_report_destroy(p); }
};

// Parses RxAxS (radial x angular x shells); shells may be omitted.
std::optional<std::array<int, 3>> parse_resolution(const std::string& s) {
  static const std::regex re(R"((\d+)x(\d+)(?:x(\d+))?)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  std::array<int, 3> r{};
  try {
    r[0] = std::stoi(m[1]);
    r[1] = std::stoi(m[2]);
    r[2] = m[3].matched ? std::stoi(m[3]) : std::max(2, r[1] / 8);
  } catch (const std::out_of_range&) {
    return std::nullopt;
  }
  return r;
}

int build_config(const Options& o, ConfigHandle& config) {
  loopext_status s = loopext_config_create(&config.p);
  if (s != LOOPEXT_OK) return fail(s);
  if (!o.resolution.empty()) {
    const auto r = parse_resolution(o.resolution);
    if (!r) return usage_error("--resolution expects RADIALxANGULARxSHELLS, got '" + o.resolution + "'");
    if ((s = loopext_config_set_resolution(config.p, (*r)[0], (*r)[1], (*r)[2])) != LOOPEXT_OK) return fail(s);
  }
  if (!o.tolerances.empty() &&
      (s = loopext_config_set_tolerances(config.p, o.tolerances.data(), o.tolerances.size())) != LOOPEXT_OK) {
    return fail(s);
  }
  if (!o.seeds.empty() && (s = loopext_config_set_seeds(config.p, o.seeds.data(), o.seeds.size())) != LOOPEXT_OK) {
    return fail(s);
  }
  if (!o.suites.empty()) {
    loopext_config_clear_suites(config.p);
    for (const std::string& suite : o.suites) {
      if ((s = loopext_config_add_suite(config.p, suite.c_str())) != LOOPEXT_OK) return fail(s);
    }
  }
  if ((s = loopext_config_set_levels(config.p, o.levels)) != LOOPEXT_OK) return fail(s);
  if ((s = loopext_config_set_samples(config.p, o.samples)) != LOOPEXT_OK) return fail(s);
  if ((s = loopext_config_validate(config.p)) != LOOPEXT_OK) return fail(s);
  return 0;
}

int emit_report(const Options& o, const ReportHandle& report) {
  char* text = nullptr;
  const loopext_status s = o.report == "md" ? loopext_report_markdown(report.p, &text)
                                            : loopext_report_json(report.p, o.timing ? 1 : 0, &text);
  if (s != LOOPEXT_OK) return fail(s);
  const bool ok = write_output(text, o.out);
  loopext_string_free(text);
  if (!ok) return usage_error("cannot write '" + o.out + "'");
  return loopext_report_exit_code(report.p, o.allow_indeterminate ? 1 : 0);
}

enum class Mode { kRun, kConverge, kReplay };

int run_mode(const Options& o, Mode mode) {
  ConfigHandle config;
  if (const int rc = build_config(o, config); rc != 0) return rc;
  ReportHandle report;
  loopext_status s = LOOPEXT_OK;
  switch (mode) {
    case Mode::kRun: s = loopext_run_suite(config.p, &report.p); break;
    case Mode::kConverge: s = loopext_run_convergence(config.p, &report.p); break;
    case Mode::kReplay:
      if (o.input.empty()) return usage_error("replay needs --input PATH");
      s = loopext_replay_file(config.p, o.input.c_str(), &report.p);
      break;
  }
  if (s != LOOPEXT_OK) return fail(s);
  return emit_report(o, report);
}

int calibrate_mode(const Options& o) {
  const double tolerance = o.tolerances.empty() ? 1e-4 : o.tolerances.front();
  double kappa = 0.0;
  const loopext_status s = loopext_calibrate(o.levels, tolerance, &kappa);
  if (s != LOOPEXT_OK) return fail(s);
  char line[128];
  std::snprintf(line, sizeof line, "kappa %.17g", kappa);
  if (!write_output(line, o.out)) return usage_error("cannot write '" + o.out + "'");
  return 0;
}

int sample_mode(const Options& o) {
  int radial = 33, angular = 128;
  if (!o.resolution.empty()) {
    const auto r = parse_resolution(o.resolution);
    if (!r) return usage_error("--resolution expects RADIALxANGULARxSHELLS, got '" + o.resolution + "'");
    radial = (*r)[0];
    angular = (*r)[1];
  }
  const std::uint64_t seed = o.seeds.empty() ? 1 : o.seeds.front();
  char* text = nullptr;
  const loopext_status s = loopext_sample_record(o.kind.c_str(), seed, radial, angular, &text);
  if (s != LOOPEXT_OK) return fail(s);
  const bool ok = write_output(text, o.out);
  loopext_string_free(text);
  return ok ? 0 : usage_error("cannot write '" + o.out + "'");
}

void add_common(CLI::App& app, Options& o) {
  app.add_option("--resolution", o.resolution, "Mesh as RADIALxANGULARxSHELLS, e.g. 64x256x32");
  app.add_option("--tolerance", o.tolerances, "Circle tolerance in turns; repeat for a ladder")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seeds, "Seed; repeatable");
  app.add_option("--suite", o.suites, "Suite to run; repeatable")->check(CLI::IsMember(
      std::vector<std::string>(std::begin(kSuites), std::end(kSuites))));
  app.add_option("--levels", o.levels, "Refinement levels");
  app.add_option("--samples", o.samples, "Samples per seed and check");
  app.add_option("--report", o.report, "Report format")->check(CLI::IsMember({"json", "md"}));
  app.add_option("--out", o.out, "Write output to PATH instead of stdout");
  app.add_flag("--allow-indeterminate", o.allow_indeterminate, "Exit 0 when results are only indeterminate");
  app.add_flag("--timing", o.timing, "Include wall times in the JSON report");
  app.add_option("--input", o.input, "Stored map or element to replay");
  app.add_option("--threads", o.threads, "Worker threads (default: LOOPEXT_THREADS or hardware)")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loopext: checks for the central extension of the loop group of SU(2)"};
  app.set_version_flag("--version", loopext_version());
  Options o;
  add_common(app, o);
  app.fallthrough();

  CLI::App* run = app.add_subcommand("run", "Run the selected suites");
  CLI::App* converge = app.add_subcommand("converge", "Refinement study of the discretized checks");
  CLI::App* calibrate = app.add_subcommand("calibrate", "Calibrate the pairing constant (--levels, --tolerance)");
  CLI::App* replay = app.add_subcommand("replay", "Replay a stored case (--input)");
  CLI::App* sample = app.add_subcommand("sample", "Write a random stored case");
  sample->add_option("--kind", o.kind, "path, loop, disk or element")
      ->check(CLI::IsMember({"path", "loop", "disk", "element"}));
  CLI::App* list = app.add_subcommand("list", "List suites");
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (o.threads > 0) loopext_set_threads(o.threads);

  if (list->parsed()) {
    for (const char* s : kSuites) std::puts(s);
    return 0;
  }
  if (calibrate->parsed()) return calibrate_mode(o);
  if (sample->parsed()) return sample_mode(o);
  if (converge->parsed()) return run_mode(o, Mode::kConverge);
  if (replay->parsed() || (!run->parsed() && !o.input.empty())) return run_mode(o, Mode::kReplay);
  return run_mode(o, Mode::kRun);
}
