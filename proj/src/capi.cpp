// Copyright 2026 The loopext Authors
// SPDX-License-Identifier: Apache-2.0

#include "loopext/loopext.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "loopext/errors.hpp"
#include "loopext/mickelsson.hpp"
#include "loopext/parallel.hpp"
#include "loopext/serialize.hpp"
#include "loopext/suite.hpp"
#include "loopext/wz.hpp"

struct loopext_config {
  loopext::SuiteConfig config;
};

struct loopext_report {
  loopext::RunReport report;
};

struct loopext_element {
  loopext::ExtElement element;
};

namespace {

thread_local std::string g_last_error;

loopext_status from_code(loopext::ErrorCode c) {
  return static_cast<loopext_status>(static_cast<int>(c) + 1);
}

// Runs `body`, translating exceptions into status codes.
template <class Body>
loopext_status guarded(Body&& body) {
  g_last_error.clear();
  try {
    body();
    return LOOPEXT_OK;
  } catch (const loopext::Error& e) {
    g_last_error = e.what();
    return from_code(e.code());
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return LOOPEXT_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LOOPEXT_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LOOPEXT_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return LOOPEXT_INTERNAL_ERROR;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

loopext::ModelOptions model_for(const loopext::ExtElement& e) {
  loopext::ModelOptions o;
  o.extension.shells = std::max(2, e.phi->angular() / 8);
  return o;
}

}  // namespace

extern "C" {

const char* loopext_version(void) { return "1.0.0"; }

const char* loopext_status_string(loopext_status status) {
  switch (status) {
    case LOOPEXT_OK: return "Ok";
    case LOOPEXT_INVALID_ARGUMENT: return "InvalidArgument";
    case LOOPEXT_INTERNAL_ERROR: return "InternalError";
    default: break;
  }
  const int c = static_cast<int>(status) - 1;
  if (c >= 0 && c <= static_cast<int>(loopext::ErrorCode::kFormatError)) {
    return loopext::to_string(static_cast<loopext::ErrorCode>(c));
  }
  return "Unknown";
}

const char* loopext_last_error(void) { return g_last_error.c_str(); }

void loopext_string_free(char* s) { std::free(s); }

loopext_status loopext_set_threads(int threads) {
  return guarded([&] {
    require(threads >= 0, "thread count must be non-negative");
    loopext::set_thread_count(threads);
  });
}

loopext_status loopext_config_create(loopext_config** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new loopext_config();
  });
}

void loopext_config_destroy(loopext_config* config) { delete config; }

loopext_status loopext_config_set_resolution(loopext_config* config, int radial, int angular, int shells) {
  return guarded([&] {
    require(config != nullptr, "null config");
    config->config.resolution = {radial, angular, shells};
  });
}

loopext_status loopext_config_set_tolerances(loopext_config* config, const double* tolerances, size_t n) {
  return guarded([&] {
    require(config != nullptr && (tolerances != nullptr || n == 0), "null argument");
    config->config.tolerances.assign(tolerances, tolerances + n);
  });
}

loopext_status loopext_config_set_seeds(loopext_config* config, const uint64_t* seeds, size_t n) {
  return guarded([&] {
    require(config != nullptr && (seeds != nullptr || n == 0), "null argument");
    config->config.seeds.assign(seeds, seeds + n);
  });
}

loopext_status loopext_config_clear_suites(loopext_config* config) {
  return guarded([&] {
    require(config != nullptr, "null config");
    config->config.suites.clear();
  });
}

loopext_status loopext_config_add_suite(loopext_config* config, const char* suite) {
  return guarded([&] {
    require(config != nullptr && suite != nullptr, "null argument");
    config->config.suites.emplace_back(suite);
  });
}

loopext_status loopext_config_set_levels(loopext_config* config, int levels) {
  return guarded([&] {
    require(config != nullptr, "null config");
    config->config.levels = levels;
  });
}

loopext_status loopext_config_set_samples(loopext_config* config, int samples) {
  return guarded([&] {
    require(config != nullptr, "null config");
    config->config.samples = samples;
  });
}

loopext_status loopext_config_validate(const loopext_config* config) {
  return guarded([&] {
    require(config != nullptr, "null config");
    loopext::validate(config->config);
  });
}

loopext_status loopext_run_suite(const loopext_config* config, loopext_report** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    auto r = std::make_unique<loopext_report>();
    r->report = loopext::run_suite(config->config);
    *out = r.release();
  });
}

loopext_status loopext_run_convergence(const loopext_config* config, loopext_report** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    auto r = std::make_unique<loopext_report>();
    r->report = loopext::run_convergence(config->config);
    *out = r.release();
  });
}

loopext_status loopext_replay_file(const loopext_config* config, const char* path, loopext_report** out) {
  return guarded([&] {
    require(config != nullptr && path != nullptr && out != nullptr, "null argument");
    auto r = std::make_unique<loopext_report>();
    r->report = loopext::replay(loopext::read_record(path), config->config);
    *out = r.release();
  });
}

void loopext_report_destroy(loopext_report* report) { delete report; }

loopext_status loopext_report_json(const loopext_report* report, int with_timing, char** out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null argument");
    *out = copy_string(loopext::to_json(report->report, with_timing != 0));
  });
}

loopext_status loopext_report_markdown(const loopext_report* report, char** out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null argument");
    *out = copy_string(loopext::to_markdown(report->report));
  });
}

int loopext_report_exit_code(const loopext_report* report, int allow_indeterminate) {
  if (report == nullptr) return 2;
  return loopext::exit_code(report->report, allow_indeterminate != 0);
}

loopext_status loopext_report_counts(const loopext_report* report, int* pass, int* fail, int* indeterminate,
                                     int* vacuous) {
  return guarded([&] {
    require(report != nullptr, "null report");
    using loopext::CheckStatus;
    if (pass) *pass = report->report.count(CheckStatus::kPass);
    if (fail) *fail = report->report.count(CheckStatus::kFail);
    if (indeterminate) *indeterminate = report->report.count(CheckStatus::kIndeterminate);
    if (vacuous) *vacuous = report->report.count(CheckStatus::kVacuous);
  });
}

loopext_status loopext_calibrate(int refinement_level, double tolerance, double* kappa) {
  return guarded([&] {
    require(kappa != nullptr, "null output pointer");
    loopext::QuadratureConfig q;
    q.refinement_level = refinement_level;
    q.tolerance = tolerance;
    *kappa = loopext::calibrate_pairing(q).kappa;
  });
}

loopext_status loopext_element_random(uint64_t seed, int radial, int angular, double amplitude,
                                      loopext_element** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    loopext::MeshResolution res;
    res.radial = radial;
    res.angular = angular;
    *out = new loopext_element{loopext::random_element(seed, res, amplitude)};
  });
}

loopext_status loopext_element_identity(int radial, int angular, loopext_element** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    loopext::MeshResolution res;
    res.radial = radial;
    res.angular = angular;
    *out = new loopext_element{loopext::identity_element(res)};
  });
}

void loopext_element_destroy(loopext_element* element) { delete element; }

loopext_status loopext_element_product(const loopext_element* a, const loopext_element* b, loopext_element** out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "null argument");
    *out = new loopext_element{loopext::product(a->element, b->element, model_for(a->element))};
  });
}

loopext_status loopext_element_inverse(const loopext_element* a, loopext_element** out) {
  return guarded([&] {
    require(a != nullptr && out != nullptr, "null argument");
    *out = new loopext_element{loopext::inverse(a->element, model_for(a->element))};
  });
}

loopext_status loopext_element_z(const loopext_element* a, double* re, double* im) {
  return guarded([&] {
    require(a != nullptr && re != nullptr && im != nullptr, "null argument");
    *re = a->element.z.re();
    *im = a->element.z.im();
  });
}

loopext_status loopext_element_equivalent(const loopext_element* a, const loopext_element* b, double tolerance,
                                          loopext_verdict* verdict, double* circle_distance) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && verdict != nullptr, "null argument");
    require(tolerance > 0.0, "tolerance must be positive");
    loopext::ModelOptions o = model_for(a->element);
    o.circle_tolerance = tolerance;
    const loopext::Equivalence e = loopext::equivalent(a->element, b->element, o);
    switch (e.verdict) {
      case loopext::Verdict::kEquivalent: *verdict = LOOPEXT_EQUIVALENT; break;
      case loopext::Verdict::kIndeterminate: *verdict = LOOPEXT_INDETERMINATE; break;
      case loopext::Verdict::kNotEquivalent: *verdict = LOOPEXT_NOT_EQUIVALENT; break;
    }
    if (circle_distance != nullptr) *circle_distance = e.circle_distance;
  });
}

loopext_status loopext_element_serialize(const loopext_element* a, char** out) {
  return guarded([&] {
    require(a != nullptr && out != nullptr, "null argument");
    *out = copy_string(loopext::serialize(a->element));
  });
}

loopext_status loopext_element_deserialize(const char* text, loopext_element** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    loopext::Record r = loopext::deserialize(text);
    auto* e = std::get_if<loopext::ExtElement>(&r);
    if (e == nullptr) throw loopext::Error(loopext::ErrorCode::kFormatError, "record is not an element");
    *out = new loopext_element{std::move(*e)};
  });
}

loopext_status loopext_sample_record(const char* kind, uint64_t seed, int radial, int angular, char** out) {
  return guarded([&] {
    require(kind != nullptr && out != nullptr, "null argument");
    loopext::MeshResolution res;
    res.radial = radial;
    res.angular = angular;
    const std::string k(kind);
    if (k == "element") {
      *out = copy_string(loopext::serialize(loopext::random_element(seed, res)));
      return;
    }
    loopext::MapKind m;
    if (k == "path") {
      m = loopext::MapKind::kPath;
    } else if (k == "loop") {
      m = loopext::MapKind::kLoop;
    } else if (k == "disk") {
      m = loopext::MapKind::kDisk;
    } else {
      throw loopext::Error(loopext::ErrorCode::kConfigError, "unknown record kind '" + k + "'");
    }
    const loopext::AnyMap map = loopext::random_map(m, seed, 3, 1.5, res);
    *out = copy_string(std::visit([](const auto& v) { return loopext::serialize(v); }, map));
  });
}

}  // extern "C"
