/* Copyright 2026 The loopext Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of libloopext. Objects are opaque handles created and destroyed
 * through this API; every fallible call returns a loopext_status and leaves a
 * message for loopext_last_error() on the calling thread. Strings returned
 * through char** are owned by the caller and released with loopext_string_free.
 */

#ifndef LOOPEXT_LOOPEXT_H_
#define LOOPEXT_LOOPEXT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LOOPEXT_API __declspec(dllexport)
#else
#define LOOPEXT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum loopext_status {
  LOOPEXT_OK = 0,
  LOOPEXT_ANTIPODAL_SINGULARITY = 1,
  LOOPEXT_ENDPOINT_MISMATCH = 2,
  LOOPEXT_BOUNDARY_MISMATCH = 3,
  LOOPEXT_MESH_MISMATCH = 4,
  LOOPEXT_BASE_MISMATCH = 5,
  LOOPEXT_MIDDLE_MISMATCH = 6,
  LOOPEXT_FUSION_CONTEXT_MISMATCH = 7,
  LOOPEXT_ACTION_CONDITION_VIOLATED = 8,
  LOOPEXT_NON_CONVERGENCE = 9,
  LOOPEXT_CONFIG_ERROR = 10,
  LOOPEXT_FORMAT_ERROR = 11,
  LOOPEXT_INVALID_ARGUMENT = 12,
  LOOPEXT_INTERNAL_ERROR = 13
} loopext_status;

typedef enum loopext_verdict {
  LOOPEXT_NOT_EQUIVALENT = 0,
  LOOPEXT_EQUIVALENT = 1,
  LOOPEXT_INDETERMINATE = 2
} loopext_verdict;

typedef struct loopext_config loopext_config;
typedef struct loopext_report loopext_report;
typedef struct loopext_element loopext_element;

LOOPEXT_API const char* loopext_version(void);
LOOPEXT_API const char* loopext_status_string(loopext_status status);
/* Message of the last failed call on this thread; "" when none. */
LOOPEXT_API const char* loopext_last_error(void);
LOOPEXT_API void loopext_string_free(char* s);

/* Caps worker threads; 0 restores LOOPEXT_THREADS or the hardware default. */
LOOPEXT_API loopext_status loopext_set_threads(int threads);

/* Suite configuration. */
LOOPEXT_API loopext_status loopext_config_create(loopext_config** out);
LOOPEXT_API void loopext_config_destroy(loopext_config* config);
LOOPEXT_API loopext_status loopext_config_set_resolution(loopext_config* config, int radial, int angular, int shells);
LOOPEXT_API loopext_status loopext_config_set_tolerances(loopext_config* config, const double* tolerances, size_t n);
LOOPEXT_API loopext_status loopext_config_set_seeds(loopext_config* config, const uint64_t* seeds, size_t n);
LOOPEXT_API loopext_status loopext_config_clear_suites(loopext_config* config);
LOOPEXT_API loopext_status loopext_config_add_suite(loopext_config* config, const char* suite);
LOOPEXT_API loopext_status loopext_config_set_levels(loopext_config* config, int levels);
LOOPEXT_API loopext_status loopext_config_set_samples(loopext_config* config, int samples);
/* Checks the configuration without running anything. */
LOOPEXT_API loopext_status loopext_config_validate(const loopext_config* config);

/* Runs and reports. */
LOOPEXT_API loopext_status loopext_run_suite(const loopext_config* config, loopext_report** out);
LOOPEXT_API loopext_status loopext_run_convergence(const loopext_config* config, loopext_report** out);
LOOPEXT_API loopext_status loopext_replay_file(const loopext_config* config, const char* path, loopext_report** out);
LOOPEXT_API void loopext_report_destroy(loopext_report* report);
LOOPEXT_API loopext_status loopext_report_json(const loopext_report* report, int with_timing, char** out);
LOOPEXT_API loopext_status loopext_report_markdown(const loopext_report* report, char** out);
/* 0 all pass, 1 any failure (or indeterminate result unless allowed). */
LOOPEXT_API int loopext_report_exit_code(const loopext_report* report, int allow_indeterminate);
LOOPEXT_API loopext_status loopext_report_counts(const loopext_report* report, int* pass, int* fail,
                                                 int* indeterminate, int* vacuous);

/* Calibrates the pairing constant on nested grids. */
LOOPEXT_API loopext_status loopext_calibrate(int refinement_level, double tolerance, double* kappa);

/* Elements of the central extension. */
LOOPEXT_API loopext_status loopext_element_random(uint64_t seed, int radial, int angular, double amplitude,
                                                  loopext_element** out);
LOOPEXT_API loopext_status loopext_element_identity(int radial, int angular, loopext_element** out);
LOOPEXT_API void loopext_element_destroy(loopext_element* element);
LOOPEXT_API loopext_status loopext_element_product(const loopext_element* a, const loopext_element* b,
                                                   loopext_element** out);
LOOPEXT_API loopext_status loopext_element_inverse(const loopext_element* a, loopext_element** out);
LOOPEXT_API loopext_status loopext_element_z(const loopext_element* a, double* re, double* im);
/* circle_distance is in turns; +inf when the boundaries differ. */
LOOPEXT_API loopext_status loopext_element_equivalent(const loopext_element* a, const loopext_element* b,
                                                      double tolerance, loopext_verdict* verdict,
                                                      double* circle_distance);
LOOPEXT_API loopext_status loopext_element_serialize(const loopext_element* a, char** out);
LOOPEXT_API loopext_status loopext_element_deserialize(const char* text, loopext_element** out);

/* A seeded random map or element as a serialized record; kind is "path",
 * "loop", "disk" or "element". */
LOOPEXT_API loopext_status loopext_sample_record(const char* kind, uint64_t seed, int radial, int angular,
                                                 char** out);

#ifdef __cplusplus
}
#endif

#endif /* LOOPEXT_LOOPEXT_H_ */
