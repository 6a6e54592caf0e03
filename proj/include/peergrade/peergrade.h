// Copyright 2026 The peergrade Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PEERGRADE_PEERGRADE_H
#define PEERGRADE_PEERGRADE_H

/* C interface to libpeergrade. Objects are opaque handles owned by the
 * caller and released with the matching *_free function. Every call that can
 * fail returns a pg_status; on failure pg_last_error() describes the problem
 * (thread-local, valid until the next failing call on the same thread).
 * Strings returned through char** are heap allocated; release them with
 * pg_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PG_API __declspec(dllexport)
#else
#define PG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* 0 is success. Positive values mirror the library's error codes; the two
 * values at 100 and above are failures that have no library code. */
typedef enum pg_status {
  PG_OK = 0,
  PG_INVALID_ARGUMENT = 1,
  PG_UNKNOWN_STUDENT,
  PG_TOO_FEW_NOMINATIONS,
  PG_OVERLAPPING_NOMINATIONS,
  PG_SELF_NOMINATION,
  PG_SELF_RATING,
  PG_SCORE_OUT_OF_RANGE,
  PG_GRADE_OUT_OF_RANGE,
  PG_EMPTY_POOL,
  PG_NOT_A_RESUBMISSION,
  PG_UNKNOWN_POST,
  PG_UNKNOWN_ASSIGNMENT,
  PG_MISSING_ANSWERS,
  PG_UNKNOWN_SKILL,
  PG_TRAINING_INCOMPLETE,
  PG_ASSIGNMENT_EXPIRED,
  PG_ASSIGNMENT_CLOSED,
  PG_EMPTY_FEEDBACK,
  PG_DUPLICATE_ASSESSMENT,
  PG_DUPLICATE_RATING,
  PG_NO_ASSESSMENTS,
  PG_UNKNOWN_VIEWER,
  PG_DEGENERATE_MATRIX,
  PG_INVALID_ALPHA,
  PG_OUT_OF_RANGE,
  PG_LENGTH_MISMATCH,
  PG_CONSTANT_INPUT,
  PG_ZERO_VARIANCE_GROUP,
  PG_TOO_FEW_GROUPS,
  PG_PARAMETER_OUT_OF_RANGE,
  PG_NON_CONVERGENCE,
  PG_COHORT_TOO_SMALL,
  PG_PARSE_ERROR,
  PG_SCHEMA_MISMATCH,
  PG_REFERENTIAL_INTEGRITY,
  PG_INVALID_CONFIG,
  PG_EMPTY_DATASET,
  PG_IO,
  PG_WRITE_FAILED,
  PG_INTERNAL = 100,
  PG_OUT_OF_MEMORY = 101
} pg_status;

typedef struct pg_config pg_config;
typedef struct pg_dataset pg_dataset;
typedef struct pg_report pg_report;

PG_API const char* pg_version(void);
PG_API const char* pg_last_error(void);
PG_API const char* pg_status_name(pg_status status);
/* Nonzero when the user can fix the failure by changing input data or flags. */
PG_API int pg_status_is_validation(pg_status status);
PG_API void pg_string_free(char* s);

/* Simulation configuration (JSON). */
PG_API pg_status pg_config_default(pg_config** out);
PG_API pg_status pg_config_from_json(const char* json, pg_config** out);
PG_API pg_status pg_config_load(const char* path, pg_config** out);
/* Applies the PEERGRADE_CONFIG override to a flag value; never fails. */
PG_API pg_status pg_config_resolve_path(const char* flag_value, char** out);
PG_API pg_status pg_config_to_json(const pg_config* config, char** out);
PG_API void pg_config_free(pg_config* config);

/* Datasets. */
PG_API pg_status pg_simulate(const pg_config* config, pg_dataset** out);
/* Writes the dataset files and a run manifest. config_path may be NULL. */
PG_API pg_status pg_simulation_write(const pg_config* config, const pg_dataset* dataset, const char* out_dir,
                                     const char* config_path);
PG_API pg_status pg_dataset_load(const char* dir, pg_dataset** out);
PG_API pg_status pg_dataset_write(const pg_dataset* dataset, const char* dir);
/* Row counts and cleaning steps from the load (empty for simulated data). */
PG_API pg_status pg_dataset_summary(const pg_dataset* dataset, char** out);
PG_API size_t pg_dataset_post_count(const pg_dataset* dataset);
PG_API size_t pg_dataset_record_count(const pg_dataset* dataset);
PG_API void pg_dataset_free(pg_dataset* dataset);

/* Analysis. sections is "all" or a comma list (fairness, accuracy,
 * descriptives, difference, relationships, cronbach). "all" leaves out
 * cronbach, which needs items_csv; passing items_csv switches it on. */
PG_API pg_status pg_analyze(const pg_dataset* dataset, const char* sections, double alpha,
                            const char* items_csv, pg_report** out);
/* format: "text", "json" or "csv". */
PG_API pg_status pg_report_render(const pg_report* report, const char* format, char** out);
/* Writes the report files and manifest; data_dir is digested as the input. */
PG_API pg_status pg_report_write_bundle(const pg_report* report, const char* data_dir, const char* out_dir);
/* Reads a bundle back, checking report.json against the manifest digest. */
PG_API pg_status pg_report_load_bundle(const char* bundle_dir, pg_report** out);
PG_API void pg_report_free(pg_report* report);

PG_API pg_status pg_sha256_hex(const void* data, size_t size, char** out);

#ifdef __cplusplus
}
#endif

#endif /* PEERGRADE_PEERGRADE_H */
