/* Copyright 2026 The chanres Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to libchanres.
 *
 * Every fallible call returns a chanres_status. On failure the message
 * is available from chanres_last_error() on the same thread until the
 * next call into the library. Handles are opaque and owned by the caller;
 * release them with the matching *_free function (NULL is accepted).
 *
 * Matrices cross the boundary as interleaved (re, im) doubles in
 * row-major order. All monotones are in bits.
 */
#ifndef CHANRES_CHANRES_H_
#define CHANRES_CHANRES_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CHANRES_API __declspec(dllexport)
#else
#define CHANRES_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum chanres_status {
  CHANRES_OK = 0,
  CHANRES_ERR_ARGUMENT = 1,   /* NULL pointer or out-of-range scalar */
  CHANRES_ERR_DIMENSION = 2,  /* shapes do not line up */
  CHANRES_ERR_VALIDATION = 3, /* not CPTP, not a state, ... */
  CHANRES_ERR_PARSE = 4,      /* malformed channel file */
  CHANRES_ERR_NUMERICAL = 5,  /* solver or search did not converge */
  CHANRES_ERR_IO = 6,         /* output file could not be written */
  CHANRES_ERR_INTERNAL = 7
} chanres_status;

typedef struct chanres_channel chanres_channel;
typedef struct chanres_report chanres_report;
typedef struct chanres_verify_result chanres_verify_result;

typedef struct chanres_search_config {
  size_t ancilla_dim; /* 0 selects the channel's input dimension */
  int restarts;       /* random starts on top of the structured ones */
  int max_ascent_steps;
  double step_tolerance;
  uint64_t seed;
  int threads; /* 0 = hardware concurrency */
} chanres_search_config;

typedef struct chanres_report_values {
  double c_r_i;
  double c_r_b_lower;
  double c_max;
  double distill_parallel;
  double distill_iterative_lower;
  double dilute_lower;
  double dilute_upper;
  double irreversibility_gap_lower;
  size_t ancilla_dim;
} chanres_report_values;

CHANRES_API const char* chanres_version(void);
CHANRES_API const char* chanres_last_error(void);
CHANRES_API const char* chanres_status_name(chanres_status status);
/* Frees strings returned through char** out-parameters. */
CHANRES_API void chanres_string_free(char* s);

/* ---- channels ---- */

/* `kraus` holds `count` matrices of shape dim_out x dim_in. */
CHANRES_API chanres_status chanres_channel_from_kraus(size_t dim_in, size_t dim_out, size_t count,
                                                      const double* kraus, chanres_channel** out);
CHANRES_API chanres_status chanres_channel_parse_json(const char* text, chanres_channel** out);
CHANRES_API chanres_status chanres_channel_load_json(const char* path, chanres_channel** out);
CHANRES_API chanres_status chanres_channel_to_json(const chanres_channel* ch, char** out);
/* Conjugation by exp(-i theta sigma_y). */
CHANRES_API chanres_status chanres_channel_rotation(double theta, chanres_channel** out);
CHANRES_API chanres_status chanres_channel_tensor(const chanres_channel* a, const chanres_channel* b,
                                                  chanres_channel** out);
CHANRES_API void chanres_channel_free(chanres_channel* ch);

CHANRES_API size_t chanres_channel_dim_in(const chanres_channel* ch);
CHANRES_API size_t chanres_channel_dim_out(const chanres_channel* ch);
/* Writes the (dim_in*dim_out)^2 Choi entries; `capacity` counts doubles. */
CHANRES_API chanres_status chanres_channel_choi(const chanres_channel* ch, double* out, size_t capacity);

/* ---- monotones ---- */

CHANRES_API void chanres_search_config_default(chanres_search_config* cfg);

CHANRES_API chanres_status chanres_c_r_i(const chanres_channel* ch, double* out);
/* cfg may be NULL for defaults. */
CHANRES_API chanres_status chanres_c_r_b_lower(const chanres_channel* ch, const chanres_search_config* cfg,
                                               double* out);
CHANRES_API chanres_status chanres_c_max(const chanres_channel* ch, double* out);
CHANRES_API chanres_status chanres_c_max_tensor(const chanres_channel* ch, int copies, double* out);
CHANRES_API chanres_status chanres_diamond_distance(const chanres_channel* a, const chanres_channel* b,
                                                    double* out);
CHANRES_API chanres_status chanres_is_mio(const chanres_channel* ch, double tol, int* out);

/* Draws `trials` free super-operations and counts increases of c_r_i
 * (tolerance 1e-8) and, when check_boost != 0, of c_r_b_lower. */
CHANRES_API chanres_status chanres_verify_monotonicity(const chanres_channel* ch, int trials, uint64_t seed,
                                                       int check_boost, const chanres_search_config* cfg,
                                                       int* c_r_i_violations, int* c_r_b_violations);

/* ---- reports ---- */

CHANRES_API chanres_status chanres_analyze(const chanres_channel* ch, const chanres_search_config* cfg,
                                           chanres_report** out);
CHANRES_API chanres_status chanres_report_values_get(const chanres_report* r, chanres_report_values* out);
CHANRES_API chanres_status chanres_report_text(const chanres_report* r, char** out);
CHANRES_API chanres_status chanres_report_json(const chanres_report* r, char** out);
CHANRES_API chanres_status chanres_report_save_json(const chanres_report* r, const char* path);
CHANRES_API void chanres_report_free(chanres_report* r);

/* ---- sweep ---- */

/* Rotation sweep written as CSV to `csv_path`. Nothing is left at the
 * path when the call fails. */
CHANRES_API chanres_status chanres_sweep_rotation(double theta_min, double theta_max, int steps,
                                                  const chanres_search_config* cfg, const char* csv_path);

/* ---- invariant battery ---- */

CHANRES_API chanres_status chanres_verify_run(uint64_t seed, int trials, int corrupt_tolerances,
                                              chanres_verify_result** out);
CHANRES_API size_t chanres_verify_suite_count(const chanres_verify_result* r);
/* `name` stays valid until the result is freed. */
CHANRES_API chanres_status chanres_verify_suite(const chanres_verify_result* r, size_t index, const char** name,
                                                int* checks, int* violations);
CHANRES_API int chanres_verify_total_violations(const chanres_verify_result* r);
CHANRES_API chanres_status chanres_verify_write_diagnostics(const chanres_verify_result* r, const char* path);
CHANRES_API void chanres_verify_result_free(chanres_verify_result* r);

#ifdef __cplusplus
}
#endif

#endif /* CHANRES_CHANRES_H_ */
