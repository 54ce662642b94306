/*
 * Copyright 2026 The quadsmc Authors
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

#ifndef QUADSMC_QUADSMC_H
#define QUADSMC_QUADSMC_H

/*
 * Stable C interface of libquadsmc.
 *
 * Objects are opaque and owned by the caller once created; release each with
 * its *_free function (NULL is accepted). Every fallible call returns a
 * quadsmc_status and, on failure, leaves a message retrievable with
 * quadsmc_last_error() on the calling thread.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QUADSMC_API __declspec(dllexport)
#else
#define QUADSMC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum quadsmc_status {
  QUADSMC_OK = 0,
  QUADSMC_CHECK_FAILED = 1, /* an invariant check reported a failure */
  QUADSMC_E_CONFIG = 2,     /* unreadable, malformed or invalid config */
  QUADSMC_E_DIVERGED = 3,   /* rollout stopped early; partial log kept */
  QUADSMC_E_IO = 4,         /* an output file could not be written */
  QUADSMC_E_ARGUMENT = 5,   /* NULL handle or invalid argument */
  QUADSMC_E_INTERNAL = 6
} quadsmc_status;

typedef struct quadsmc_config quadsmc_config;
typedef struct quadsmc_run quadsmc_run;
typedef struct quadsmc_tune_result quadsmc_tune_result;

QUADSMC_API const char* quadsmc_version(void);

/* Message of the last failed call on this thread; "" if none. */
QUADSMC_API const char* quadsmc_last_error(void);

QUADSMC_API quadsmc_status quadsmc_config_load(const char* path,
                                               quadsmc_config** out);
QUADSMC_API quadsmc_status quadsmc_config_parse(const char* json_text,
                                                quadsmc_config** out);
QUADSMC_API void quadsmc_config_free(quadsmc_config* config);

/* output.dir of the document, or NULL when absent. */
QUADSMC_API const char* quadsmc_config_output_dir(const quadsmc_config* config);
QUADSMC_API uint64_t quadsmc_config_seed(const quadsmc_config* config);
QUADSMC_API int quadsmc_config_is_selftest(const quadsmc_config* config);

/* Runs the closed loop. Returns QUADSMC_E_DIVERGED with *out set to the
 * partial run when the state stops being finite or a control law becomes
 * singular. */
QUADSMC_API quadsmc_status quadsmc_simulate(const quadsmc_config* config,
                                            quadsmc_run** out);
QUADSMC_API void quadsmc_run_free(quadsmc_run* run);
QUADSMC_API size_t quadsmc_run_rows(const quadsmc_run* run);
/* Non-zero if the run stopped early; stores the failure time if requested. */
QUADSMC_API int quadsmc_run_failed(const quadsmc_run* run, double* time);
/* Tracking ISE of channel 0..5 (phi, theta, psi, x, y, z). */
QUADSMC_API quadsmc_status quadsmc_run_ise(const quadsmc_run* run,
                                           int channel, double* out);

QUADSMC_API quadsmc_status quadsmc_run_write_csv(const quadsmc_run* run,
                                                 const char* path);
QUADSMC_API quadsmc_status quadsmc_run_write_metrics(const quadsmc_run* run,
                                                     const char* path);
/* Writes one SVG per plotted channel, plus trajectory_3d.svg in position
 * mode, into an existing directory. */
QUADSMC_API quadsmc_status quadsmc_run_write_plots(const quadsmc_run* run,
                                                   const char* dir);

/* Tunes the gains (or runs the optimiser self-test when the config asks for
 * it) with at most `threads` concurrent evaluations. */
QUADSMC_API quadsmc_status quadsmc_tune(const quadsmc_config* config,
                                        uint64_t seed, unsigned threads,
                                        quadsmc_tune_result** out);
QUADSMC_API void quadsmc_tune_free(quadsmc_tune_result* result);
QUADSMC_API double quadsmc_tune_best_objective(const quadsmc_tune_result* r);
QUADSMC_API double quadsmc_tune_baseline_objective(
    const quadsmc_tune_result* r);
QUADSMC_API size_t quadsmc_tune_evaluations(const quadsmc_tune_result* r);
/* Best point of the tuned vector; returns its dimension. Copies at most
 * `capacity` values into `out` (which may be NULL). */
QUADSMC_API size_t quadsmc_tune_best_point(const quadsmc_tune_result* r,
                                           double* out, size_t capacity);
QUADSMC_API quadsmc_status quadsmc_tune_write_trace(
    const quadsmc_tune_result* r, const char* path);
QUADSMC_API quadsmc_status quadsmc_tune_write_best(
    const quadsmc_tune_result* r, const char* path);

typedef void (*quadsmc_check_callback)(const char* name, int passed,
                                       double measured, double tolerance,
                                       void* user);

/* Runs the invariant checks, reporting each through `callback` (may be
 * NULL). Returns QUADSMC_CHECK_FAILED if any check fails. */
QUADSMC_API quadsmc_status quadsmc_check(const quadsmc_config* config,
                                         uint64_t seed,
                                         quadsmc_check_callback callback,
                                         void* user);

#ifdef __cplusplus
}
#endif

#endif /* QUADSMC_QUADSMC_H */
