// Copyright 2026 The wamp Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef WAMP_WAMP_H
#define WAMP_WAMP_H

/* C interface to the wamp simulator. Every handle is opaque and owned by the
 * caller once returned; release it with the matching *_destroy function.
 * Strings returned through output structs stay valid until the owning handle
 * is destroyed. */

#include <stddef.h>

#if defined(WAMP_BUILDING_LIBRARY)
#define WAMP_API __attribute__((visibility("default")))
#else
#define WAMP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wamp_status {
    WAMP_OK = 0,
    WAMP_ERR_INVALID_ARGUMENT = 1,
    WAMP_ERR_INVARIANT_VIOLATION = 2,
    WAMP_ERR_IO = 3,
    WAMP_ERR_OUT_OF_RANGE = 4,
    WAMP_ERR_INTERNAL = 5
} wamp_status;

/* Negates one 50:50 splitter amplitude for party 0. Negative controls only. */
#define WAMP_FLAG_INJECT_BS_SIGN_FAULT 0x1

typedef struct wamp_complex {
    double re;
    double im;
} wamp_complex;

typedef struct wamp_config wamp_config;
typedef struct wamp_report wamp_report;
typedef struct wamp_sweep wamp_sweep;
typedef struct wamp_verify wamp_verify;

typedef struct wamp_summary {
    int n_parties;
    double eta;
    double p1;
    double p2;
    double p_total;
    double eta_prime;
    int has_gain; /* 0 when eta == 0 */
    double gain;
    double uniformity_residual;
    double min_corrected_fidelity;
    double completeness_residual;
    size_t pattern_count;
} wamp_summary;

typedef struct wamp_pattern_outcome {
    const char *label; /* e.g. "D1D2|D3D4|D1D4" */
    double p_signal;
    double p_vacuum;
    double corrected_fidelity;
} wamp_pattern_outcome;

typedef struct wamp_analytic_values {
    double p1;
    double p2;
    double p_total;
    double eta_prime;
    int has_gain;
    double gain;
} wamp_analytic_values;

typedef enum wamp_row_source { WAMP_SOURCE_ANALYTIC = 0, WAMP_SOURCE_SIMULATED = 1 } wamp_row_source;

typedef struct wamp_sweep_row {
    int n;
    double t;
    double eta;
    double p1;
    double p2;
    double p_total;
    double eta_prime;
    double gain;
    wamp_row_source source;
} wamp_sweep_row;

typedef struct wamp_check {
    const char *name;
    int passed;
    double max_residual;
    double tolerance;
    const char *detail;
} wamp_check;

/* Message of the last failing call on this thread; never NULL. */
WAMP_API const char *wamp_last_error(void);
WAMP_API const char *wamp_version(void);

WAMP_API wamp_status wamp_config_create(int n_parties, double t, double eta,
                                        wamp_complex alpha, wamp_complex beta,
                                        wamp_config **out);
WAMP_API void wamp_config_destroy(wamp_config *config);

WAMP_API wamp_status wamp_simulate(const wamp_config *config, unsigned flags,
                                   wamp_report **out);
WAMP_API void wamp_report_destroy(wamp_report *report);
WAMP_API wamp_status wamp_report_summary(const wamp_report *report, wamp_summary *out);
WAMP_API wamp_status wamp_report_pattern(const wamp_report *report, size_t index,
                                         wamp_pattern_outcome *out);

WAMP_API wamp_status wamp_analytic(int n_parties, double t, double eta,
                                   wamp_analytic_values *out);

/* Writes up to `capacity` grid values to `values` and the full count to
 * `count`. Pass values == NULL to query the count only. */
WAMP_API wamp_status wamp_make_grid(double start, double stop, double step,
                                    double *values, size_t capacity, size_t *count);

WAMP_API wamp_status wamp_sweep_run(const int *n_list, size_t n_count,
                                    const double *t_grid, size_t t_count,
                                    const double *eta_list, size_t eta_count,
                                    int include_simulation, unsigned workers,
                                    wamp_sweep **out);
WAMP_API void wamp_sweep_destroy(wamp_sweep *sweep);
WAMP_API size_t wamp_sweep_row_count(const wamp_sweep *sweep);
WAMP_API wamp_status wamp_sweep_get_row(const wamp_sweep *sweep, size_t index,
                                    wamp_sweep_row *out);

WAMP_API wamp_status wamp_verify_run(int max_n, double tolerance, unsigned workers,
                                     unsigned flags, wamp_verify **out);
WAMP_API void wamp_verify_destroy(wamp_verify *verify);
WAMP_API size_t wamp_verify_check_count(const wamp_verify *verify);
WAMP_API wamp_status wamp_verify_check(const wamp_verify *verify, size_t index,
                                       wamp_check *out);
WAMP_API int wamp_verify_all_passed(const wamp_verify *verify);

#ifdef __cplusplus
}
#endif

#endif /* WAMP_WAMP_H */
