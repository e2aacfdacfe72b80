/* Copyright 2026 The ellhill Authors.
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

/* C interface of libellhill.
 *
 * Every call returns an eh_status. On failure the message of the most
 * recent error on the calling thread is available from eh_last_error()
 * until the next failing call. Strings returned through char** outputs
 * are owned by the caller and released with eh_string_free. Handles are
 * released with their _free function; passing NULL to any _free is a
 * no-op. */

#ifndef ELLHILL_H_
#define ELLHILL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EH_API __declspec(dllexport)
#else
#define EH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match ellhill::ErrorCode; append only. */
typedef enum eh_status {
  EH_OK = 0,
  EH_DOMAIN = 1,
  EH_NON_CONVERGENCE = 2,
  EH_POLE = 3,
  EH_DEGENERATE = 4,
  EH_LEADING_ZERO = 5,
  EH_POLE_TOO_CLOSE = 6,
  EH_ZERO_COEFFICIENT = 7,
  EH_REGIME_VIOLATION = 8,
  EH_COLLISION_DETECTED = 9,
  EH_BRANCH_AMBIGUITY = 10,
  EH_SINGULARITY = 11,
  EH_PATH_POLE_CONFLICT = 12,
  EH_NON_UNIMODULAR = 13,
  EH_INVALID_ARGUMENT = 14,
  EH_INTERNAL = 100
} eh_status;

typedef struct eh_complex {
  double re;
  double im;
} eh_complex;

typedef struct eh_params eh_params;
typedef struct eh_foliation eh_foliation;

EH_API const char* eh_version(void);
EH_API const char* eh_status_name(eh_status status);
EH_API const char* eh_last_error(void);
EH_API void eh_string_free(char* s);

/* Couplings b0..b3 and modulus k, or the square roots of the couplings. */
EH_API eh_status eh_params_create(const eh_complex b[4], eh_complex k,
                                  eh_params** out);
EH_API eh_status eh_params_create_sqrt(const eh_complex sqrt_b[4],
                                       eh_complex k, eh_params** out);
EH_API void eh_params_free(eh_params* p);
EH_API eh_status eh_params_periods(const eh_params* p, eh_complex* K,
                                   eh_complex* K_prime);
/* 1 when b0 != b1 and b2 != b3 beyond the genericity threshold. */
EH_API eh_status eh_params_generic(const eh_params* p, int* generic);

EH_API eh_status eh_eval_u(const eh_params* p, eh_complex x, eh_complex* u);

/* Saddle index (1..6): z = sn^2 x*, x*, u(x*). */
EH_API eh_status eh_saddle(const eh_params* p, int index, eh_complex* z,
                           eh_complex* x, eh_complex* u);

/* Exports; see the repository README for the formats. */
EH_API eh_status eh_saddles_json(const eh_params* p, char** out);
EH_API eh_status eh_turning_json(const eh_params* p, eh_complex lambda,
                                 char** out);
EH_API eh_status eh_landscape_csv(const eh_params* p, eh_complex lower_left,
                                  eh_complex upper_right, int nx, int ny,
                                  char** out);

typedef enum eh_control_kind {
  EH_CONTROL_LINEAR = 0,      /* u5 + s (u6 - u5) + delta, s in [0, 1] */
  EH_CONTROL_EXPONENTIAL = 1  /* u5 + delta + A (1 - exp(r s / (s - 1))) */
} eh_control_kind;

typedef struct eh_control {
  eh_control_kind kind;
  eh_complex delta;
  double amplitude;
  double rate;
  double sigma_max;
} eh_control;

/* Defaults: delta = 0.1(1+i), amplitude 1000, rate 0.05, sigma_max 0.9. */
EH_API eh_control eh_control_default(eh_control_kind kind);
EH_API eh_status eh_trajectory_csv(const eh_params* p,
                                   const eh_control* control, int samples,
                                   char** out);

/* Critical lines: the three theta-lines leaving each turning point,
 * started at launch_radius and traced up to max_length in WKB length. */
EH_API eh_status eh_foliation_trace(const eh_params* p, eh_complex lambda,
                                    double theta, double launch_radius,
                                    double max_length, double tolerance,
                                    eh_foliation** out);
EH_API void eh_foliation_free(eh_foliation* f);
EH_API size_t eh_foliation_count(const eh_foliation* f);
EH_API eh_status eh_foliation_line_csv(const eh_foliation* f, size_t i,
                                       char** out);
/* file_names holds eh_foliation_count entries (or is NULL). */
EH_API eh_status eh_foliation_manifest_json(const eh_foliation* f,
                                            const char* const* file_names,
                                            char** out);

/* Integral of sqrt(phi) dz between turning points a and b (0..3). */
EH_API eh_status eh_wkb_period(const eh_params* p, eh_complex lambda, int a,
                               int b, eh_complex* out);

typedef enum eh_period {
  EH_PERIOD_2K = 0,        /* case C */
  EH_PERIOD_2IKP = 1,      /* case A */
  EH_PERIOD_2K_2IKP = 2    /* case B */
} eh_period;

/* Floquet indices by monodromy at each lambda, seeded by the asymptotic
 * series; calibrate_c0 != 0 calibrates case C first. */
EH_API eh_status eh_spectrum_json(const eh_params* p, eh_period period,
                                  const eh_complex* lambdas, size_t n,
                                  int calibrate_c0, char** out);

/* The default monodromy contour for the period as CSV columns re_x,
 * im_x, re_z, im_z (z = sn^2 x). */
EH_API eh_status eh_floquet_contour_csv(const eh_params* p, eh_period period,
                                        char** out);

/* Seeded round trip: lambda from the case series at index mu, then mu
 * back from the monodromy. */
EH_API eh_status eh_floquet_round_trip(const eh_params* p, eh_period period,
                                       eh_complex mu, eh_complex* lambda,
                                       eh_complex* mu_out);

typedef enum eh_tol_profile {
  EH_TOL_DEFAULT = 0,
  EH_TOL_STRICT = 1
} eh_tol_profile;

/* Runs the invariant and series suites; *passed is 1 iff none failed. */
EH_API eh_status eh_verify_json(const eh_params* p, uint64_t seed,
                                eh_tol_profile profile, char** out,
                                int* passed);

#ifdef __cplusplus
}
#endif

#endif /* ELLHILL_H_ */
