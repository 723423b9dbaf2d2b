/* Copyright 2026 The cohj Authors
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

#ifndef COHJ_COHJ_H
#define COHJ_COHJ_H

/* C interface to the cohj library.
 *
 * Phase points are passed as flat arrays of length 2n+1 laid out as
 * q_1..q_n, p_1..p_n, t. Tangent vectors and one-forms use the same layout.
 * Every call returns a cohj_status; on failure cohj_last_error() describes
 * the problem for the calling thread. Handles are opaque and owned by the
 * caller, who releases them with the matching *_free function. Strings
 * returned through char** are released with cohj_string_free. */

#include <stddef.h>

#if defined(_WIN32)
#if defined(COHJ_BUILDING)
#define COHJ_API __declspec(dllexport)
#else
#define COHJ_API __declspec(dllimport)
#endif
#else
#define COHJ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cohj_status {
  COHJ_OK = 0,
  COHJ_INVALID_ARGUMENT = 1,
  COHJ_UNSUPPORTED_STRUCTURE = 2,
  COHJ_SINGULAR_MATRIX = 3,
  COHJ_NON_HORIZONTAL_FORM = 4,
  COHJ_STEP_LIMIT_EXCEEDED = 5,
  COHJ_NON_FINITE_STATE = 6,
  COHJ_DOMAIN_ERROR = 7,
  COHJ_SINGULARITY_ERROR = 8,
  COHJ_ROOT_FIND_FAILURE = 9,
  COHJ_CHARACTERISTICS_CROSSED = 10,
  COHJ_CONFIG_ERROR = 11,
  COHJ_IO_ERROR = 12,
  COHJ_INTERNAL_ERROR = 99
} cohj_status;

typedef enum cohj_structure { COHJ_COSYMPLECTIC = 1, COHJ_CONTACT = 2 } cohj_structure;

typedef enum cohj_residual_mode { COHJ_MODE_THEOREM = 0, COHJ_MODE_AS_PRINTED = 1 } cohj_residual_mode;

/* A built-in Hamiltonian together with the structure it is evolved on. */
typedef struct cohj_system cohj_system;
/* A candidate Hamilton-Jacobi section gamma(q, t). */
typedef struct cohj_section cohj_section;
typedef struct cohj_trajectory cohj_trajectory;

COHJ_API const char* cohj_version(void);
COHJ_API const char* cohj_status_name(cohj_status status);
/* Message of the last failed call on this thread; "" if none. */
COHJ_API const char* cohj_last_error(void);
COHJ_API void cohj_string_free(char* s);

/* id: trig, ws, anis or damped. params_json: JSON object overriding the
 * system defaults, or NULL. */
COHJ_API cohj_status cohj_system_create(const char* id, const char* params_json, cohj_structure structure,
                                        cohj_system** out);
COHJ_API void cohj_system_free(cohj_system* system);
/* Configuration dimension n (phase arrays have 2n+1 entries). */
COHJ_API size_t cohj_system_dim(const cohj_system* system);

COHJ_API cohj_status cohj_hamiltonian(const cohj_system* system, const double* x, double* value);
/* eta at x, written as a one-form. */
COHJ_API cohj_status cohj_eta(const cohj_system* system, const double* x, double* form);
COHJ_API cohj_status cohj_flat(const cohj_system* system, const double* x, const double* vector, double* form);
COHJ_API cohj_status cohj_sharp(const cohj_system* system, const double* x, const double* form, double* vector);
COHJ_API cohj_status cohj_reeb(const cohj_system* system, const double* x, double* vector);
/* Hamiltonian evolution field: the Reeb field of the cosymplectic structure
 * built from H, or the contact Hamiltonian field. */
COHJ_API cohj_status cohj_evolution_field(const cohj_system* system, const double* x, double* vector);
/* Jacobi bracket {f, g} of the coordinate functions x_i and x_j. */
COHJ_API cohj_status cohj_coordinate_bracket(const cohj_system* system, size_t i, size_t j, const double* x,
                                             double* value);

/* integrator_json: {"method": "rk4"|"rk45", "step", "rel_tol", "abs_tol",
 * "max_steps"}, any subset, or NULL for the defaults. */
COHJ_API cohj_status cohj_integrate(const cohj_system* system, const double* x0, double s0, double s1,
                                    const char* integrator_json, cohj_trajectory** out);
COHJ_API void cohj_trajectory_free(cohj_trajectory* trajectory);
COHJ_API size_t cohj_trajectory_size(const cohj_trajectory* trajectory);
/* Copies sample k: its parameter into *s and its phase point into x. */
COHJ_API cohj_status cohj_trajectory_sample(const cohj_trajectory* trajectory, size_t k, double* s, double* x);
/* Conservation drift for cosymplectic systems, dissipation-law deviation for contact ones. */
COHJ_API cohj_status cohj_trajectory_drift(const cohj_trajectory* trajectory, double* max_abs, double* max_rel);
COHJ_API cohj_status cohj_trajectory_write_csv(const cohj_trajectory* trajectory, const char* path);

/* section_json: {"kind": "trig"|"cot"|"linear"|"ws"|"anis"|"damped", ...}
 * with the kind's parameters, or NULL for the system's own section. */
COHJ_API cohj_status cohj_section_create(const cohj_system* system, const char* section_json, cohj_section** out);
COHJ_API void cohj_section_free(cohj_section* section);
/* gamma(q, t) into p (n entries). */
COHJ_API cohj_status cohj_section_eval(const cohj_section* section, const double* q, double t, double* p);
/* Hamilton-Jacobi residual at (q, t), n entries (1 in as-printed mode, which
 * is defined for the trig system only). */
COHJ_API cohj_status cohj_hj_residual(const cohj_system* system, const cohj_section* section, const double* q,
                                      double t, cohj_residual_mode mode, double* residual);
COHJ_API cohj_status cohj_relatedness_error(const cohj_system* system, const cohj_section* section, const double* q0,
                                            double t0, double span, const char* integrator_json, double* error);

/* Resolves a run config for a command (integrate, hj-residual,
 * characteristics, related, involution), filling every default. */
COHJ_API cohj_status cohj_resolve_config(const char* command, const char* config_json, char** resolved_json);
/* Runs a command. *exit_code is 0 (thresholds met) or 1 (violated) with the
 * report JSON in *report; on failure it is 2 (config) or 3 (numeric) and
 * *report holds {"error": {"code", "message"}}. */
COHJ_API cohj_status cohj_run(const char* command, const char* config_json, char** report, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif /* COHJ_COHJ_H */
