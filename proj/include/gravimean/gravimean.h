// Copyright 2026 The gravimean Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * gravimean: two-branch mean-field gravity measurement model.
 *
 * C interface to the simulation core. All simulation quantities are in
 * oscillator units of the apparatus (length x0, time 1/omega_grav, force
 * M omega_grav^2 x0, energy hbar omega_grav) unless a name ends in an SI unit.
 *
 * Every function returns a gm_status. On failure gm_last_error() describes the
 * problem; the message is thread local and valid until the next failing call
 * on the same thread. Handles are opaque and must be released with their
 * matching *_destroy function; destroy functions accept NULL.
 */
#ifndef GRAVIMEAN_GRAVIMEAN_H
#define GRAVIMEAN_GRAVIMEAN_H

#include <stddef.h>
#include <stdint.h>

#if defined(GRAVIMEAN_BUILDING_LIBRARY)
#define GM_API __attribute__((visibility("default")))
#else
#define GM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gm_status {
    GM_OK = 0,
    GM_ERR_DOMAIN = 1,      /* argument outside the function's domain */
    GM_ERR_CONFIG = 2,      /* configuration rejected; see gm_last_error_key() */
    GM_ERR_SETUP = 3,       /* grid or packet placement unusable */
    GM_ERR_CONSISTENCY = 4, /* input state breaks an invariant (normalization, size) */
    GM_ERR_NUMERICAL = 5,   /* integration failed (norm drift, edge density) */
    GM_ERR_IO = 6,
    GM_ERR_NULL = 7,        /* required pointer argument was NULL */
    GM_ERR_INTERNAL = 8
} gm_status;

GM_API const char *gm_version(void);
GM_API const char *gm_last_error(void);
/* Key path of the last GM_ERR_CONFIG on this thread, "" otherwise. */
GM_API const char *gm_last_error_key(void);
/* Index of the failing trial for the last failed ensemble, or -1. */
GM_API int64_t gm_last_error_trial(void);

/* ---- Physical parameters and criteria ------------------------------------ */

typedef struct gm_apparatus {
    double mass_kg;
    double radius_m;
    double density_kgm3;
    double G;
    double hbar;
    double omega_grav;  /* rad/s */
    double x0_m;
} gm_apparatus;

/* Exactly two of mass/radius/density must be positive; pass 0 for the third. */
GM_API gm_status gm_apparatus_from(double mass_kg, double radius_m, double density_kgm3, double G, double hbar,
                                   gm_apparatus *out);
GM_API gm_status gm_omega_grav(double mass_kg, double radius_m, double G, double *out);

typedef struct gm_scales {
    double length_m;
    double time_s;
    double force_N;
    double energy_J;
} gm_scales;

typedef enum gm_quantity { GM_LENGTH = 0, GM_TIME = 1, GM_FORCE = 2, GM_ENERGY = 3 } gm_quantity;

GM_API gm_status gm_scales_from(const gm_apparatus *apparatus, gm_scales *out);
/* kind is a gm_quantity value; anything else is GM_ERR_DOMAIN. */
GM_API gm_status gm_to_dimensionless(double si, int kind, const gm_scales *scales, double *out);
GM_API gm_status gm_to_si(double value, int kind, const gm_scales *scales, double *out);

typedef enum gm_fdiv_kind { GM_FDIV_UNIFORM = 0, GM_FDIV_FIXED = 1 } gm_fdiv_kind;

typedef struct gm_measurement {
    double p;
    double f_meas_N;
    int fdiv_kind;        /* gm_fdiv_kind */
    double fdiv_value_N;  /* GM_FDIV_FIXED only */
    double tau_meas_s;
    double l0_m;
} gm_measurement;

typedef struct gm_criteria_report {
    double smallness_ratio;
    double x0_over_radius;
    double d_est_m;          /* F_meas / (M omega^2) */
    double d_equilibrium_m;  /* 2 F_meas / (M omega^2) */
    double displacement_m;   /* (F_meas / M) tau^2 */
    double omega_tau_squared;
    double r_min_m;          /* l0 / (omega tau)^2 */
    int sizebound_ok;
    int displacement_ok;
    int timing_ok;
    int all_ok;
} gm_criteria_report;

GM_API gm_status gm_classicality_report(const gm_apparatus *apparatus, const gm_measurement *measurement,
                                        double smallness_ratio, gm_criteria_report *out);

/* ---- Analytic coherent-state propagator ---------------------------------- */

typedef struct gm_branch {
    double center;
    double velocity;
    double phase;
} gm_branch;

typedef struct gm_coherent_state {
    gm_branch plus;
    gm_branch minus;
    double p;
} gm_coherent_state;

GM_API gm_status gm_total_force(double p, double f_meas, double f_div, double *out);
GM_API gm_status gm_equilibrium_splitting(double p, double f_meas, double *delta_plus, double *delta_minus,
                                          double *distance);
GM_API gm_status gm_smooth_initial_condition(double p, double f_meas, double xbar0, double vbar0,
                                             gm_coherent_state *out);
GM_API gm_status gm_mean_trajectory(const gm_coherent_state *state0, double f_meas, double f_div, double t,
                                    double *out);
GM_API gm_status gm_analytic_evolve(const gm_coherent_state *state0, double f_meas, double f_div, double t,
                                    double gamma, gm_coherent_state *out);

/* ---- Grid solver --------------------------------------------------------- */

typedef struct gm_grid_spec {
    double half_length;
    uint32_t points;  /* power of two */
    double dt;
} gm_grid_spec;

typedef struct gm_moments {
    double xbar;
    double x2bar;
} gm_moments;

typedef struct gm_grid_sample {
    double t;
    double xbar;
    double x2bar;
    double x_plus;
    double x_minus;
    double d;
    double norm_plus;
    double norm_minus;
    double energy;
    double width_plus;
    double width_minus;
} gm_grid_sample;

typedef enum gm_branch_id { GM_PLUS = 0, GM_MINUS = 1 } gm_branch_id;

/* A grid solver owns one two-branch state. Not thread safe per handle. */
typedef struct gm_grid gm_grid;

/* include_phase_term != 0 keeps the constant (1/2) x2bar potential term. */
GM_API gm_status gm_grid_create(const gm_grid_spec *spec, double p, int include_phase_term, gm_grid **out);
GM_API void gm_grid_destroy(gm_grid *grid);
GM_API gm_status gm_grid_set_gaussian(gm_grid *grid, int branch, double center, double velocity, double width);
/* Interleaved (re, im) pairs, 2 * points doubles. Values include the common
 * phase accumulated from the constant potential term. */
GM_API gm_status gm_grid_set_branch(gm_grid *grid, int branch, const double *re_im, size_t n_doubles);
GM_API gm_status gm_grid_get_branch(const gm_grid *grid, int branch, double *re_im, size_t n_doubles);
GM_API gm_status gm_grid_step(gm_grid *grid, double f_meas, double f_div, uint64_t n_steps);
GM_API gm_status gm_grid_moments(const gm_grid *grid, gm_moments *out);
GM_API gm_status gm_grid_energy(gm_grid *grid, double f_meas, double f_div, double *out);
GM_API gm_status gm_grid_observe(gm_grid *grid, double f_meas, double f_div, gm_grid_sample *out);
GM_API gm_status gm_grid_time(const gm_grid *grid, double *out);

/* ---- Trajectories -------------------------------------------------------- */

typedef struct gm_trajectory gm_trajectory;

/* Grid and analytic rows share the CSV layout
 * t,xbar,x2bar,x_plus,x_minus,d,norm_plus,norm_minus,energy; columns the
 * analytic route does not produce are NaN here and empty in CSV. */
typedef struct gm_trajectory_row {
    double t;
    double xbar;
    double x2bar;
    double x_plus;
    double x_minus;
    double d;
    double norm_plus;
    double norm_minus;
    double energy;
} gm_trajectory_row;

GM_API gm_status gm_trajectory_analytic(const gm_coherent_state *state0, double f_meas, double f_div,
                                        double gamma, double t_max, double dt_sample, gm_trajectory **out);
/* Grid run from Gaussian packets of the given width at the branch centers and
 * velocities of state0. */
GM_API gm_status gm_trajectory_grid(const gm_coherent_state *state0, double width, double f_meas, double f_div,
                                    const gm_grid_spec *spec, double t_max, uint64_t sample_every,
                                    gm_trajectory **out);
GM_API void gm_trajectory_destroy(gm_trajectory *trajectory);
GM_API size_t gm_trajectory_size(const gm_trajectory *trajectory);
GM_API gm_status gm_trajectory_row_at(const gm_trajectory *trajectory, size_t index, gm_trajectory_row *out);
GM_API gm_status gm_trajectory_write_csv(const gm_trajectory *trajectory, const char *path);

/* ---- Monte Carlo --------------------------------------------------------- */

typedef enum gm_engine { GM_ENGINE_ANALYTIC = 0, GM_ENGINE_GRID = 1 } gm_engine;
typedef enum gm_outcome { GM_RIGHT = 0, GM_LEFT = 1, GM_UNDECIDED = 2 } gm_outcome;

typedef struct gm_trial_setup {
    double p;
    double f_meas;
    int fdiv_kind;      /* gm_fdiv_kind */
    double fdiv_value;  /* dimensionless, GM_FDIV_FIXED only */
    double tau;
    gm_grid_spec grid;  /* grid engine only */
} gm_trial_setup;

typedef struct gm_trial_result {
    uint64_t index;
    double f_div_sample;
    double f_total;
    int outcome;  /* gm_outcome */
    double final_displacement;
} gm_trial_result;

typedef struct gm_mc_summary {
    uint64_t n_trials;
    uint64_t right;
    uint64_t left;
    uint64_t undecided;
    double frequency_right;  /* NaN when every trial is undecided */
    double ci_lower;         /* Wilson 95% */
    double ci_upper;
    uint64_t master_seed;
    int engine;              /* gm_engine */
} gm_mc_summary;

typedef struct gm_two_detector {
    double model[4];  /* (++, +-, -+, --) */
    double born[4];
} gm_two_detector;

GM_API uint64_t gm_derive_seed(uint64_t master_seed, uint64_t index);
GM_API gm_status gm_sample_fdiv(uint64_t trial_seed, double f_meas, double *out);
GM_API gm_status gm_run_trial(const gm_trial_setup *setup, int engine, uint64_t index, uint64_t trial_seed,
                              gm_trial_result *out);
/* Runs one trial with the diverting force given explicitly. */
GM_API gm_status gm_run_trial_with_force(const gm_trial_setup *setup, int engine, uint64_t index, double f_div,
                                         gm_trial_result *out);
/* workers == 0 uses the hardware concurrency. */
GM_API gm_status gm_run_ensemble(const gm_trial_setup *setup, int engine, uint64_t n_trials, uint64_t master_seed,
                                 unsigned workers, gm_mc_summary *out);
GM_API gm_status gm_two_detector_table(double p, gm_two_detector *out);

/* ---- Configuration and manifests ----------------------------------------- */

typedef struct gm_config gm_config;

typedef enum gm_initial_kind { GM_INITIAL_SMOOTH = 0, GM_INITIAL_COMMON_CENTER = 1, GM_INITIAL_EXPLICIT = 2 } gm_initial_kind;

typedef struct gm_numerics {
    gm_grid_spec grid;
    double gamma;
    int engine;  /* gm_engine */
    double smallness_ratio;
    int initial_kind;  /* gm_initial_kind */
    double initial_width;
} gm_numerics;

GM_API gm_status gm_config_load(const char *path, gm_config **out);
GM_API gm_status gm_config_parse(const char *json_text, gm_config **out);
GM_API void gm_config_destroy(gm_config *config);
GM_API gm_status gm_config_apparatus(const gm_config *config, gm_apparatus *out);
GM_API gm_status gm_config_measurement(const gm_config *config, gm_measurement *out);
GM_API gm_status gm_config_scales(const gm_config *config, gm_scales *out);
GM_API gm_status gm_config_numerics(const gm_config *config, gm_numerics *out);
/* Dimensionless trial setup (forces and tau converted with the config's scales). */
GM_API gm_status gm_config_trial_setup(const gm_config *config, gm_trial_setup *out);
/* Initial coherent state described by the config's "initial" block. */
GM_API gm_status gm_config_initial_state(const gm_config *config, gm_coherent_state *out);
/* Fully resolved configuration as JSON; owned by the handle. */
GM_API const char *gm_config_resolved_json(const gm_config *config);

/* Writes <manifest_path> listing the SHA-256 of each output. run_json is a
 * JSON object of subcommand parameters (may be NULL); seed_valid selects
 * whether master_seed is recorded. */
GM_API gm_status gm_manifest_write(const char *manifest_path, const gm_config *config, const char *command_line,
                                   int seed_valid, uint64_t master_seed, const char *run_json,
                                   const char *const *outputs, size_t n_outputs);
/* *ok = 1 when every recorded digest matches the file on disk. */
GM_API gm_status gm_manifest_verify(const char *manifest_path, int *ok);

#ifdef __cplusplus
}
#endif

#endif /* GRAVIMEAN_GRAVIMEAN_H */
