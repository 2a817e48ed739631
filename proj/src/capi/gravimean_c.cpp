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

#include "gravimean/gravimean.h"

#include <cmath>
#include <complex>
#include <exception>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "core/analytic.hpp"
#include "core/config.hpp"
#include "core/error.hpp"
#include "core/grid.hpp"
#include "core/monte_carlo.hpp"
#include "core/output.hpp"
#include "core/units.hpp"

namespace gm = gravimean;

struct gm_grid {
    gm::grid::SplitStepSolver solver;
    gm::grid::GridState state;
};

struct gm_trajectory {
    std::vector<gm::io::TrajectoryRow> rows;
};

struct gm_config {
    gm::io::ResolvedConfig config;
    std::string resolved_json;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_error_key;
thread_local int64_t g_last_error_trial = -1;

gm_status fail(gm_status status, const std::string &message) {
    g_last_error = message;
    return status;
}

// Maps core exceptions to status codes. Every entry point funnels through here.
template <typename F>
gm_status guarded(F &&body) {
    g_last_error_key.clear();
    g_last_error_trial = -1;
    try {
        body();
        return GM_OK;
    } catch (const gm::ConfigError &e) {
        g_last_error_key = e.key_path();
        return fail(GM_ERR_CONFIG, e.what());
    } catch (const gm::DomainError &e) {
        return fail(GM_ERR_DOMAIN, e.what());
    } catch (const gm::SetupError &e) {
        return fail(GM_ERR_SETUP, e.what());
    } catch (const gm::ConsistencyError &e) {
        return fail(GM_ERR_CONSISTENCY, e.what());
    } catch (const gm::TrialError &e) {
        g_last_error_trial = static_cast<int64_t>(e.index());
        return fail(GM_ERR_NUMERICAL, e.what());
    } catch (const gm::NumericalError &e) {
        return fail(GM_ERR_NUMERICAL, e.what());
    } catch (const gm::IoError &e) {
        return fail(GM_ERR_IO, e.what());
    } catch (const std::bad_alloc &) {
        return fail(GM_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(GM_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(GM_ERR_INTERNAL, "unknown error");
    }
}

#define GM_REQUIRE(ptr)                                                  \
    do {                                                                 \
        if ((ptr) == nullptr) return fail(GM_ERR_NULL, #ptr " is NULL"); \
    } while (0)

gm::QuantityKind quantity_kind(int kind) {
    switch (kind) {
        case GM_LENGTH:
            return gm::QuantityKind::Length;
        case GM_TIME:
            return gm::QuantityKind::Time;
        case GM_FORCE:
            return gm::QuantityKind::Force;
        case GM_ENERGY:
            return gm::QuantityKind::Energy;
        default:
            throw gm::DomainError("unknown quantity kind " + std::to_string(kind));
    }
}

gm::mc::Engine engine_of(int engine) {
    switch (engine) {
        case GM_ENGINE_ANALYTIC:
            return gm::mc::Engine::Analytic;
        case GM_ENGINE_GRID:
            return gm::mc::Engine::Grid;
        default:
            throw gm::DomainError("unknown engine " + std::to_string(engine));
    }
}

gm::DivertingForce fdiv_of(int kind, double value) {
    switch (kind) {
        case GM_FDIV_UNIFORM:
            return gm::DivertingForce::uniform();
        case GM_FDIV_FIXED:
            return gm::DivertingForce::fixed(value);
        default:
            throw gm::DomainError("unknown F_div kind " + std::to_string(kind));
    }
}

gm_apparatus to_c(const gm::ApparatusParams &a) {
    return {a.mass(), a.radius(), a.density(), a.gravitational_constant(), a.hbar(), a.omega_grav(), a.x0()};
}

gm::ApparatusParams from_c(const gm_apparatus &a) {
    return gm::ApparatusParams::from(a.mass_kg, a.radius_m, std::nullopt, a.G, a.hbar);
}

gm::Scales from_c(const gm_scales &s) { return {s.length_m, s.time_s, s.force_N, s.energy_J}; }

gm::MeasurementConfig from_c(const gm_measurement &m) {
    gm::MeasurementConfig c;
    c.p = m.p;
    c.f_meas = m.f_meas_N;
    c.f_div = fdiv_of(m.fdiv_kind, m.fdiv_value_N);
    c.tau_meas = m.tau_meas_s;
    c.l0 = m.l0_m;
    return c;
}

gm::analytic::CoherentTwoBranchState from_c(const gm_coherent_state &s) {
    gm::analytic::CoherentTwoBranchState out;
    out.plus = {s.plus.center, s.plus.velocity, s.plus.phase};
    out.minus = {s.minus.center, s.minus.velocity, s.minus.phase};
    out.p = s.p;
    return out;
}

gm_coherent_state to_c(const gm::analytic::CoherentTwoBranchState &s) {
    return {{s.plus.center, s.plus.velocity, s.plus.phase}, {s.minus.center, s.minus.velocity, s.minus.phase}, s.p};
}

gm::grid::GridSpec from_c(const gm_grid_spec &g) { return {g.half_length, g.points, g.dt}; }

gm_grid_spec to_c(const gm::grid::GridSpec &g) {
    return {g.half_length, static_cast<uint32_t>(g.points), g.dt};
}

gm::mc::TrialSetup from_c(const gm_trial_setup &s) {
    gm::mc::TrialSetup t;
    t.p = s.p;
    t.f_meas = s.f_meas;
    t.f_div = fdiv_of(s.fdiv_kind, s.fdiv_value);
    t.tau = s.tau;
    t.grid = from_c(s.grid);
    return t;
}

gm_trial_setup to_c(const gm::mc::TrialSetup &s) {
    return {s.p,
            s.f_meas,
            s.f_div.kind == gm::DivertingForce::Kind::Fixed ? GM_FDIV_FIXED : GM_FDIV_UNIFORM,
            s.f_div.value,
            s.tau,
            to_c(s.grid)};
}

gm_trial_result to_c(const gm::mc::TrialResult &r) {
    int outcome = r.outcome == gm::mc::Outcome::Right  ? GM_RIGHT
                  : r.outcome == gm::mc::Outcome::Left ? GM_LEFT
                                                       : GM_UNDECIDED;
    return {r.index, r.f_div_sample, r.f_total, outcome, r.final_displacement};
}

gm::grid::Field &branch_of(gm_grid &g, int branch) {
    if (branch == GM_PLUS) return g.state.psi_plus;
    if (branch == GM_MINUS) return g.state.psi_minus;
    throw gm::DomainError("unknown branch " + std::to_string(branch));
}

const gm::grid::Field &branch_of(const gm_grid &g, int branch) {
    return branch_of(const_cast<gm_grid &>(g), branch);
}

gm_trajectory_row to_c(const gm::io::TrajectoryRow &r) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    return {r.t,       r.xbar, r.x2bar.value_or(nan),     r.x_plus,
            r.x_minus, r.d,    r.norm_plus.value_or(nan), r.norm_minus.value_or(nan),
            r.energy.value_or(nan)};
}

}  // namespace

extern "C" {

GM_API const char *gm_version(void) { return GRAVIMEAN_VERSION; }
GM_API const char *gm_last_error(void) { return g_last_error.c_str(); }
GM_API const char *gm_last_error_key(void) { return g_last_error_key.c_str(); }
GM_API int64_t gm_last_error_trial(void) { return g_last_error_trial; }

GM_API gm_status gm_apparatus_from(
    double mass_kg, double radius_m, double density_kgm3, double G, double hbar, gm_apparatus *out) {
    GM_REQUIRE(out);
    auto opt = [](double v) { return v != 0 ? std::optional<double>(v) : std::nullopt; };
    return guarded([&] { *out = to_c(gm::ApparatusParams::from(opt(mass_kg), opt(radius_m), opt(density_kgm3), G, hbar)); });
}

GM_API gm_status gm_omega_grav(double mass_kg, double radius_m, double G, double *out) {
    GM_REQUIRE(out);
    return guarded([&] { *out = gm::omega_grav(mass_kg, radius_m, G); });
}

GM_API gm_status gm_scales_from(const gm_apparatus *apparatus, gm_scales *out) {
    GM_REQUIRE(apparatus);
    GM_REQUIRE(out);
    return guarded([&] {
        const auto s = gm::Scales::of(from_c(*apparatus));
        *out = {s.length, s.time, s.force, s.energy};
    });
}

GM_API gm_status gm_to_dimensionless(double si, int kind, const gm_scales *scales, double *out) {
    GM_REQUIRE(scales);
    GM_REQUIRE(out);
    return guarded([&] { *out = gm::to_dimensionless(si, quantity_kind(kind), from_c(*scales)); });
}

GM_API gm_status gm_to_si(double value, int kind, const gm_scales *scales, double *out) {
    GM_REQUIRE(scales);
    GM_REQUIRE(out);
    return guarded([&] { *out = gm::to_si(value, quantity_kind(kind), from_c(*scales)); });
}

GM_API gm_status gm_classicality_report(
    const gm_apparatus *apparatus, const gm_measurement *measurement, double smallness_ratio,
    gm_criteria_report *out) {
    GM_REQUIRE(apparatus);
    GM_REQUIRE(measurement);
    GM_REQUIRE(out);
    return guarded([&] {
        const auto r = gm::classicality_report(from_c(*apparatus), from_c(*measurement), smallness_ratio);
        *out = {r.smallness_ratio,
                r.x0_over_radius,
                r.d_est,
                r.d_equilibrium,
                r.displacement,
                r.omega_tau_squared,
                r.r_min,
                r.sizebound_ok,
                r.displacement_ok,
                r.timing_ok,
                r.all_ok()};
    });
}

GM_API gm_status gm_total_force(double p, double f_meas, double f_div, double *out) {
    GM_REQUIRE(out);
    return guarded([&] { *out = gm::analytic::total_force(p, f_meas, f_div); });
}

GM_API gm_status gm_equilibrium_splitting(
    double p, double f_meas, double *delta_plus, double *delta_minus, double *distance) {
    GM_REQUIRE(delta_plus);
    GM_REQUIRE(delta_minus);
    GM_REQUIRE(distance);
    return guarded([&] {
        const auto eq = gm::analytic::equilibrium_splitting(p, f_meas);
        *delta_plus = eq.delta_plus;
        *delta_minus = eq.delta_minus;
        *distance = eq.distance;
    });
}

GM_API gm_status gm_smooth_initial_condition(
    double p, double f_meas, double xbar0, double vbar0, gm_coherent_state *out) {
    GM_REQUIRE(out);
    return guarded([&] { *out = to_c(gm::analytic::smooth_initial_condition(p, f_meas, xbar0, vbar0)); });
}

GM_API gm_status gm_mean_trajectory(
    const gm_coherent_state *state0, double f_meas, double f_div, double t, double *out) {
    GM_REQUIRE(state0);
    GM_REQUIRE(out);
    return guarded([&] { *out = gm::analytic::mean_trajectory(from_c(*state0), f_meas, f_div, t); });
}

GM_API gm_status gm_analytic_evolve(
    const gm_coherent_state *state0, double f_meas, double f_div, double t, double gamma, gm_coherent_state *out) {
    GM_REQUIRE(state0);
    GM_REQUIRE(out);
    return guarded([&] { *out = to_c(gm::analytic::evolve(from_c(*state0), f_meas, f_div, t, gamma)); });
}

GM_API gm_status gm_grid_create(const gm_grid_spec *spec, double p, int include_phase_term, gm_grid **out) {
    GM_REQUIRE(spec);
    GM_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        if (!(p >= 0 && p <= 1)) throw gm::DomainError("p must lie in [0, 1]");
        const auto s = from_c(*spec);
        gm::grid::StepOptions opts;
        opts.global_phase_term = include_phase_term != 0;
        auto g = std::make_unique<gm_grid>(gm_grid{gm::grid::SplitStepSolver(s, opts), {}});
        g->state.p = p;
        g->state.psi_plus.assign(s.points, {});
        g->state.psi_minus.assign(s.points, {});
        *out = g.release();
    });
}

GM_API void gm_grid_destroy(gm_grid *grid) { delete grid; }

GM_API gm_status gm_grid_set_gaussian(gm_grid *grid, int branch, double center, double velocity, double width) {
    GM_REQUIRE(grid);
    return guarded([&] {
        auto psi = gm::grid::init_gaussian(grid->solver.spec(), center, velocity, width);
        const auto unwind = std::polar(1.0, -grid->state.global_phase);
        for (auto &z : psi) z *= unwind;
        branch_of(*grid, branch) = std::move(psi);
    });
}

GM_API gm_status gm_grid_set_branch(gm_grid *grid, int branch, const double *re_im, size_t n_doubles) {
    GM_REQUIRE(grid);
    GM_REQUIRE(re_im);
    return guarded([&] {
        auto &psi = branch_of(*grid, branch);
        if (n_doubles != 2 * psi.size()) throw gm::DomainError("expected 2 * points doubles");
        const auto unwind = std::polar(1.0, -grid->state.global_phase);
        for (std::size_t j = 0; j < psi.size(); ++j) psi[j] = std::complex<double>(re_im[2 * j], re_im[2 * j + 1]) * unwind;
    });
}

GM_API gm_status gm_grid_get_branch(const gm_grid *grid, int branch, double *re_im, size_t n_doubles) {
    GM_REQUIRE(grid);
    GM_REQUIRE(re_im);
    return guarded([&] {
        const auto &psi = branch_of(*grid, branch);
        if (n_doubles != 2 * psi.size()) throw gm::DomainError("expected 2 * points doubles");
        const auto phase = std::polar(1.0, grid->state.global_phase);
        for (std::size_t j = 0; j < psi.size(); ++j) {
            const auto z = psi[j] * phase;
            re_im[2 * j] = z.real();
            re_im[2 * j + 1] = z.imag();
        }
    });
}

GM_API gm_status gm_grid_step(gm_grid *grid, double f_meas, double f_div, uint64_t n_steps) {
    GM_REQUIRE(grid);
    return guarded([&] { grid->solver.advance(grid->state, {f_meas, f_div}, n_steps); });
}

GM_API gm_status gm_grid_moments(const gm_grid *grid, gm_moments *out) {
    GM_REQUIRE(grid);
    GM_REQUIRE(out);
    return guarded([&] {
        const auto m = gm::grid::moments(grid->state, grid->solver.spec());
        *out = {m.xbar, m.x2bar};
    });
}

GM_API gm_status gm_grid_energy(gm_grid *grid, double f_meas, double f_div, double *out) {
    GM_REQUIRE(grid);
    GM_REQUIRE(out);
    return guarded([&] { *out = grid->solver.energy(grid->state, {f_meas, f_div}); });
}

GM_API gm_status gm_grid_observe(gm_grid *grid, double f_meas, double f_div, gm_grid_sample *out) {
    GM_REQUIRE(grid);
    GM_REQUIRE(out);
    return guarded([&] {
        const auto s = gm::grid::observe(grid->solver, grid->state, {f_meas, f_div});
        *out = {s.t,         s.moments.xbar, s.moments.x2bar, s.x_plus,     s.x_minus,    s.d,
                s.norm_plus, s.norm_minus,   s.energy,        s.width_plus, s.width_minus};
    });
}

GM_API gm_status gm_grid_time(const gm_grid *grid, double *out) {
    GM_REQUIRE(grid);
    GM_REQUIRE(out);
    *out = grid->state.t;
    return GM_OK;
}

GM_API gm_status gm_trajectory_analytic(
    const gm_coherent_state *state0, double f_meas, double f_div, double gamma, double t_max, double dt_sample,
    gm_trajectory **out) {
    GM_REQUIRE(state0);
    GM_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        auto samples = gm::analytic::sample_trajectory(from_c(*state0), f_meas, f_div, t_max, dt_sample, gamma);
        *out = new gm_trajectory{gm::io::trajectory_rows(samples)};
    });
}

GM_API gm_status gm_trajectory_grid(
    const gm_coherent_state *state0, double width, double f_meas, double f_div, const gm_grid_spec *spec,
    double t_max, uint64_t sample_every, gm_trajectory **out) {
    GM_REQUIRE(state0);
    GM_REQUIRE(spec);
    GM_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        const auto g = from_c(*spec);
        gm::grid::GridState s;
        s.p = state0->p;
        s.psi_plus = gm::grid::init_gaussian(g, state0->plus.center, state0->plus.velocity, width);
        s.psi_minus = gm::grid::init_gaussian(g, state0->minus.center, state0->minus.velocity, width);
        auto run = gm::grid::evolve(s, {f_meas, f_div}, t_max, g, sample_every);
        *out = new gm_trajectory{gm::io::trajectory_rows(run.trajectory)};
    });
}

GM_API void gm_trajectory_destroy(gm_trajectory *trajectory) { delete trajectory; }

GM_API size_t gm_trajectory_size(const gm_trajectory *trajectory) {
    return trajectory ? trajectory->rows.size() : 0;
}

GM_API gm_status gm_trajectory_row_at(const gm_trajectory *trajectory, size_t index, gm_trajectory_row *out) {
    GM_REQUIRE(trajectory);
    GM_REQUIRE(out);
    if (index >= trajectory->rows.size()) return fail(GM_ERR_DOMAIN, "row index out of range");
    *out = to_c(trajectory->rows[index]);
    return GM_OK;
}

GM_API gm_status gm_trajectory_write_csv(const gm_trajectory *trajectory, const char *path) {
    GM_REQUIRE(trajectory);
    GM_REQUIRE(path);
    return guarded([&] { gm::io::write_trajectory_csv(trajectory->rows, path); });
}

GM_API uint64_t gm_derive_seed(uint64_t master_seed, uint64_t index) {
    return gm::mc::derive_seed(master_seed, index);
}

GM_API gm_status gm_sample_fdiv(uint64_t trial_seed, double f_meas, double *out) {
    GM_REQUIRE(out);
    *out = gm::mc::sample_fdiv(trial_seed, f_meas);
    return GM_OK;
}

GM_API gm_status gm_run_trial(
    const gm_trial_setup *setup, int engine, uint64_t index, uint64_t trial_seed, gm_trial_result *out) {
    GM_REQUIRE(setup);
    GM_REQUIRE(out);
    return guarded([&] { *out = to_c(gm::mc::run_trial(from_c(*setup), engine_of(engine), index, trial_seed)); });
}

GM_API gm_status gm_run_trial_with_force(
    const gm_trial_setup *setup, int engine, uint64_t index, double f_div, gm_trial_result *out) {
    GM_REQUIRE(setup);
    GM_REQUIRE(out);
    return guarded(
        [&] { *out = to_c(gm::mc::run_trial_with_force(from_c(*setup), engine_of(engine), index, f_div)); });
}

GM_API gm_status gm_run_ensemble(
    const gm_trial_setup *setup, int engine, uint64_t n_trials, uint64_t master_seed, unsigned workers,
    gm_mc_summary *out) {
    GM_REQUIRE(setup);
    GM_REQUIRE(out);
    return guarded([&] {
        const auto s = gm::mc::run_ensemble(from_c(*setup), engine_of(engine), n_trials, master_seed, workers);
        *out = {s.n_trials,
                s.right,
                s.left,
                s.undecided,
                s.frequency_right,
                s.confidence.lower,
                s.confidence.upper,
                s.master_seed,
                s.engine == gm::mc::Engine::Analytic ? GM_ENGINE_ANALYTIC : GM_ENGINE_GRID};
    });
}

GM_API gm_status gm_two_detector_table(double p, gm_two_detector *out) {
    GM_REQUIRE(out);
    return guarded([&] {
        const auto t = gm::mc::two_detector_table(p);
        for (int i = 0; i < 4; ++i) {
            out->model[i] = t.model[i];
            out->born[i] = t.born[i];
        }
    });
}

GM_API gm_status gm_config_load(const char *path, gm_config **out) {
    GM_REQUIRE(path);
    GM_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        auto cfg = gm::io::load_config(path);
        auto text = cfg.resolved.dump(2);
        *out = new gm_config{std::move(cfg), std::move(text)};
    });
}

GM_API gm_status gm_config_parse(const char *json_text, gm_config **out) {
    GM_REQUIRE(json_text);
    GM_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(json_text);
        } catch (const nlohmann::json::parse_error &e) {
            throw gm::ConfigError("", std::string("invalid JSON: ") + e.what());
        }
        auto cfg = gm::io::parse_config(doc);
        auto text = cfg.resolved.dump(2);
        *out = new gm_config{std::move(cfg), std::move(text)};
    });
}

GM_API void gm_config_destroy(gm_config *config) { delete config; }

GM_API gm_status gm_config_apparatus(const gm_config *config, gm_apparatus *out) {
    GM_REQUIRE(config);
    GM_REQUIRE(out);
    *out = to_c(config->config.apparatus);
    return GM_OK;
}

GM_API gm_status gm_config_measurement(const gm_config *config, gm_measurement *out) {
    GM_REQUIRE(config);
    GM_REQUIRE(out);
    const auto &m = config->config.measurement;
    *out = {m.p,
            m.f_meas,
            m.f_div.kind == gm::DivertingForce::Kind::Fixed ? GM_FDIV_FIXED : GM_FDIV_UNIFORM,
            m.f_div.value,
            m.tau_meas,
            m.l0};
    return GM_OK;
}

GM_API gm_status gm_config_scales(const gm_config *config, gm_scales *out) {
    GM_REQUIRE(config);
    GM_REQUIRE(out);
    const auto &s = config->config.scales;
    *out = {s.length, s.time, s.force, s.energy};
    return GM_OK;
}

GM_API gm_status gm_config_numerics(const gm_config *config, gm_numerics *out) {
    GM_REQUIRE(config);
    GM_REQUIRE(out);
    const auto &n = config->config.numerics;
    using Kind = gm::io::InitialCondition::Kind;
    const int kind = n.initial.kind == Kind::Smooth         ? GM_INITIAL_SMOOTH
                     : n.initial.kind == Kind::CommonCenter ? GM_INITIAL_COMMON_CENTER
                                                            : GM_INITIAL_EXPLICIT;
    *out = {to_c(n.grid),
            n.gamma,
            n.engine == gm::mc::Engine::Analytic ? GM_ENGINE_ANALYTIC : GM_ENGINE_GRID,
            n.smallness_ratio,
            kind,
            n.initial.width};
    return GM_OK;
}

GM_API gm_status gm_config_trial_setup(const gm_config *config, gm_trial_setup *out) {
    GM_REQUIRE(config);
    GM_REQUIRE(out);
    *out = to_c(config->config.trial_setup());
    return GM_OK;
}

GM_API gm_status gm_config_initial_state(const gm_config *config, gm_coherent_state *out) {
    GM_REQUIRE(config);
    GM_REQUIRE(out);
    return guarded([&] {
        const auto &c = config->config;
        const auto &ic = c.numerics.initial;
        const double p = c.measurement.p;
        gm::analytic::CoherentTwoBranchState s;
        using Kind = gm::io::InitialCondition::Kind;
        switch (ic.kind) {
            case Kind::Smooth:
                s = gm::analytic::smooth_initial_condition(p, c.f_meas(), ic.xbar, ic.vbar);
                break;
            case Kind::CommonCenter:
                s = gm::analytic::common_center_initial_condition(p, ic.xbar, ic.vbar);
                break;
            case Kind::Explicit:
                s.p = p;
                s.plus.center = ic.x_plus;
                s.plus.velocity = ic.v_plus;
                s.minus.center = ic.x_minus;
                s.minus.velocity = ic.v_minus;
                break;
        }
        *out = to_c(s);
    });
}

GM_API const char *gm_config_resolved_json(const gm_config *config) {
    return config ? config->resolved_json.c_str() : "";
}

GM_API gm_status gm_manifest_write(
    const char *manifest_path, const gm_config *config, const char *command_line, int seed_valid,
    uint64_t master_seed, const char *run_json, const char *const *outputs, size_t n_outputs) {
    GM_REQUIRE(manifest_path);
    if (n_outputs > 0) GM_REQUIRE(outputs);
    return guarded([&] {
        gm::io::ManifestInput in;
        in.command_line = command_line ? command_line : "";
        in.config = config ? config->config.resolved : nlohmann::json(nullptr);
        if (seed_valid) in.master_seed = master_seed;
        if (run_json && *run_json) {
            try {
                in.run = nlohmann::json::parse(run_json);
            } catch (const nlohmann::json::parse_error &e) {
                throw gm::DomainError(std::string("run_json: ") + e.what());
            }
        }
        for (size_t i = 0; i < n_outputs; ++i) in.outputs.emplace_back(outputs[i]);
        gm::io::write_manifest(manifest_path, in);
    });
}

GM_API gm_status gm_manifest_verify(const char *manifest_path, int *ok) {
    GM_REQUIRE(manifest_path);
    GM_REQUIRE(ok);
    return guarded([&] {
        const auto check = gm::io::verify_manifest(manifest_path);
        *ok = check.ok ? 1 : 0;
        if (!check.ok) {
            std::string msg;
            for (const auto &p : check.problems) msg += (msg.empty() ? "" : "; ") + p;
            g_last_error = msg;
        }
    });
}

}  // extern "C"
