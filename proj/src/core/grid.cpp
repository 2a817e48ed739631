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

#include "core/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <mutex>
#include <string>

#include "core/analytic.hpp"
#include "core/error.hpp"
#include "core/units.hpp"

namespace gravimean::grid {

namespace {

// FFTW's planner is not reentrant; execution is.
std::mutex &planner_mutex() {
    static std::mutex m;
    return m;
}

constexpr double kMomentNormTolerance = 1e-6;
constexpr double kStepNormTolerance = 1e-8;
constexpr double kEdgeDensityLimit = 1e-8;
constexpr double kEdgeFraction = 0.025;

double norm_of(const Field &psi, double dx) {
    double s = 0;
    for (const auto &z : psi) s += std::norm(z);
    return s * dx;
}

void require_size(const Field &psi, const GridSpec &spec, const char *name) {
    if (psi.size() != spec.points) {
        throw ConsistencyError(
            std::string(name) + " has " + std::to_string(psi.size()) + " points, grid has " +
            std::to_string(spec.points));
    }
}

}  // namespace

std::vector<double> GridSpec::coordinates() const {
    std::vector<double> xs(points);
    for (std::size_t j = 0; j < points; ++j) xs[j] = x(j);
    return xs;
}

std::vector<double> GridSpec::wavenumbers() const {
    const double dk = kPi / half_length;
    std::vector<double> ks(points);
    const auto n = static_cast<std::ptrdiff_t>(points);
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        ks[static_cast<std::size_t>(j)] = static_cast<double>(j < n / 2 ? j : j - n) * dk;
    }
    return ks;
}

void GridSpec::validate() const {
    if (points < 4 || !std::has_single_bit(points)) {
        throw SetupError("grid points must be a power of two >= 4, got " + std::to_string(points));
    }
    if (!(half_length > 0) || !std::isfinite(half_length)) throw SetupError("grid half length must be positive");
    if (!(dt > 0) || !std::isfinite(dt)) throw SetupError("time step must be positive");
}

BranchObservables branch_observables(const Field &psi, const GridSpec &spec) {
    const double dx = spec.dx();
    double n0 = 0, n1 = 0, n2 = 0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        const double rho = std::norm(psi[j]);
        const double x = spec.x(j);
        n0 += rho;
        n1 += rho * x;
        n2 += rho * x * x;
    }
    BranchObservables o;
    o.norm = n0 * dx;
    o.mean = n1 / n0;
    o.second_moment = n2 / n0;
    o.width = std::sqrt(std::max(0.0, 2 * (o.second_moment - o.mean * o.mean)));
    return o;
}

Moments moments(const GridState &state, const GridSpec &spec) {
    require_size(state.psi_plus, spec, "psi_plus");
    require_size(state.psi_minus, spec, "psi_minus");
    const auto plus = branch_observables(state.psi_plus, spec);
    const auto minus = branch_observables(state.psi_minus, spec);
    for (const auto *b : {&plus, &minus}) {
        if (!(std::abs(b->norm - 1) <= kMomentNormTolerance)) {
            throw ConsistencyError(
                std::string(b == &plus ? "psi_plus" : "psi_minus") + " norm " + std::to_string(b->norm) +
                " deviates from 1");
        }
    }
    const double p = state.p;
    return {p * plus.mean + (1 - p) * minus.mean, p * plus.second_moment + (1 - p) * minus.second_moment};
}

double edge_density(const Field &psi, const GridSpec &spec) {
    const auto n = psi.size();
    const auto band = static_cast<std::size_t>(std::ceil(kEdgeFraction * static_cast<double>(n)));
    double s = 0;
    for (std::size_t j = 0; j < band && j < n; ++j) s += std::norm(psi[j]) + std::norm(psi[n - 1 - j]);
    return s * spec.dx();
}

Field init_gaussian(const GridSpec &spec, double center, double velocity, double width) {
    spec.validate();
    if (!(width > 0)) throw SetupError("packet width must be positive");
    const double margin = 5 * width;
    if (!(center > -spec.half_length + margin && center < spec.half_length - margin)) {
        throw SetupError(
            "packet at " + std::to_string(center) + " with width " + std::to_string(width) +
            " is within 5 widths of the boundary");
    }
    Field psi(spec.points);
    for (std::size_t j = 0; j < spec.points; ++j) {
        const double x = spec.x(j);
        const double u = (x - center) / width;
        psi[j] = std::polar(std::exp(-0.5 * u * u), velocity * x);
    }
    const double scale = 1.0 / std::sqrt(norm_of(psi, spec.dx()));
    for (auto &z : psi) z *= scale;
    return psi;
}

struct SplitStepSolver::Impl {
    GridSpec spec;
    StepOptions options;
    std::vector<double> xs;
    std::vector<double> ks;
    Field half_kinetic;  // exp(-i k^2 dt / 4) / N
    Field full_kinetic;  // exp(-i k^2 dt / 2) / N
    fftw_complex *buffer = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    Impl(GridSpec s, StepOptions o) : spec(s), options(o) {
        spec.validate();
        xs = spec.coordinates();
        ks = spec.wavenumbers();
        const double inv_n = 1.0 / static_cast<double>(spec.points);
        half_kinetic.resize(spec.points);
        full_kinetic.resize(spec.points);
        for (std::size_t j = 0; j < spec.points; ++j) {
            const double k2 = ks[j] * ks[j];
            half_kinetic[j] = std::polar(inv_n, -0.25 * k2 * spec.dt);
            full_kinetic[j] = std::polar(inv_n, -0.5 * k2 * spec.dt);
        }
        std::lock_guard lock(planner_mutex());
        buffer = fftw_alloc_complex(spec.points);
        const int n = static_cast<int>(spec.points);
        forward = fftw_plan_dft_1d(n, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_1d(n, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~Impl() {
        std::lock_guard lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
        if (buffer) fftw_free(buffer);
    }

    Complex *work() { return reinterpret_cast<Complex *>(buffer); }

    void to_buffer(const Field &psi) { std::memcpy(buffer, psi.data(), psi.size() * sizeof(Complex)); }
    void from_buffer(Field &psi) { std::memcpy(static_cast<void *>(psi.data()), buffer, psi.size() * sizeof(Complex)); }

    void kinetic(Field &psi, const Field &factor) {
        to_buffer(psi);
        fftw_execute(forward);
        Complex *w = work();
        for (std::size_t j = 0; j < spec.points; ++j) w[j] *= factor[j];
        fftw_execute(backward);
        from_buffer(psi);
    }

    void potential(Field &psi, double linear) {
        const double dt = spec.dt;
        for (std::size_t j = 0; j < spec.points; ++j) {
            const double x = xs[j];
            const double v = 0.5 * x * x - linear * x;
            psi[j] *= std::polar(1.0, -v * dt);
        }
    }

    void check_sizes(const GridState &state) const {
        require_size(state.psi_plus, spec, "psi_plus");
        require_size(state.psi_minus, spec, "psi_minus");
    }

    // Moments are taken from the half-kinetic-advanced densities, which the
    // potential phase leaves unchanged.
    void kick(GridState &state, Forces f) {
        const auto m = moments(state, spec);
        // The constant term multiplies both branches by the same phase; it is
        // applied exactly rather than rounded into every grid point.
        if (options.global_phase_term) state.global_phase -= 0.5 * m.x2bar * spec.dt;
        potential(state.psi_plus, m.xbar + f.f_meas + f.f_div);
        potential(state.psi_minus, m.xbar - f.f_meas + f.f_div);
    }

    double check_norm(const Field &psi, double before, const char *name, double t) const {
        const double after = norm_of(psi, spec.dx());
        if (!(std::abs(after - before) <= kStepNormTolerance)) {
            throw NumericalError(
                std::string(name) + " norm drifted from " + std::to_string(before) + " to " +
                std::to_string(after) + " in one step near t = " + std::to_string(t));
        }
        return after;
    }

    double kinetic_term(const Field &psi) {
        to_buffer(psi);
        fftw_execute(forward);
        const Complex *w = work();
        double s = 0;
        for (std::size_t j = 0; j < spec.points; ++j) s += ks[j] * ks[j] * std::norm(w[j]);
        // Parseval with the unnormalized forward transform.
        return 0.5 * s * spec.dx() / static_cast<double>(spec.points);
    }
};

SplitStepSolver::SplitStepSolver(GridSpec spec, StepOptions options)
    : impl_(std::make_unique<Impl>(spec, options)) {}
SplitStepSolver::~SplitStepSolver() = default;
SplitStepSolver::SplitStepSolver(SplitStepSolver &&) noexcept = default;
SplitStepSolver &SplitStepSolver::operator=(SplitStepSolver &&) noexcept = default;

const GridSpec &SplitStepSolver::spec() const { return impl_->spec; }
const StepOptions &SplitStepSolver::options() const { return impl_->options; }

void SplitStepSolver::step(GridState &state, Forces forces) { advance(state, forces, 1); }

void SplitStepSolver::advance(GridState &state, Forces forces, std::size_t n_steps) {
    if (n_steps == 0) return;
    auto &s = *impl_;
    s.check_sizes(state);
    const double dx = s.spec.dx();
    const double t0 = state.t;

    double norm_plus = norm_of(state.psi_plus, dx);
    double norm_minus = norm_of(state.psi_minus, dx);
    s.kinetic(state.psi_plus, s.half_kinetic);
    s.kinetic(state.psi_minus, s.half_kinetic);
    for (std::size_t i = 0; i < n_steps; ++i) {
        state.t = t0 + (static_cast<double>(i) + 0.5) * s.spec.dt;
        s.kick(state, forces);
        const auto &factor = i + 1 == n_steps ? s.half_kinetic : s.full_kinetic;
        s.kinetic(state.psi_plus, factor);
        s.kinetic(state.psi_minus, factor);
        norm_plus = s.check_norm(state.psi_plus, norm_plus, "psi_plus", state.t);
        norm_minus = s.check_norm(state.psi_minus, norm_minus, "psi_minus", state.t);
    }
    state.t = t0 + static_cast<double>(n_steps) * s.spec.dt;
}

double SplitStepSolver::energy(const GridState &state, Forces forces) {
    auto &s = *impl_;
    s.check_sizes(state);
    const auto m = moments(state, s.spec);
    const auto plus = branch_observables(state.psi_plus, s.spec);
    const auto minus = branch_observables(state.psi_minus, s.spec);
    const double e_plus = s.kinetic_term(state.psi_plus) + (-forces.f_meas - forces.f_div) * plus.mean;
    const double e_minus = s.kinetic_term(state.psi_minus) + (forces.f_meas - forces.f_div) * minus.mean;
    return state.p * e_plus + (1 - state.p) * e_minus + 0.5 * (m.x2bar - m.xbar * m.xbar);
}

double SplitStepSolver::mean_momentum(const Field &psi) {
    auto &s = *impl_;
    require_size(psi, s.spec, "field");
    s.to_buffer(psi);
    fftw_execute(s.forward);
    const Complex *w = s.work();
    double num = 0, den = 0;
    for (std::size_t j = 0; j < s.spec.points; ++j) {
        const double a = std::norm(w[j]);
        num += s.ks[j] * a;
        den += a;
    }
    return num / den;
}

GridState step(const GridState &state, Forces forces, const GridSpec &spec, StepOptions options) {
    SplitStepSolver solver(spec, options);
    GridState next = state;
    solver.step(next, forces);
    return next;
}

Sample observe(SplitStepSolver &solver, const GridState &state, Forces forces) {
    const auto &spec = solver.spec();
    const auto plus = branch_observables(state.psi_plus, spec);
    const auto minus = branch_observables(state.psi_minus, spec);
    Sample s;
    s.t = state.t;
    s.moments = moments(state, spec);
    s.x_plus = plus.mean;
    s.x_minus = minus.mean;
    s.d = plus.mean - minus.mean;
    s.norm_plus = plus.norm;
    s.norm_minus = minus.norm;
    s.energy = solver.energy(state, forces);
    s.width_plus = plus.width;
    s.width_minus = minus.width;
    return s;
}

double required_half_length(const GridState &state0, Forces forces, double t_max, const GridSpec &spec) {
    SplitStepSolver solver(spec);
    const auto m = moments(state0, spec);
    const double p = state0.p;
    const double vbar = p * solver.mean_momentum(state0.psi_plus) + (1 - p) * solver.mean_momentum(state0.psi_minus);
    const double accel = analytic::total_force(p, forces.f_meas, forces.f_div);
    auto xbar = [&](double t) { return m.xbar + vbar * t + 0.5 * accel * t * t; };
    double reach = std::max(std::abs(xbar(0)), std::abs(xbar(t_max)));
    if (accel != 0) {
        const double t_turn = -vbar / accel;
        if (t_turn > 0 && t_turn < t_max) reach = std::max(reach, std::abs(xbar(t_turn)));
    }
    const double width = std::max(
        branch_observables(state0.psi_plus, spec).width, branch_observables(state0.psi_minus, spec).width);
    return 8 + reach + 3 * width;
}

Run evolve(
    const GridState &state0,
    Forces forces,
    double t_max,
    const GridSpec &spec,
    std::size_t sample_every,
    StepOptions options) {
    spec.validate();
    if (!(t_max > 0)) throw DomainError("t_max must be positive");
    if (sample_every == 0) throw DomainError("sample_every must be at least 1");

    const double needed = required_half_length(state0, forces, t_max, spec);
    if (spec.half_length < needed) {
        throw SetupError(
            "grid half length " + std::to_string(spec.half_length) + " is below the required " +
            std::to_string(needed) + " for this run");
    }

    SplitStepSolver solver(spec, options);
    Run run;
    run.final_state = state0;
    auto &state = run.final_state;
    const auto n_steps = static_cast<std::size_t>(std::llround(t_max / spec.dt));
    const double t0 = state0.t;

    auto record = [&](std::size_t done) {
        state.t = t0 + static_cast<double>(done) * spec.dt;
        for (const auto *psi : {&state.psi_plus, &state.psi_minus}) {
            const double edge = edge_density(*psi, spec);
            if (!(edge < kEdgeDensityLimit)) {
                throw NumericalError(
                    std::string(psi == &state.psi_plus ? "psi_plus" : "psi_minus") + " edge density " +
                    std::to_string(edge) + " exceeds 1e-8 at t = " + std::to_string(state.t) +
                    "; enlarge the grid half length");
            }
        }
        run.trajectory.push_back(observe(solver, state, forces));
    };

    record(0);
    std::size_t done = 0;
    while (done < n_steps) {
        const std::size_t chunk = std::min(sample_every, n_steps - done);
        solver.advance(state, forces, chunk);
        done += chunk;
        record(done);
    }
    return run;
}

}  // namespace gravimean::grid
