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

#include "core/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "core/analytic.hpp"
#include "core/error.hpp"

namespace gravimean::mc {

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::Right:
            return "right";
        case Outcome::Left:
            return "left";
        case Outcome::Undecided:
            return "undecided";
    }
    return "?";
}

std::string_view to_string(Engine engine) { return engine == Engine::Analytic ? "analytic" : "grid"; }

Engine parse_engine(std::string_view name) {
    if (name == "analytic") return Engine::Analytic;
    if (name == "grid") return Engine::Grid;
    throw DomainError("unknown engine '" + std::string(name) + "' (expected analytic or grid)");
}

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed ^ mix64(index + 0x632be59bd9b4e019ULL));
}

double uniform_unit(std::uint64_t trial_seed) {
    return static_cast<double>(mix64(trial_seed) >> 11) * 0x1.0p-53;
}

double sample_fdiv(std::uint64_t trial_seed, double f_meas) { return f_meas * (2.0 * uniform_unit(trial_seed) - 1.0); }

void TrialSetup::validate() const {
    if (!(p >= 0 && p <= 1)) throw DomainError("p must lie in [0, 1], got " + std::to_string(p));
    if (!(f_meas >= 0) || !std::isfinite(f_meas)) throw DomainError("f_meas must be >= 0");
    if (!(tau > 0) || !std::isfinite(tau)) throw DomainError("tau must be positive");
}

namespace {

Outcome classify(double signed_value) {
    if (signed_value > 0) return Outcome::Right;
    if (signed_value < 0) return Outcome::Left;
    return Outcome::Undecided;
}

double grid_displacement(const TrialSetup &setup, double f_div) {
    const auto ic = analytic::smooth_initial_condition(setup.p, setup.f_meas, 0.0, 0.0);
    grid::GridState state;
    state.p = setup.p;
    state.psi_plus = grid::init_gaussian(setup.grid, ic.plus.center, 0.0, 1.0);
    state.psi_minus = grid::init_gaussian(setup.grid, ic.minus.center, 0.0, 1.0);
    const auto n_steps = std::max<long long>(1, std::llround(setup.tau / setup.grid.dt));
    const auto run = grid::evolve(
        state, {setup.f_meas, f_div}, setup.tau, setup.grid, static_cast<std::size_t>(n_steps));
    return run.trajectory.back().moments.xbar - run.trajectory.front().moments.xbar;
}

}  // namespace

TrialResult run_trial_with_force(const TrialSetup &setup, Engine engine, std::size_t index, double f_div) {
    setup.validate();
    TrialResult r;
    r.index = index;
    r.f_div_sample = f_div;
    r.f_total = analytic::total_force(setup.p, setup.f_meas, f_div);
    if (engine == Engine::Analytic) {
        r.final_displacement = 0.5 * r.f_total * setup.tau * setup.tau;
        r.outcome = classify(r.f_total);
        return r;
    }
    try {
        r.final_displacement = grid_displacement(setup, f_div);
    } catch (const std::exception &e) {
        throw TrialError(index, e.what());
    }
    r.outcome = classify(r.final_displacement);
    return r;
}

TrialResult run_trial(const TrialSetup &setup, Engine engine, std::size_t index, std::uint64_t trial_seed) {
    const double f_div = setup.f_div.kind == DivertingForce::Kind::Fixed ? setup.f_div.value
                                                                         : sample_fdiv(trial_seed, setup.f_meas);
    return run_trial_with_force(setup, engine, index, f_div);
}

Interval wilson_interval(std::size_t successes, std::size_t n, double z) {
    if (n == 0) return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double phat = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1 + z2 / nn;
    const double center = (phat + z2 / (2 * nn)) / denom;
    const double half = z / denom * std::sqrt(phat * (1 - phat) / nn + z2 / (4 * nn * nn));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

Summary run_ensemble(
    const TrialSetup &setup, Engine engine, std::size_t n_trials, std::uint64_t master_seed, unsigned workers) {
    if (n_trials == 0) throw DomainError("n_trials must be at least 1");
    setup.validate();
    if (engine == Engine::Grid) setup.grid.validate();
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_trials));

    std::vector<Outcome> outcomes(n_trials, Outcome::Undecided);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::optional<TrialError> first_error;

    auto work = [&] {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) return;
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n_trials) return;
            try {
                outcomes[i] = run_trial(setup, engine, i, derive_seed(master_seed, i)).outcome;
            } catch (const TrialError &e) {
                std::lock_guard lock(error_mutex);
                if (!first_error || e.index() < first_error->index()) first_error = e;
                failed = true;
            } catch (const std::exception &e) {
                std::lock_guard lock(error_mutex);
                if (!first_error || i < first_error->index()) first_error = TrialError(i, e.what());
                failed = true;
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (first_error) throw *first_error;

    Summary s;
    s.n_trials = n_trials;
    s.master_seed = master_seed;
    s.engine = engine;
    for (auto o : outcomes) {
        switch (o) {
            case Outcome::Right:
                ++s.right;
                break;
            case Outcome::Left:
                ++s.left;
                break;
            case Outcome::Undecided:
                ++s.undecided;
                break;
        }
    }
    const std::size_t decided = s.right + s.left;
    s.frequency_right = decided == 0 ? std::numeric_limits<double>::quiet_NaN()
                                     : static_cast<double>(s.right) / static_cast<double>(decided);
    s.confidence = wilson_interval(s.right, decided);
    return s;
}

TwoDetectorTable two_detector_table(double p) {
    if (!(p >= 0 && p <= 1)) throw DomainError("p must lie in [0, 1], got " + std::to_string(p));
    const double q = 1 - p;
    return {{p * q, p * p, q * q, q * p}, {0.0, p, q, 0.0}};
}

}  // namespace gravimean::mc
