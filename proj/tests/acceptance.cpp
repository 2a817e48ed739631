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

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance               run every criterion
//   acceptance --criterion N run criterion N only
//
// Exit status is 0 only when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "core/analytic.hpp"
#include "core/grid.hpp"
#include "core/monte_carlo.hpp"
#include "core/units.hpp"
#include "oracles.hpp"

using namespace gravimean;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

grid::GridState packets(const grid::GridSpec &spec, const analytic::CoherentTwoBranchState &ic) {
    grid::GridState s;
    s.p = ic.p;
    s.psi_plus = grid::init_gaussian(spec, ic.plus.center, ic.plus.velocity, 1);
    s.psi_minus = grid::init_gaussian(spec, ic.minus.center, ic.minus.velocity, 1);
    return s;
}

double max_center_error(const grid::Run &run, const analytic::CoherentTwoBranchState &ic, grid::Forces f) {
    double worst = 0;
    for (const auto &s : run.trajectory) {
        const auto a = analytic::evolve(ic, f.f_meas, f.f_div, s.t);
        worst = std::max({worst, std::abs(s.x_plus - a.plus.center), std::abs(s.x_minus - a.minus.center)});
    }
    return worst;
}

// ---------------------------------------------------------------------------

Verdict ac1_omega_grav() {
    const auto a = ApparatusParams::from(std::nullopt, 1.0, 1e4);
    const double w = a.omega_grav();
    return {w >= 1.0e-3 && w <= 2.0e-3, fmt("omega_grav(rho = 1e4 kg/m^3) = %.6e rad/s, band [1e-3, 2e-3]", w)};
}

Verdict ac2_minimal_radius() {
    const auto a = ApparatusParams::from(std::nullopt, 1e-3, 1e4);
    MeasurementConfig cfg;
    cfg.tau_meas = 1;
    cfg.l0 = 1e-9;
    const double r = classicality_report(a, cfg).r_min;
    return {r >= 1e-4 && r <= 1e-3, fmt("R_min(tau = 1 s, l0 = 1 nm) = %.6e m, band [1e-4, 1e-3]", r)};
}

Verdict ac3_smooth_solution() {
    double worst_mean = 0, worst_offset = 0;
    struct Case {
        double p, f, fd, x0, v0;
    };
    for (const Case c : {Case{0.5, 1, 0.3, 0, 0}, Case{0.2, 1.7, -0.4, 0.4, -0.2}, Case{0.9, 0.6, 0.1, -1.0, 0.5}}) {
        const auto s0 = analytic::smooth_initial_condition(c.p, c.f, c.x0, c.v0);
        const double force = analytic::total_force(c.p, c.f, c.fd);
        for (int i = 0; i <= 1000; ++i) {
            const double t = 0.01 * i;
            const auto s = analytic::evolve(s0, c.f, c.fd, t);
            const double quad = c.x0 + c.v0 * t + 0.5 * force * t * t;
            worst_mean = std::max(worst_mean, std::abs(s.com() - quad));
            worst_offset = std::max({worst_offset, std::abs(s.delta_plus() - s0.delta_plus()),
                                     std::abs(s.delta_minus() - s0.delta_minus())});
        }
    }
    return {worst_mean < 1e-12 && worst_offset < 1e-12,
            fmt("max |xbar - quadratic| = %.2e, max offset drift = %.2e over t in [0, 10] (limit 1e-12)",
                worst_mean, worst_offset)};
}

Verdict ac4_cross_validation() {
    const double p = 0.5;
    const grid::Forces f{1, 0.3};
    const auto ic = analytic::smooth_initial_condition(p, f.f_meas, 0, 0);
    double err[2];
    int i = 0;
    for (double dt : {1e-3, 5e-4}) {
        const grid::GridSpec spec{32, 1024, dt};
        const auto run = grid::evolve(packets(spec, ic), f, 2 * M_PI, spec, std::llround(0.01 / dt));
        err[i++] = max_center_error(run, ic, f);
    }
    const double ratio = err[0] / err[1];
    const bool match = err[0] <= 1e-4;
    const bool order = ratio >= 3.5 && ratio <= 4.5;
    return {match && order,
            fmt("smooth IC: max |x± grid - analytic| = %.3e (limit 1e-4: %s); dt/2 error %.3e, ratio %.3f "
                "(required [3.5, 4.5]: %s)",
                err[0], match ? "ok" : "FAIL", err[1], ratio, order ? "ok" : "FAIL")};
}

Verdict ac5_oscillation() {
    const auto ic = analytic::common_center_initial_condition(0.5, 0, 0);
    const grid::Forces f{1, 0};
    const double t_max = 20 * M_PI;
    const grid::GridSpec spec;
    const std::size_t every = 50;  // dt_sample = 0.05
    const auto run = grid::evolve(packets(spec, ic), f, t_max, spec, every);

    double grid_err = 0, analytic_err = 0;
    std::vector<double> grid_delta, analytic_delta;
    for (const auto &s : run.trajectory) {
        const double expected = 1 - std::cos(s.t);
        const double dg = s.x_plus - s.moments.xbar;
        const double da = analytic::evolve(ic, f.f_meas, f.f_div, s.t).delta_plus();
        grid_err = std::max(grid_err, std::abs(dg - expected));
        analytic_err = std::max(analytic_err, std::abs(da - expected));
        grid_delta.push_back(dg);
        analytic_delta.push_back(da);
    }
    // Uniform samples on [0, t_max); the final (end-point) sample is dropped.
    grid_delta.pop_back();
    analytic_delta.pop_back();
    const double window = static_cast<double>(grid_delta.size()) * every * spec.dt;
    const int bin_g = oracle::dft_peak_bin(grid_delta);
    const int bin_a = oracle::dft_peak_bin(analytic_delta);
    const double bin_width = 2 * M_PI / window;  // angular frequency per bin
    const int expected_bin = static_cast<int>(std::lround(1.0 / bin_width));
    const bool ok = grid_err < 1e-3 && analytic_err < 1e-3 && std::abs(bin_g - expected_bin) <= 1 &&
                    std::abs(bin_a - expected_bin) <= 1;
    return {ok, fmt("max |delta+ - (1 - cos t)|: grid %.2e, analytic %.2e (limit 1e-3); spectral peak at "
                    "omega = %.4f (grid), %.4f (analytic), bin width %.4f",
                    grid_err, analytic_err, bin_g * bin_width, bin_a * bin_width, bin_width)};
}

Verdict ac6_conservation() {
    const grid::GridSpec spec;
    const grid::Forces f{1, 0.3};
    const auto ic = analytic::common_center_initial_condition(0.5, 0, 0);
    const auto s0 = packets(spec, ic);
    const auto run = grid::evolve(s0, f, 10, spec, 100);  // 10^4 steps
    const auto &first = run.trajectory.front();
    double dn = 0, de = 0;
    for (const auto &s : run.trajectory) {
        dn = std::max({dn, std::abs(s.norm_plus - first.norm_plus), std::abs(s.norm_minus - first.norm_minus)});
        de = std::max(de, std::abs(s.energy - first.energy));
    }

    const auto without = grid::evolve(s0, f, 10, spec, 100, {false}).final_state;
    double dd = 0;
    for (std::size_t j = 0; j < spec.points; ++j) {
        dd = std::max({dd, std::abs(std::norm(run.final_state.psi_plus[j]) - std::norm(without.psi_plus[j])),
                       std::abs(std::norm(run.final_state.psi_minus[j]) - std::norm(without.psi_minus[j]))});
    }
    return {dn < 1e-10 && de < 1e-6 && dd < 1e-14,
            fmt("over 1e4 steps: norm drift %.2e (limit 1e-10), energy drift %.2e (limit 1e-6); density "
                "change from the constant potential term %.2e (limit 1e-14)",
                dn, de, dd)};
}

Verdict ac7_born_rule() {
    std::string detail;
    bool ok = true;
    for (auto engine : {mc::Engine::Analytic, mc::Engine::Grid}) {
        const std::size_t n = engine == mc::Engine::Analytic ? 100000 : 1000;
        detail += std::string(mc::to_string(engine)) + " n=" + std::to_string(n) + ":";
        for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            mc::TrialSetup setup;
            setup.p = p;
            setup.f_meas = 1;
            setup.tau = engine == mc::Engine::Analytic ? 1.0 : 0.25;
            const auto s = mc::run_ensemble(setup, engine, n, 20261019, 0);
            const double bound = 4 * std::sqrt(p * (1 - p) / static_cast<double>(n));
            const bool pass = std::abs(s.frequency_right - p) < bound && s.undecided == 0;
            ok = ok && pass;
            detail += fmt(" p=%.1f freq=%.4f(%s)", p, s.frequency_right, pass ? "ok" : "FAIL");
        }
        detail += "; ";
    }
    detail.resize(detail.size() - 2);
    return {ok, detail};
}

Verdict ac8_reproducibility() {
    bool ok = true;
    std::string detail;
    for (auto engine : {mc::Engine::Analytic, mc::Engine::Grid}) {
        mc::TrialSetup setup;
        setup.p = 0.37;
        setup.f_meas = 1;
        setup.tau = 0.25;
        setup.grid = {16, 256, 1e-3};
        const std::size_t n = engine == mc::Engine::Analytic ? 100000 : 200;
        std::vector<mc::Summary> runs;
        for (unsigned w : {1u, 4u, 8u}) runs.push_back(mc::run_ensemble(setup, engine, n, 99, w));
        for (const auto &r : runs) {
            ok = ok && r.right == runs[0].right && r.left == runs[0].left && r.undecided == runs[0].undecided;
        }
        detail += fmt("%s n=%zu right counts %zu/%zu/%zu; ", std::string(mc::to_string(engine)).c_str(), n,
                      runs[0].right, runs[1].right, runs[2].right);
    }
    detail += "workers 1/4/8";
    return {ok, detail};
}

Verdict ac9_two_detector() {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> unit(0, 1);
    std::vector<double> ps{0.0, 1.0};
    for (int i = 0; i < 1000; ++i) ps.push_back(unit(rng));
    double worst = 0;
    bool iff = true;
    for (double p : ps) {
        const auto t = mc::two_detector_table(p);
        double sm = 0, sb = 0;
        for (int k = 0; k < 4; ++k) {
            sm += t.model[k];
            sb += t.born[k];
        }
        worst = std::max({worst, std::abs(sm - 1), std::abs(sb - 1)});
        iff = iff && ((t.model == t.born) == (p == 0 || p == 1));
    }
    return {worst < 1e-12 && iff,
            fmt("%zu values of p: max |sum - 1| = %.2e (limit 1e-12); tables coincide exactly iff p in {0, 1}: %s",
                ps.size(), worst, iff ? "yes" : "no")};
}

}  // namespace

int main(int argc, char **argv) {
    const std::vector<std::function<Verdict()>> criteria{
        ac1_omega_grav, ac2_minimal_radius, ac3_smooth_solution, ac4_cross_validation, ac5_oscillation,
        ac6_conservation, ac7_born_rule, ac8_reproducibility, ac9_two_detector};

    int only = 0;
    if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
        only = std::atoi(argv[2]);
        if (only < 1 || only > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
            return 2;
        }
    } else if (argc != 1) {
        std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
        return 2;
    }

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i]();
        } catch (const std::exception &e) {
            v = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("AC%zu %s: %s [%.1f s]\n", i + 1, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
