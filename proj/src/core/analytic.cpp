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

#include "core/analytic.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace gravimean::analytic {

namespace {

void require_weight(double p) {
    if (!(p >= 0 && p <= 1)) throw DomainError("p must lie in [0, 1], got " + std::to_string(p));
}

// Propagator of u'' + gamma u' + u = 0:
//   u(t)  = e^{-gamma t / 2} (u0 C + (u0' + gamma u0 / 2) S)
//   u'(t) = e^{-gamma t / 2} (u0' C - (u0 + gamma u0' / 2) S)     [using C' = -w S, S' = C]
// with w = 1 - gamma^2 / 4, C = cos(sqrt(w) t), S = sin(sqrt(w) t) / sqrt(w),
// continued to cosh/sinh for w < 0 and (1, t) at w = 0.
struct DampedOscillator {
    double u;
    double du;
};

DampedOscillator damped_oscillator(double u0, double du0, double t, double gamma) {
    const double w = 1.0 - 0.25 * gamma * gamma;
    double c_env = 0;  // e^{-gamma t/2} C
    double s_env = 0;  // e^{-gamma t/2} S
    if (w > 0) {
        const double omega = std::sqrt(w);
        const double env = std::exp(-0.5 * gamma * t);
        c_env = env * std::cos(omega * t);
        s_env = env * std::sin(omega * t) / omega;
    } else if (w < 0) {
        const double kappa = std::sqrt(-w);
        const double slow = std::exp((kappa - 0.5 * gamma) * t);
        const double fast = std::exp((-kappa - 0.5 * gamma) * t);
        c_env = 0.5 * (slow + fast);
        s_env = 0.5 * (slow - fast) / kappa;
    } else {
        const double env = std::exp(-0.5 * gamma * t);
        c_env = env;
        s_env = env * t;
    }
    return {
        u0 * c_env + (du0 + 0.5 * gamma * u0) * s_env,
        du0 * c_env - (u0 + 0.5 * gamma * du0) * s_env,
    };
}

}  // namespace

double total_force(double p, double f_meas, double f_div) {
    require_weight(p);
    return 2.0 * (p - 0.5) * f_meas + f_div;
}

SmoothCoefficients smooth_coefficients(const CoherentTwoBranchState &state0, double f_meas, double f_div) {
    return {state0.com(), state0.com_velocity(), 0.5 * total_force(state0.p, f_meas, f_div)};
}

double mean_trajectory(const CoherentTwoBranchState &state0, double f_meas, double f_div, double t) {
    if (!(t >= 0)) throw DomainError("time must be non-negative");
    return smooth_coefficients(state0, f_meas, f_div).at(t);
}

EquilibriumSplitting equilibrium_splitting(double p, double f_meas) {
    require_weight(p);
    EquilibriumSplitting eq;
    eq.delta_plus = 2.0 * (1.0 - p) * f_meas;
    eq.delta_minus = -2.0 * p * f_meas;
    eq.distance = 2.0 * f_meas;
    return eq;
}

CoherentTwoBranchState smooth_initial_condition(double p, double f_meas, double xbar0, double vbar0) {
    const auto eq = equilibrium_splitting(p, f_meas);
    CoherentTwoBranchState s;
    s.p = p;
    s.plus.center = xbar0 + eq.delta_plus;
    s.minus.center = xbar0 + eq.delta_minus;
    s.plus.velocity = vbar0;
    s.minus.velocity = vbar0;
    return s;
}

CoherentTwoBranchState common_center_initial_condition(double p, double center, double velocity) {
    require_weight(p);
    CoherentTwoBranchState s;
    s.p = p;
    s.plus.center = s.minus.center = center;
    s.plus.velocity = s.minus.velocity = velocity;
    return s;
}

CoherentTwoBranchState evolve(
    const CoherentTwoBranchState &state0, double f_meas, double f_div, double t, double gamma) {
    if (!(t >= 0)) throw DomainError("time must be non-negative");
    if (!(gamma >= 0)) throw DomainError("damping must be non-negative");
    require_weight(state0.p);

    const auto mean = smooth_coefficients(state0, f_meas, f_div);
    const double xbar = mean.at(t);
    const double vbar = mean.b + 2.0 * mean.c * t;

    const auto eq = equilibrium_splitting(state0.p, f_meas);
    const double vbar0 = state0.com_velocity();
    const auto plus = damped_oscillator(
        state0.delta_plus() - eq.delta_plus, state0.plus.velocity - vbar0, t, gamma);
    const auto minus = damped_oscillator(
        state0.delta_minus() - eq.delta_minus, state0.minus.velocity - vbar0, t, gamma);

    CoherentTwoBranchState out = state0;
    out.plus.center = xbar + eq.delta_plus + plus.u;
    out.minus.center = xbar + eq.delta_minus + minus.u;
    out.plus.velocity = vbar + plus.du;
    out.minus.velocity = vbar + minus.du;
    return out;
}

std::vector<TimedState> sample_trajectory(
    const CoherentTwoBranchState &state0, double f_meas, double f_div, double t_max, double dt_sample,
    double gamma) {
    if (!(t_max >= 0)) throw DomainError("t_max must be non-negative");
    if (!(dt_sample > 0)) throw DomainError("sample interval must be positive");
    const auto n = static_cast<std::size_t>(std::floor(t_max / dt_sample * (1 + 1e-12)));
    std::vector<TimedState> out;
    out.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) * dt_sample;
        out.push_back({t, evolve(state0, f_meas, f_div, t, gamma)});
    }
    return out;
}

}  // namespace gravimean::analytic
