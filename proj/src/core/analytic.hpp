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

#pragma once

// Closed-form two-branch coherent-state dynamics in oscillator units
// (length x0, time 1/omega_grav, force M omega^2 x0).
//
// Each branch obeys the Ehrenfest equations of its harmonic-plus-linear
// Hamiltonian, which are exact:
//
//   x+'' = -(x+ - xbar) + f_meas + f_div
//   x-'' = -(x- - xbar) - f_meas + f_div
//   xbar = p x+ + (1 - p) x-
//
// The weighted mean then accelerates uniformly under the total force
// 2(p - 1/2) f_meas + f_div, and the offsets delta = x - xbar oscillate at unit
// frequency around a fixed equilibrium splitting.

#include <vector>

namespace gravimean::analytic {

struct CoherentBranch {
    static constexpr double width = 1.0;  // coherent states keep width x0

    double center = 0;
    double velocity = 0;
    double phase = 0;  // carried along unchanged; never enters an observable
};

struct CoherentTwoBranchState {
    CoherentBranch plus;
    CoherentBranch minus;
    double p = 0.5;

    double com() const { return p * plus.center + (1 - p) * minus.center; }
    double com_velocity() const { return p * plus.velocity + (1 - p) * minus.velocity; }
    double delta_plus() const { return plus.center - com(); }
    double delta_minus() const { return minus.center - com(); }
    double splitting() const { return plus.center - minus.center; }
};

/// xbar(t) = a + b t + c t^2.
struct SmoothCoefficients {
    double a = 0;
    double b = 0;
    double c = 0;

    double at(double t) const { return a + (b + c * t) * t; }
};

struct EquilibriumSplitting {
    double delta_plus = 0;
    double delta_minus = 0;
    double distance = 0;
};

/// 2 (p - 1/2) f_meas + f_div.
double total_force(double p, double f_meas, double f_div);

SmoothCoefficients smooth_coefficients(const CoherentTwoBranchState &state0, double f_meas, double f_div);

double mean_trajectory(const CoherentTwoBranchState &state0, double f_meas, double f_div, double t);

EquilibriumSplitting equilibrium_splitting(double p, double f_meas);

/// Both branches at xbar0 + delta*, sharing velocity vbar0: no oscillation ever develops.
CoherentTwoBranchState smooth_initial_condition(double p, double f_meas, double xbar0, double vbar0);

/// Both branches at `center` with velocity `velocity`; the splitting then
/// oscillates between 0 and twice the equilibrium distance.
CoherentTwoBranchState common_center_initial_condition(double p, double center, double velocity);

/// Exact state at time t. `gamma` damps the offsets relative to the mean
/// (x'' gets -gamma (x' - xbar')), an exploratory knob that leaves xbar alone.
CoherentTwoBranchState evolve(
    const CoherentTwoBranchState &state0, double f_meas, double f_div, double t, double gamma = 0);

struct TimedState {
    double t = 0;
    CoherentTwoBranchState state;
};

/// evolve() at t = 0, dt_sample, 2 dt_sample, ... up to t_max (inclusive
/// within rounding).
std::vector<TimedState> sample_trajectory(
    const CoherentTwoBranchState &state0, double f_meas, double f_div, double t_max, double dt_sample,
    double gamma = 0);

}  // namespace gravimean::analytic
