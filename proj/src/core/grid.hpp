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

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace gravimean::grid {

using Complex = std::complex<double>;
using Field = std::vector<Complex>;

/// Uniform periodic grid on [-L, L) with N points, plus the time step.
struct GridSpec {
    double half_length = 32;
    std::size_t points = 1024;
    double dt = 1e-3;

    double dx() const { return 2 * half_length / static_cast<double>(points); }
    double x(std::size_t j) const { return -half_length + static_cast<double>(j) * dx(); }
    std::vector<double> coordinates() const;
    /// FFT ordering: 0, dk, ..., (N/2 - 1) dk, -N/2 dk, ..., -dk.
    std::vector<double> wavenumbers() const;

    /// N a power of two (>= 4), L and dt positive and finite.
    void validate() const;
};

/// Two individually normalized branch wave functions; p weights the "+" branch.
/// The spatially constant part of the potential acts on both branches as one
/// phase factor, kept exactly in `global_phase`: the branch wave functions are
/// psi± * exp(i global_phase).
struct GridState {
    Field psi_plus;
    Field psi_minus;
    double p = 0.5;
    double t = 0;
    double global_phase = 0;
};

struct Moments {
    double xbar = 0;
    double x2bar = 0;
};

struct Forces {
    double f_meas = 0;
    double f_div = 0;
};

struct BranchObservables {
    double norm = 0;
    double mean = 0;
    double second_moment = 0;
    /// sqrt(2 variance): 1 for the coherent ground state.
    double width = 0;
};

BranchObservables branch_observables(const Field &psi, const GridSpec &spec);

/// Weighted moments of the total density p|psi+|^2 + (1-p)|psi-|^2.
/// Throws ConsistencyError when a branch norm is off by more than 1e-6.
Moments moments(const GridState &state, const GridSpec &spec);

/// Probability in the outer 5% of the domain (2.5% at each end).
double edge_density(const Field &psi, const GridSpec &spec);

/// Normalized Gaussian exp(-(x - c)^2 / (2 w^2) + i v x). |psi|^2 has
/// standard deviation w / sqrt(2), so w = 1 is the oscillator ground state.
Field init_gaussian(const GridSpec &spec, double center, double velocity, double width);

struct StepOptions {
    /// Include the spatially constant (1/2) x2bar term of the self-consistent
    /// potential. It only advances GridState::global_phase.
    bool global_phase_term = true;
};

/// Strang splitting for the two-branch mean-field equation
///
///   i d/dt psi± = [-1/2 d^2/dx^2 + 1/2 x^2 - xbar x ∓ f_meas x - f_div x + 1/2 x2bar] psi±
///
/// half kinetic (spectral), potential phase with moments taken from the
/// half-kinetic densities, half kinetic. Owns its FFT plans and work buffer,
/// so one solver must not be shared between threads; separate solvers may run
/// concurrently.
class SplitStepSolver {
   public:
    explicit SplitStepSolver(GridSpec spec, StepOptions options = {});
    ~SplitStepSolver();
    SplitStepSolver(SplitStepSolver &&) noexcept;
    SplitStepSolver &operator=(SplitStepSolver &&) noexcept;
    SplitStepSolver(const SplitStepSolver &) = delete;
    SplitStepSolver &operator=(const SplitStepSolver &) = delete;

    const GridSpec &spec() const;
    const StepOptions &options() const;

    /// One full Strang step. Throws NumericalError if a branch norm drifts by
    /// more than 1e-8.
    void step(GridState &state, Forces forces);

    /// n Strang steps, fusing the adjacent kinetic half steps. Same scheme as
    /// calling step() n times, up to rounding.
    void advance(GridState &state, Forces forces, std::size_t n_steps);

    /// E = sum± w± [1/2 <|psi'|^2> + <(∓f_meas - f_div) x>] + 1/2 (x2bar - xbar^2)
    double energy(const GridState &state, Forces forces);

    /// <k> of a normalized branch, computed spectrally.
    double mean_momentum(const Field &psi);

   private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Value-semantic single step; builds a throwaway solver.
GridState step(const GridState &state, Forces forces, const GridSpec &spec, StepOptions options = {});

struct Sample {
    double t = 0;
    Moments moments;
    double x_plus = 0;
    double x_minus = 0;
    double d = 0;
    double norm_plus = 0;
    double norm_minus = 0;
    double energy = 0;
    double width_plus = 0;
    double width_minus = 0;
};

struct Run {
    std::vector<Sample> trajectory;
    GridState final_state;
};

/// Required half length for a run: 8 + max |xbar| expected over [0, t_max]
/// + 3 * widest initial packet.
double required_half_length(const GridState &state0, Forces forces, double t_max, const GridSpec &spec);

/// Integrates to t_max (rounded to whole steps), sampling at step 0, every
/// `sample_every` steps and at the end. Aborts with NumericalError when a
/// branch's edge density exceeds 1e-8 at a sample.
Run evolve(
    const GridState &state0,
    Forces forces,
    double t_max,
    const GridSpec &spec,
    std::size_t sample_every,
    StepOptions options = {});

/// Samples the observables of a state without stepping.
Sample observe(SplitStepSolver &solver, const GridState &state, Forces forces);

}  // namespace gravimean::grid
