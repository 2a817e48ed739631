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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "core/grid.hpp"
#include "core/units.hpp"

namespace gravimean::mc {

enum class Outcome { Right, Left, Undecided };
enum class Engine { Analytic, Grid };

std::string_view to_string(Outcome outcome);
std::string_view to_string(Engine engine);
Engine parse_engine(std::string_view name);

// Seeding. Every trial owns a 64-bit seed derived from (master seed, index), so
// results do not depend on how trials are scheduled across workers.
//
//   mix64(z)       = splitmix64 output function applied to z + 0x9e3779b97f4a7c15
//   derive_seed    = mix64(master ^ mix64(index + 0x632be59bd9b4e019))
//   uniform_unit   = (mix64(trial_seed) >> 11) * 2^-53           in [0, 1)
//   sample_fdiv    = f_meas * (2 * uniform_unit(trial_seed) - 1)  in [-f_meas, f_meas)
std::uint64_t mix64(std::uint64_t z);
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);
double uniform_unit(std::uint64_t trial_seed);
double sample_fdiv(std::uint64_t trial_seed, double f_meas);

/// One measurement in oscillator units.
struct TrialSetup {
    double p = 0.5;
    double f_meas = 1;
    DivertingForce f_div = DivertingForce::uniform();
    double tau = 1;
    grid::GridSpec grid;  // used by the grid engine only

    void validate() const;
};

struct TrialResult {
    std::size_t index = 0;
    double f_div_sample = 0;
    double f_total = 0;
    Outcome outcome = Outcome::Undecided;
    double final_displacement = 0;
};

/// Runs a trial with an explicitly chosen diverting force.
TrialResult run_trial_with_force(const TrialSetup &setup, Engine engine, std::size_t index, double f_div);

/// Draws (or takes the fixed) diverting force for `trial_seed` and runs the trial.
TrialResult run_trial(const TrialSetup &setup, Engine engine, std::size_t index, std::uint64_t trial_seed);

struct Interval {
    double lower = 0;
    double upper = 1;
};

/// Wilson score interval for `successes` out of `n` at normal quantile z.
Interval wilson_interval(std::size_t successes, std::size_t n, double z = 1.959963984540054);

struct Summary {
    std::size_t n_trials = 0;
    std::size_t right = 0;
    std::size_t left = 0;
    std::size_t undecided = 0;
    double frequency_right = 0;  // right / (n_trials - undecided); NaN if every trial tied
    Interval confidence;  // Wilson, 95%
    std::uint64_t master_seed = 0;
    Engine engine = Engine::Analytic;
};

/// Runs n_trials trials on `workers` threads (0 = hardware concurrency).
/// Counts are independent of the worker count. The first failing trial (lowest
/// index among those observed) aborts the run as a TrialError.
Summary run_ensemble(
    const TrialSetup &setup, Engine engine, std::size_t n_trials, std::uint64_t master_seed, unsigned workers);

/// Joint probabilities of two detectors in the order (++, +-, -+, --).
struct TwoDetectorTable {
    std::array<double, 4> model{};
    std::array<double, 4> born{};
};

TwoDetectorTable two_detector_table(double p);

}  // namespace gravimean::mc
