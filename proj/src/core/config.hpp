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

#include <filesystem>
#include <optional>

#include "core/grid.hpp"
#include "core/monte_carlo.hpp"
#include "core/units.hpp"
#include "json.hpp"

namespace gravimean::io {

/// Starting state for `evolve` and `compare`, in oscillator units.
struct InitialCondition {
    enum class Kind { Smooth, CommonCenter, Explicit };
    Kind kind = Kind::Smooth;
    double xbar = 0;
    double vbar = 0;
    double width = 1;  // grid packets only; the analytic route assumes 1
    // Kind::Explicit only.
    double x_plus = 0;
    double x_minus = 0;
    double v_plus = 0;
    double v_minus = 0;
};

struct NumericalOptions {
    grid::GridSpec grid;
    double gamma = 0;
    mc::Engine engine = mc::Engine::Analytic;
    double smallness_ratio = 0.01;
    InitialCondition initial;
};

/// Validated configuration with every default filled in. `resolved` echoes
/// it as JSON (SI inputs, derived apparatus values, scales, dimensionless
/// forces and times) for run manifests, plus the original document under
/// "input".
struct ResolvedConfig {
    ApparatusParams apparatus;
    MeasurementConfig measurement;
    NumericalOptions numerics;
    Scales scales;
    nlohmann::json resolved;

    double f_meas() const;  // dimensionless
    double tau() const;  // dimensionless
    /// Dimensionless fixed diverting force, or nullopt for the uniform draw.
    std::optional<double> f_div_fixed() const;
    mc::TrialSetup trial_setup() const;
};

/// Schema (keys outside it are rejected with their path):
///   two of "mass_kg" | "radius_m" | "density_kgm3"; "G", "hbar" optional;
///   "p", "F_meas_N", "tau_meas_s", "l0_m";
///   "F_div": {"kind": "uniform"} | {"kind": "fixed", "value_N": x};
///   optional "grid": {"n", "l", "dt"}, "gamma", "engine", "smallness_ratio",
///   "initial": {"kind": "smooth" | "common_center" | "explicit", ...}.
ResolvedConfig parse_config(const nlohmann::json &doc);

/// Reads and parses a JSON file. A run manifest is accepted too; its
/// recorded input configuration is used. Throws ConfigError (I/O and syntax errors
/// included) with the offending key path where there is one.
ResolvedConfig load_config(const std::filesystem::path &path);

}  // namespace gravimean::io
