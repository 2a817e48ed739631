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

#include <optional>
#include <string_view>

namespace gravimean {

inline constexpr double kHbarCodata = 1.054571817e-34;  // J s
inline constexpr double kGravitationalConstantCodata = 6.67430e-11;  // m^3 kg^-1 s^-2
inline constexpr double kPi = 3.14159265358979323846;

/// Self-gravitation frequency of a homogeneous sphere, sqrt(G M / R^3).
double omega_grav(double mass, double radius, double gravitational_constant = kGravitationalConstantCodata);

/// Homogeneous spherical apparatus. Exactly two of mass/radius/density are
/// supplied; the third follows from M = (4/3) pi R^3 rho. The frequency and the
/// coherent width x0 = sqrt(hbar / (M omega)) are derived at construction.
class ApparatusParams {
   public:
    static ApparatusParams from(
        std::optional<double> mass,
        std::optional<double> radius,
        std::optional<double> density,
        double gravitational_constant = kGravitationalConstantCodata,
        double hbar = kHbarCodata);

    double mass() const { return mass_; }
    double radius() const { return radius_; }
    double density() const { return density_; }
    double gravitational_constant() const { return g_; }
    double hbar() const { return hbar_; }
    double omega_grav() const { return omega_; }
    double x0() const { return x0_; }

   private:
    ApparatusParams() = default;

    double mass_ = 0;
    double radius_ = 0;
    double density_ = 0;
    double g_ = 0;
    double hbar_ = 0;
    double omega_ = 0;
    double x0_ = 0;
};

/// Frozen diverting force: either drawn uniformly on [-F_meas, F_meas] per
/// trial, or pinned to a fixed value.
struct DivertingForce {
    enum class Kind { Uniform, Fixed };
    Kind kind = Kind::Uniform;
    double value = 0;  // used only for Kind::Fixed, same units as F_meas

    static DivertingForce uniform() { return {}; }
    static DivertingForce fixed(double v) { return {Kind::Fixed, v}; }
};

/// SI description of one measurement. p is the weight |c+|^2 of the "+" branch.
struct MeasurementConfig {
    double p = 0.5;
    double f_meas = 0;  // N
    DivertingForce f_div;
    double tau_meas = 1;  // s
    double l0 = 1e-9;  // m

    /// Throws DomainError naming the first violated field.
    void validate() const;
};

/// Natural units of the apparatus oscillator.
struct Scales {
    double length = 1;  // x0
    double time = 1;  // 1 / omega_grav
    double force = 1;  // M omega^2 x0
    double energy = 1;  // hbar omega

    static Scales of(const ApparatusParams &params);
};

enum class QuantityKind { Length, Time, Force, Energy };

QuantityKind parse_quantity_kind(std::string_view name);
double to_dimensionless(double si, QuantityKind kind, const Scales &scales);
double to_si(double value, QuantityKind kind, const Scales &scales);

struct CriteriaReport {
    double smallness_ratio = 0.01;  // threshold used to read "much smaller than"
    double x0_over_radius = 0;
    double d_est = 0;  // F_meas / (M omega^2), m
    double d_equilibrium = 0;  // 2 F_meas / (M omega^2), Ehrenfest steady splitting, m
    double displacement = 0;  // (F_meas / M) tau^2, m
    double omega_tau_squared = 0;
    double r_min = 0;  // l0 / (omega tau)^2, m
    bool sizebound_ok = false;
    bool displacement_ok = false;
    bool timing_ok = false;

    bool all_ok() const { return sizebound_ok && displacement_ok && timing_ok; }
};

CriteriaReport classicality_report(
    const ApparatusParams &params, const MeasurementConfig &cfg, double smallness_ratio = 0.01);

}  // namespace gravimean
