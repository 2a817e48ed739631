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

#include "core/units.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace gravimean {

namespace {

void require_positive(double value, const char *name) {
    if (!(value > 0) || !std::isfinite(value)) {
        throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(value));
    }
}

constexpr double kSphereVolumeFactor = 4.0 / 3.0 * kPi;

}  // namespace

double omega_grav(double mass, double radius, double gravitational_constant) {
    require_positive(mass, "mass");
    require_positive(radius, "radius");
    require_positive(gravitational_constant, "G");
    return std::sqrt(gravitational_constant * mass / (radius * radius * radius));
}

ApparatusParams ApparatusParams::from(
    std::optional<double> mass,
    std::optional<double> radius,
    std::optional<double> density,
    double gravitational_constant,
    double hbar) {
    int given = int(mass.has_value()) + int(radius.has_value()) + int(density.has_value());
    if (given != 2) {
        throw DomainError("exactly two of mass, radius, density must be given, got " + std::to_string(given));
    }
    require_positive(gravitational_constant, "G");
    require_positive(hbar, "hbar");

    ApparatusParams a;
    a.g_ = gravitational_constant;
    a.hbar_ = hbar;
    if (!density) {
        require_positive(*mass, "mass");
        require_positive(*radius, "radius");
        a.mass_ = *mass;
        a.radius_ = *radius;
        a.density_ = *mass / (kSphereVolumeFactor * std::pow(*radius, 3));
    } else if (!mass) {
        require_positive(*radius, "radius");
        require_positive(*density, "density");
        a.radius_ = *radius;
        a.density_ = *density;
        a.mass_ = kSphereVolumeFactor * std::pow(*radius, 3) * *density;
    } else {
        require_positive(*mass, "mass");
        require_positive(*density, "density");
        a.mass_ = *mass;
        a.density_ = *density;
        a.radius_ = std::cbrt(*mass / (kSphereVolumeFactor * *density));
    }
    a.omega_ = gravimean::omega_grav(a.mass_, a.radius_, a.g_);
    a.x0_ = std::sqrt(a.hbar_ / (a.mass_ * a.omega_));
    return a;
}

void MeasurementConfig::validate() const {
    if (!(p >= 0 && p <= 1)) throw DomainError("p must lie in [0, 1], got " + std::to_string(p));
    if (!(f_meas >= 0) || !std::isfinite(f_meas)) throw DomainError("F_meas must be >= 0");
    if (f_div.kind == DivertingForce::Kind::Fixed && !std::isfinite(f_div.value)) {
        throw DomainError("fixed F_div must be finite");
    }
    require_positive(tau_meas, "tau_meas");
    require_positive(l0, "l0");
}

Scales Scales::of(const ApparatusParams &params) {
    Scales s;
    s.length = params.x0();
    s.time = 1.0 / params.omega_grav();
    s.force = params.mass() * params.omega_grav() * params.omega_grav() * params.x0();
    s.energy = params.hbar() * params.omega_grav();
    return s;
}

QuantityKind parse_quantity_kind(std::string_view name) {
    if (name == "length") return QuantityKind::Length;
    if (name == "time") return QuantityKind::Time;
    if (name == "force") return QuantityKind::Force;
    if (name == "energy") return QuantityKind::Energy;
    throw DomainError("unknown quantity kind '" + std::string(name) + "'");
}

namespace {

double unit_of(QuantityKind kind, const Scales &scales) {
    switch (kind) {
        case QuantityKind::Length:
            return scales.length;
        case QuantityKind::Time:
            return scales.time;
        case QuantityKind::Force:
            return scales.force;
        case QuantityKind::Energy:
            return scales.energy;
    }
    throw DomainError("unknown quantity kind " + std::to_string(static_cast<int>(kind)));
}

}  // namespace

double to_dimensionless(double si, QuantityKind kind, const Scales &scales) {
    return si / unit_of(kind, scales);
}

double to_si(double value, QuantityKind kind, const Scales &scales) {
    return value * unit_of(kind, scales);
}

CriteriaReport classicality_report(
    const ApparatusParams &params, const MeasurementConfig &cfg, double smallness_ratio) {
    cfg.validate();
    require_positive(smallness_ratio, "smallness_ratio");

    const double m = params.mass();
    const double r = params.radius();
    const double w2 = params.omega_grav() * params.omega_grav();
    const double tau = cfg.tau_meas;

    CriteriaReport rep;
    rep.smallness_ratio = smallness_ratio;
    rep.x0_over_radius = params.x0() / r;
    rep.d_est = cfg.f_meas / (m * w2);
    rep.d_equilibrium = 2.0 * rep.d_est;
    rep.displacement = cfg.f_meas / m * tau * tau;
    rep.omega_tau_squared = w2 * tau * tau;
    rep.r_min = cfg.l0 / rep.omega_tau_squared;

    rep.sizebound_ok = rep.x0_over_radius < smallness_ratio && rep.d_est < r;
    rep.displacement_ok = rep.displacement >= cfg.l0;
    rep.timing_ok = rep.omega_tau_squared > cfg.l0 / r;
    return rep;
}

}  // namespace gravimean
