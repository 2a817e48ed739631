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

#include "core/config.hpp"

#include <fstream>
#include <set>
#include <string>

#include "core/error.hpp"

namespace gravimean::io {

using nlohmann::json;

namespace {

std::string join(const std::string &prefix, const std::string &key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown_keys(const json &obj, const std::set<std::string> &allowed, const std::string &prefix) {
    for (const auto &[key, _] : obj.items()) {
        if (!allowed.contains(key)) throw ConfigError(join(prefix, key), "unknown key");
    }
}

const json &require_object(const json &parent, const std::string &key, const std::string &prefix) {
    const auto &v = parent.at(key);
    if (!v.is_object()) throw ConfigError(join(prefix, key), "expected an object");
    return v;
}

std::optional<double> number(const json &obj, const std::string &key, const std::string &prefix) {
    auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (!it->is_number()) throw ConfigError(join(prefix, key), "expected a number");
    return it->get<double>();
}

double required_number(const json &obj, const std::string &key, const std::string &prefix) {
    auto v = number(obj, key, prefix);
    if (!v) throw ConfigError(join(prefix, key), "missing required key");
    return *v;
}

std::string required_string(const json &obj, const std::string &key, const std::string &prefix) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(join(prefix, key), "missing required key");
    if (!it->is_string()) throw ConfigError(join(prefix, key), "expected a string");
    return it->get<std::string>();
}

DivertingForce parse_fdiv(const json &doc) {
    if (!doc.contains("F_div")) throw ConfigError("F_div", "missing required key");
    const auto &f = require_object(doc, "F_div", "");
    const auto kind = required_string(f, "kind", "F_div");
    if (kind == "uniform") {
        reject_unknown_keys(f, {"kind"}, "F_div");
        return DivertingForce::uniform();
    }
    if (kind == "fixed") {
        reject_unknown_keys(f, {"kind", "value_N"}, "F_div");
        return DivertingForce::fixed(required_number(f, "value_N", "F_div"));
    }
    throw ConfigError("F_div.kind", "expected \"uniform\" or \"fixed\", got \"" + kind + "\"");
}

grid::GridSpec parse_grid(const json &doc) {
    grid::GridSpec spec;
    if (!doc.contains("grid")) return spec;
    const auto &g = require_object(doc, "grid", "");
    reject_unknown_keys(g, {"n", "l", "dt"}, "grid");
    if (auto it = g.find("n"); it != g.end()) {
        if (!it->is_number_unsigned()) throw ConfigError("grid.n", "expected a positive integer");
        spec.points = it->get<std::size_t>();
    }
    if (auto v = number(g, "l", "grid")) spec.half_length = *v;
    if (auto v = number(g, "dt", "grid")) spec.dt = *v;
    try {
        spec.validate();
    } catch (const SetupError &e) {
        throw ConfigError("grid", e.what());
    }
    return spec;
}

InitialCondition parse_initial(const json &doc) {
    InitialCondition ic;
    if (!doc.contains("initial")) return ic;
    const auto &o = require_object(doc, "initial", "");
    const auto kind = o.contains("kind") ? required_string(o, "kind", "initial") : std::string("smooth");
    if (kind == "smooth" || kind == "common_center") {
        ic.kind = kind == "smooth" ? InitialCondition::Kind::Smooth : InitialCondition::Kind::CommonCenter;
        reject_unknown_keys(o, {"kind", "xbar", "vbar", "width"}, "initial");
        ic.xbar = number(o, "xbar", "initial").value_or(0.0);
        ic.vbar = number(o, "vbar", "initial").value_or(0.0);
    } else if (kind == "explicit") {
        ic.kind = InitialCondition::Kind::Explicit;
        reject_unknown_keys(o, {"kind", "x_plus", "x_minus", "v_plus", "v_minus", "width"}, "initial");
        ic.x_plus = required_number(o, "x_plus", "initial");
        ic.x_minus = required_number(o, "x_minus", "initial");
        ic.v_plus = number(o, "v_plus", "initial").value_or(0.0);
        ic.v_minus = number(o, "v_minus", "initial").value_or(0.0);
    } else {
        throw ConfigError("initial.kind", "expected smooth, common_center or explicit, got \"" + kind + "\"");
    }
    ic.width = number(o, "width", "initial").value_or(1.0);
    if (!(ic.width > 0)) throw ConfigError("initial.width", "must be positive");
    return ic;
}

std::string_view initial_kind_name(InitialCondition::Kind k) {
    switch (k) {
        case InitialCondition::Kind::Smooth:
            return "smooth";
        case InitialCondition::Kind::CommonCenter:
            return "common_center";
        case InitialCondition::Kind::Explicit:
            return "explicit";
    }
    return "?";
}

}  // namespace

double ResolvedConfig::f_meas() const { return to_dimensionless(measurement.f_meas, QuantityKind::Force, scales); }

double ResolvedConfig::tau() const { return to_dimensionless(measurement.tau_meas, QuantityKind::Time, scales); }

std::optional<double> ResolvedConfig::f_div_fixed() const {
    if (measurement.f_div.kind != DivertingForce::Kind::Fixed) return std::nullopt;
    return to_dimensionless(measurement.f_div.value, QuantityKind::Force, scales);
}

mc::TrialSetup ResolvedConfig::trial_setup() const {
    mc::TrialSetup s;
    s.p = measurement.p;
    s.f_meas = f_meas();
    if (auto f = f_div_fixed()) s.f_div = DivertingForce::fixed(*f);
    s.tau = tau();
    s.grid = numerics.grid;
    return s;
}

ResolvedConfig parse_config(const json &doc) {
    if (!doc.is_object()) throw ConfigError("", "configuration must be a JSON object");
    reject_unknown_keys(
        doc,
        {"mass_kg", "radius_m", "density_kgm3", "G", "hbar", "p", "F_meas_N", "tau_meas_s", "l0_m", "F_div", "grid",
         "gamma", "engine", "smallness_ratio", "initial"},
        "");

    const auto mass = number(doc, "mass_kg", "");
    const auto radius = number(doc, "radius_m", "");
    const auto density = number(doc, "density_kgm3", "");
    const double g = number(doc, "G", "").value_or(kGravitationalConstantCodata);
    const double hbar = number(doc, "hbar", "").value_or(kHbarCodata);

    std::optional<ApparatusParams> apparatus;
    try {
        apparatus = ApparatusParams::from(mass, radius, density, g, hbar);
    } catch (const DomainError &e) {
        std::string path = "mass_kg|radius_m|density_kgm3";
        const std::string msg = e.what();
        if (msg.rfind("G ", 0) == 0) path = "G";
        if (msg.rfind("hbar", 0) == 0) path = "hbar";
        if (msg.rfind("mass", 0) == 0) path = "mass_kg";
        if (msg.rfind("radius", 0) == 0) path = "radius_m";
        if (msg.rfind("density", 0) == 0) path = "density_kgm3";
        throw ConfigError(path, msg);
    }

    MeasurementConfig m;
    m.p = required_number(doc, "p", "");
    if (!(m.p >= 0 && m.p <= 1)) throw ConfigError("p", "must lie in [0, 1], got " + std::to_string(m.p));
    m.f_meas = required_number(doc, "F_meas_N", "");
    if (!(m.f_meas >= 0)) throw ConfigError("F_meas_N", "must be >= 0");
    m.tau_meas = required_number(doc, "tau_meas_s", "");
    if (!(m.tau_meas > 0)) throw ConfigError("tau_meas_s", "must be positive");
    m.l0 = required_number(doc, "l0_m", "");
    if (!(m.l0 > 0)) throw ConfigError("l0_m", "must be positive");
    m.f_div = parse_fdiv(doc);

    NumericalOptions num;
    num.grid = parse_grid(doc);
    num.gamma = number(doc, "gamma", "").value_or(0.0);
    if (!(num.gamma >= 0)) throw ConfigError("gamma", "must be >= 0");
    if (doc.contains("engine")) {
        try {
            num.engine = mc::parse_engine(required_string(doc, "engine", ""));
        } catch (const DomainError &e) {
            throw ConfigError("engine", e.what());
        }
    }
    num.smallness_ratio = number(doc, "smallness_ratio", "").value_or(0.01);
    if (!(num.smallness_ratio > 0)) throw ConfigError("smallness_ratio", "must be positive");
    num.initial = parse_initial(doc);

    ResolvedConfig cfg{*apparatus, m, num, Scales::of(*apparatus), json::object()};

    json fdiv = m.f_div.kind == DivertingForce::Kind::Uniform ? json{{"kind", "uniform"}}
                                                              : json{{"kind", "fixed"}, {"value_N", m.f_div.value}};
    const auto &a = cfg.apparatus;
    const auto &ic = num.initial;
    cfg.resolved = {
        {"mass_kg", a.mass()},
        {"radius_m", a.radius()},
        {"density_kgm3", a.density()},
        {"G", a.gravitational_constant()},
        {"hbar", a.hbar()},
        {"omega_grav_rad_s", a.omega_grav()},
        {"x0_m", a.x0()},
        {"p", m.p},
        {"F_meas_N", m.f_meas},
        {"tau_meas_s", m.tau_meas},
        {"l0_m", m.l0},
        {"F_div", fdiv},
        {"grid", {{"n", num.grid.points}, {"l", num.grid.half_length}, {"dt", num.grid.dt}}},
        {"gamma", num.gamma},
        {"engine", mc::to_string(num.engine)},
        {"smallness_ratio", num.smallness_ratio},
        {"initial",
         {{"kind", initial_kind_name(ic.kind)},
          {"xbar", ic.xbar},
          {"vbar", ic.vbar},
          {"width", ic.width},
          {"x_plus", ic.x_plus},
          {"x_minus", ic.x_minus},
          {"v_plus", ic.v_plus},
          {"v_minus", ic.v_minus}}},
        {"scales",
         {{"length_m", cfg.scales.length},
          {"time_s", cfg.scales.time},
          {"force_N", cfg.scales.force},
          {"energy_J", cfg.scales.energy}}},
        {"dimensionless",
         {{"f_meas", cfg.f_meas()},
          {"tau", cfg.tau()},
          {"l0", to_dimensionless(m.l0, QuantityKind::Length, cfg.scales)},
          {"f_div", cfg.f_div_fixed() ? json(*cfg.f_div_fixed()) : json("uniform")}}},
        {"input", doc},
    };
    return cfg;
}

ResolvedConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("", std::string("invalid JSON in ") + path.string() + ": " + e.what());
    }
    // A run manifest carries the original input; rerun from it directly.
    if (doc.is_object() && doc.value("tool", "") == "gravimean" && doc.contains("config") &&
        doc["config"].is_object() && doc["config"].contains("input")) {
        return parse_config(doc["config"]["input"]);
    }
    return parse_config(doc);
}

}  // namespace gravimean::io
