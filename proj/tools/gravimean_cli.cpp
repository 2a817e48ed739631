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

// gravimean command-line front end. Talks to the library only through the C API.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "gravimean/gravimean.h"
#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCriteria = 2;
constexpr int kExitNumerical = 3;

/// A library call failed; carries the process exit code.
struct Failure : std::runtime_error {
    int code;
    Failure(int code, const std::string &what) : std::runtime_error(what), code(code) {}
};

int exit_code_for(gm_status s) {
    switch (s) {
        case GM_ERR_CONSISTENCY:
        case GM_ERR_NUMERICAL:
        case GM_ERR_INTERNAL:
            return kExitNumerical;
        default:
            return kExitUsage;
    }
}

void check(gm_status s) {
    if (s == GM_OK) return;
    // Config errors already lead with their key path.
    throw Failure(exit_code_for(s), gm_last_error());
}

struct ConfigDeleter {
    void operator()(gm_config *c) const { gm_config_destroy(c); }
};
struct TrajectoryDeleter {
    void operator()(gm_trajectory *t) const { gm_trajectory_destroy(t); }
};
using ConfigPtr = std::unique_ptr<gm_config, ConfigDeleter>;
using TrajectoryPtr = std::unique_ptr<gm_trajectory, TrajectoryDeleter>;

ConfigPtr load(const std::string &path) {
    gm_config *c = nullptr;
    check(gm_config_load(path.c_str(), &c));
    return ConfigPtr(c);
}

std::string join_command_line(int argc, char **argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out += ' ';
        out += argv[i];
    }
    return out;
}

void write_manifest_for(const std::string &output, const gm_config *cfg, const std::string &cmdline,
                        std::optional<std::uint64_t> seed, const json &run) {
    const std::string manifest = output + ".manifest.json";
    const char *outputs[] = {output.c_str()};
    const std::string run_text = run.dump();
    check(gm_manifest_write(
        manifest.c_str(), cfg, cmdline.c_str(), seed ? 1 : 0, seed.value_or(0), run_text.c_str(), outputs, 1));
    std::cerr << "wrote " << output << " and " << manifest << "\n";
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) throw Failure(kExitUsage, "cannot write " + path);
}

json nan_to_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

/// Dimensionless forces of a run: the fixed diverting force, or one draw
/// from the uniform distribution keyed by the seed (trial index 0).
struct RunForces {
    double f_meas;
    double f_div;
    bool sampled;
};

RunForces forces_for(const gm_config *cfg, std::uint64_t seed) {
    gm_trial_setup setup{};
    check(gm_config_trial_setup(cfg, &setup));
    RunForces f{setup.f_meas, setup.fdiv_value, false};
    if (setup.fdiv_kind == GM_FDIV_UNIFORM) {
        check(gm_sample_fdiv(gm_derive_seed(seed, 0), setup.f_meas, &f.f_div));
        f.sampled = true;
    }
    return f;
}

struct GridOverrides {
    std::optional<std::uint32_t> n;
    std::optional<double> l;
    std::optional<double> dt;

    gm_grid_spec apply(gm_grid_spec spec) const {
        if (n) spec.points = *n;
        if (l) spec.half_length = *l;
        if (dt) spec.dt = *dt;
        return spec;
    }
};

void add_grid_options(CLI::App *cmd, GridOverrides &g) {
    cmd->add_option("--grid-n", g.n, "grid points (power of two)");
    cmd->add_option("--grid-l", g.l, "grid half length, oscillator units");
    cmd->add_option("--dt", g.dt, "time step, oscillator units");
}

// ---- criteria ---------------------------------------------------------------

int run_criteria(const std::string &config_path) {
    auto cfg = load(config_path);
    gm_apparatus a{};
    gm_measurement m{};
    gm_numerics num{};
    check(gm_config_apparatus(cfg.get(), &a));
    check(gm_config_measurement(cfg.get(), &m));
    check(gm_config_numerics(cfg.get(), &num));
    gm_criteria_report r{};
    check(gm_classicality_report(&a, &m, num.smallness_ratio, &r));
    const json out = {
        {"omega_grav_rad_s", a.omega_grav},
        {"x0_m", a.x0_m},
        {"mass_kg", a.mass_kg},
        {"radius_m", a.radius_m},
        {"density_kgm3", a.density_kgm3},
        {"smallness_ratio", r.smallness_ratio},
        {"x0_over_radius", r.x0_over_radius},
        {"d_est_m", r.d_est_m},
        {"d_equilibrium_m", r.d_equilibrium_m},
        {"displacement_m", r.displacement_m},
        {"omega_tau_squared", r.omega_tau_squared},
        {"r_min_m", r.r_min_m},
        {"sizebound_ok", bool(r.sizebound_ok)},
        {"displacement_ok", bool(r.displacement_ok)},
        {"timing_ok", bool(r.timing_ok)},
        {"all_ok", bool(r.all_ok)},
    };
    std::cout << out.dump(2) << "\n";
    return r.all_ok ? kExitOk : kExitCriteria;
}

// ---- evolve -----------------------------------------------------------------

struct EvolveArgs {
    std::string config;
    std::string mode = "analytic";
    std::optional<double> t_max;
    double dt_sample = 0.1;
    std::uint64_t sample_every = 100;
    std::uint64_t seed = 0;
    std::string out;
    GridOverrides grid;
};

int run_evolve(const EvolveArgs &args, const std::string &cmdline) {
    auto cfg = load(args.config);
    gm_numerics num{};
    gm_trial_setup setup{};
    gm_coherent_state s0{};
    check(gm_config_numerics(cfg.get(), &num));
    check(gm_config_trial_setup(cfg.get(), &setup));
    check(gm_config_initial_state(cfg.get(), &s0));
    const auto f = forces_for(cfg.get(), args.seed);
    const double t_max = args.t_max.value_or(setup.tau);

    gm_trajectory *raw = nullptr;
    json run = {{"mode", args.mode}, {"t_max", t_max}, {"f_meas", f.f_meas}, {"f_div", f.f_div}};
    if (args.mode == "analytic") {
        check(gm_trajectory_analytic(&s0, f.f_meas, f.f_div, num.gamma, t_max, args.dt_sample, &raw));
        run["dt_sample"] = args.dt_sample;
        run["gamma"] = num.gamma;
    } else {
        if (num.gamma != 0) throw Failure(kExitUsage, "damping (gamma) is only available in analytic mode");
        const auto spec = args.grid.apply(num.grid);
        check(gm_trajectory_grid(&s0, num.initial_width, f.f_meas, f.f_div, &spec, t_max, args.sample_every, &raw));
        run["grid"] = {{"n", spec.points}, {"l", spec.half_length}, {"dt", spec.dt}};
        run["sample_every"] = args.sample_every;
    }
    TrajectoryPtr traj(raw);
    check(gm_trajectory_write_csv(traj.get(), args.out.c_str()));
    write_manifest_for(args.out, cfg.get(), cmdline, f.sampled ? std::optional(args.seed) : std::nullopt, run);
    return kExitOk;
}

// ---- compare ----------------------------------------------------------------

struct CompareArgs {
    std::string config;
    std::optional<double> t_max;
    std::uint64_t sample_every = 100;
    std::uint64_t seed = 0;
    std::string out;
    GridOverrides grid;
};

int run_compare(const CompareArgs &args, const std::string &cmdline) {
    auto cfg = load(args.config);
    gm_numerics num{};
    gm_trial_setup setup{};
    gm_coherent_state s0{};
    check(gm_config_numerics(cfg.get(), &num));
    check(gm_config_trial_setup(cfg.get(), &setup));
    check(gm_config_initial_state(cfg.get(), &s0));
    const auto f = forces_for(cfg.get(), args.seed);
    const double t_max = args.t_max.value_or(setup.tau);
    const auto spec = args.grid.apply(num.grid);

    gm_trajectory *raw = nullptr;
    check(gm_trajectory_grid(&s0, num.initial_width, f.f_meas, f.f_div, &spec, t_max, args.sample_every, &raw));
    TrajectoryPtr grid(raw);

    double max_plus = 0, max_minus = 0, max_mean = 0, max_d = 0;
    const std::size_t n = gm_trajectory_size(grid.get());
    for (std::size_t i = 0; i < n; ++i) {
        gm_trajectory_row row{};
        check(gm_trajectory_row_at(grid.get(), i, &row));
        gm_coherent_state a{};
        check(gm_analytic_evolve(&s0, f.f_meas, f.f_div, row.t, 0, &a));
        const double abar = a.p * a.plus.center + (1 - a.p) * a.minus.center;
        max_plus = std::max(max_plus, std::abs(row.x_plus - a.plus.center));
        max_minus = std::max(max_minus, std::abs(row.x_minus - a.minus.center));
        max_mean = std::max(max_mean, std::abs(row.xbar - abar));
        max_d = std::max(max_d, std::abs(row.d - (a.plus.center - a.minus.center)));
    }
    const json out = {
        {"samples", n},
        {"t_max", t_max},
        {"f_meas", f.f_meas},
        {"f_div", f.f_div},
        {"grid", {{"n", spec.points}, {"l", spec.half_length}, {"dt", spec.dt}}},
        {"initial_width", num.initial_width},
        {"max_abs_x_plus", max_plus},
        {"max_abs_x_minus", max_minus},
        {"max_abs_xbar", max_mean},
        {"max_abs_d", max_d},
        {"max_discrepancy", std::max(max_plus, max_minus)},
    };
    std::cout << out.dump(2) << "\n";
    if (!args.out.empty()) {
        write_file(args.out, out.dump(2) + "\n");
        write_manifest_for(args.out, cfg.get(), cmdline, f.sampled ? std::optional(args.seed) : std::nullopt,
                           {{"subcommand", "compare"}, {"sample_every", args.sample_every}});
    }
    return kExitOk;
}

// ---- born-mc ----------------------------------------------------------------

struct BornArgs {
    std::string config;
    std::optional<std::string> engine;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string out;
    GridOverrides grid;
};

unsigned effective_workers(unsigned requested) {
    unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char *cap = std::getenv("GRAVIMEAN_THREADS")) {
        try {
            const unsigned long c = std::stoul(cap);
            if (c > 0) w = std::min<unsigned>(w, static_cast<unsigned>(c));
        } catch (const std::exception &) {
            throw Failure(kExitUsage, std::string("GRAVIMEAN_THREADS must be a positive integer, got '") + cap + "'");
        }
    }
    return w;
}

int run_born(const BornArgs &args, const std::string &cmdline) {
    auto cfg = load(args.config);
    gm_numerics num{};
    gm_trial_setup setup{};
    check(gm_config_numerics(cfg.get(), &num));
    check(gm_config_trial_setup(cfg.get(), &setup));
    setup.grid = args.grid.apply(setup.grid);
    int engine = num.engine;
    if (args.engine) engine = *args.engine == "grid" ? GM_ENGINE_GRID : GM_ENGINE_ANALYTIC;
    const unsigned workers = effective_workers(args.workers);

    gm_mc_summary s{};
    const gm_status status = gm_run_ensemble(&setup, engine, args.trials, args.seed, workers, &s);
    if (status != GM_OK && gm_last_error_trial() >= 0) {
        throw Failure(exit_code_for(status),
                      "trial " + std::to_string(gm_last_error_trial()) + " failed: " + gm_last_error());
    }
    check(status);

    const json out = {
        {"n_trials", s.n_trials},
        {"right", s.right},
        {"left", s.left},
        {"undecided", s.undecided},
        {"frequency_right", nan_to_null(s.frequency_right)},
        {"confidence", {{"level", 0.95}, {"method", "wilson"}, {"lower", s.ci_lower}, {"upper", s.ci_upper}}},
        {"master_seed", s.master_seed},
        {"engine", s.engine == GM_ENGINE_GRID ? "grid" : "analytic"},
        {"p", setup.p},
        {"workers", workers},
    };
    std::cout << out.dump(2) << "\n";
    if (!args.out.empty()) {
        write_file(args.out, out.dump(2) + "\n");
        json run = {{"subcommand", "born-mc"}, {"trials", args.trials}, {"engine", out["engine"]}};
        if (engine == GM_ENGINE_GRID) {
            run["grid"] = {{"n", setup.grid.points}, {"l", setup.grid.half_length}, {"dt", setup.grid.dt}};
        }
        write_manifest_for(args.out, cfg.get(), cmdline, args.seed, run);
    }
    return kExitOk;
}

// ---- two-detector -----------------------------------------------------------

int run_two_detector(double p) {
    gm_two_detector t{};
    check(gm_two_detector_table(p, &t));
    const auto table = [](const double *v) {
        return json{{"++", v[0]}, {"+-", v[1]}, {"-+", v[2]}, {"--", v[3]}};
    };
    std::cout << json{{"p", p}, {"model", table(t.model)}, {"born", table(t.born)}}.dump(2) << "\n";
    return kExitOk;
}

// ---- verify -----------------------------------------------------------------

int run_verify(const std::string &manifest) {
    int ok = 0;
    check(gm_manifest_verify(manifest.c_str(), &ok));
    if (ok) {
        std::cout << "ok " << manifest << "\n";
        return kExitOk;
    }
    std::cout << "MISMATCH " << manifest << ": " << gm_last_error() << "\n";
    return kExitUsage;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"gravimean: two-branch mean-field gravity measurement simulator"};
    app.set_version_flag("--version", std::string(gm_version()));
    app.require_subcommand(1);
    const std::string cmdline = join_command_line(argc, argv);

    std::string criteria_config;
    auto *criteria = app.add_subcommand("criteria", "evaluate the classicality criteria for a configuration");
    criteria->add_option("--config", criteria_config, "configuration JSON")->required()->check(CLI::ExistingFile);

    EvolveArgs ev;
    auto *evolve = app.add_subcommand("evolve", "integrate one run and write a trajectory CSV");
    evolve->add_option("--config", ev.config, "configuration JSON")->required()->check(CLI::ExistingFile);
    evolve->add_option("--mode", ev.mode, "analytic or grid")->check(CLI::IsMember({"analytic", "grid"}));
    evolve->add_option("--t-max", ev.t_max, "final time, oscillator units (default: tau)");
    evolve->add_option("--dt-sample", ev.dt_sample, "analytic sampling interval")->check(CLI::PositiveNumber);
    evolve->add_option("--sample-every", ev.sample_every, "grid steps between samples")->check(CLI::PositiveNumber);
    evolve->add_option("--seed", ev.seed, "seed for a uniform diverting force");
    evolve->add_option("--out", ev.out, "output CSV")->required();
    add_grid_options(evolve, ev.grid);

    CompareArgs cmp;
    auto *compare = app.add_subcommand("compare", "grid vs analytic branch centers, as JSON");
    compare->add_option("--config", cmp.config, "configuration JSON")->required()->check(CLI::ExistingFile);
    compare->add_option("--t-max", cmp.t_max, "final time, oscillator units (default: tau)");
    compare->add_option("--sample-every", cmp.sample_every, "grid steps between samples")
        ->check(CLI::PositiveNumber);
    compare->add_option("--seed", cmp.seed, "seed for a uniform diverting force");
    compare->add_option("--out", cmp.out, "also write the JSON here (with a manifest)");
    add_grid_options(compare, cmp.grid);

    BornArgs born;
    auto *born_mc = app.add_subcommand("born-mc", "Monte Carlo ensemble over the diverting force");
    born_mc->add_option("--config", born.config, "configuration JSON")->required()->check(CLI::ExistingFile);
    born_mc->add_option("--engine", born.engine, "analytic or grid (default: config)")
        ->check(CLI::IsMember({"analytic", "grid"}));
    born_mc->add_option("--trials", born.trials, "number of trials")->check(CLI::PositiveNumber);
    born_mc->add_option("--seed", born.seed, "master seed");
    born_mc->add_option("--workers", born.workers, "worker threads (0: all cores)");
    born_mc->add_option("--out", born.out, "also write the JSON summary here (with a manifest)");
    add_grid_options(born_mc, born.grid);

    double p = 0.5;
    auto *two = app.add_subcommand("two-detector", "joint detector probabilities, model vs Born");
    two->add_option("--p", p, "weight of the + branch")->required();

    std::string manifest;
    auto *verify = app.add_subcommand("verify", "check the output digests recorded in a manifest");
    verify->add_option("manifest", manifest, "manifest JSON")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*criteria) return run_criteria(criteria_config);
        if (*evolve) return run_evolve(ev, cmdline);
        if (*compare) return run_compare(cmp, cmdline);
        if (*born_mc) return run_born(born, cmdline);
        if (*two) return run_two_detector(p);
        if (*verify) return run_verify(manifest);
    } catch (const Failure &e) {
        std::cerr << "gravimean: " << e.what() << "\n";
        return e.code;
    } catch (const std::exception &e) {
        std::cerr << "gravimean: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
