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

// Exercises the shared library through its C header only.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "gravimean/gravimean.h"

namespace fs = std::filesystem;

namespace {

const char *kConfig = R"({
  "radius_m": 0.01, "density_kgm3": 1e4, "p": 0.7, "F_meas_N": 1e-20,
  "tau_meas_s": 1, "l0_m": 1e-9, "F_div": {"kind": "uniform"}
})";

}  // namespace

TEST(CApi, version_is_set) { EXPECT_STRNE(gm_version(), ""); }

TEST(CApi, null_arguments_are_reported) {
    EXPECT_EQ(gm_omega_grav(1, 1, 1, nullptr), GM_ERR_NULL);
    EXPECT_NE(std::string(gm_last_error()), "");
    EXPECT_EQ(gm_config_parse(nullptr, nullptr), GM_ERR_NULL);
    gm_grid_destroy(nullptr);
    gm_trajectory_destroy(nullptr);
    gm_config_destroy(nullptr);
}

TEST(CApi, units_and_errors) {
    double w = 0;
    ASSERT_EQ(gm_omega_grav(1, 1, 1, &w), GM_OK);
    EXPECT_EQ(w, 1.0);
    EXPECT_EQ(gm_omega_grav(-1, 1, 1, &w), GM_ERR_DOMAIN);
    EXPECT_NE(std::string(gm_last_error()).find("mass"), std::string::npos);

    gm_apparatus a{};
    ASSERT_EQ(gm_apparatus_from(0, 1e-3, 1e4, 6.67430e-11, 1.054571817e-34, &a), GM_OK);
    EXPECT_NEAR(a.omega_grav, 0.001672041939181126, 1e-15);
    EXPECT_EQ(gm_apparatus_from(1, 1, 1, 1, 1, &a), GM_ERR_DOMAIN);

    gm_scales s{};
    ASSERT_EQ(gm_scales_from(&a, &s), GM_OK);
    double v = 0;
    ASSERT_EQ(gm_to_dimensionless(a.x0_m, GM_LENGTH, &s, &v), GM_OK);
    EXPECT_DOUBLE_EQ(v, 1.0);
    EXPECT_EQ(gm_to_si(1, 9, &s, &v), GM_ERR_DOMAIN);

    gm_measurement m{0.5, 1e-12, GM_FDIV_UNIFORM, 0, 1, 1e-9};
    gm_criteria_report rep{};
    ASSERT_EQ(gm_classicality_report(&a, &m, 0.01, &rep), GM_OK);
    EXPECT_NEAR(rep.r_min_m, 0.00035768906797393443, 1e-16);
    EXPECT_TRUE(rep.timing_ok);
}

TEST(CApi, analytic_propagator) {
    double f = 0;
    ASSERT_EQ(gm_total_force(0.5, 1, 0.3, &f), GM_OK);
    EXPECT_DOUBLE_EQ(f, 0.3);
    EXPECT_EQ(gm_total_force(1.5, 1, 0, &f), GM_ERR_DOMAIN);

    gm_coherent_state s0{}, s1{};
    ASSERT_EQ(gm_smooth_initial_condition(0.5, 1, 0, 0, &s0), GM_OK);
    EXPECT_DOUBLE_EQ(s0.plus.center - s0.minus.center, 2.0);
    ASSERT_EQ(gm_analytic_evolve(&s0, 1, 0.3, 2, 0, &s1), GM_OK);
    double xbar = 0;
    ASSERT_EQ(gm_mean_trajectory(&s0, 1, 0.3, 2, &xbar), GM_OK);
    EXPECT_NEAR(s1.p * s1.plus.center + (1 - s1.p) * s1.minus.center, xbar, 1e-14);
    EXPECT_NEAR(xbar, 0.6, 1e-14);
    EXPECT_EQ(gm_analytic_evolve(&s0, 1, 0.3, -1, 0, &s1), GM_ERR_DOMAIN);
}

TEST(CApi, grid_handle_lifecycle) {
    gm_grid_spec spec{32, 1024, 1e-3};
    gm_grid *g = nullptr;
    ASSERT_EQ(gm_grid_create(&spec, 1, 1, &g), GM_OK);
    ASSERT_EQ(gm_grid_set_gaussian(g, GM_PLUS, 0, 0, 1), GM_OK);
    ASSERT_EQ(gm_grid_set_gaussian(g, GM_MINUS, 0, 0, 1), GM_OK);
    ASSERT_EQ(gm_grid_step(g, 0, 1, 2000), GM_OK);
    gm_moments mom{};
    ASSERT_EQ(gm_grid_moments(g, &mom), GM_OK);
    EXPECT_NEAR(mom.xbar, 2.0, 1e-6);
    double t = 0;
    ASSERT_EQ(gm_grid_time(g, &t), GM_OK);
    EXPECT_NEAR(t, 2.0, 1e-12);

    std::vector<double> buf(2 * spec.points);
    ASSERT_EQ(gm_grid_get_branch(g, GM_PLUS, buf.data(), buf.size()), GM_OK);
    EXPECT_EQ(gm_grid_get_branch(g, GM_PLUS, buf.data(), 10), GM_ERR_DOMAIN);
    EXPECT_EQ(gm_grid_set_gaussian(g, 5, 0, 0, 1), GM_ERR_DOMAIN);
    EXPECT_EQ(gm_grid_set_gaussian(g, GM_PLUS, 31, 0, 1), GM_ERR_SETUP);
    gm_grid_destroy(g);

    spec.points = 1000;
    EXPECT_EQ(gm_grid_create(&spec, 0.5, 1, &g), GM_ERR_SETUP);
}

TEST(CApi, trajectories_and_csv) {
    gm_coherent_state s0{};
    ASSERT_EQ(gm_smooth_initial_condition(0.5, 1, 0, 0, &s0), GM_OK);
    gm_trajectory *a = nullptr;
    ASSERT_EQ(gm_trajectory_analytic(&s0, 1, 0.3, 0, 1, 0.5, &a), GM_OK);
    ASSERT_EQ(gm_trajectory_size(a), 3u);
    gm_trajectory_row row{};
    ASSERT_EQ(gm_trajectory_row_at(a, 2, &row), GM_OK);
    EXPECT_DOUBLE_EQ(row.t, 1.0);
    EXPECT_TRUE(std::isnan(row.energy));
    EXPECT_EQ(gm_trajectory_row_at(a, 3, &row), GM_ERR_DOMAIN);

    const auto path = fs::temp_directory_path() / "gravimean_capi.csv";
    ASSERT_EQ(gm_trajectory_write_csv(a, path.c_str()), GM_OK);
    gm_trajectory_destroy(a);

    gm_config *cfg = nullptr;
    ASSERT_EQ(gm_config_parse(kConfig, &cfg), GM_OK);
    const auto manifest = path.string() + ".manifest.json";
    const char *outputs[] = {path.c_str()};
    ASSERT_EQ(gm_manifest_write(manifest.c_str(), cfg, "test", 1, 5, R"({"mode":"analytic"})", outputs, 1), GM_OK);
    int ok = 0;
    ASSERT_EQ(gm_manifest_verify(manifest.c_str(), &ok), GM_OK);
    EXPECT_EQ(ok, 1);
    std::ofstream(path, std::ios::app) << "tampered\n";
    ASSERT_EQ(gm_manifest_verify(manifest.c_str(), &ok), GM_OK);
    EXPECT_EQ(ok, 0);
    EXPECT_NE(std::string(gm_last_error()).find("digest"), std::string::npos);
    gm_config_destroy(cfg);
    fs::remove(path);
    fs::remove(manifest);

    gm_grid_spec spec{32, 1024, 1e-3};
    gm_trajectory *g = nullptr;
    ASSERT_EQ(gm_trajectory_grid(&s0, 1, 1, 0.3, &spec, 0.5, 100, &g), GM_OK);
    EXPECT_EQ(gm_trajectory_size(g), 6u);
    ASSERT_EQ(gm_trajectory_row_at(g, 5, &row), GM_OK);
    EXPECT_NEAR(row.norm_plus, 1, 1e-10);
    EXPECT_FALSE(std::isnan(row.energy));
    gm_trajectory_destroy(g);
}

TEST(CApi, monte_carlo) {
    gm_trial_setup setup{0.7, 1, GM_FDIV_UNIFORM, 0, 1, {16, 256, 1e-3}};
    gm_trial_result r{};
    ASSERT_EQ(gm_run_trial_with_force(&setup, GM_ENGINE_ANALYTIC, 0, -0.39, &r), GM_OK);
    EXPECT_EQ(r.outcome, GM_RIGHT);
    EXPECT_EQ(gm_run_trial(&setup, 7, 0, 0, &r), GM_ERR_DOMAIN);

    double u1 = 0, u2 = 0;
    ASSERT_EQ(gm_sample_fdiv(gm_derive_seed(1, 2), 1, &u1), GM_OK);
    ASSERT_EQ(gm_sample_fdiv(gm_derive_seed(1, 2), 1, &u2), GM_OK);
    EXPECT_EQ(u1, u2);

    gm_mc_summary a{}, b{};
    ASSERT_EQ(gm_run_ensemble(&setup, GM_ENGINE_ANALYTIC, 10000, 3, 1, &a), GM_OK);
    ASSERT_EQ(gm_run_ensemble(&setup, GM_ENGINE_ANALYTIC, 10000, 3, 4, &b), GM_OK);
    EXPECT_EQ(a.right, b.right);
    EXPECT_EQ(a.right + a.left + a.undecided, 10000u);
    EXPECT_LT(std::abs(a.frequency_right - 0.7), 4 * std::sqrt(0.21 / 1e4));
    EXPECT_LE(a.ci_lower, a.frequency_right);

    // A grid far too small fails every trial; the lowest index is reported.
    setup.grid = {4, 64, 1e-3};
    setup.tau = 0.1;
    EXPECT_EQ(gm_run_ensemble(&setup, GM_ENGINE_GRID, 5, 0, 1, &a), GM_ERR_NUMERICAL);
    EXPECT_EQ(gm_last_error_trial(), 0);

    gm_two_detector t{};
    ASSERT_EQ(gm_two_detector_table(0.3, &t), GM_OK);
    EXPECT_NEAR(t.model[2], 0.49, 1e-15);
    EXPECT_EQ(t.born[1], 0.3);
}

TEST(CApi, config_handles) {
    gm_config *cfg = nullptr;
    ASSERT_EQ(gm_config_parse(kConfig, &cfg), GM_OK);
    gm_apparatus a{};
    ASSERT_EQ(gm_config_apparatus(cfg, &a), GM_OK);
    EXPECT_NEAR(a.mass_kg, 4.0 / 3.0 * M_PI * 1e-6 * 1e4, 1e-15);
    gm_numerics num{};
    ASSERT_EQ(gm_config_numerics(cfg, &num), GM_OK);
    EXPECT_EQ(num.grid.points, 1024u);
    EXPECT_EQ(num.initial_kind, GM_INITIAL_SMOOTH);
    gm_trial_setup setup{};
    ASSERT_EQ(gm_config_trial_setup(cfg, &setup), GM_OK);
    EXPECT_EQ(setup.p, 0.7);
    EXPECT_NEAR(setup.tau, a.omega_grav, 1e-15);
    EXPECT_NE(std::string(gm_config_resolved_json(cfg)).find("omega_grav_rad_s"), std::string::npos);
    gm_config_destroy(cfg);

    std::string bad = kConfig;
    bad.replace(bad.find("0.7"), 3, "1.2");
    EXPECT_EQ(gm_config_parse(bad.c_str(), &cfg), GM_ERR_CONFIG);
    EXPECT_STREQ(gm_last_error_key(), "p");
    EXPECT_EQ(cfg, nullptr);
    EXPECT_EQ(gm_config_load("/nonexistent/config.json", &cfg), GM_ERR_CONFIG);
}

TEST(CApi, error_state_is_per_thread) {
    double w = 0;
    EXPECT_EQ(gm_omega_grav(-1, 1, 1, &w), GM_ERR_DOMAIN);
    std::string other;
    std::thread([&] {
        gm_config *cfg = nullptr;
        gm_config_parse("{}", &cfg);
        other = gm_last_error();
    }).join();
    EXPECT_NE(std::string(gm_last_error()), other);
    EXPECT_NE(std::string(gm_last_error()).find("mass"), std::string::npos);
}
