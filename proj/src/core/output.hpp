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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/analytic.hpp"
#include "core/grid.hpp"
#include "json.hpp"

namespace gravimean::io {

inline constexpr std::string_view kTrajectoryHeader = "t,xbar,x2bar,x_plus,x_minus,d,norm_plus,norm_minus,energy";

/// One CSV line. Columns the analytic route does not produce stay empty.
struct TrajectoryRow {
    double t = 0;
    double xbar = 0;
    std::optional<double> x2bar;
    double x_plus = 0;
    double x_minus = 0;
    double d = 0;
    std::optional<double> norm_plus;
    std::optional<double> norm_minus;
    std::optional<double> energy;

    friend bool operator==(const TrajectoryRow &, const TrajectoryRow &) = default;
};

std::vector<TrajectoryRow> trajectory_rows(const std::vector<analytic::TimedState> &samples);
std::vector<TrajectoryRow> trajectory_rows(const std::vector<grid::Sample> &samples);

/// %.17g-style text (17 significant digits, locale independent); round-trips exactly.
std::string format_double(double value);

void write_trajectory_csv(const std::vector<TrajectoryRow> &rows, const std::filesystem::path &path);
std::vector<TrajectoryRow> read_trajectory_csv(const std::filesystem::path &path);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path &path);

/// Writes text atomically enough for our purposes (truncate + write + check).
void write_text(const std::filesystem::path &path, std::string_view text);

std::filesystem::path manifest_path_for(const std::filesystem::path &output);

struct ManifestInput {
    std::string command_line;
    nlohmann::json config;  // resolved config incl. scales and dimensionless values
    std::optional<std::uint64_t> master_seed;
    std::vector<std::filesystem::path> outputs;
    nlohmann::json run = nlohmann::json::object();  // subcommand specific parameters
};

/// Builds the manifest document (tool version, UTC timestamp, digests of every output).
nlohmann::json make_manifest(const ManifestInput &input);
void write_manifest(const std::filesystem::path &manifest_path, const ManifestInput &input);

struct ManifestCheck {
    bool ok = true;
    std::vector<std::string> problems;
};

/// Recomputes the digest of every output listed in a manifest.
ManifestCheck verify_manifest(const std::filesystem::path &manifest_path);

}  // namespace gravimean::io
