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

#include "core/output.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>

#include "core/error.hpp"

namespace gravimean::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<TrajectoryRow> trajectory_rows(const std::vector<analytic::TimedState> &samples) {
    std::vector<TrajectoryRow> rows;
    rows.reserve(samples.size());
    for (const auto &s : samples) {
        TrajectoryRow r;
        r.t = s.t;
        r.xbar = s.state.com();
        r.x_plus = s.state.plus.center;
        r.x_minus = s.state.minus.center;
        r.d = s.state.splitting();
        rows.push_back(r);
    }
    return rows;
}

std::vector<TrajectoryRow> trajectory_rows(const std::vector<grid::Sample> &samples) {
    std::vector<TrajectoryRow> rows;
    rows.reserve(samples.size());
    for (const auto &s : samples) {
        rows.push_back({s.t, s.moments.xbar, s.moments.x2bar, s.x_plus, s.x_minus, s.d, s.norm_plus, s.norm_minus,
                        s.energy});
    }
    return rows;
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    if (ec != std::errc()) throw IoError("cannot format number");
    return std::string(buf.data(), end);
}

namespace {

void append_optional(std::string &line, const std::optional<double> &v) {
    line += ',';
    if (v) line += format_double(*v);
}

std::optional<double> parse_field(std::string_view field, bool optional, std::size_t line_no) {
    if (field.empty()) {
        if (optional) return std::nullopt;
        throw IoError("line " + std::to_string(line_no) + ": missing required value");
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw IoError("line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
    }
    return v;
}

}  // namespace

void write_trajectory_csv(const std::vector<TrajectoryRow> &rows, const fs::path &path) {
    if (rows.empty()) throw IoError("refusing to write an empty trajectory");
    std::string text;
    text.reserve(rows.size() * 160);
    text += kTrajectoryHeader;
    text += '\n';
    for (const auto &r : rows) {
        text += format_double(r.t);
        text += ',' + format_double(r.xbar);
        append_optional(text, r.x2bar);
        text += ',' + format_double(r.x_plus);
        text += ',' + format_double(r.x_minus);
        text += ',' + format_double(r.d);
        append_optional(text, r.norm_plus);
        append_optional(text, r.norm_minus);
        append_optional(text, r.energy);
        text += '\n';
    }
    write_text(path, text);
}

std::vector<TrajectoryRow> read_trajectory_csv(const fs::path &path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kTrajectoryHeader) throw IoError(path.string() + ": unexpected header");
    std::vector<TrajectoryRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<std::string_view> fields;
        std::string_view rest(line);
        for (;;) {
            auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != 9) throw IoError("line " + std::to_string(line_no) + ": expected 9 columns");
        TrajectoryRow r;
        r.t = *parse_field(fields[0], false, line_no);
        r.xbar = *parse_field(fields[1], false, line_no);
        r.x2bar = parse_field(fields[2], true, line_no);
        r.x_plus = *parse_field(fields[3], false, line_no);
        r.x_minus = *parse_field(fields[4], false, line_no);
        r.d = *parse_field(fields[5], false, line_no);
        r.norm_plus = parse_field(fields[6], true, line_no);
        r.norm_minus = parse_field(fields[7], true, line_no);
        r.energy = parse_field(fields[8], true, line_no);
        rows.push_back(r);
    }
    return rows;
}

std::string sha256_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw IoError("sha256 init failed");
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    for (unsigned i = 0; i < len; ++i) {
        hex += kHex[md[i] >> 4];
        hex += kHex[md[i] & 0xf];
    }
    return hex;
}

void write_text(const fs::path &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw IoError("write to " + path.string() + " failed");
}

fs::path manifest_path_for(const fs::path &output) {
    fs::path p = output;
    p += ".manifest.json";
    return p;
}

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::array<char, 32> buf{};
    std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf.data();
}

}  // namespace

json make_manifest(const ManifestInput &input) {
    json outputs = json::array();
    for (const auto &p : input.outputs) {
        outputs.push_back({
            {"path", fs::absolute(p).lexically_normal().string()},
            {"name", p.filename().string()},
            {"sha256", sha256_file(p)},
        });
    }
    return {
        {"tool", "gravimean"},
        {"version", GRAVIMEAN_VERSION},
        {"timestamp_utc", utc_timestamp()},
        {"command_line", input.command_line},
        {"master_seed", input.master_seed ? json(*input.master_seed) : json(nullptr)},
        {"config", input.config},
        {"run", input.run},
        {"outputs", outputs},
    };
}

void write_manifest(const fs::path &manifest_path, const ManifestInput &input) {
    write_text(manifest_path, make_manifest(input).dump(2) + "\n");
}

ManifestCheck verify_manifest(const fs::path &manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot open " + manifest_path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw IoError(manifest_path.string() + ": " + e.what());
    }
    if (!doc.contains("outputs") || !doc["outputs"].is_array()) throw IoError("manifest has no outputs list");

    ManifestCheck check;
    for (const auto &entry : doc["outputs"]) {
        fs::path p = entry.value("path", "");
        if (!fs::exists(p)) p = manifest_path.parent_path() / entry.value("name", "");
        const std::string expected = entry.value("sha256", "");
        if (!fs::exists(p)) {
            check.ok = false;
            check.problems.push_back(entry.value("name", "?") + ": missing");
            continue;
        }
        const std::string actual = sha256_file(p);
        if (actual != expected) {
            check.ok = false;
            check.problems.push_back(p.string() + ": digest " + actual + " != recorded " + expected);
        }
    }
    return check;
}

}  // namespace gravimean::io
