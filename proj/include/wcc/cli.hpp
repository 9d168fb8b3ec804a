// SPDX-License-Identifier: Apache-2.0
//
// wcc: physical-layer schemes for cache-aided multi-antenna downlinks
// Copyright (C) 2026 The wcc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Experiment harness: config parsing, sweeps, CSV output and SVG plots.
//
// Config files are flat "key = value" text. Blank lines and everything after
// '#' are ignored. Lists are comma separated; snr_db also takes
// "start:stop:step". Recognized keys:
//
//   K N L M                   broadcast parameters
//   K_T K_R M_T M_R           interference-channel parameters (N shared)
//   snr_db                    SNR points in dB, ascending
//   schemes                   e.g. MMFM, MACC-CF, MACC-CF-opt, MACC-FF, MACC-FF-opt, ER1, ER3
//   L_values                  antenna counts for the ergodic sweep
//   trials draws seed         Monte-Carlo sizes and the base seed
//   dof_snr_min dof_snr_max points_per_decade
//   out plot title            output paths and plot title

#pragma once

#include "wcc/combinatorics.hpp"
#include "wcc/rates.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wcc::cli {

// A rate-sweep curve: a scheme plus whether power allocation is optimized.
struct SchemeSpec {
    Scheme scheme = Scheme::macc_ff;
    bool power_opt = false;

    std::string name() const;
    int order() const;  // position in the canonical legend order
    static SchemeSpec parse(const std::string& name);
};

enum class ErgodicScheme { baseline, macc_ff, maxmin };
std::string to_string(ErgodicScheme scheme);
ErgodicScheme ergodic_scheme_from_string(const std::string& name);

struct SweepConfig {
    int K = 3;
    int N = 3;
    int L = 2;
    int M = 1;
    int K_T = 2;
    int K_R = 4;
    int M_T = 2;
    int M_R = 1;
    std::vector<double> snr_db;
    std::optional<std::vector<std::string>> schemes;  // unset: the sweep's defaults
    std::vector<int> L_values;
    std::optional<int> trials;  // unset: the sweep's own default
    int draws = 20;
    std::uint64_t seed = 1;
    double dof_snr_min = 1e6;
    double dof_snr_max = 1e9;
    int points_per_decade = 4;
    std::string out;
    std::string plot;
    std::string title;

    SystemParams params() const { return SystemParams::make(K, N, L, M); }
};

inline constexpr int default_rate_trials = 500;
inline constexpr int default_ergodic_trials = 2000;

// Default grid: 0 to 40 dB in 5 dB steps.
std::vector<double> default_snr_db();

// Throws ParseError on malformed lines, unknown keys and bad values.
SweepConfig parse_config(std::istream& in, SweepConfig base = {});
SweepConfig load_config(const std::filesystem::path& path, SweepConfig base = {});
void apply_setting(SweepConfig& config, const std::string& key, const std::string& value);

std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
std::vector<std::string> parse_name_list(const std::string& text);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct RateRow {
    double snr_db = 0;
    std::optional<int> L;  // set by the ergodic sweep
    std::string scheme;
    int order = 0;
    double mean = 0;
    double stderr_mean = 0;
    int trials = 0;
    std::uint64_t seed = 0;
};

struct SweepOutput {
    std::vector<RateRow> rows;  // sorted by (snr_db, L, scheme order)
    std::vector<std::string> warnings;  // numerical trouble worth a nonzero exit
    std::vector<std::string> notes;
};

SweepOutput run_rate_sweep(const SweepConfig& config);
SweepOutput run_ic_sweep(const SweepConfig& config);
SweepOutput run_ergodic_sweep(const SweepConfig& config);

// Columns: snr_db[,L],scheme,rate_mean,rate_stderr,trials,seed. Reals use 9 significant digits.
std::string rate_csv(const SweepOutput& output);

struct DofRow {
    std::string scheme;
    std::string analytic_exact;
    double analytic = 0;
    double empirical = 0;
    int draws = 0;
    std::uint64_t seed = 0;
};

struct DofOutput {
    std::vector<DofRow> rows;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;
};

DofOutput run_dof(const SweepConfig& config);
// Columns: scheme,analytic_exact,analytic,empirical,draws,seed.
std::string dof_csv(const DofOutput& output);

struct VerifyOutput {
    bool ok = true;
    std::vector<std::string> lines;
};

// Exhaustive decode check over every demand vector for each parameter set and
// every delivery scheme it supports.
VerifyOutput run_verify(const std::vector<SystemParams>& sizes, std::uint64_t seed);

struct PlotStyle {
    int width = 640;
    int height = 420;
    std::string title;
};

// Renders a sweep CSV as SVG. The x axis is L when the CSV has more than one
// L value, SNR in dB otherwise. Throws ParseError on malformed input.
std::string render_plot(const std::string& csv, const PlotStyle& style = {});

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace wcc::cli
