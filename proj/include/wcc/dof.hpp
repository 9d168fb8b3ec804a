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

// Degrees of freedom: closed forms and high-SNR slope estimates.

#pragma once

#include "wcc/beamforming.hpp"
#include "wcc/combinatorics.hpp"
#include "wcc/interference.hpp"
#include "wcc/rates.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wcc {

// Nonnegative rational with den == 0 standing for +infinity.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den);
    static Rational infinity() { return {1, 0}; }

    bool is_infinite() const noexcept { return den == 0; }
    double value() const noexcept;
    std::string to_string() const;

    friend bool operator==(const Rational&, const Rational&) = default;
};

// (1 + t) / (K (1 - M/N)) for the baseline, min(K, L + t) / (K (1 - M/N)) otherwise.
Rational dof_analytic(const SystemParams& params, Scheme scheme);

// min(K_R, t_T + t_R) / (K_R (1 - M_R/N)).
Rational dof_analytic(const IcParams& params);

// Geometric grid from lo to hi (inclusive), points_per_decade points per factor of 10.
std::vector<double> geometric_snr_grid(double lo, double hi, int points_per_decade);

struct DofQuery {
    SystemParams params;
    Scheme scheme = Scheme::macc_ff;
    bool power_opt = false;
    int draws = 20;
    std::uint64_t seed = 1;
    MulticastConfig multicast;
    PowerConfig power;
};

struct DofReport {
    Scheme scheme = Scheme::macc_ff;
    double analytic = 0;
    double empirical = 0;
    std::vector<double> snr;         // grid used, linear
    std::vector<double> mean_rate;   // averaged over draws
    int fit_points = 0;              // points in the top decade
    bool monotone = true;
    bool warning = false;
};

// Least-squares slope of the mean symmetric rate against log2 SNR over the top
// decade of the grid. The grid must be ascending with its top point >= 1e8.
DofReport dof_empirical(const DofQuery& query, const std::vector<double>& snr_grid);

} // namespace wcc
