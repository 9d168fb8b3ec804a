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

#include "wcc/dof.hpp"

#include "wcc/channel.hpp"
#include "wcc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wcc {

Rational Rational::make(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        return infinity();
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

double Rational::value() const noexcept
{
    if (is_infinite())
        return std::numeric_limits<double>::infinity();
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string Rational::to_string() const
{
    if (is_infinite())
        return "inf";
    if (den == 1)
        return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational dof_analytic(const SystemParams& p, Scheme scheme)
{
    // Multiplying through by N keeps everything integral.
    const std::int64_t den = static_cast<std::int64_t>(p.K) * (p.N - p.M);
    if (scheme == Scheme::mmfm)
        return Rational::make(static_cast<std::int64_t>(p.N) + static_cast<std::int64_t>(p.K) * p.M, den);
    const std::int64_t num = std::min<std::int64_t>(static_cast<std::int64_t>(p.K) * p.N,
                                                    static_cast<std::int64_t>(p.L) * p.N +
                                                        static_cast<std::int64_t>(p.K) * p.M);
    return Rational::make(num, den);
}

Rational dof_analytic(const IcParams& p)
{
    const std::int64_t num = std::min<std::int64_t>(
        static_cast<std::int64_t>(p.K_R) * p.N,
        static_cast<std::int64_t>(p.K_T) * p.M_T + static_cast<std::int64_t>(p.K_R) * p.M_R);
    return Rational::make(num, static_cast<std::int64_t>(p.K_R) * (p.N - p.M_R));
}

std::vector<double> geometric_snr_grid(double lo, double hi, int points_per_decade)
{
    if (!(lo > 0) || !(hi >= lo) || points_per_decade < 1)
        throw std::invalid_argument("Geometric grid needs 0 < lo <= hi and at least one point per decade.");
    const double decades = std::log10(hi / lo);
    const int steps = std::max(1, static_cast<int>(std::ceil(decades * points_per_decade - 1e-9)));
    std::vector<double> grid;
    for (int i = 0; i <= steps; ++i)
        grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / steps));
    grid.back() = hi;
    return grid;
}

DofReport dof_empirical(const DofQuery& q, const std::vector<double>& snr_grid)
{
    if (q.draws < 1)
        throw std::invalid_argument("Need at least one channel draw.");
    if (snr_grid.size() < 2 || !std::is_sorted(snr_grid.begin(), snr_grid.end()) || snr_grid.front() <= 0)
        throw std::invalid_argument("SNR grid must be positive and ascending with at least two points.");
    if (snr_grid.back() < 1e8)
        throw std::invalid_argument("Top SNR point must be at least 1e8.");

    const std::size_t n = snr_grid.size();
    std::vector<std::vector<double>> rates(q.draws, std::vector<double>(n));
    parallel_for(rates.size(), [&](std::size_t d) {
        const Channel ch = sample_rayleigh(q.params, q.seed, d);
        // The beams do not depend on SNR, so plan once per draw.
        if (q.scheme == Scheme::mmfm) {
            MulticastConfig mc = q.multicast;
            mc.seed = q.seed;
            mc.trial = d;
            const MulticastPlan plan = plan_mmfm(q.params, ch.H, mc);
            for (std::size_t i = 0; i < n; ++i)
                rates[d][i] = mmfm_rate(plan, snr_grid[i]).symmetric_rate;
        } else {
            const ZfPlan plan = plan_macc(q.params, ch.H);
            for (std::size_t i = 0; i < n; ++i)
                rates[d][i] = macc_rate(plan, q.scheme, snr_grid[i], q.power_opt, q.power).symmetric_rate;
        }
    });

    DofReport out;
    out.scheme = q.scheme;
    out.analytic = dof_analytic(q.params, q.scheme).value();
    out.snr = snr_grid;
    out.mean_rate.assign(n, 0.0);
    for (const auto& row : rates)
        for (std::size_t i = 0; i < n; ++i)
            out.mean_rate[i] += row[i] / q.draws;
    for (std::size_t i = 1; i < n; ++i)
        if (out.mean_rate[i] < out.mean_rate[i - 1])
            out.monotone = false;
    out.warning = !out.monotone;

    const double floor = snr_grid.back() / 10.0 * (1 - 1e-12);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < n; ++i)
        if (snr_grid[i] >= floor) {
            x.push_back(std::log2(snr_grid[i]));
            y.push_back(out.mean_rate[i]);
        }
    out.fit_points = static_cast<int>(x.size());
    if (x.size() < 2)
        throw std::invalid_argument("SNR grid needs at least two points in its top decade.");
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    out.empirical = sxy / sxx;
    return out;
}

} // namespace wcc
