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

#include "frozen.hpp"
#include "wcc/channel.hpp"
#include "wcc/rates.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

using namespace wcc;

namespace {

// Sorted-prefix form of the equal-rate point: for a fixed size the weakest
// streams give the tightest constraint.
double mac_sorted_prefix(std::vector<double> g, double scale, double snr)
{
    std::sort(g.begin(), g.end());
    double best = std::numeric_limits<double>::infinity();
    double sum = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        sum += g[k];
        best = std::min(best, std::log2(1 + scale * sum * snr) / static_cast<double>(k + 1));
    }
    return static_cast<double>(g.size()) * best;
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

// Hand-built gains for S = {0,1,2}, t = 1.
SubsetGains manual_gains(const RMatrix& gain)
{
    SubsetGains g;
    g.S = Subset{0, 1, 2};
    g.Ts = enumerate_subsets(g.S, 2);
    g.omega = {{0, 1}, {0, 2}, {1, 2}};
    g.gain = gain;
    g.beams.assign(3, CVector::Zero(2));
    return g;
}

} // namespace

TEST_CASE("MAC equal-rate point")
{
    SUBCASE("two equal gains")
    {
        const double g = 0.8, c = 0.25, snr = 40;
        const double gains[] = {g, g};
        const double expected = std::min(std::log2(1 + 2 * c * g * snr), 2 * std::log2(1 + c * g * snr));
        CHECK(mac_equal_rate(gains, c, snr).rate == doctest::Approx(expected).epsilon(1e-14));
    }
    SUBCASE("single stream")
    {
        const double gains[] = {1.7};
        CHECK(mac_equal_rate(gains, 0.5, 3).rate == doctest::Approx(std::log2(1 + 0.5 * 1.7 * 3)));
    }
    SUBCASE("three gains against the frozen enumeration")
    {
        const double gains[] = {frozen::mac_gain0, frozen::mac_gain1, frozen::mac_gain2};
        CHECK(mac_equal_rate(gains, frozen::mac_three_scale, frozen::mac_three_snr).rate ==
              doctest::Approx(frozen::mac_three_rate).epsilon(1e-12));
    }
    SUBCASE("random gains against the sorted-prefix oracle")
    {
        std::mt19937_64 rng(1);
        std::exponential_distribution<double> e;
        for (int trial = 0; trial < 500; ++trial) {
            std::vector<double> g(1 + trial % 10);
            for (auto& x : g)
                x = e(rng);
            const double snr = std::pow(10.0, (trial % 7) - 2);
            REQUIRE(rel(mac_equal_rate(g, 0.3, snr).rate, mac_sorted_prefix(g, 0.3, snr)) < 1e-12);
        }
    }
    SUBCASE("a zero gain pins the rate at zero")
    {
        const double gains[] = {1.0, 0.0, 2.0};
        const auto p = mac_equal_rate(gains, 1, 10);
        CHECK(p.rate == 0);
        CHECK(p.binding_mask == 2);
    }
    SUBCASE("guard")
    {
        const std::vector<double> many(26, 1.0);
        CHECK_THROWS_AS(mac_equal_rate(many, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(mac_equal_rate({}, 1, 1), std::invalid_argument);
    }
}

TEST_CASE("K=3, N=3, L=2, M=1 against the per-user three-term minimum")
{
    const auto p = SystemParams::make(3, 3, 2, 1);
    const ZfPlan plan = plan_macc(p, frozen::k3_l2());
    const std::pair<double, double> ff[] = {
        {0, frozen::k3_l2_ff_0db}, {10, frozen::k3_l2_ff_10db}, {30, frozen::k3_l2_ff_30db}};
    const std::pair<double, double> cf[] = {
        {0, frozen::k3_l2_cf_0db}, {10, frozen::k3_l2_cf_10db}, {30, frozen::k3_l2_cf_30db}};
    for (auto [db, want] : ff)
        CHECK(rel(macc_rate(plan, Scheme::macc_ff, std::pow(10, db / 10)).symmetric_rate, want) < 1e-12);
    for (auto [db, want] : cf)
        CHECK(rel(macc_rate(plan, Scheme::macc_cf, std::pow(10, db / 10)).symmetric_rate, want) < 1e-12);
}

TEST_CASE("scheme identities")
{
    SUBCASE("L=1: finite-field equals the baseline, complex-field pays t+1 in power")
    {
        const auto p = SystemParams::make(3, 3, 1, 1);
        for (int trial = 0; trial < 50; ++trial) {
            const CMatrix H = sample_rayleigh(p, 21, trial).H;
            const double snr = std::pow(10.0, (trial % 9) * 0.5);
            const double ff = macc_rate(plan_macc(p, H), Scheme::macc_ff, snr).symmetric_rate;
            const double cf = macc_rate(plan_macc(p, H), Scheme::macc_cf, snr).symmetric_rate;
            const double mm = mmfm_rate(plan_mmfm(p, H), snr).symmetric_rate;
            const double ff_scaled = macc_rate(plan_macc(p, H), Scheme::macc_ff, snr / (p.t + 1)).symmetric_rate;
            REQUIRE(rel(ff, mm) < 1e-12);
            REQUIRE(rel(cf, ff_scaled) < 1e-12);
        }
    }
    SUBCASE("L=1 baseline is the worst user per subset")
    {
        const auto p = SystemParams::make(4, 4, 1, 1);
        const CMatrix H = sample_rayleigh(p, 3, 0).H;
        const double snr = 10;
        double inv = 0;
        for (const auto& S : enumerate_subsets(4, 2)) {
            double worst = 1e300;
            for (int k : S)
                worst = std::min(worst, std::norm(H(0, k)));
            inv += 1 / std::log2(1 + worst * snr);
        }
        CHECK(rel(mmfm_rate(plan_mmfm(p, H), snr).symmetric_rate, 4 / inv) < 1e-12);
    }
    SUBCASE("M=0 baseline is per-user matched filtering")
    {
        const auto p = SystemParams::make(3, 3, 2, 0);
        const CMatrix H = sample_rayleigh(p, 3, 1).H;
        double inv = 0;
        for (int k = 0; k < 3; ++k)
            inv += 1 / std::log2(1 + H.col(k).squaredNorm() * 5.0);
        CHECK(rel(mmfm_rate(plan_mmfm(p, H), 5.0).symmetric_rate, 1 / inv) < 1e-6);
    }
    SUBCASE("finite field never loses to complex field")
    {
        int violations = 0;
        for (int trial = 0; trial < 300; ++trial) {
            const int K = 3 + trial % 3;
            const int L = K > 3 && trial % 2 ? 3 : 2;
            const auto p = SystemParams::make(K, K, L, 1);
            const ZfPlan plan = plan_macc(p, sample_rayleigh(p, 31, trial).H);
            const double snr = std::pow(10.0, (trial % 9) * 0.5);
            violations += macc_rate(plan, Scheme::macc_ff, snr).symmetric_rate <
                          macc_rate(plan, Scheme::macc_cf, snr).symmetric_rate;
        }
        CHECK(violations == 0);
    }
    SUBCASE("harmonic accounting and monotonicity")
    {
        const auto p = SystemParams::make(5, 5, 2, 1);
        const CMatrix H = sample_rayleigh(p, 8, 0).H;
        const ZfPlan zp = plan_macc(p, H);
        const MulticastPlan mp = plan_mmfm(p, H);
        double last_ff = 0, last_mm = 0;
        for (double db = -20; db <= 40; db += 5) {
            const double snr = std::pow(10, db / 10);
            const auto ff = macc_rate(zp, Scheme::macc_ff, snr);
            const auto mm = mmfm_rate(mp, snr);
            CHECK(rel(recompute_symmetric_rate(ff), ff.symmetric_rate) < 1e-12);
            CHECK(rel(recompute_symmetric_rate(mm), mm.symmetric_rate) < 1e-12);
            CHECK(ff.symmetric_rate >= last_ff);
            CHECK(mm.symmetric_rate >= last_mm);
            last_ff = ff.symmetric_rate;
            last_mm = mm.symmetric_rate;
        }
        CHECK(macc_rate(zp, Scheme::macc_ff, 1e-12).symmetric_rate < 1e-9);
        CHECK(mmfm_rate(mp, 1e-12).symmetric_rate < 1e-9);
    }
    SUBCASE("binding constraint is reported")
    {
        const auto p = SystemParams::make(4, 4, 2, 1);
        const auto r = macc_rate(plan_macc(p, sample_rayleigh(p, 1, 1).H), Scheme::macc_ff, 100);
        for (const auto& s : r.per_subset) {
            REQUIRE(s.binding_user >= 0);
            CHECK(s.subset.contains(s.binding_user));
            CHECK_FALSE(s.binding_set.empty());
            for (const auto& T : s.binding_set)
                CHECK(T.contains(s.binding_user));
        }
    }
}

TEST_CASE("power allocation")
{
    SUBCASE("never below uniform")
    {
        int violations = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const int K = 3 + trial % 3;
            const auto p = SystemParams::make(K, K, 2, 1);
            const CMatrix H = sample_rayleigh(p, 41, trial).H;
            const double snr = std::pow(10.0, (trial % 5) - 1.0);
            const Scheme s = trial % 2 ? Scheme::macc_cf : Scheme::macc_ff;
            const auto g = subset_gains(enumerate_subsets(K, p.t + p.L).front(), p.t, H);
            const auto a = optimize_power(g, s, p.t, p.L, snr);
            violations += a.objective < a.uniform_objective - 1e-9;
            double sum = 0;
            for (double w : a.weights) {
                REQUIRE(w >= 0);
                sum += w;
            }
            REQUIRE(std::abs(sum - static_cast<double>(binomial(p.t + p.L, p.t + 1))) < 1e-9);
        }
        CHECK(violations == 0);
    }
    SUBCASE("matches the two-variable grid on K=3")
    {
        const auto g = subset_gains(Subset{0, 1, 2}, 1, frozen::k3_l2());
        const std::tuple<double, Scheme, double, double> cases[] = {
            {0, Scheme::macc_ff, frozen::k3_l2_power_ff_0db, frozen::k3_l2_uniform_ff_0db},
            {0, Scheme::macc_cf, frozen::k3_l2_power_cf_0db, frozen::k3_l2_uniform_cf_0db},
            {10, Scheme::macc_ff, frozen::k3_l2_power_ff_10db, frozen::k3_l2_uniform_ff_10db},
            {10, Scheme::macc_cf, frozen::k3_l2_power_cf_10db, frozen::k3_l2_uniform_cf_10db},
            {20, Scheme::macc_ff, frozen::k3_l2_power_ff_20db, frozen::k3_l2_uniform_ff_20db},
            {20, Scheme::macc_cf, frozen::k3_l2_power_cf_20db, frozen::k3_l2_uniform_cf_20db}};
        for (auto [db, scheme, best, uniform] : cases) {
            const auto a = optimize_power(g, scheme, 1, 2, std::pow(10, db / 10));
            CHECK(rel(a.uniform_objective, uniform) < 1e-12);
            CHECK(rel(a.objective, best) < 1e-3);
        }
    }
    SUBCASE("symmetric gains keep uniform power")
    {
        const auto g = manual_gains(RMatrix::Constant(3, 3, 0.7));
        const auto a = optimize_power(g, Scheme::macc_ff, 1, 2, 10);
        CHECK(rel(a.objective, a.uniform_objective) < 1e-12);
    }
    SUBCASE("a weak pair draws extra power")
    {
        RMatrix gain = RMatrix::Constant(3, 3, 1.0);
        gain(0, 0) = gain(1, 0) = 1e-3;  // both users of T = {1,2} barely hear it
        const auto g = manual_gains(gain);
        const double snr = 100;
        const auto a = optimize_power(g, Scheme::macc_ff, 1, 2, snr);
        CHECK(a.weights[0] > 1);
        CHECK(a.objective > a.uniform_objective);

        // Two free variables on the scaled simplex.
        double best = -1;
        const int n = 1500;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) {
                const double w[] = {3.0 * i / n, 3.0 * j / n, 3.0 * (n - i - j) / n};
                best = std::max(best, power_objective(g, w, 3, snr));
            }
        CHECK(a.objective >= best * (1 - 1e-3));
    }
}

TEST_CASE("power audits")
{
    const auto p = SystemParams::make(4, 4, 2, 1);
    const CMatrix H = sample_rayleigh(p, 13, 0).H;
    const auto g = subset_gains(Subset{0, 1, 2}, 1, H);
    const std::vector<double> uniform(g.beams.size(), 1.0);
    for (auto s : {Scheme::macc_ff, Scheme::macc_cf}) {
        CHECK(rel(power_audit(g.beams, uniform, s, 1, 2, 10.0), 10.0) < 1e-12);
        CHECK(rel(power_audit_monte_carlo(g.beams, uniform, s, 1, 2, 10.0, 100000, 3), 10.0) < 0.02);
    }
    const std::vector<double> doubled(g.beams.size(), 2.0);
    CHECK_THROWS_AS(power_audit(g.beams, doubled, Scheme::macc_ff, 1, 2, 10.0), InvariantViolation);

    const auto a = optimize_power(g, Scheme::macc_ff, 1, 2, 10.0);
    CHECK(power_audit(g.beams, a.weights, Scheme::macc_ff, 1, 2, 10.0) <= 10.0 * (1 + 1e-9));
}
