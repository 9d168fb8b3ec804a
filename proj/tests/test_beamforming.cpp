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
#include "wcc/beamforming.hpp"
#include "wcc/channel.hpp"

#include <doctest.h>

using namespace wcc;

TEST_CASE("zero-forcing vectors")
{
    SUBCASE("K=3, L=2: the beam for T={1,2} is the perpendicular of h_3")
    {
        const CMatrix H = sample_rayleigh(2, 3, 4, 0).H;
        const CVector u = zf_vector(Subset{0, 1, 2}, Subset{0, 1}, H);
        CVector perp(2);
        perp << -std::conj(H(1, 2)), std::conj(H(0, 2));
        perp.normalize();
        CHECK(std::abs(std::abs(perp.dot(u)) - 1) < 1e-12);
        CHECK(std::abs(H.col(2).dot(u)) < 1e-12);
    }
    SUBCASE("L=1 needs no nulling")
    {
        const CMatrix H = sample_rayleigh(1, 3, 4, 0).H;
        const CVector u = zf_vector(Subset{1}, Subset{1}, H);
        REQUIRE(u.size() == 1);
        CHECK(u(0) == Complex(1, 0));
    }
    SUBCASE("K=5, L=3, t=1 residuals")
    {
        const CMatrix H = sample_rayleigh(3, 5, 6, 0).H;
        for (const auto& S : enumerate_subsets(5, 4))
            for (const auto& zb : zf_set(S, 1, H)) {
                CHECK(std::abs(zb.u.norm() - 1) < 1e-10);
                for (int j : S) {
                    if (zb.T.contains(j))
                        CHECK(std::abs(H.col(j).dot(zb.u)) > 1e-6);
                    else
                        CHECK(std::abs(H.col(j).dot(zb.u)) < 1e-9);
                }
            }
    }
    SUBCASE("no degenerate draws over 10^4 generic channels")
    {
        int failures = 0;
        for (int trial = 0; trial < 10000; ++trial) {
            const int L = 2 + trial % 4;       // 2..5
            const int K = L + 1 + trial % 3;   // up to 8
            const int t = K - L;
            const CMatrix H = sample_rayleigh(L, K, 99, trial).H;
            Subset S = enumerate_subsets(K, t + L).front();
            try {
                for (const auto& zb : zf_set(S, t, H))
                    for (int j : S)
                        if (!zb.T.contains(j) && std::abs(H.col(j).dot(zb.u)) >= 1e-9)
                            ++failures;
            } catch (const DegenerateChannelError&) {
                ++failures;
            }
        }
        CHECK(failures == 0);
    }
    SUBCASE("T must lie in S")
    {
        const CMatrix H = sample_rayleigh(2, 3, 4, 0).H;
        CHECK_THROWS_AS(zf_vector(Subset{0, 1}, Subset{2}, H), std::invalid_argument);
    }
}

TEST_CASE("max-min multicast")
{
    SUBCASE("a single user gets the matched filter")
    {
        const CMatrix H = sample_rayleigh(3, 4, 2, 0).H;
        const auto beam = maxmin_multicast(Subset{2}, H);
        CHECK(beam.min_gain == doctest::Approx(H.col(2).squaredNorm()).epsilon(1e-6));
        CHECK(std::abs(std::abs(H.col(2).normalized().dot(beam.w)) - 1) < 1e-9);
    }
    SUBCASE("L=1 has nothing to optimize")
    {
        const CMatrix H = sample_rayleigh(1, 3, 2, 0).H;
        const auto beam = maxmin_multicast(Subset{0, 1, 2}, H);
        CHECK(beam.w.size() == 1);
        CHECK(beam.min_gain == doctest::Approx(std::min({std::norm(H(0, 0)), std::norm(H(0, 1)), std::norm(H(0, 2))})));
    }
    SUBCASE("two orthonormal users split power equally")
    {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            CMatrix H = CMatrix::Identity(2, 2);
            MulticastConfig cfg;
            cfg.seed = seed;
            const auto beam = maxmin_multicast(Subset{0, 1}, H, cfg);
            CHECK(std::abs(beam.min_gain - 0.5) < 1e-3);
        }
    }
    SUBCASE("random two-user case against the sphere grid")
    {
        const auto beam = maxmin_multicast(Subset{0, 1}, frozen::two_users());
        CHECK(beam.min_gain == doctest::Approx(frozen::two_users_maxmin).epsilon(1e-3));
    }
    SUBCASE("relaxation sandwich and feasibility")
    {
        for (int trial = 0; trial < 60; ++trial) {
            const int L = 2 + trial % 3;
            const CMatrix H = sample_rayleigh(L, 5, 12, trial).H;
            const Subset S = trial % 2 ? Subset{0, 1, 2} : Subset{0, 1, 2, 3, 4};
            MulticastConfig cfg;
            cfg.trial = trial;
            const auto beam = maxmin_multicast(S, H, cfg);
            REQUIRE(beam.w.squaredNorm() <= 1 + 1e-10);
            REQUIRE(beam.min_gain == doctest::Approx(min_gain(S, H, beam.w)));
            REQUIRE(beam.top_eigen_gain <= beam.min_gain + 1e-12);
            REQUIRE(beam.min_gain <= beam.relaxation_value + 1e-8);
            REQUIRE(std::abs(beam.V.trace().real() - 1) < 1e-9);
        }
    }
    SUBCASE("deterministic for a fixed key")
    {
        const CMatrix H = sample_rayleigh(3, 4, 2, 1).H;
        MulticastConfig cfg;
        cfg.seed = 5;
        cfg.trial = 1;
        const auto a = maxmin_multicast(Subset{0, 1, 3}, H, cfg);
        const auto b = maxmin_multicast(Subset{0, 1, 3}, H, cfg);
        CHECK(a.w == b.w);
    }
    SUBCASE("scaling V keeps the candidate ranking")
    {
        const CMatrix H = sample_rayleigh(3, 4, 2, 2).H;
        const Subset S{0, 1, 2, 3};
        const CMatrix A = sample_rayleigh(3, 3, 7, 0).H;
        const CMatrix V = A * A.adjoint() / (A * A.adjoint()).trace().real();
        MulticastConfig cfg;
        cfg.rounds = 200;
        cfg.phase_rounds = 200;
        const auto a = rounding_candidates(V, cfg);
        const auto b = rounding_candidates(V * 7.5, cfg);
        REQUIRE(a.size() == b.size());
        auto argmax = [&](const std::vector<CVector>& c) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < c.size(); ++i)
                if (min_gain(S, H, c[i]) > min_gain(S, H, c[best]))
                    best = i;
            return best;
        };
        CHECK(argmax(a) == argmax(b));
    }
}
