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

#include "wcc/beamforming.hpp"

#include "wcc/linalg.hpp"
#include "wcc/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace wcc {

double min_gain(const Subset& S, const CMatrix& H, const CVector& w)
{
    double best = std::numeric_limits<double>::infinity();
    for (int k : S)
        best = std::min(best, beam_gain(H, k, w));
    return best;
}

CVector zf_vector(const Subset& S, const Subset& T, const CMatrix& H)
{
    if (!T.is_subset_of(S))
        throw std::invalid_argument("zf_vector: " + T.to_string() + " is not a subset of " + S.to_string() + ".");
    const Subset nulled = [&] {
        std::vector<int> rest;
        for (int j : S)
            if (!T.contains(j))
                rest.push_back(j);
        return Subset(std::move(rest));
    }();

    CMatrix constraints(H.rows(), static_cast<Eigen::Index>(nulled.size()));
    for (std::size_t i = 0; i < nulled.size(); ++i)
        constraints.col(static_cast<Eigen::Index>(i)) = H.col(nulled[i]);
    return unit_null_vector<double>(constraints);
}

std::vector<ZfBeam> zf_set(const Subset& S, int t, const CMatrix& H)
{
    std::vector<ZfBeam> out;
    for (auto& T : enumerate_subsets(S, t + 1)) {
        CVector u = zf_vector(S, T, H);
        out.push_back({std::move(T), std::move(u)});
    }
    return out;
}

namespace {

double relaxed_objective(const Subset& S, const CMatrix& H, const CMatrix& V, int& worst)
{
    double best = std::numeric_limits<double>::infinity();
    worst = S[0];
    for (int k : S) {
        const double value = std::real(H.col(k).dot(V * H.col(k)));
        // Strict comparison keeps the lowest index on ties.
        if (value < best) {
            best = value;
            worst = k;
        }
    }
    return best;
}

} // namespace

std::vector<CVector> rounding_candidates(const CMatrix& V, const MulticastConfig& config)
{
    const auto e = hermitian_eig<double>(V);
    const Eigen::Index L = V.rows();
    const RVector root = e.values.cwiseMax(0.0).cwiseSqrt();
    const CMatrix factor = e.vectors * root.asDiagonal();

    auto engine = keyed_engine(config.seed, config.trial, Stream::rounding, config.sub);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    std::vector<CVector> out;
    out.reserve(static_cast<std::size_t>(config.rounds + config.phase_rounds + 1));
    auto keep = [&out](CVector w) {
        const double n = w.norm();
        if (n > 0 && std::isfinite(n))
            out.push_back(w / n);
    };

    CVector z(L);
    for (int i = 0; i < config.rounds; ++i) {
        for (Eigen::Index l = 0; l < L; ++l) {
            const double re = gauss(engine);
            const double im = gauss(engine);
            z(l) = Complex(re, im);
        }
        keep(factor * z);
    }
    for (int i = 0; i < config.phase_rounds; ++i) {
        for (Eigen::Index l = 0; l < L; ++l)
            z(l) = std::polar(1.0, angle(engine));
        keep(factor * z);
    }
    out.push_back(e.vectors.col(0));
    return out;
}

MulticastBeam maxmin_multicast(const Subset& S, const CMatrix& H, const MulticastConfig& config)
{
    if (S.empty())
        throw std::invalid_argument("maxmin_multicast needs a nonempty user subset.");
    const Eigen::Index L = H.rows();
    MulticastBeam out;

    // A single user gets the matched filter; a single antenna has nothing to steer.
    if (S.size() == 1 || L == 1) {
        CVector w = (L == 1) ? CVector::Ones(1) : CVector(H.col(S[0]).normalized());
        fix_phase(w);
        out.w = w;
        out.min_gain = min_gain(S, H, w);
        out.top_eigen_gain = out.min_gain;
        out.relaxation_value = out.min_gain;
        out.V = w * w.adjoint();
        return out;
    }

    CMatrix V = CMatrix::Identity(L, L) / static_cast<double>(L);
    int worst = 0;
    double best = relaxed_objective(S, H, V, worst);
    CMatrix best_V = V;
    int last_improvement = 0;
    out.converged = false;

    int j = 1;
    for (; j <= config.max_iterations; ++j) {
        const CVector& h = H.col(worst);
        const CMatrix Q = h * h.adjoint();
        const double scale = Q.norm();
        if (!(scale > 0))
            break;
        V = project_psd_trace_one<double>(V + (config.step0 / std::sqrt(static_cast<double>(j)) / scale) * Q);
        const double value = relaxed_objective(S, H, V, worst);
        if (value > best) {
            if (value - best > config.tolerance * std::abs(best))
                last_improvement = j;
            best = value;
            best_V = V;
        }
        if (j - last_improvement >= config.stall_window) {
            out.converged = true;
            break;
        }
    }
    out.iterations = std::min(j, config.max_iterations);

    const auto candidates = rounding_candidates(best_V, config);
    out.top_eigen_gain = min_gain(S, H, candidates.back());
    out.min_gain = -1;
    for (const auto& w : candidates) {
        const double g = min_gain(S, H, w);
        if (g > out.min_gain) {
            out.min_gain = g;
            out.w = w;
        }
    }
    // w w^H is itself feasible for the relaxation.
    out.relaxation_value = std::max(best, out.min_gain);
    out.V = (out.min_gain > best) ? CMatrix(out.w * out.w.adjoint()) : best_V;
    return out;
}

} // namespace wcc
