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

#pragma once

#include "wcc/combinatorics.hpp"
#include "wcc/types.hpp"

#include <cstdint>
#include <vector>

namespace wcc {

// |h_k^H w|^2
inline double beam_gain(const CMatrix& H, int user, const CVector& w)
{
    return std::norm(H.col(user).dot(w));
}

// min over k in S of |h_k^H w|^2
double min_gain(const Subset& S, const CMatrix& H, const CVector& w);

// Unit vector orthogonal to h_j for every j in S\T.
CVector zf_vector(const Subset& S, const Subset& T, const CMatrix& H);

struct ZfBeam {
    Subset T;
    CVector u;
};

// u_S^T for every (t+1)-subset T of S, lexicographic in T.
std::vector<ZfBeam> zf_set(const Subset& S, int t, const CMatrix& H);

struct MulticastConfig {
    int rounds = 1000;          // Gaussian randomization draws
    int phase_rounds = 1000;    // unit-modulus randomization draws in the eigenbasis of V
    int max_iterations = 5000;
    int stall_window = 200;     // iterations without relative improvement > tolerance
    double tolerance = 1e-6;
    double step0 = 1.0;
    // Rounding randomness is keyed like the channel draws.
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::uint64_t sub = 0;
};

struct MulticastBeam {
    CVector w;
    double min_gain = 0;          // min_k |h_k^H w|^2
    double top_eigen_gain = 0;    // min-gain of the principal eigenvector of V
    double relaxation_value = 0;  // best min_k tr(V Q_k) over feasible V seen
    CMatrix V;
    int iterations = 0;
    bool converged = true;
};

// Max-min fair multicast beamformer for the users in S by semidefinite
// relaxation (projected supergradient) and randomized rounding.
MulticastBeam maxmin_multicast(const Subset& S, const CMatrix& H, const MulticastConfig& config = {});

// Normalized rounding candidates for covariance V: Gaussian draws first, then
// unit-modulus draws, then the principal eigenvector.
std::vector<CVector> rounding_candidates(const CMatrix& V, const MulticastConfig& config);

} // namespace wcc
