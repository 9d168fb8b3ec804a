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

// Ergodic rates under i.i.d. Rayleigh fading with symmetric users.

#pragma once

#include "wcc/beamforming.hpp"
#include "wcc/combinatorics.hpp"
#include "wcc/types.hpp"

#include <cstdint>

namespace wcc {

struct CovarianceConfig {
    int max_iterations = 20000;
    int stall_window = 2000;
    double tolerance = 1e-10;
    double step_sigma = 0.1;  // alpha_Sigma^(j) = step_sigma / sqrt(j)
    double step_nu = 0.1;     // alpha_nu^(j) = step_nu / sqrt(j)
};

struct CovarianceResult {
    CMatrix Sigma;         // PSD, trace <= 1
    double objective = 0;  // sum over k in S of log2(1 + h_k^H Sigma h_k snr)
    double nu = 0;
    int iterations = 0;
    bool converged = true;
};

double covariance_objective(const Subset& S, const CMatrix& H, const CMatrix& Sigma, double snr);

// Maximizes sum_k log(1 + h_k^H Sigma h_k snr) over Sigma PSD with trace <= 1 by
// primal-dual projected gradient on the Lagrangian.
CovarianceResult optimize_covariance(const Subset& S, const CMatrix& H, double snr,
                                     const CovarianceConfig& config = {});

struct ErgodicEstimate {
    double rate = 0;         // prefactor * mean
    double stderr_rate = 0;  // prefactor * standard error of the mean
    double mean = 0;         // per-subset ergodic multicast rate estimate
    double dominant_rate = 0;  // prefactor * mean of the dominant constraint alone, no fallback
    double prefactor = 0;
    int trials = 0;
    int skipped = 0;                  // degenerate draws
    int dominance_violations = 0;     // draws where another MAC constraint was tighter
    int unconverged = 0;
    bool warning = false;             // more than 1% of draws skipped
};

// ER of the baseline with the per-realization optimal transmit covariance.
ErgodicEstimate ergodic_baseline(const SystemParams& params, double snr, int trials, std::uint64_t seed,
                                 const CovarianceConfig& config = {});

// ER of finite-field combining with zero-forcing, from the dominant MAC constraint of user S[r_index].
ErgodicEstimate ergodic_macc_ff(const SystemParams& params, double snr, int trials, std::uint64_t seed,
                                int r_index = 0);

// ER of the baseline when each draw uses the max-min fair beamformer.
ErgodicEstimate ergodic_maxmin(const SystemParams& params, double snr, int trials, std::uint64_t seed,
                               const MulticastConfig& config = {});

} // namespace wcc
