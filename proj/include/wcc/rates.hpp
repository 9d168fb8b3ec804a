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

// Finite-SNR symmetric delivery rates. All rates are in bits per complex
// channel use (log base 2) and SNR is linear.

#pragma once

#include "wcc/beamforming.hpp"
#include "wcc/combinatorics.hpp"
#include "wcc/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wcc {

enum class Scheme { mmfm, macc_cf, macc_ff };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

struct SubsetRate {
    Subset subset;
    double common_rate = 0;
    int binding_user = -1;
    std::vector<Subset> binding_set;  // the MAC constraint B that attains the minimum
    std::vector<double> power;        // P_T per (t+1)-subset T, lexicographic; empty for MMFM
    bool converged = true;
};

struct RateResult {
    Scheme scheme = Scheme::mmfm;
    double snr = 0;
    double symmetric_rate = 0;
    // symmetric_rate = prefactor / sum over subsets of 1 / common_rate
    double prefactor = 0;
    std::vector<SubsetRate> per_subset;
    bool converged = true;
};

// Harmonic accounting shared by every scheme; zero if any subset rate is zero.
double harmonic_rate(double prefactor, std::span<const double> subset_rates);
double recompute_symmetric_rate(const RateResult& result);

// ---------- MAC equal-rate point ----------

struct MacPoint {
    double rate = 0;              // |gains| * min_B (1/|B|) log2(1 + scale * sum_B g * snr)
    std::uint64_t binding_mask = 0;
};

inline constexpr int max_mac_streams = 25;

MacPoint mac_equal_rate(std::span<const double> gains, double scale, double snr);

// ---------- per-subset gains for the zero-forcing schemes ----------

// Gains |h_r^H u_S^T|^2 for one (t+L)-subset S.
struct SubsetGains {
    Subset S;
    std::vector<Subset> Ts;               // (t+1)-subsets of S, lexicographic
    std::vector<CVector> beams;           // u_S^T, aligned with Ts
    std::vector<std::vector<int>> omega;  // omega[i]: indices into Ts containing S[i]
    RMatrix gain;                         // gain(i, j) = |h_{S[i]}^H u_S^{T_j}|^2
};

SubsetGains subset_gains(const Subset& S, int t, const CMatrix& H);

// alpha(t, L): C(t+L, t+1)(t+1) for complex-field, C(t+L, t+1) for finite-field combining.
double power_normalizer(Scheme scheme, int t, int L);

struct PowerConfig {
    int max_iterations = 10000;
    int stall_window = 100;
    double tolerance = 1e-6;
    double step0 = 0.5;      // step at iterate j of a round: step / sqrt(j)
    double shrink = 0.5;     // on a stall, restart from the best point with step *= shrink
    double min_step = 1e-4;  // stop once the step falls below this
};

struct PowerAllocation {
    std::vector<double> weights;  // P_T, aligned with SubsetGains::Ts; sums to C(t+L, t+1)
    double objective = 0;         // min_r min_B (1/|B|) log2(1 + sum_B P_T g / alpha * snr)
    double uniform_objective = 0;
    int iterations = 0;
    bool converged = true;
};

// Objective of the per-subset power allocation problem at weights P.
double power_objective(const SubsetGains& g, std::span<const double> weights, double alpha, double snr,
                       int* binding_user = nullptr, std::uint64_t* binding_mask = nullptr);

PowerAllocation optimize_power(const SubsetGains& g, Scheme scheme, int t, int L, double snr,
                               const PowerConfig& config = {});

// Analytic per-channel-use transmit power of one (t+L)-subset block. Throws
// InvariantViolation if it exceeds snr (1 + 1e-9).
double power_audit(std::span<const CVector> beams, std::span<const double> weights, Scheme scheme, int t, int L,
                   double snr);

// Empirical per-use power from sampled unit-variance Gaussian symbols.
double power_audit_monte_carlo(std::span<const CVector> beams, std::span<const double> weights, Scheme scheme, int t,
                               int L, double snr, int uses, std::uint64_t seed);

// ---------- scheme rates ----------

// SNR-independent state for the baseline: one multicast beam per (t+1)-subset.
struct MulticastPlan {
    SystemParams params;
    std::vector<Subset> subsets;
    std::vector<MulticastBeam> beams;
};

MulticastPlan plan_mmfm(const SystemParams& params, const CMatrix& H, const MulticastConfig& config = {});
RateResult mmfm_rate(const MulticastPlan& plan, double snr);

// SNR-independent state for the zero-forcing schemes: gains per (t+L)-subset.
struct ZfPlan {
    SystemParams params;
    std::vector<SubsetGains> subsets;
};

ZfPlan plan_macc(const SystemParams& params, const CMatrix& H);
RateResult macc_rate(const ZfPlan& plan, Scheme scheme, double snr, bool power_opt = false,
                     const PowerConfig& config = {});

struct RateQuery {
    SystemParams params;
    CMatrix H;
    double snr = 1;
    Scheme scheme = Scheme::macc_ff;
    bool power_opt = false;
    MulticastConfig multicast;
    PowerConfig power;
};

RateResult mmfm_rate(const RateQuery& query);
RateResult macc_rate(const RateQuery& query);
// Dispatches on query.scheme.
RateResult symmetric_rate(const RateQuery& query);

} // namespace wcc
