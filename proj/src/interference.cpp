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

#include "wcc/interference.hpp"

#include <stdexcept>
#include <string>

namespace wcc {

IcParams IcParams::make(int K_T, int K_R, int M_T, int M_R, int N)
{
    if (K_T < 1 || K_R < 1 || N < 1)
        throw std::invalid_argument("K_T, K_R and N must be positive.");
    if (M_T < 0 || M_T > N || M_R < 0 || M_R > N)
        throw std::invalid_argument("Cache sizes must lie in [0, N].");
    if ((K_T * M_T) % N != 0)
        throw std::invalid_argument("t_T = K_T*M_T/N must be an integer.");
    if ((K_R * M_R) % N != 0)
        throw std::invalid_argument("t_R = K_R*M_R/N must be an integer.");
    IcParams p{K_T, K_R, M_T, M_R, N, K_T * M_T / N, K_R * M_R / N};
    if (p.t_T < 1)
        throw std::invalid_argument("t_T must be at least 1: every sub-library needs a transmitter.");
    if (p.t_T > K_R)
        throw std::invalid_argument("t_T = " + std::to_string(p.t_T) + " virtual antennas exceed K_R = " +
                                    std::to_string(K_R) + " receivers.");
    return p;
}

SystemParams IcParams::group_params() const
{
    return SystemParams::make(K_R, N, t_T, M_R);
}

IcPlacement ic_placement(const IcParams& icp)
{
    IcPlacement out;
    out.sublibraries = enumerate_subsets(icp.K_T, icp.t_T);
    out.transmitter.resize(icp.K_T);
    for (std::size_t s = 0; s < out.sublibraries.size(); ++s)
        for (int i : out.sublibraries[s])
            out.transmitter[i].push_back(s);
    out.receivers = place_caches(icp.group_params());
    out.subfiles_per_file = binomial(icp.K_T, icp.t_T) * binomial(icp.K_R, icp.t_R);
    return out;
}

IcRateResult ic_rate(const IcParams& icp, double snr, const CMatrix& H, Scheme scheme, bool power_opt,
                     const MulticastConfig& multicast, const PowerConfig& power)
{
    if (H.rows() != icp.K_T || H.cols() != icp.K_R)
        throw std::invalid_argument("Interference channel must be K_T x K_R.");
    const SystemParams group = icp.group_params();
    if (scheme == Scheme::mmfm && !group.supports_baseline())
        throw std::invalid_argument("Baseline needs t_R + 1 <= K_R.");
    if (scheme != Scheme::mmfm && !group.supports_macc())
        throw std::invalid_argument("Zero-forcing schemes need t_R + t_T <= K_R (t_R = " + std::to_string(icp.t_R) +
                                    ", t_T = " + std::to_string(icp.t_T) + ", K_R = " + std::to_string(icp.K_R) + ").");

    IcRateResult out;
    out.sublibraries = enumerate_subsets(icp.K_T, icp.t_T);
    std::vector<double> rates;
    for (const auto& group_tx : out.sublibraries) {
        CMatrix sub(group_tx.size(), H.cols());
        for (std::size_t i = 0; i < group_tx.size(); ++i)
            sub.row(static_cast<Eigen::Index>(i)) = H.row(group_tx[i]);
        RateResult r = scheme == Scheme::mmfm ? mmfm_rate(plan_mmfm(group, sub, multicast), snr)
                                              : macc_rate(plan_macc(group, sub), scheme, snr, power_opt, power);
        out.converged = out.converged && r.converged;
        rates.push_back(r.symmetric_rate);
        out.per_group.push_back(std::move(r));
    }
    // A single group is the broadcast problem itself; return its rate untouched.
    out.symmetric_rate = rates.size() == 1 ? rates.front()
                                           : harmonic_rate(static_cast<double>(binomial(icp.K_T, icp.t_T)), rates);
    return out;
}

} // namespace wcc
