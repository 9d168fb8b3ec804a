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

// Cache-enabled interference channel: every group of t_T transmitters that
// shares a sub-library acts as one t_T-antenna transmitter, and the groups
// take turns in lexicographic order.

#pragma once

#include "wcc/combinatorics.hpp"
#include "wcc/rates.hpp"
#include "wcc/types.hpp"

#include <cstdint>
#include <vector>

namespace wcc {

struct IcParams {
    int K_T = 0;
    int K_R = 0;
    int M_T = 0;
    int M_R = 0;
    int N = 0;
    int t_T = 0;
    int t_R = 0;

    static IcParams make(int K_T, int K_R, int M_T, int M_R, int N);

    // The broadcast problem each transmitter group solves: K_R users, t_T antennas.
    SystemParams group_params() const;
};

struct IcPlacement {
    std::vector<Subset> sublibraries;                    // transmitter groups, lexicographic
    std::vector<std::vector<std::size_t>> transmitter;   // per transmitter: indices into sublibraries
    std::vector<CacheContents> receivers;                // same structure as the broadcast placement
    std::uint64_t subfiles_per_file = 0;                 // C(K_T, t_T) C(K_R, t_R)
};

IcPlacement ic_placement(const IcParams& icp);

struct IcRateResult {
    double symmetric_rate = 0;
    std::vector<Subset> sublibraries;
    std::vector<RateResult> per_group;
    bool converged = true;
};

// H is K_T x K_R: row i holds transmitter i's coefficients to every receiver.
IcRateResult ic_rate(const IcParams& icp, double snr, const CMatrix& H, Scheme scheme, bool power_opt = false,
                     const MulticastConfig& multicast = {}, const PowerConfig& power = {});

} // namespace wcc
