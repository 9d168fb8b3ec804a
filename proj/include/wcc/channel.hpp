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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace wcc {

// H is L x K: column k is the channel vector h_k of user k, and user k sees h_k^H x.
struct Channel {
    CMatrix H;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;

    int antennas() const noexcept { return static_cast<int>(H.rows()); }
    int users() const noexcept { return static_cast<int>(H.cols()); }
    auto user(int k) const { return H.col(k); }
};

// i.i.d. CN(0,1) entries keyed by (seed, trial).
Channel sample_rayleigh(int antennas, int users, std::uint64_t seed, std::uint64_t trial);
Channel sample_rayleigh(const SystemParams& params, std::uint64_t seed, std::uint64_t trial);

struct ChannelShape {
    int rows = 0;
    int cols = 0;
};

// Text format: one matrix row per non-empty line, entries "re,im" separated by
// whitespace. Dimensions are taken from the text unless `expected` is given.
Channel channel_from_text(std::istream& in, std::optional<ChannelShape> expected = std::nullopt);
Channel channel_from_text(const std::filesystem::path& path, std::optional<ChannelShape> expected = std::nullopt);

// Round-trips exactly through channel_from_text.
void channel_to_text(std::ostream& out, const Channel& channel);
void channel_to_text(const std::filesystem::path& path, const Channel& channel);

} // namespace wcc
