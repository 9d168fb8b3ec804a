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

#include <cstdint>
#include <random>

namespace wcc {

// Independent random streams keyed by (seed, trial, stream). Each key is hashed
// through splitmix64 and seeds its own engine, so trials can be generated in any
// order or on any thread with identical results.
enum class Stream : std::uint64_t {
    channel = 1,
    rounding = 2,
    library = 3,
    symbols = 4,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream,
                                   std::uint64_t sub = 0) noexcept
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ trial);
    h = splitmix64(h ^ (stream << 32));
    return splitmix64(h ^ sub);
}

inline std::mt19937_64 keyed_engine(std::uint64_t seed, std::uint64_t trial, Stream stream,
                                    std::uint64_t sub = 0)
{
    const std::uint64_t key = stream_key(seed, trial, static_cast<std::uint64_t>(stream), sub);
    std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
    return std::mt19937_64(seq);
}

} // namespace wcc
