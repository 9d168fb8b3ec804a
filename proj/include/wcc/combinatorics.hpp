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

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wcc {

// C(n, k); zero outside 0 <= k <= n.
std::uint64_t binomial(int n, int k);

// Sorted set of distinct 0-based user indices.
class Subset {
public:
    Subset() = default;
    explicit Subset(std::vector<int> members);
    Subset(std::initializer_list<int> members) : Subset(std::vector<int>(members)) {}

    const std::vector<int>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }
    int operator[](std::size_t i) const { return members_[i]; }

    bool contains(int k) const;
    bool is_subset_of(const Subset& other) const;
    Subset without(int k) const;

    // 1-based rendering, e.g. "{1,2}".
    std::string to_string() const;

    friend auto operator<=>(const Subset&, const Subset&) = default;
    friend bool operator==(const Subset&, const Subset&) = default;

private:
    std::vector<int> members_;
};

// All size-element subsets of {0..K-1}, lexicographic.
std::vector<Subset> enumerate_subsets(int K, int size);
// All size-element subsets of ground, lexicographic in ground's order.
std::vector<Subset> enumerate_subsets(const Subset& ground, int size);

struct SystemParams {
    int K = 0;
    int N = 0;
    int L = 0;
    int M = 0;
    int t = 0;

    // Throws std::invalid_argument unless 1 <= L <= K <= N, 0 <= M <= N and M*K/N is integral.
    static SystemParams make(int K, int N, int L, int M);

    bool supports_baseline() const noexcept { return t + 1 <= K; }
    bool supports_macc() const noexcept { return t + L <= K; }

    // C(K-t-1, L-1) mini-files per subfile for the multi-antenna schemes.
    std::uint64_t minifiles_per_subfile() const;
    double cache_fraction() const noexcept { return static_cast<double>(M) / N; }

    void require_baseline() const;
    void require_macc() const;
};

struct SubfileId {
    int file = 0;
    Subset tau;

    friend auto operator<=>(const SubfileId&, const SubfileId&) = default;
    friend bool operator==(const SubfileId&, const SubfileId&) = default;
};

struct MiniFileId {
    int file = 0;
    Subset tau;
    int part = 1; // 1..C(K-t-1, L-1)

    friend auto operator<=>(const MiniFileId&, const MiniFileId&) = default;
    friend bool operator==(const MiniFileId&, const MiniFileId&) = default;
    std::string to_string() const;
};

struct CacheContents {
    int user = 0;
    std::vector<SubfileId> stored;
};

std::vector<CacheContents> place_caches(const SystemParams& params);

// N files cut into C(K,t) subfiles (lexicographic tau order), each cut into
// `parts` equal mini-files laid out contiguously.
class Library {
public:
    Library(std::vector<std::vector<std::uint8_t>> files, int K, int t, int parts);

    static Library random(const SystemParams& params, int parts, std::size_t file_bytes,
                          std::uint64_t seed);

    int file_count() const noexcept { return static_cast<int>(files_.size()); }
    int parts() const noexcept { return parts_; }
    std::size_t file_bytes() const noexcept { return file_bytes_; }
    std::size_t subfile_bytes() const noexcept { return subfile_bytes_; }
    std::size_t minifile_bytes() const noexcept { return subfile_bytes_ / parts_; }

    std::span<const std::uint8_t> file(int n) const;
    std::span<const std::uint8_t> subfile(int n, const Subset& tau) const;
    std::span<const std::uint8_t> minifile(const MiniFileId& id) const;

    const std::vector<Subset>& subfile_indices() const noexcept { return taus_; }

private:
    std::size_t tau_rank(const Subset& tau) const;

    std::vector<std::vector<std::uint8_t>> files_;
    std::vector<Subset> taus_;
    std::map<Subset, std::size_t> rank_;
    int parts_;
    std::size_t file_bytes_;
    std::size_t subfile_bytes_;
};

enum class MessageKind { baseline, finite_field };

struct CodedMessage {
    Subset target;
    std::vector<std::uint8_t> payload;
    MessageKind kind = MessageKind::baseline;
};

// Bitwise XOR of equal-length byte strings; std::invalid_argument otherwise.
std::vector<std::uint8_t> xor_combine(std::span<const std::span<const std::uint8_t>> parts);

using SubfileLookup = std::function<std::span<const std::uint8_t>(int file, const Subset& tau)>;

// U_S = XOR over k in S of W_{d_k, S\{k}}.
CodedMessage build_baseline_message(const Subset& S, std::span<const int> demands,
                                    const SubfileLookup& lookup);
CodedMessage build_baseline_message(const Subset& S, std::span<const int> demands,
                                    const Library& library);

// Counters N(r, T) for every (t+1)-subset T and r in T.
class IndexLedger {
public:
    IndexLedger() = default;
    // INDEX-INIT: every counter starts at 1.
    IndexLedger(int K, int t);

    int at(int r, const Subset& T) const;
    // INDEX-UPDATE for a (t+L)-subset S.
    void update(const Subset& S);

    int t() const noexcept { return t_; }
    const std::map<std::pair<int, Subset>, int>& counters() const noexcept { return counters_; }

private:
    int t_ = 0;
    std::map<std::pair<int, Subset>, int> counters_;
};

IndexLedger ledger_update(IndexLedger ledger, const Subset& S);

// G'(T) = XOR over r in T of W_{d_r, T\{r}}^{N(r,T)}. Throws InvariantViolation
// when a counter is beyond the mini-file count.
CodedMessage build_ff_chunk(const Subset& T, const IndexLedger& ledger, std::span<const int> demands,
                            const Library& library);

enum class DeliveryScheme { baseline, macc };

struct DecodeOptions {
    // Drop one scheduled transmission (index into the schedule) to check that it was needed.
    std::optional<std::size_t> skip_transmission;
};

struct DecodeReport {
    bool ok = false;
    std::size_t transmissions = 0;
    std::size_t chunks = 0;
    std::size_t payload_bytes = 0;
    std::size_t file_bytes = 0;
    std::string failure;
};

// Smallest file size (bytes) of at least 1024 bits splitting into C(K,t)*parts equal pieces.
std::size_t decodable_file_bytes(const SystemParams& params, int parts);

DecodeReport verify_decode(const SystemParams& params, std::span<const int> demands,
                           DeliveryScheme scheme, std::uint64_t seed, const DecodeOptions& options = {});

} // namespace wcc
