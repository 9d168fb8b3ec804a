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

#include "wcc/combinatorics.hpp"

#include "wcc/rng.hpp"
#include "wcc/types.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wcc {

std::uint64_t binomial(int n, int k)
{
    if (n < 0 || k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i)
        result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return result;
}

// ---------- Subset ----------

Subset::Subset(std::vector<int> members) : members_(std::move(members))
{
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i] < 0)
            throw std::invalid_argument("Subset members must be non-negative user indices.");
        if (i > 0 && members_[i] <= members_[i - 1])
            throw std::invalid_argument("Subset members must be strictly increasing.");
    }
}

bool Subset::contains(int k) const
{
    return std::binary_search(members_.begin(), members_.end(), k);
}

bool Subset::is_subset_of(const Subset& other) const
{
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

Subset Subset::without(int k) const
{
    std::vector<int> rest;
    rest.reserve(members_.size());
    std::copy_if(members_.begin(), members_.end(), std::back_inserter(rest), [k](int m) { return m != k; });
    return Subset(std::move(rest));
}

std::string Subset::to_string() const
{
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < members_.size(); ++i)
        os << (i ? "," : "") << members_[i] + 1;
    os << '}';
    return os.str();
}

std::vector<Subset> enumerate_subsets(const Subset& ground, int size)
{
    const int n = static_cast<int>(ground.size());
    if (size < 0 || size > n)
        throw std::invalid_argument("Subset size " + std::to_string(size) + " outside [0, " + std::to_string(n) + "].");

    std::vector<Subset> out;
    out.reserve(binomial(n, size));
    std::vector<int> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::vector<int> members(size);
        for (int i = 0; i < size; ++i)
            members[i] = ground[idx[i]];
        out.emplace_back(std::move(members));

        int i = size - 1;
        while (i >= 0 && idx[i] == n - size + i)
            --i;
        if (i < 0)
            break;
        ++idx[i];
        for (int j = i + 1; j < size; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::vector<Subset> enumerate_subsets(int K, int size)
{
    if (K < 0)
        throw std::invalid_argument("User count must be non-negative.");
    std::vector<int> all(K);
    std::iota(all.begin(), all.end(), 0);
    return enumerate_subsets(Subset(std::move(all)), size);
}

// ---------- SystemParams ----------

SystemParams SystemParams::make(int K, int N, int L, int M)
{
    if (K < 1)
        throw std::invalid_argument("K must be at least 1.");
    if (N < K)
        throw std::invalid_argument("N must be at least K (all-distinct worst-case demands).");
    if (L < 1 || L > K)
        throw std::invalid_argument("L must satisfy 1 <= L <= K.");
    if (M < 0 || M > N)
        throw std::invalid_argument("M must satisfy 0 <= M <= N.");
    if ((M * K) % N != 0)
        throw std::invalid_argument("t = M*K/N must be an integer (got M*K = " + std::to_string(M * K) +
                                    ", N = " + std::to_string(N) + ").");
    return SystemParams{K, N, L, M, M * K / N};
}

std::uint64_t SystemParams::minifiles_per_subfile() const
{
    return binomial(K - t - 1, L - 1);
}

void SystemParams::require_baseline() const
{
    if (!supports_baseline())
        throw std::invalid_argument("Baseline scheme needs t + 1 <= K (t = " + std::to_string(t) +
                                    ", K = " + std::to_string(K) + ").");
}

void SystemParams::require_macc() const
{
    if (!supports_macc())
        throw std::invalid_argument("Multi-antenna schemes need t + L <= K (t = " + std::to_string(t) +
                                    ", L = " + std::to_string(L) + ", K = " + std::to_string(K) + ").");
}

std::string MiniFileId::to_string() const
{
    return "W_{" + std::to_string(file + 1) + "," + tau.to_string() + "}^" + std::to_string(part);
}

std::vector<CacheContents> place_caches(const SystemParams& params)
{
    std::vector<CacheContents> caches(params.K);
    const auto taus = enumerate_subsets(params.K, params.t);
    for (int k = 0; k < params.K; ++k) {
        caches[k].user = k;
        if (params.M == 0)
            continue;
        for (int n = 0; n < params.N; ++n)
            for (const auto& tau : taus)
                if (tau.contains(k))
                    caches[k].stored.push_back({n, tau});
    }
    return caches;
}

// ---------- Library ----------

Library::Library(std::vector<std::vector<std::uint8_t>> files, int K, int t, int parts)
    : files_(std::move(files)), taus_(enumerate_subsets(K, t)), parts_(parts)
{
    if (parts_ < 1)
        throw std::invalid_argument("Mini-file count per subfile must be positive.");
    if (files_.empty())
        throw std::invalid_argument("Library needs at least one file.");
    file_bytes_ = files_.front().size();
    for (const auto& f : files_)
        if (f.size() != file_bytes_)
            throw std::invalid_argument("All library files must have the same size.");
    const std::size_t pieces = taus_.size() * static_cast<std::size_t>(parts_);
    if (file_bytes_ == 0 || file_bytes_ % pieces != 0)
        throw std::invalid_argument("File size " + std::to_string(file_bytes_) + " bytes is not divisible into " +
                                    std::to_string(pieces) + " equal pieces.");
    subfile_bytes_ = file_bytes_ / taus_.size();
    for (std::size_t i = 0; i < taus_.size(); ++i)
        rank_.emplace(taus_[i], i);
}

Library Library::random(const SystemParams& params, int parts, std::size_t file_bytes, std::uint64_t seed)
{
    auto engine = keyed_engine(seed, 0, Stream::library);
    std::uniform_int_distribution<int> byte(0, 255);
    std::vector<std::vector<std::uint8_t>> files(params.N, std::vector<std::uint8_t>(file_bytes));
    for (auto& f : files)
        for (auto& b : f)
            b = static_cast<std::uint8_t>(byte(engine));
    return Library(std::move(files), params.K, params.t, parts);
}

std::size_t Library::tau_rank(const Subset& tau) const
{
    auto it = rank_.find(tau);
    if (it == rank_.end())
        throw std::out_of_range("Unknown subfile index " + tau.to_string() + ".");
    return it->second;
}

std::span<const std::uint8_t> Library::file(int n) const
{
    return files_.at(n);
}

std::span<const std::uint8_t> Library::subfile(int n, const Subset& tau) const
{
    return file(n).subspan(tau_rank(tau) * subfile_bytes_, subfile_bytes_);
}

std::span<const std::uint8_t> Library::minifile(const MiniFileId& id) const
{
    if (id.part < 1 || id.part > parts_)
        throw std::out_of_range("Mini-file part " + std::to_string(id.part) + " outside 1.." + std::to_string(parts_) + ".");
    const std::size_t size = minifile_bytes();
    return subfile(id.file, id.tau).subspan(static_cast<std::size_t>(id.part - 1) * size, size);
}

// ---------- coded messages ----------

std::vector<std::uint8_t> xor_combine(std::span<const std::span<const std::uint8_t>> parts)
{
    if (parts.empty())
        throw std::invalid_argument("Nothing to combine.");
    std::vector<std::uint8_t> out(parts.front().begin(), parts.front().end());
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (parts[i].size() != out.size())
            throw std::invalid_argument("Cannot XOR payloads of unequal length (" + std::to_string(out.size()) +
                                        " vs " + std::to_string(parts[i].size()) + " bytes).");
        std::transform(out.begin(), out.end(), parts[i].begin(), out.begin(), std::bit_xor<>());
    }
    return out;
}

CodedMessage build_baseline_message(const Subset& S, std::span<const int> demands, const SubfileLookup& lookup)
{
    if (S.empty())
        throw std::invalid_argument("Coded message needs a nonempty target subset.");
    std::vector<std::span<const std::uint8_t>> parts;
    parts.reserve(S.size());
    for (int k : S)
        parts.push_back(lookup(demands[k], S.without(k)));
    return {S, xor_combine(parts), MessageKind::baseline};
}

CodedMessage build_baseline_message(const Subset& S, std::span<const int> demands, const Library& library)
{
    return build_baseline_message(S, demands,
                                  [&library](int n, const Subset& tau) { return library.subfile(n, tau); });
}

IndexLedger::IndexLedger(int K, int t) : t_(t)
{
    for (const auto& T : enumerate_subsets(K, t + 1))
        for (int r : T)
            counters_.emplace(std::make_pair(r, T), 1);
}

int IndexLedger::at(int r, const Subset& T) const
{
    auto it = counters_.find({r, T});
    if (it == counters_.end())
        throw std::out_of_range("No ledger entry for user " + std::to_string(r + 1) + " and " + T.to_string() + ".");
    return it->second;
}

void IndexLedger::update(const Subset& S)
{
    for (const auto& T : enumerate_subsets(S, t_ + 1))
        for (int r : T)
            ++counters_.at({r, T});
}

IndexLedger ledger_update(IndexLedger ledger, const Subset& S)
{
    ledger.update(S);
    return ledger;
}

CodedMessage build_ff_chunk(const Subset& T, const IndexLedger& ledger, std::span<const int> demands,
                            const Library& library)
{
    std::vector<std::span<const std::uint8_t>> parts;
    parts.reserve(T.size());
    for (int r : T) {
        const int part = ledger.at(r, T);
        if (part > library.parts())
            throw InvariantViolation("Mini-file index exhausted: N(" + std::to_string(r + 1) + "," + T.to_string() +
                                     ") = " + std::to_string(part) + " exceeds " + std::to_string(library.parts()) +
                                     "; the delivery schedule is inconsistent.");
        parts.push_back(library.minifile({demands[r], T.without(r), part}));
    }
    return {T, xor_combine(parts), MessageKind::finite_field};
}

// ---------- decodability ----------

std::size_t decodable_file_bytes(const SystemParams& params, int parts)
{
    const std::size_t pieces = binomial(params.K, params.t) * static_cast<std::size_t>(parts);
    const std::size_t min_bytes = 1024 / 8;
    return pieces * ((min_bytes + pieces - 1) / pieces);
}

namespace {

// What one receiver holds: its cache plus everything it has decoded so far.
class Receiver {
public:
    Receiver(int user, const Library& library) : user_(user), library_(library) {}

    std::span<const std::uint8_t> cached(const MiniFileId& id) const
    {
        if (!id.tau.contains(user_))
            throw InvariantViolation("User " + std::to_string(user_ + 1) + " needs " + id.to_string() +
                                     " for interference removal but does not cache it.");
        return library_.minifile(id);
    }

    std::span<const std::uint8_t> cached_subfile(int file, const Subset& tau) const
    {
        if (!tau.contains(user_))
            throw InvariantViolation("User " + std::to_string(user_ + 1) + " does not cache subfile of file " +
                                     std::to_string(file + 1) + " indexed " + tau.to_string() + ".");
        return library_.subfile(file, tau);
    }

    // Returns false on a duplicate delivery.
    bool deliver(const MiniFileId& id, std::vector<std::uint8_t> bytes)
    {
        return decoded_.emplace(id, std::move(bytes)).second;
    }

    std::string reconstruct(int file) const
    {
        std::vector<std::uint8_t> rebuilt;
        rebuilt.reserve(library_.file_bytes());
        for (const auto& tau : library_.subfile_indices()) {
            if (tau.contains(user_)) {
                auto sub = library_.subfile(file, tau);
                rebuilt.insert(rebuilt.end(), sub.begin(), sub.end());
                continue;
            }
            for (int j = 1; j <= library_.parts(); ++j) {
                MiniFileId id{file, tau, j};
                auto it = decoded_.find(id);
                if (it == decoded_.end())
                    return "user " + std::to_string(user_ + 1) + " is missing " + id.to_string();
                rebuilt.insert(rebuilt.end(), it->second.begin(), it->second.end());
            }
        }
        auto original = library_.file(file);
        if (!std::equal(rebuilt.begin(), rebuilt.end(), original.begin(), original.end()))
            return "user " + std::to_string(user_ + 1) + " reconstructed file " + std::to_string(file + 1) +
                   " with wrong content";
        return {};
    }

private:
    int user_;
    const Library& library_;
    std::map<MiniFileId, std::vector<std::uint8_t>> decoded_;
};

std::vector<std::uint8_t> strip(std::vector<std::uint8_t> payload, std::span<const std::uint8_t> known)
{
    std::transform(payload.begin(), payload.end(), known.begin(), payload.begin(), std::bit_xor<>());
    return payload;
}

} // namespace

DecodeReport verify_decode(const SystemParams& params, std::span<const int> demands, DeliveryScheme scheme,
                           std::uint64_t seed, const DecodeOptions& options)
{
    if (demands.size() != static_cast<std::size_t>(params.K))
        throw std::invalid_argument("Demand vector must have one entry per user.");
    for (int d : demands)
        if (d < 0 || d >= params.N)
            throw std::invalid_argument("Demand " + std::to_string(d) + " outside the library.");

    const bool all_cached = params.t == params.K;
    if (!all_cached) {
        if (scheme == DeliveryScheme::baseline)
            params.require_baseline();
        else
            params.require_macc();
    }
    const int parts = (scheme == DeliveryScheme::macc && !all_cached)
                          ? static_cast<int>(params.minifiles_per_subfile())
                          : 1;

    DecodeReport report;
    report.file_bytes = decodable_file_bytes(params, parts);
    const Library library = Library::random(params, parts, report.file_bytes, seed);

    std::vector<Receiver> receivers;
    receivers.reserve(params.K);
    for (int k = 0; k < params.K; ++k)
        receivers.emplace_back(k, library);

    auto fail = [&report](std::string why) {
        report.ok = false;
        report.failure = std::move(why);
        return report;
    };

    std::size_t index = 0;
    if (all_cached) {
        // Nothing to send.
    } else if (scheme == DeliveryScheme::baseline) {
        for (const auto& S : enumerate_subsets(params.K, params.t + 1)) {
            const bool dropped = options.skip_transmission == index++;
            if (dropped)
                continue;
            const CodedMessage msg = build_baseline_message(S, demands, library);
            ++report.transmissions;
            ++report.chunks;
            report.payload_bytes += msg.payload.size();
            for (int k : S) {
                auto bytes = msg.payload;
                for (int j : S)
                    if (j != k)
                        bytes = strip(std::move(bytes), receivers[k].cached_subfile(demands[j], S.without(j)));
                MiniFileId id{demands[k], S.without(k), 1};
                if (!receivers[k].deliver(id, std::move(bytes)))
                    return fail("user " + std::to_string(k + 1) + " received " + id.to_string() + " twice");
            }
        }
    } else {
        IndexLedger ledger(params.K, params.t);
        for (const auto& S : enumerate_subsets(params.K, params.t + params.L)) {
            const bool dropped = options.skip_transmission == index++;
            const auto Ts = enumerate_subsets(S, params.t + 1);
            if (!dropped) {
                ++report.transmissions;
                for (const auto& T : Ts) {
                    const CodedMessage chunk = build_ff_chunk(T, ledger, demands, library);
                    ++report.chunks;
                    report.payload_bytes += chunk.payload.size();
                    // Zero-forcing confines G'(T) to the members of T.
                    for (int r : T) {
                        auto bytes = chunk.payload;
                        for (int j : T)
                            if (j != r)
                                bytes = strip(std::move(bytes),
                                              receivers[r].cached({demands[j], T.without(j), ledger.at(j, T)}));
                        MiniFileId id{demands[r], T.without(r), ledger.at(r, T)};
                        if (!receivers[r].deliver(id, std::move(bytes)))
                            return fail("user " + std::to_string(r + 1) + " received " + id.to_string() + " twice");
                    }
                }
            }
            ledger.update(S);
        }
    }

    for (int k = 0; k < params.K; ++k) {
        std::string why = receivers[k].reconstruct(demands[k]);
        if (!why.empty())
            return fail(std::move(why));
    }
    report.ok = true;
    return report;
}

} // namespace wcc
