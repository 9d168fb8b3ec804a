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

#include "wcc/rates.hpp"

#include "wcc/linalg.hpp"
#include "wcc/rng.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace wcc {

std::string to_string(Scheme scheme)
{
    switch (scheme) {
    case Scheme::mmfm:
        return "MMFM";
    case Scheme::macc_cf:
        return "MACC-CF";
    case Scheme::macc_ff:
        return "MACC-FF";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& name)
{
    if (name == "MMFM")
        return Scheme::mmfm;
    if (name == "MACC-CF")
        return Scheme::macc_cf;
    if (name == "MACC-FF")
        return Scheme::macc_ff;
    throw std::invalid_argument("Unknown scheme '" + name + "' (expected MMFM, MACC-CF or MACC-FF).");
}

double harmonic_rate(double prefactor, std::span<const double> subset_rates)
{
    double inverse_sum = 0;
    for (double r : subset_rates) {
        if (!(r > 0))
            return 0;
        inverse_sum += 1.0 / r;
    }
    return subset_rates.empty() ? 0 : prefactor / inverse_sum;
}

double recompute_symmetric_rate(const RateResult& result)
{
    std::vector<double> rates;
    rates.reserve(result.per_subset.size());
    for (const auto& s : result.per_subset)
        rates.push_back(s.common_rate);
    return harmonic_rate(result.prefactor, rates);
}

MacPoint mac_equal_rate(std::span<const double> gains, double scale, double snr)
{
    const int n = static_cast<int>(gains.size());
    if (n == 0)
        throw std::invalid_argument("mac_equal_rate needs at least one stream.");
    if (n > max_mac_streams)
        throw std::invalid_argument("mac_equal_rate: " + std::to_string(n) + " streams exceed the enumeration limit of " +
                                    std::to_string(max_mac_streams) + " (2^n constraint sets).");

    MacPoint out;
    double best = std::numeric_limits<double>::infinity();
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
        double sum = 0;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1U)
                sum += gains[i];
        const double value = std::log2(1.0 + scale * sum * snr) / std::popcount(mask);
        if (value < best) {
            best = value;
            out.binding_mask = mask;
        }
    }
    out.rate = n * best;
    return out;
}

SubsetGains subset_gains(const Subset& S, int t, const CMatrix& H)
{
    SubsetGains g;
    g.S = S;
    for (auto& zb : zf_set(S, t, H)) {
        g.Ts.push_back(std::move(zb.T));
        g.beams.push_back(std::move(zb.u));
    }
    const auto users = static_cast<Eigen::Index>(S.size());
    const auto streams = static_cast<Eigen::Index>(g.Ts.size());
    g.gain = RMatrix::Zero(users, streams);
    g.omega.resize(S.size());
    for (Eigen::Index i = 0; i < users; ++i)
        for (Eigen::Index j = 0; j < streams; ++j) {
            g.gain(i, j) = beam_gain(H, S[i], g.beams[j]);
            if (g.Ts[j].contains(S[i]))
                g.omega[i].push_back(static_cast<int>(j));
        }
    return g;
}

double power_normalizer(Scheme scheme, int t, int L)
{
    const double streams = static_cast<double>(binomial(t + L, t + 1));
    switch (scheme) {
    case Scheme::macc_cf:
        return streams * (t + 1);
    case Scheme::macc_ff:
        return streams;
    case Scheme::mmfm:
        break;
    }
    throw std::invalid_argument("power_normalizer applies to the zero-forcing schemes only.");
}

double power_objective(const SubsetGains& g, std::span<const double> weights, double alpha, double snr,
                       int* binding_user, std::uint64_t* binding_mask)
{
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> local;
    for (std::size_t i = 0; i < g.omega.size(); ++i) {
        local.clear();
        for (int j : g.omega[i])
            local.push_back(weights[j] * g.gain(static_cast<Eigen::Index>(i), j));
        const MacPoint p = mac_equal_rate(local, 1.0 / alpha, snr);
        const double value = p.rate / static_cast<double>(local.size());
        if (value < best) {
            best = value;
            if (binding_user)
                *binding_user = static_cast<int>(i);
            if (binding_mask)
                *binding_mask = p.binding_mask;
        }
    }
    return best;
}

PowerAllocation optimize_power(const SubsetGains& g, Scheme scheme, int t, int L, double snr, const PowerConfig& config)
{
    const double alpha = power_normalizer(scheme, t, L);
    const auto q = static_cast<Eigen::Index>(g.Ts.size());
    RVector P = RVector::Ones(q);

    PowerAllocation out;
    out.uniform_objective = power_objective(g, std::span<const double>(P.data(), q), alpha, snr);
    out.objective = out.uniform_objective;
    out.weights.assign(P.data(), P.data() + q);
    if (q == 1)
        return out;

    out.converged = false;
    double step = config.step0;
    int round_start = 0, last_improvement = 0;
    int j = 1;
    for (; j <= config.max_iterations; ++j) {
        int user = 0;
        std::uint64_t mask = 0;
        const double value = power_objective(g, std::span<const double>(P.data(), q), alpha, snr, &user, &mask);

        // Supergradient of the binding (user, B) constraint.
        RVector d = RVector::Zero(q);
        const auto& omega = g.omega[user];
        double received = 0;
        for (std::size_t b = 0; b < omega.size(); ++b)
            if (mask >> b & 1U)
                received += P(omega[b]) * g.gain(user, omega[b]);
        const double denom = (1.0 + received * snr / alpha) * std::numbers::ln2 * std::popcount(mask);
        for (std::size_t b = 0; b < omega.size(); ++b)
            if (mask >> b & 1U)
                d(omega[b]) = g.gain(user, omega[b]) * snr / alpha / denom;
        const double norm = d.norm();
        if (!(norm > 0) || !std::isfinite(value))
            break;

        const double local = static_cast<double>(j - round_start);
        P = project_simplex<double>(P + (step / std::sqrt(local) / norm) * d, static_cast<double>(q));
        const double next = power_objective(g, std::span<const double>(P.data(), q), alpha, snr);
        if (next > out.objective) {
            if (next - out.objective > config.tolerance * std::abs(out.objective))
                last_improvement = j;
            out.objective = next;
            out.weights.assign(P.data(), P.data() + q);
        }
        if (j - last_improvement >= config.stall_window) {
            step *= config.shrink;
            if (step < config.min_step) {
                out.converged = true;
                break;
            }
            P = Eigen::Map<const RVector>(out.weights.data(), q);
            round_start = last_improvement = j;
        }
    }
    out.iterations = std::min(j, config.max_iterations);
    return out;
}

namespace {

// Symbol power carried by each stream: G(T) sums t+1 independent codewords.
double symbol_power(Scheme scheme, int t, double snr)
{
    return scheme == Scheme::macc_cf ? (t + 1) * snr : snr;
}

void check_block(std::span<const CVector> beams, std::span<const double> weights, int t, int L)
{
    const auto q = binomial(t + L, t + 1);
    if (beams.size() != weights.size() || beams.size() != q)
        throw std::invalid_argument("Power audit needs one beam and one weight per (t+1)-subset (" + std::to_string(q) +
                                    ").");
}

} // namespace

double power_audit(std::span<const CVector> beams, std::span<const double> weights, Scheme scheme, int t, int L,
                   double snr)
{
    check_block(beams, weights, t, L);
    const double alpha = power_normalizer(scheme, t, L);
    double power = 0;
    for (std::size_t i = 0; i < beams.size(); ++i)
        power += weights[i] * beams[i].squaredNorm() * symbol_power(scheme, t, snr) / alpha;
    if (power > snr * (1.0 + 1e-9))
        throw InvariantViolation("Transmit power " + std::to_string(power) + " exceeds the budget " +
                                 std::to_string(snr) + ".");
    return power;
}

double power_audit_monte_carlo(std::span<const CVector> beams, std::span<const double> weights, Scheme scheme, int t,
                               int L, double snr, int uses, std::uint64_t seed)
{
    check_block(beams, weights, t, L);
    const double alpha = power_normalizer(scheme, t, L);
    const int terms = scheme == Scheme::macc_cf ? t + 1 : 1;
    auto engine = keyed_engine(seed, 0, Stream::symbols);
    std::normal_distribution<double> component(0.0, std::sqrt(snr / 2.0));

    const Eigen::Index dim = beams.front().size();
    double total = 0;
    CVector x(dim);
    for (int n = 0; n < uses; ++n) {
        x.setZero();
        for (std::size_t i = 0; i < beams.size(); ++i) {
            Complex symbol = 0;
            for (int k = 0; k < terms; ++k) {
                const double re = component(engine);
                const double im = component(engine);
                symbol += Complex(re, im);
            }
            x += beams[i] * (std::sqrt(weights[i] / alpha) * symbol);
        }
        total += x.squaredNorm();
    }
    return total / uses;
}

MulticastPlan plan_mmfm(const SystemParams& params, const CMatrix& H, const MulticastConfig& config)
{
    params.require_baseline();
    MulticastPlan plan{params, enumerate_subsets(params.K, params.t + 1), {}};
    plan.beams.reserve(plan.subsets.size());
    for (std::size_t i = 0; i < plan.subsets.size(); ++i) {
        MulticastConfig local = config;
        local.sub = i;
        plan.beams.push_back(maxmin_multicast(plan.subsets[i], H, local));
    }
    return plan;
}

RateResult mmfm_rate(const MulticastPlan& plan, double snr)
{
    if (!(snr > 0))
        throw std::invalid_argument("SNR must be positive.");
    RateResult out;
    out.scheme = Scheme::mmfm;
    out.snr = snr;
    out.prefactor = static_cast<double>(binomial(plan.params.K, plan.params.t));
    std::vector<double> rates;
    for (std::size_t i = 0; i < plan.subsets.size(); ++i) {
        const auto& beam = plan.beams[i];
        SubsetRate s;
        s.subset = plan.subsets[i];
        s.common_rate = std::log2(1.0 + beam.min_gain * snr);
        s.converged = beam.converged;
        out.converged = out.converged && beam.converged;
        rates.push_back(s.common_rate);
        out.per_subset.push_back(std::move(s));
    }
    out.symmetric_rate = harmonic_rate(out.prefactor, rates);
    return out;
}

ZfPlan plan_macc(const SystemParams& params, const CMatrix& H)
{
    params.require_macc();
    ZfPlan plan{params, {}};
    for (const auto& S : enumerate_subsets(params.K, params.t + params.L))
        plan.subsets.push_back(subset_gains(S, params.t, H));
    return plan;
}

RateResult macc_rate(const ZfPlan& plan, Scheme scheme, double snr, bool power_opt, const PowerConfig& config)
{
    if (!(snr > 0))
        throw std::invalid_argument("SNR must be positive.");
    const auto& p = plan.params;
    const double alpha = power_normalizer(scheme, p.t, p.L);
    const double streams_per_user = static_cast<double>(binomial(p.t + p.L - 1, p.t));

    RateResult out;
    out.scheme = scheme;
    out.snr = snr;
    out.prefactor = static_cast<double>(binomial(p.K, p.t)) * static_cast<double>(binomial(p.K - p.t - 1, p.L - 1)) /
                    streams_per_user;
    std::vector<double> rates;
    for (const auto& g : plan.subsets) {
        SubsetRate s;
        s.subset = g.S;
        if (power_opt) {
            PowerAllocation alloc = optimize_power(g, scheme, p.t, p.L, snr, config);
            s.power = std::move(alloc.weights);
            s.converged = alloc.converged;
            out.converged = out.converged && alloc.converged;
        } else {
            s.power.assign(g.Ts.size(), 1.0);
        }
        int user = 0;
        std::uint64_t mask = 0;
        const double per_stream = power_objective(g, s.power, alpha, snr, &user, &mask);
        s.common_rate = streams_per_user * per_stream;
        s.binding_user = g.S[user];
        for (std::size_t b = 0; b < g.omega[user].size(); ++b)
            if (mask >> b & 1U)
                s.binding_set.push_back(g.Ts[g.omega[user][b]]);
        rates.push_back(s.common_rate);
        out.per_subset.push_back(std::move(s));
    }
    out.symmetric_rate = harmonic_rate(out.prefactor, rates);
    return out;
}

RateResult mmfm_rate(const RateQuery& query)
{
    return mmfm_rate(plan_mmfm(query.params, query.H, query.multicast), query.snr);
}

RateResult macc_rate(const RateQuery& query)
{
    if (query.scheme == Scheme::mmfm)
        throw std::invalid_argument("macc_rate needs MACC-CF or MACC-FF.");
    return macc_rate(plan_macc(query.params, query.H), query.scheme, query.snr, query.power_opt, query.power);
}

RateResult symmetric_rate(const RateQuery& query)
{
    return query.scheme == Scheme::mmfm ? mmfm_rate(query) : macc_rate(query);
}

} // namespace wcc
