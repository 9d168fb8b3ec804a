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

#include "wcc/ergodic.hpp"

#include "wcc/channel.hpp"
#include "wcc/linalg.hpp"
#include "wcc/parallel.hpp"
#include "wcc/rates.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace wcc {

double covariance_objective(const Subset& S, const CMatrix& H, const CMatrix& Sigma, double snr)
{
    double total = 0;
    for (int k : S)
        total += std::log2(1.0 + std::max(0.0, std::real(H.col(k).dot(Sigma * H.col(k)))) * snr);
    return total;
}

CovarianceResult optimize_covariance(const Subset& S, const CMatrix& H, double snr, const CovarianceConfig& config)
{
    if (S.empty())
        throw std::invalid_argument("optimize_covariance needs a nonempty user subset.");
    if (!(snr > 0))
        throw std::invalid_argument("SNR must be positive.");
    const Eigen::Index L = H.rows();
    const CMatrix I = CMatrix::Identity(L, L);

    CMatrix Sigma = I / static_cast<double>(L);
    double nu = 0;

    CovarianceResult out;
    out.Sigma = Sigma;
    out.objective = covariance_objective(S, H, Sigma, snr);
    out.converged = false;
    int last_improvement = 0;

    int j = 1;
    for (; j <= config.max_iterations; ++j) {
        CMatrix grad = nu * I;
        for (int k : S) {
            const CVector h = H.col(k);
            const double load = std::max(0.0, std::real(h.dot(Sigma * h)));
            grad -= (snr / (1.0 + snr * load)) * (h * h.adjoint());
        }
        const double root = std::sqrt(static_cast<double>(j));
        Sigma = project_psd<double>(Sigma - (config.step_sigma / root) * grad);
        nu = std::max(0.0, nu + (config.step_nu / root) * (Sigma.trace().real() - 1.0));

        // Scaling back onto the trace budget gives a feasible point to score.
        const double trace = Sigma.trace().real();
        const CMatrix feasible = trace > 1.0 ? CMatrix(Sigma / trace) : Sigma;
        const double value = covariance_objective(S, H, feasible, snr);
        if (value > out.objective) {
            if (value - out.objective > config.tolerance * std::abs(out.objective))
                last_improvement = j;
            out.objective = value;
            out.Sigma = feasible;
            out.nu = nu;
        }
        if (j - last_improvement >= config.stall_window) {
            out.converged = true;
            break;
        }
    }
    out.iterations = std::min(j, config.max_iterations);
    return out;
}

namespace {

struct Sample {
    std::optional<double> value;
    double dominant = 0;
    bool dominance_violated = false;
    bool converged = true;
};

ErgodicEstimate summarize(const std::vector<Sample>& samples, double prefactor)
{
    ErgodicEstimate est;
    est.prefactor = prefactor;
    std::vector<double> values;
    double dominant_sum = 0;
    for (const auto& s : samples) {
        if (!s.value) {
            ++est.skipped;
            continue;
        }
        values.push_back(*s.value);
        dominant_sum += s.dominant;
        est.dominance_violations += s.dominance_violated;
        est.unconverged += !s.converged;
    }
    est.trials = static_cast<int>(values.size());
    if (values.empty())
        throw std::runtime_error("Every ergodic trial was skipped as degenerate.");
    const double n = static_cast<double>(values.size());
    est.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0;
    for (double v : values)
        ss += (v - est.mean) * (v - est.mean);
    const double stderr_mean = values.size() > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
    est.rate = prefactor * est.mean;
    est.stderr_rate = prefactor * stderr_mean;
    est.dominant_rate = prefactor * dominant_sum / n;
    est.warning = est.skipped * 100 > static_cast<int>(samples.size());
    return est;
}

void check_trials(int trials, double snr)
{
    if (trials < 1)
        throw std::invalid_argument("Need at least one trial.");
    if (!(snr > 0))
        throw std::invalid_argument("SNR must be positive.");
}

// (KM/N + multicast size) / (K (1 - M/N))
double ergodic_prefactor(const SystemParams& p, int group)
{
    return static_cast<double>(p.t + group) * p.N / (static_cast<double>(p.K) * (p.N - p.M));
}

Subset first_users(int count)
{
    std::vector<int> members(count);
    std::iota(members.begin(), members.end(), 0);
    return Subset(std::move(members));
}

} // namespace

ErgodicEstimate ergodic_baseline(const SystemParams& params, double snr, int trials, std::uint64_t seed,
                                 const CovarianceConfig& config)
{
    params.require_baseline();
    check_trials(trials, snr);
    const Subset S = first_users(params.t + 1);
    std::vector<Sample> samples(trials);
    parallel_for(samples.size(), [&](std::size_t i) {
        const Channel ch = sample_rayleigh(params, seed, i);
        const CovarianceResult cov = optimize_covariance(S, ch.H, snr, config);
        const double value = cov.objective / static_cast<double>(S.size());
        samples[i] = {value, value, false, cov.converged};
    });
    return summarize(samples, ergodic_prefactor(params, 1));
}

ErgodicEstimate ergodic_macc_ff(const SystemParams& params, double snr, int trials, std::uint64_t seed, int r_index)
{
    params.require_macc();
    check_trials(trials, snr);
    const Subset S = first_users(params.t + params.L);
    if (r_index < 0 || r_index >= static_cast<int>(S.size()))
        throw std::invalid_argument("Reference user index outside the multicast group.");
    const double scale = 1.0 / static_cast<double>(binomial(params.t + params.L, params.t + 1));

    std::vector<Sample> samples(trials);
    parallel_for(samples.size(), [&](std::size_t i) {
        const Channel ch = sample_rayleigh(params, seed, i);
        SubsetGains g;
        try {
            g = subset_gains(S, params.t, ch.H);
        } catch (const DegenerateChannelError&) {
            samples[i] = {};
            return;
        }
        std::vector<double> gains;
        for (int j : g.omega[r_index])
            gains.push_back(g.gain(r_index, j));
        const double total = std::accumulate(gains.begin(), gains.end(), 0.0);
        const double dominant = std::log2(1.0 + scale * total * snr);
        // The all-streams constraint should be the tightest; fall back to the full minimum if not.
        const double full = mac_equal_rate(gains, scale, snr).rate;
        const bool violated = full < dominant * (1.0 - 1e-12);
        samples[i] = {violated ? full : dominant, dominant, violated, true};
    });
    return summarize(samples, ergodic_prefactor(params, params.L));
}

ErgodicEstimate ergodic_maxmin(const SystemParams& params, double snr, int trials, std::uint64_t seed,
                               const MulticastConfig& config)
{
    params.require_baseline();
    check_trials(trials, snr);
    const Subset S = first_users(params.t + 1);
    std::vector<Sample> samples(trials);
    parallel_for(samples.size(), [&](std::size_t i) {
        const Channel ch = sample_rayleigh(params, seed, i);
        MulticastConfig local = config;
        local.seed = seed;
        local.trial = i;
        const MulticastBeam beam = maxmin_multicast(S, ch.H, local);
        const double value = std::log2(1.0 + beam.min_gain * snr);
        samples[i] = {value, value, false, beam.converged};
    });
    return summarize(samples, ergodic_prefactor(params, 1));
}

} // namespace wcc
