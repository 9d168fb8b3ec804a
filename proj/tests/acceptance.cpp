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

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// nonzero if any criterion fails.

#include "wcc/channel.hpp"
#include "wcc/cli.hpp"
#include "wcc/dof.hpp"
#include "wcc/ergodic.hpp"
#include "wcc/interference.hpp"
#include "wcc/rates.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

using namespace wcc;

namespace {

double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

struct Verdict {
    bool pass = false;
    std::string detail;
};

// Direct K=3, L=2, t=1 rate: the beam serving pair T nulls
// the third user, and each user decodes its two streams as a MAC.
double k3_rate(const CMatrix& H, double snr, double alpha)
{
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    CVector u[3];
    for (int p = 0; p < 3; ++p) {
        const int other = 3 - pairs[p][0] - pairs[p][1];
        u[p] = CVector(2);
        u[p] << -std::conj(H(1, other)), std::conj(H(0, other));
        u[p].normalize();
    }
    double worst = 1e300;
    for (int r = 0; r < 3; ++r) {
        double g[2];
        int n = 0;
        for (int p = 0; p < 3; ++p)
            if (pairs[p][0] == r || pairs[p][1] == r)
                g[n++] = std::norm(H.col(r).dot(u[p]));
        const double ra = std::log2(1 + g[0] * snr / alpha);
        const double rb = std::log2(1 + g[1] * snr / alpha);
        const double rs = std::log2(1 + (g[0] + g[1]) * snr / alpha);
        worst = std::min({worst, rs, 2 * ra, 2 * rb});
    }
    return 1.5 * worst;
}

// Grid search over P = (a, b, 3 - a - b) with local refinement.
double power_grid(const SubsetGains& g, double alpha, double snr)
{
    const int n = 300;
    double best = -1, a0 = 1, b0 = 1;
    auto eval = [&](double a, double b) {
        a = std::clamp(a, 0.0, 3.0);
        b = std::clamp(b, 0.0, 3.0 - a);
        const double w[] = {a, b, 3 - a - b};
        const double v = power_objective(g, w, alpha, snr);
        if (v > best) {
            best = v;
            a0 = a;
            b0 = b;
        }
    };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
            eval(3.0 * i / n, 3.0 * j / n);
    for (double h = 3.0 / n; h > 1e-9; h /= 2)
        for (int rep = 0; rep < 4; ++rep) {
            const double a = a0, b = b0;
            for (int da = -1; da <= 1; ++da)
                for (int db = -1; db <= 1; ++db)
                    eval(a + da * h, b + db * h);
        }
    return best;
}

// max over unit w = (cos x, sin x e^{i p}) of the weakest gain, with refinement.
double sphere_grid(const CMatrix& H)
{
    auto gain = [&](double x, double p) {
        CVector w(2);
        w << std::cos(x), std::sin(x) * std::polar(1.0, p);
        return std::min(std::norm(H.col(0).dot(w)), std::norm(H.col(1).dot(w)));
    };
    const double pi = std::numbers::pi;
    double best = -1, x0 = 0, p0 = 0;
    for (int i = 0; i <= 200; ++i)
        for (int j = 0; j < 400; ++j) {
            const double x = pi / 2 * i / 200, p = 2 * pi * j / 400;
            if (const double v = gain(x, p); v > best) {
                best = v;
                x0 = x;
                p0 = p;
            }
        }
    for (double h = pi / 400; h > 1e-10; h /= 2)
        for (int rep = 0; rep < 4; ++rep) {
            const double x = x0, p = p0;
            for (int dx = -1; dx <= 1; ++dx)
                for (int dp = -1; dp <= 1; ++dp)
                    if (const double v = gain(x + dx * h, p + dp * h); v > best) {
                        best = v;
                        x0 = x + dx * h;
                        p0 = p + dp * h;
                    }
        }
    return best;
}

// max over 2x2 PSD Sigma with unit trace, parametrized as [[a, c], [c*, 1-a]] with |c|^2 <= a(1-a).
double covariance_grid(const CMatrix& H, double snr)
{
    auto value = [&](double a, double r, double th) {
        a = std::clamp(a, 0.0, 1.0);
        r = std::clamp(r, 0.0, 1.0);
        const Complex c = std::sqrt(a * (1 - a)) * r * std::polar(1.0, th);
        CMatrix S(2, 2);
        S << a, c, std::conj(c), 1 - a;
        return covariance_objective(Subset{0, 1}, H, S, snr);
    };
    const int n = 60;
    double best = -1, a0 = 0, r0 = 0, t0 = 0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k < n; ++k) {
                const double a = 1.0 * i / n, r = 1.0 * j / n, th = 2 * std::numbers::pi * k / n;
                if (const double v = value(a, r, th); v > best) {
                    best = v;
                    a0 = a;
                    r0 = r;
                    t0 = th;
                }
            }
    for (double h = 1.0 / n; h > 1e-9; h /= 2)
        for (int rep = 0; rep < 3; ++rep) {
            const double a = a0, r = r0, th = t0;
            for (int da = -1; da <= 1; ++da)
                for (int dr = -1; dr <= 1; ++dr)
                    for (int dt = -1; dt <= 1; ++dt) {
                        const double x = std::clamp(a + da * h, 0.0, 1.0), y = std::clamp(r + dr * h, 0.0, 1.0);
                        const double z = th + dt * h * 2 * std::numbers::pi;
                        if (const double v = value(x, y, z); v > best) {
                            best = v;
                            a0 = x;
                            r0 = y;
                            t0 = z;
                        }
                    }
        }
    return best;
}

std::string fmt(const char* f, auto... args)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Verdict ac1()
{
    const auto p = SystemParams::make(3, 3, 1, 1);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const CMatrix H = sample_rayleigh(p, 101, i).H;
        const double snr = std::pow(10.0, (i % 9) * 0.5);
        worst = std::max(worst, rel(macc_rate(plan_macc(p, H), Scheme::macc_ff, snr).symmetric_rate,
                                    mmfm_rate(plan_mmfm(p, H), snr).symmetric_rate));
    }
    return {worst <= 1e-12, fmt("L=1 finite-field equals baseline over 100 channels, worst rel. diff %.2e", worst)};
}

Verdict ac2()
{
    const auto p = SystemParams::make(3, 3, 1, 1);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const ZfPlan plan = plan_macc(p, sample_rayleigh(p, 102, i).H);
        const double snr = std::pow(10.0, (i % 9) * 0.5);
        worst = std::max(worst, rel(macc_rate(plan, Scheme::macc_cf, snr).symmetric_rate,
                                    macc_rate(plan, Scheme::macc_ff, snr / (p.t + 1)).symmetric_rate));
    }
    return {worst <= 1e-12, fmt("complex field at SNR equals finite field at SNR/(t+1), worst rel. diff %.2e", worst)};
}

Verdict ac3()
{
    int violations = 0, n = 0;
    for (int K : {3, 4, 5})
        for (int L : {2, 3}) {
            const auto p = SystemParams::make(K, K, L, 1);
            if (!p.supports_macc())
                continue;  // K=3, L=3 has t + L > K
            for (int i = 0; i < 100; ++i, ++n) {
                const ZfPlan plan = plan_macc(p, sample_rayleigh(p, 103, n).H);
                const double snr = std::pow(10.0, (i % 9) * 0.5);
                violations += macc_rate(plan, Scheme::macc_ff, snr).symmetric_rate <
                              macc_rate(plan, Scheme::macc_cf, snr).symmetric_rate;
            }
        }
    return {violations == 0 && n == 500, fmt("finite field >= complex field on %d channels, %d violations", n, violations)};
}

Verdict ac4()
{
    const auto p = SystemParams::make(3, 3, 2, 1);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const CMatrix H = sample_rayleigh(p, 104, i).H;
        const ZfPlan plan = plan_macc(p, H);
        const double snr = std::pow(10.0, (i % 9) * 0.5);
        worst = std::max(worst, rel(macc_rate(plan, Scheme::macc_ff, snr).symmetric_rate, k3_rate(H, snr, 3)));
        worst = std::max(worst, rel(macc_rate(plan, Scheme::macc_cf, snr).symmetric_rate, k3_rate(H, snr, 6)));
    }
    return {worst <= 1e-12, fmt("K=3, L=2 rate equals 1.5 min(R_sum, 2R_a, 2R_b), worst rel. diff %.2e", worst)};
}

Verdict ac5()
{
    const auto v = cli::run_verify({SystemParams::make(3, 3, 2, 1), SystemParams::make(4, 4, 2, 1)}, 105);
    std::string detail;
    for (const auto& line : v.lines)
        detail += (detail.empty() ? "" : "; ") + line;
    return {v.ok, detail};
}

Verdict ac6()
{
    const auto p = SystemParams::make(5, 5, 2, 1);
    const auto grid = geometric_snr_grid(1e6, 1e9, 4);
    DofQuery q;
    q.params = p;
    q.draws = 20;
    q.seed = 106;
    q.scheme = Scheme::mmfm;
    const auto mm = dof_empirical(q, grid);
    q.scheme = Scheme::macc_ff;
    const auto ff = dof_empirical(q, grid);
    const bool ok = std::abs(mm.empirical - 0.5) <= 0.05 * 0.5 && std::abs(ff.empirical - 0.75) <= 0.05 * 0.75 &&
                    mm.analytic == 0.5 && ff.analytic == 0.75;
    return {ok, fmt("empirical slope baseline %.4f (0.5), finite field %.4f (0.75)", mm.empirical, ff.empirical)};
}

Verdict ac7()
{
    cli::SweepConfig c;  // K=3, N=3, L=2, M=1
    c.snr_db = {0, 40};
    c.schemes = std::vector<std::string>{"MMFM", "MACC-FF"};
    c.trials = 200;
    c.seed = 107;
    const auto out = cli::run_rate_sweep(c);
    const double mm0 = out.rows[0].mean, ff0 = out.rows[1].mean;
    const double mm40 = out.rows[2].mean, ff40 = out.rows[3].mean;
    return {mm0 >= ff0 && ff40 > mm40,
            fmt("0 dB: baseline %.4f vs finite field %.4f; 40 dB: baseline %.4f vs finite field %.4f", mm0, ff0,
                mm40, ff40)};
}

Verdict ac8()
{
    int violations = 0;
    for (int i = 0; i < 200; ++i) {
        const int K = 3 + i % 3;
        const auto p = SystemParams::make(K, K, 2, 1);
        const auto g = subset_gains(enumerate_subsets(K, p.t + p.L).front(), p.t, sample_rayleigh(p, 108, i).H);
        const auto a = optimize_power(g, i % 2 ? Scheme::macc_cf : Scheme::macc_ff, p.t, p.L,
                                      std::pow(10.0, (i % 5) - 1.0));
        violations += a.objective < a.uniform_objective - 1e-9;
    }
    double worst = 0;
    const auto p = SystemParams::make(3, 3, 2, 1);
    for (int i = 0; i < 4; ++i) {
        const auto g = subset_gains(Subset{0, 1, 2}, 1, sample_rayleigh(p, 208, i).H);
        for (auto scheme : {Scheme::macc_ff, Scheme::macc_cf}) {
            const double snr = std::pow(10.0, i * 0.5);
            const auto a = optimize_power(g, scheme, 1, 2, snr);
            worst = std::max(worst, rel(a.objective, power_grid(g, power_normalizer(scheme, 1, 2), snr)));
        }
    }
    return {violations == 0 && worst <= 1e-3,
            fmt("optimized < uniform on %d of 200 instances; K=3 grid oracle worst rel. gap %.2e", violations, worst)};
}

Verdict ac9()
{
    double single = 0;
    for (int i = 0; i < 20; ++i) {
        const CMatrix H = sample_rayleigh(3, 4, 109, i).H;
        single = std::max(single, std::abs(maxmin_multicast(Subset{i % 4}, H).min_gain - H.col(i % 4).squaredNorm()));
    }
    const CMatrix I = CMatrix::Identity(2, 2);
    const double grid = sphere_grid(I);
    const double sdr = maxmin_multicast(Subset{0, 1}, I).min_gain;
    return {single <= 1e-6 && std::abs(sdr - grid) <= 1e-3 && std::abs(sdr - 0.5) <= 1e-3,
            fmt("singleton gain error %.2e; orthonormal pair %.6f vs sphere grid %.6f", single, sdr, grid)};
}

Verdict ac10()
{
    const auto p = SystemParams::make(4, 4, 2, 1);
    const auto g = subset_gains(Subset{0, 1, 2}, 1, sample_rayleigh(p, 110, 0).H);
    const std::vector<double> uniform(g.beams.size(), 1.0);
    const double snr = 10;
    double exact = 0, mc = 0;
    for (auto s : {Scheme::macc_ff, Scheme::macc_cf}) {
        exact = std::max(exact, rel(power_audit(g.beams, uniform, s, 1, 2, snr), snr));
        mc = std::max(mc, rel(power_audit_monte_carlo(g.beams, uniform, s, 1, 2, snr, 100000, 110), snr));
    }
    return {exact <= 1e-12 && mc <= 0.02,
            fmt("uniform power rel. error %.2e; symbol-level audit rel. error %.4f", exact, mc)};
}

Verdict ac11()
{
    const auto icp = IcParams::make(2, 3, 3, 1, 3);
    const auto bc = icp.group_params();
    int mismatches = 0;
    for (int i = 0; i < 50; ++i) {
        const CMatrix H = sample_rayleigh(2, 3, 111, i).H;
        const double snr = std::pow(10.0, (i % 9) * 0.5);
        mismatches += ic_rate(icp, snr, H, Scheme::macc_ff).symmetric_rate !=
                      macc_rate(plan_macc(bc, H), Scheme::macc_ff, snr).symmetric_rate;
        mismatches += ic_rate(icp, snr, H, Scheme::macc_cf).symmetric_rate !=
                      macc_rate(plan_macc(bc, H), Scheme::macc_cf, snr).symmetric_rate;
        mismatches += ic_rate(icp, snr, H, Scheme::mmfm).symmetric_rate != mmfm_rate(plan_mmfm(bc, H), snr).symmetric_rate;
    }
    // K_T=2, K_R=4, M_T=2, M_R=1, N=4: min(4, 1 + 1) / (4 (1 - 1/4)) = 2/3.
    const Rational dof = dof_analytic(IcParams::make(2, 4, 2, 1, 4));
    return {mismatches == 0 && dof == Rational{2, 3},
            fmt("%d of 150 rates differ from the broadcast channel; interference DoF %s (2/3)", mismatches,
                dof.to_string().c_str())};
}

Verdict ac12()
{
    double worst = 0;
    for (int i = 0; i < 3; ++i) {
        const CMatrix H = sample_rayleigh(2, 2, 112, i).H;
        const double snr = std::pow(10.0, i);
        worst = std::max(worst, rel(optimize_covariance(Subset{0, 1}, H, snr).objective, covariance_grid(H, snr)));
    }
    double rate[3], se[3];
    int violations = 0;
    for (int L = 2; L <= 4; ++L) {
        const auto e = ergodic_macc_ff(SystemParams::make(6, 6, L, 1), cli::db_to_linear(15), 2000, 112);
        rate[L - 2] = e.rate;
        se[L - 2] = e.stderr_rate;
    }
    double gap = 1e300;
    for (int i = 0; i < 2; ++i) {
        const double sep = (rate[i + 1] - rate[i]) / std::hypot(se[i], se[i + 1]);
        gap = std::min(gap, sep);
        violations += sep < 3;
    }
    return {worst <= 1e-3 && violations == 0,
            fmt("covariance vs PSD grid worst rel. gap %.2e; ER3 at 15 dB L=2,3,4: %.4f, %.4f, %.4f "
                "(min separation %.2f stderr)",
                worst, rate[0], rate[1], rate[2], gap)};
}

} // namespace

int main()
{
    const std::pair<const char*, std::function<Verdict()>> criteria[] = {
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},   {"AC5", ac5},   {"AC6", ac6},
        {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}, {"AC11", ac11}, {"AC12", ac12}};
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !v.pass;
    }
    return failures == 0 ? 0 : 1;
}
