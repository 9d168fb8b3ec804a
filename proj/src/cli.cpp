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

#include "wcc/cli.hpp"

#include "wcc/channel.hpp"
#include "wcc/dof.hpp"
#include "wcc/ergodic.hpp"
#include "wcc/interference.hpp"
#include "wcc/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace wcc::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep))
        parts.push_back(trim(item));
    if (!text.empty() && text.back() == sep)
        parts.emplace_back();
    return parts;
}

double to_real(const std::string& text)
{
    double value = 0;
    std::string_view view = text;
    if (!view.empty() && view.front() == '+')
        view.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), value);
    if (view.empty() || ec != std::errc() || ptr != view.data() + view.size() || !std::isfinite(value))
        throw std::invalid_argument("'" + text + "' is not a number.");
    return value;
}

long long to_integer(const std::string& text)
{
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw std::invalid_argument("'" + text + "' is not an integer.");
    return value;
}

int to_int(const std::string& text)
{
    const long long v = to_integer(text);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw std::invalid_argument("'" + text + "' is out of range.");
    return static_cast<int>(v);
}

std::string real9(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

const std::vector<SchemeSpec>& canonical_schemes()
{
    static const std::vector<SchemeSpec> all{{Scheme::mmfm, false},
                                             {Scheme::macc_cf, false},
                                             {Scheme::macc_cf, true},
                                             {Scheme::macc_ff, false},
                                             {Scheme::macc_ff, true}};
    return all;
}

std::vector<double> resolve_snr(const SweepConfig& c)
{
    std::vector<double> db = c.snr_db.empty() ? default_snr_db() : c.snr_db;
    for (std::size_t i = 1; i < db.size(); ++i)
        if (!(db[i] > db[i - 1]))
            throw std::invalid_argument("snr_db must be strictly ascending.");
    return db;
}

int resolve_trials(const SweepConfig& c, int fallback)
{
    const int trials = c.trials.value_or(fallback);
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1.");
    return trials;
}

std::vector<std::string> resolve_names(const SweepConfig& c, std::vector<std::string> fallback)
{
    if (!c.schemes)
        return fallback;
    if (c.schemes->empty())
        throw std::invalid_argument("The scheme list is empty.");
    std::vector<std::string> names = *c.schemes;
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (names[i] == names[j])
                throw std::invalid_argument("Scheme " + names[i] + " is listed twice.");
    return names;
}

std::vector<SchemeSpec> resolve_rate_schemes(const SweepConfig& c)
{
    std::vector<std::string> fallback;
    for (const auto& s : canonical_schemes())
        fallback.push_back(s.name());
    std::vector<SchemeSpec> specs;
    for (const auto& name : resolve_names(c, fallback))
        specs.push_back(SchemeSpec::parse(name));
    return specs;
}

void require_scheme(const SystemParams& p, const SchemeSpec& s)
{
    if (s.scheme == Scheme::mmfm)
        p.require_baseline();
    else
        p.require_macc();
}

// Per-trial values laid out [snr][scheme]; nullopt marks a skipped draw.
using TrialValues = std::optional<std::vector<double>>;

struct TrialOutcome {
    TrialValues values;
    int unconverged = 0;
    int runs = 0;  // solver invocations that report convergence
};

SweepOutput assemble(const std::vector<TrialOutcome>& outcomes, const std::vector<double>& snr_db,
                     const std::vector<SchemeSpec>& specs, std::uint64_t seed)
{
    SweepOutput out;
    const std::size_t width = specs.size();
    std::vector<double> sum(snr_db.size() * width, 0.0), sq(snr_db.size() * width, 0.0);
    int used = 0, skipped = 0, unconverged = 0, runs = 0;
    for (const auto& o : outcomes) {
        unconverged += o.unconverged;
        runs += o.runs;
        if (!o.values) {
            ++skipped;
            continue;
        }
        ++used;
        for (std::size_t i = 0; i < sum.size(); ++i)
            sum[i] += (*o.values)[i];
    }
    if (used == 0)
        throw std::runtime_error("Every channel draw was skipped as degenerate.");
    for (const auto& o : outcomes)
        if (o.values)
            for (std::size_t i = 0; i < sum.size(); ++i) {
                const double d = (*o.values)[i] - sum[i] / used;
                sq[i] += d * d;
            }
    for (std::size_t a = 0; a < snr_db.size(); ++a)
        for (std::size_t b = 0; b < width; ++b) {
            const std::size_t i = a * width + b;
            RateRow row;
            row.snr_db = snr_db[a];
            row.scheme = specs[b].name();
            row.order = specs[b].order();
            row.mean = sum[i] / used;
            row.stderr_mean = used > 1 ? std::sqrt(sq[i] / (used - 1) / used) : 0.0;
            row.trials = used;
            row.seed = seed;
            out.rows.push_back(row);
        }
    if (skipped * 100 > static_cast<int>(outcomes.size()))
        out.warnings.push_back(std::to_string(skipped) + " of " + std::to_string(outcomes.size()) +
                               " channel draws were degenerate and skipped.");
    else if (skipped > 0)
        out.notes.push_back(std::to_string(skipped) + " degenerate channel draws skipped.");
    // A few capped runs are expected on flat ridges; the best iterate is still used.
    const std::string capped = std::to_string(unconverged) + " of " + std::to_string(runs) +
                               " optimizer runs stopped at the iteration cap.";
    if (unconverged * 100 > runs)
        out.warnings.push_back(capped);
    else if (unconverged > 0)
        out.notes.push_back(capped);
    return out;
}

void sort_rows(std::vector<RateRow>& rows)
{
    std::sort(rows.begin(), rows.end(), [](const RateRow& a, const RateRow& b) {
        return std::tie(a.snr_db, a.L, a.order, a.scheme) < std::tie(b.snr_db, b.L, b.order, b.scheme);
    });
}

MulticastConfig multicast_for(std::uint64_t seed, std::uint64_t trial)
{
    MulticastConfig mc;
    mc.seed = seed;
    mc.trial = trial;
    return mc;
}

} // namespace

// ---------- schemes ----------

std::string SchemeSpec::name() const
{
    return wcc::to_string(scheme) + (power_opt ? "-opt" : "");
}

int SchemeSpec::order() const
{
    const auto& all = canonical_schemes();
    for (std::size_t i = 0; i < all.size(); ++i)
        if (all[i].scheme == scheme && all[i].power_opt == power_opt)
            return static_cast<int>(i);
    return static_cast<int>(all.size());
}

SchemeSpec SchemeSpec::parse(const std::string& name)
{
    const std::string suffix = "-opt";
    const bool opt = name.size() > suffix.size() && name.ends_with(suffix);
    SchemeSpec s{scheme_from_string(opt ? name.substr(0, name.size() - suffix.size()) : name), opt};
    if (opt && s.scheme == Scheme::mmfm)
        throw std::invalid_argument("MMFM has no power-optimized variant.");
    return s;
}

std::string to_string(ErgodicScheme scheme)
{
    switch (scheme) {
    case ErgodicScheme::baseline:
        return "ER1";
    case ErgodicScheme::macc_ff:
        return "ER3";
    case ErgodicScheme::maxmin:
        return "ER1-maxmin";
    }
    return "?";
}

ErgodicScheme ergodic_scheme_from_string(const std::string& name)
{
    for (auto s : {ErgodicScheme::baseline, ErgodicScheme::macc_ff, ErgodicScheme::maxmin})
        if (to_string(s) == name)
            return s;
    throw std::invalid_argument("Unknown ergodic scheme '" + name + "' (expected ER1, ER3 or ER1-maxmin).");
}

// ---------- config ----------

std::vector<double> default_snr_db()
{
    std::vector<double> db;
    for (int x = 0; x <= 40; x += 5)
        db.push_back(x);
    return db;
}

std::vector<double> parse_real_list(const std::string& text)
{
    if (trim(text).empty())
        return {};
    const auto range = split(text, ':');
    if (range.size() == 3) {
        const double start = to_real(range[0]), stop = to_real(range[1]), step = to_real(range[2]);
        if (!(step > 0) || stop < start)
            throw std::invalid_argument("Range '" + text + "' needs start <= stop and a positive step.");
        std::vector<double> out;
        const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
        for (long long i = 0; i <= count; ++i)
            out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
    if (range.size() != 1)
        throw std::invalid_argument("Range '" + text + "' must be start:stop:step.");
    std::vector<double> out;
    for (const auto& item : split(text, ','))
        out.push_back(to_real(item));
    return out;
}

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    if (trim(text).empty())
        return out;
    for (const auto& item : split(text, ','))
        out.push_back(to_int(item));
    return out;
}

std::vector<std::string> parse_name_list(const std::string& text)
{
    std::vector<std::string> out;
    if (trim(text).empty())
        return out;
    for (const auto& item : split(text, ',')) {
        if (item.empty())
            throw std::invalid_argument("Empty entry in list '" + text + "'.");
        out.push_back(item);
    }
    return out;
}

void apply_setting(SweepConfig& c, const std::string& key, const std::string& value)
{
    static const std::map<std::string, int SweepConfig::*> ints{
        {"K", &SweepConfig::K},     {"N", &SweepConfig::N},     {"L", &SweepConfig::L},
        {"M", &SweepConfig::M},     {"K_T", &SweepConfig::K_T}, {"K_R", &SweepConfig::K_R},
        {"M_T", &SweepConfig::M_T}, {"M_R", &SweepConfig::M_R}, {"draws", &SweepConfig::draws},
        {"points_per_decade", &SweepConfig::points_per_decade}};
    if (auto it = ints.find(key); it != ints.end())
        c.*(it->second) = to_int(value);
    else if (key == "trials")
        c.trials = to_int(value);
    else if (key == "seed") {
        const long long s = to_integer(value);
        if (s < 0)
            throw std::invalid_argument("seed must be nonnegative.");
        c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "snr_db")
        c.snr_db = parse_real_list(value);
    else if (key == "schemes")
        c.schemes = parse_name_list(value);
    else if (key == "L_values")
        c.L_values = parse_int_list(value);
    else if (key == "dof_snr_min")
        c.dof_snr_min = to_real(value);
    else if (key == "dof_snr_max")
        c.dof_snr_max = to_real(value);
    else if (key == "out")
        c.out = value;
    else if (key == "plot")
        c.plot = value;
    else if (key == "title")
        c.title = value;
    else
        throw std::invalid_argument("Unknown key '" + key + "'.");
}

SweepConfig parse_config(std::istream& in, SweepConfig c)
{
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string body = line.substr(0, line.find('#'));
        if (trim(body).empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ParseError("Expected 'key = value'.", number, 1);
        const std::string key = trim(body.substr(0, eq));
        if (key.empty())
            throw ParseError("Missing key before '='.", number, static_cast<int>(eq) + 1);
        try {
            apply_setting(c, key, trim(body.substr(eq + 1)));
        } catch (const std::invalid_argument& e) {
            const auto col = body.find_first_not_of(" \t", eq + 1);
            throw ParseError(e.what(), number, static_cast<int>(col == std::string::npos ? eq + 1 : col) + 1);
        }
    }
    return c;
}

SweepConfig load_config(const std::filesystem::path& path, SweepConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("Cannot open config file " + path.string() + ".");
    try {
        return parse_config(in, std::move(base));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.message(), e.line(), e.column());
    }
}

// ---------- sweeps ----------

SweepOutput run_rate_sweep(const SweepConfig& c)
{
    const SystemParams p = c.params();
    const auto specs = resolve_rate_schemes(c);
    for (const auto& s : specs)
        require_scheme(p, s);
    const auto snr_db = resolve_snr(c);
    const int trials = resolve_trials(c, default_rate_trials);
    const bool need_mmfm = std::any_of(specs.begin(), specs.end(), [](auto& s) { return s.scheme == Scheme::mmfm; });
    const bool need_zf = std::any_of(specs.begin(), specs.end(), [](auto& s) { return s.scheme != Scheme::mmfm; });

    std::vector<TrialOutcome> outcomes(trials);
    parallel_for(outcomes.size(), [&](std::size_t trial) {
        const Channel ch = sample_rayleigh(p, c.seed, trial);
        std::optional<MulticastPlan> mplan;
        std::optional<ZfPlan> zplan;
        try {
            if (need_mmfm)
                mplan = plan_mmfm(p, ch.H, multicast_for(c.seed, trial));
            if (need_zf)
                zplan = plan_macc(p, ch.H);
        } catch (const DegenerateChannelError&) {
            return;
        }
        TrialOutcome& o = outcomes[trial];
        o.values.emplace();
        for (double db : snr_db)
            for (const auto& s : specs) {
                const RateResult r = s.scheme == Scheme::mmfm
                                         ? mmfm_rate(*mplan, db_to_linear(db))
                                         : macc_rate(*zplan, s.scheme, db_to_linear(db), s.power_opt);
                o.runs += static_cast<int>(r.per_subset.size());
                for (const auto& sr : r.per_subset)
                    o.unconverged += !sr.converged;
                o.values->push_back(r.symmetric_rate);
            }
    });
    SweepOutput out = assemble(outcomes, snr_db, specs, c.seed);
    sort_rows(out.rows);
    return out;
}

SweepOutput run_ic_sweep(const SweepConfig& c)
{
    const IcParams icp = IcParams::make(c.K_T, c.K_R, c.M_T, c.M_R, c.N);
    const auto specs = resolve_rate_schemes(c);
    for (const auto& s : specs)
        require_scheme(icp.group_params(), s);
    const auto snr_db = resolve_snr(c);
    const int trials = resolve_trials(c, default_rate_trials);

    std::vector<TrialOutcome> outcomes(trials);
    parallel_for(outcomes.size(), [&](std::size_t trial) {
        const Channel ch = sample_rayleigh(icp.K_T, icp.K_R, c.seed, trial);
        TrialOutcome o;
        o.values.emplace();
        try {
            for (double db : snr_db)
                for (const auto& s : specs) {
                    const IcRateResult r = ic_rate(icp, db_to_linear(db), ch.H, s.scheme, s.power_opt,
                                                   multicast_for(c.seed, trial));
                    for (const auto& g : r.per_group) {
                        o.runs += static_cast<int>(g.per_subset.size());
                        for (const auto& sr : g.per_subset)
                            o.unconverged += !sr.converged;
                    }
                    o.values->push_back(r.symmetric_rate);
                }
        } catch (const DegenerateChannelError&) {
            o = {};
        }
        outcomes[trial] = std::move(o);
    });
    SweepOutput out = assemble(outcomes, snr_db, specs, c.seed);
    sort_rows(out.rows);
    return out;
}

SweepOutput run_ergodic_sweep(const SweepConfig& c)
{
    std::vector<ErgodicScheme> schemes;
    for (const auto& name : resolve_names(c, {"ER1", "ER3"}))
        schemes.push_back(ergodic_scheme_from_string(name));
    const auto snr_db = resolve_snr(c);
    const int trials = resolve_trials(c, default_ergodic_trials);
    std::vector<int> Ls = c.L_values;
    if (Ls.empty())
        Ls = {c.L};

    SweepOutput out;
    for (int L : Ls) {
        const SystemParams p = SystemParams::make(c.K, c.N, L, c.M);
        for (double db : snr_db)
            for (std::size_t k = 0; k < schemes.size(); ++k) {
                const double snr = db_to_linear(db);
                ErgodicEstimate e;
                switch (schemes[k]) {
                case ErgodicScheme::baseline:
                    e = ergodic_baseline(p, snr, trials, c.seed);
                    break;
                case ErgodicScheme::macc_ff:
                    e = ergodic_macc_ff(p, snr, trials, c.seed);
                    break;
                case ErgodicScheme::maxmin:
                    e = ergodic_maxmin(p, snr, trials, c.seed);
                    break;
                }
                const std::string name = to_string(schemes[k]);
                const std::string where = name + " at L=" + std::to_string(L) + ", " + real9(db) + " dB";
                out.rows.push_back({db, L, name, static_cast<int>(schemes[k]), e.rate, e.stderr_rate, e.trials, c.seed});
                if (e.warning)
                    out.warnings.push_back(where + ": " + std::to_string(e.skipped) + " degenerate draws skipped.");
                if (e.unconverged > 0)
                    out.warnings.push_back(where + ": " + std::to_string(e.unconverged) +
                                           " optimizer runs stopped at the iteration cap.");
                if (e.dominance_violations > 0)
                    out.notes.push_back(where + ": the all-streams MAC constraint was not the tightest in " +
                                        std::to_string(e.dominance_violations) + " of " + std::to_string(e.trials) +
                                        " draws; the full minimum was used there.");
            }
    }
    sort_rows(out.rows);
    return out;
}

std::string rate_csv(const SweepOutput& output)
{
    const bool with_L = std::any_of(output.rows.begin(), output.rows.end(), [](auto& r) { return r.L.has_value(); });
    std::string csv = with_L ? "snr_db,L,scheme,rate_mean,rate_stderr,trials,seed\n"
                             : "snr_db,scheme,rate_mean,rate_stderr,trials,seed\n";
    for (const auto& r : output.rows) {
        csv += real9(r.snr_db) + ",";
        if (with_L)
            csv += (r.L ? std::to_string(*r.L) : std::string()) + ",";
        csv += r.scheme + "," + real9(r.mean) + "," + real9(r.stderr_mean) + "," + std::to_string(r.trials) + "," +
               std::to_string(r.seed) + "\n";
    }
    return csv;
}

DofOutput run_dof(const SweepConfig& c)
{
    const SystemParams p = c.params();
    std::vector<SchemeSpec> specs;
    for (const auto& name : resolve_names(c, {"MMFM", "MACC-CF", "MACC-FF"}))
        specs.push_back(SchemeSpec::parse(name));
    std::sort(specs.begin(), specs.end(), [](auto& a, auto& b) { return a.order() < b.order(); });
    if (c.draws < 1)
        throw std::invalid_argument("draws must be at least 1.");
    const auto grid = geometric_snr_grid(c.dof_snr_min, c.dof_snr_max, c.points_per_decade);

    DofOutput out;
    for (const auto& s : specs) {
        require_scheme(p, s);
        DofQuery q{p, s.scheme, s.power_opt, c.draws, c.seed, {}, {}};
        const DofReport r = dof_empirical(q, grid);
        out.rows.push_back({s.name(), dof_analytic(p, s.scheme).to_string(), r.analytic, r.empirical, c.draws, c.seed});
        if (r.warning)
            out.warnings.push_back(s.name() + ": mean rate is not monotone in SNR.");
    }
    return out;
}

std::string dof_csv(const DofOutput& output)
{
    std::string csv = "scheme,analytic_exact,analytic,empirical,draws,seed\n";
    for (const auto& r : output.rows)
        csv += r.scheme + "," + r.analytic_exact + "," + real9(r.analytic) + "," + real9(r.empirical) + "," +
               std::to_string(r.draws) + "," + std::to_string(r.seed) + "\n";
    return csv;
}

// ---------- verify ----------

VerifyOutput run_verify(const std::vector<SystemParams>& sizes, std::uint64_t seed)
{
    VerifyOutput out;
    for (const auto& p : sizes) {
        std::vector<DeliveryScheme> schemes;
        if (p.supports_baseline())
            schemes.push_back(DeliveryScheme::baseline);
        if (p.supports_macc())
            schemes.push_back(DeliveryScheme::macc);
        const std::string label = "K=" + std::to_string(p.K) + " N=" + std::to_string(p.N) +
                                  " L=" + std::to_string(p.L) + " M=" + std::to_string(p.M);
        if (schemes.empty()) {
            out.lines.push_back(label + ": no delivery scheme applies");
            continue;
        }
        for (auto scheme : schemes) {
            std::vector<int> demands(p.K, 0);
            std::size_t total = 0, passed = 0;
            std::string first_failure;
            for (;;) {
                ++total;
                const DecodeReport r = verify_decode(p, demands, scheme, seed);
                if (r.ok)
                    ++passed;
                else if (first_failure.empty())
                    first_failure = r.failure;
                int k = 0;
                while (k < p.K && ++demands[k] == p.N)
                    demands[k++] = 0;
                if (k == p.K)
                    break;
            }
            const bool ok = passed == total;
            out.ok = out.ok && ok;
            std::string line = std::string(ok ? "PASS " : "FAIL ") + label +
                               (scheme == DeliveryScheme::baseline ? " baseline: " : " multi-antenna: ") +
                               std::to_string(passed) + "/" + std::to_string(total) + " demand vectors decoded";
            if (!ok)
                line += " (" + first_failure + ")";
            out.lines.push_back(line);
        }
    }
    return out;
}

// ---------- files ----------

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("Cannot open " + path.string() + " for reading.");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("Cannot open " + path.string() + " for writing.");
    out << text;
    if (!out.flush())
        throw std::runtime_error("Write to " + path.string() + " failed.");
}

} // namespace wcc::cli
