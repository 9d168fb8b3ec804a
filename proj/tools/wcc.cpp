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
#include "wcc/types.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

enum Exit { ok = 0, usage = 1, numerical = 2, invariant = 3 };

struct Overrides {
    std::string config;
    std::string snr_db;
    std::optional<int> trials;
    std::optional<long long> seed;
    std::optional<std::string> schemes;
    std::string out;
    std::string plot;
};

void add_common(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("-c,--config", o.config, "key = value config file");
    cmd->add_option("--snr-db", o.snr_db, "SNR points in dB: a,b,c or start:stop:step");
    cmd->add_option("--trials", o.trials, "Monte-Carlo trials per point");
    cmd->add_option("--seed", o.seed, "base seed");
    cmd->add_option("--scheme", o.schemes, "comma-separated scheme list");
    cmd->add_option("--out", o.out, "output CSV path (stdout if empty)");
    cmd->add_option("--plot", o.plot, "also render the CSV to this SVG path");
}

wcc::cli::SweepConfig resolve(const Overrides& o)
{
    wcc::cli::SweepConfig c;
    if (!o.config.empty())
        c = wcc::cli::load_config(o.config);
    if (!o.snr_db.empty())
        wcc::cli::apply_setting(c, "snr_db", o.snr_db);
    if (o.trials)
        c.trials = *o.trials;
    if (o.seed)
        wcc::cli::apply_setting(c, "seed", std::to_string(*o.seed));
    if (o.schemes)
        wcc::cli::apply_setting(c, "schemes", *o.schemes);
    if (!o.out.empty())
        c.out = o.out;
    if (!o.plot.empty())
        c.plot = o.plot;
    return c;
}

void emit(const std::string& text, const wcc::cli::SweepConfig& c)
{
    if (c.out.empty())
        std::cout << text;
    else
        wcc::cli::write_text_file(c.out, text);
}

int report(const std::vector<std::string>& warnings, const std::vector<std::string>& notes)
{
    for (const auto& n : notes)
        std::cerr << "note: " << n << "\n";
    for (const auto& w : warnings)
        std::cerr << "warning: " << w << "\n";
    return warnings.empty() ? Exit::ok : Exit::numerical;
}

int sweep_output(const wcc::cli::SweepOutput& out, const wcc::cli::SweepConfig& c)
{
    const std::string csv = wcc::cli::rate_csv(out);
    emit(csv, c);
    if (!c.plot.empty())
        wcc::cli::write_text_file(c.plot, wcc::cli::render_plot(csv, {640, 420, c.title}));
    return report(out.warnings, out.notes);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rates of cache-aided multi-antenna delivery schemes"};
    app.require_subcommand(1);

    Overrides rate_o, ic_o, erg_o, dof_o;
    auto* rate = app.add_subcommand("rate-sweep", "Symmetric rate versus SNR for the broadcast schemes");
    add_common(rate, rate_o);
    auto* ic = app.add_subcommand("ic-sweep", "Symmetric rate versus SNR for the interference channel");
    add_common(ic, ic_o);
    auto* erg = app.add_subcommand("ergodic-sweep", "Ergodic rates versus SNR and L");
    add_common(erg, erg_o);
    auto* dof = app.add_subcommand("dof", "Analytic and empirical degrees of freedom");
    add_common(dof, dof_o);

    Overrides ver_o;
    std::optional<int> vK, vN, vL, vM;
    auto* verify = app.add_subcommand("verify", "Exhaustive decodability check over all demand vectors");
    verify->add_option("-c,--config", ver_o.config, "key = value config file");
    verify->add_option("--seed", ver_o.seed, "library seed");
    verify->add_option("-K", vK, "users");
    verify->add_option("-N", vN, "files");
    verify->add_option("-L", vL, "antennas");
    verify->add_option("-M", vM, "cache size in files");

    std::string plot_csv, plot_out, plot_title;
    auto* plot = app.add_subcommand("plot", "Render a sweep CSV as SVG");
    plot->add_option("csv", plot_csv, "input CSV")->required();
    plot->add_option("--out", plot_out, "output SVG path (stdout if empty)");
    plot->add_option("--title", plot_title, "figure title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Exit::ok : Exit::usage;
    }

    try {
        if (*rate) {
            const auto c = resolve(rate_o);
            return sweep_output(wcc::cli::run_rate_sweep(c), c);
        }
        if (*ic) {
            const auto c = resolve(ic_o);
            return sweep_output(wcc::cli::run_ic_sweep(c), c);
        }
        if (*erg) {
            const auto c = resolve(erg_o);
            return sweep_output(wcc::cli::run_ergodic_sweep(c), c);
        }
        if (*dof) {
            const auto c = resolve(dof_o);
            const auto out = wcc::cli::run_dof(c);
            emit(wcc::cli::dof_csv(out), c);
            return report(out.warnings, out.notes);
        }
        if (*verify) {
            auto c = resolve(ver_o);
            std::vector<wcc::SystemParams> sizes;
            if (ver_o.config.empty() && !vK && !vN && !vL && !vM) {
                sizes = {wcc::SystemParams::make(3, 3, 2, 1), wcc::SystemParams::make(4, 4, 2, 1)};
            } else {
                c.K = vK.value_or(c.K);
                c.N = vN.value_or(c.N);
                c.L = vL.value_or(c.L);
                c.M = vM.value_or(c.M);
                sizes = {c.params()};
            }
            const auto out = wcc::cli::run_verify(sizes, c.seed);
            for (const auto& line : out.lines)
                std::cout << line << "\n";
            return out.ok ? Exit::ok : Exit::invariant;
        }
        if (*plot) {
            const std::string svg = wcc::cli::render_plot(wcc::cli::read_text_file(plot_csv), {640, 420, plot_title});
            if (plot_out.empty())
                std::cout << svg;
            else
                wcc::cli::write_text_file(plot_out, svg);
            return Exit::ok;
        }
    } catch (const wcc::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return Exit::invariant;
    } catch (const wcc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    }
    return Exit::usage;
}
