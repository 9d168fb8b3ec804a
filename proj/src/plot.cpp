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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace wcc::cli {

namespace {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

double parse_field(const std::string& text, int line, int column)
{
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
        throw ParseError("Expected a number, got '" + text + "'.", line, column);
    return v;
}

// 1, 2 or 5 times a power of ten, giving about target intervals.
double nice_step(double span, int target)
{
    if (!(span > 0))
        return 1;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0})
        if (m * mag >= raw)
            return m * mag;
    return 10 * mag;
}

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                               "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

} // namespace

std::string render_plot(const std::string& csv, const PlotStyle& style)
{
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("CSV is empty.", 1, 1);
    std::vector<std::string> header;
    {
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ','))
            header.push_back(cell);
    }
    auto column = [&](const std::string& name) -> int {
        auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<int>(it - header.begin());
    };
    const int c_snr = column("snr_db"), c_L = column("L"), c_scheme = column("scheme"), c_rate = column("rate_mean");
    if (c_snr < 0 || c_scheme < 0 || c_rate < 0)
        throw ParseError("CSV header must name snr_db, scheme and rate_mean.", 1, 1);

    struct Row {
        double snr, L, rate;
        std::string scheme;
    };
    std::vector<Row> rows;
    int number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::vector<int> starts;
        std::size_t pos = 0;
        for (;;) {
            const auto comma = line.find(',', pos);
            starts.push_back(static_cast<int>(pos) + 1);
            cells.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
        if (cells.size() != header.size())
            throw ParseError("Expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(cells.size()) + ".",
                             number, 1);
        Row r;
        r.snr = parse_field(cells[c_snr], number, starts[c_snr]);
        r.L = c_L >= 0 ? parse_field(cells[c_L], number, starts[c_L]) : 0;
        r.rate = parse_field(cells[c_rate], number, starts[c_rate]);
        r.scheme = cells[c_scheme];
        if (r.scheme.empty())
            throw ParseError("Empty scheme name.", number, starts[c_scheme]);
        rows.push_back(r);
    }
    if (rows.empty())
        throw ParseError("CSV has no data rows.", 2, 1);

    bool by_L = false;
    for (const auto& r : rows)
        by_L = by_L || (c_L >= 0 && r.L != rows.front().L);

    std::vector<Series> series;
    for (const auto& r : rows) {
        const std::string name = by_L ? r.scheme + " @ " + label(r.snr) + " dB" : r.scheme;
        auto it = std::find_if(series.begin(), series.end(), [&](auto& s) { return s.name == name; });
        if (it == series.end()) {
            series.push_back({name, {}});
            it = series.end() - 1;
        }
        it->points.emplace_back(by_L ? r.L : r.snr, r.rate);
    }
    for (auto& s : series)
        std::stable_sort(s.points.begin(), s.points.end(), [](auto& a, auto& b) { return a.first < b.first; });

    double x0 = rows.front().snr, x1 = x0, y0 = 0, y1 = 0;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    if (by_L) {
        x0 = x1 = series.front().points.front().first;
        for (const auto& s : series)
            for (auto [x, y] : s.points) {
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
            }
    }
    if (x1 == x0)
        x1 = x0 + 1;
    const double ystep = nice_step(y1 - y0 > 0 ? y1 - y0 : 1, 5);
    y0 = std::floor(y0 / ystep) * ystep;
    y1 = std::max(y0 + ystep, std::ceil(y1 / ystep) * ystep);
    const double xstep = nice_step(x1 - x0, 8);

    const double W = style.width, Hh = style.height;
    const double left = 60, right = 20, top = style.title.empty() ? 20 : 40, bottom = 50;
    const double pw = W - left - right, ph = Hh - top - bottom;
    auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << style.width << "\" height=\""
        << style.height << "\" viewBox=\"0 0 " << style.width << " " << style.height << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << style.width << "\" height=\"" << style.height
        << "\" fill=\"white\"/>\n";
    if (!style.title.empty())
        svg << "<text x=\"" << num(W / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"15\">" << escape(style.title) << "</text>\n";

    // Grid and tick labels.
    for (double y = y0; y <= y1 + ystep * 1e-9; y += ystep) {
        svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(sy(y)) << "\" x2=\"" << num(left + pw) << "\" y2=\""
            << num(sy(y)) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
            << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy(y) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << label(y) << "</text>\n";
    }
    for (double x = std::ceil(x0 / xstep - 1e-9) * xstep; x <= x1 + xstep * 1e-9; x += xstep)
        svg << "<line x1=\"" << num(sx(x)) << "\" y1=\"" << num(top) << "\" x2=\"" << num(sx(x)) << "\" y2=\""
            << num(top + ph) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
            << "<text x=\"" << num(sx(x)) << "\" y=\"" << num(top + ph + 16)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << label(x) << "</text>\n";

    // Axes.
    svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(left + pw) << "\" y2=\""
        << num(top + ph) << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
        << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\""
        << num(top + ph) << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(Hh - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << (by_L ? "L" : "SNR [dB]") << "</text>\n"
        << "<text x=\"16\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"12\" transform=\"rotate(-90 16 " << num(top + ph / 2) << ")\">"
        << (by_L ? "Ergodic rate [bits/s/Hz]" : "Symmetric rate [bits/s/Hz]") << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        svg << "<polyline fill=\"none\" stroke=\"" << palette[i % std::size(palette)]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t j = 0; j < series[i].points.size(); ++j)
            svg << (j ? " " : "") << num(sx(series[i].points[j].first)) << ","
                << num(sy(series[i].points[j].second));
        svg << "\"/>\n";
    }

    // Legend in series order, top left of the plot area.
    const double lx = left + 10, ly = top + 10, row_h = 16;
    std::size_t longest = 0;
    for (const auto& s : series)
        longest = std::max(longest, s.name.size());
    svg << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly) << "\" width=\"" << num(34 + 7.0 * longest)
        << "\" height=\"" << num(row_h * series.size() + 6) << "\" fill=\"white\" stroke=\"#999999\"/>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double y = ly + 12 + row_h * i;
        svg << "<line x1=\"" << num(lx + 6) << "\" y1=\"" << num(y - 4) << "\" x2=\"" << num(lx + 26) << "\" y2=\""
            << num(y - 4) << "\" stroke=\"" << palette[i % std::size(palette)] << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" "
            << "font-size=\"11\">" << escape(series[i].name) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace wcc::cli
