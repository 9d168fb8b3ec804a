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

#include "wcc/channel.hpp"

#include "wcc/rng.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <vector>

namespace wcc {

Channel sample_rayleigh(int antennas, int users, std::uint64_t seed, std::uint64_t trial)
{
    if (antennas < 1 || users < 1)
        throw std::invalid_argument("Channel dimensions must be positive.");
    auto engine = keyed_engine(seed, trial, Stream::channel);
    std::normal_distribution<double> component(0.0, std::sqrt(0.5));

    Channel ch{CMatrix(antennas, users), seed, trial};
    // Column-major fill: user k's vector is drawn as a contiguous block.
    for (int k = 0; k < users; ++k)
        for (int l = 0; l < antennas; ++l) {
            const double re = component(engine);
            const double im = component(engine);
            ch.H(l, k) = Complex(re, im);
        }
    return ch;
}

Channel sample_rayleigh(const SystemParams& params, std::uint64_t seed, std::uint64_t trial)
{
    return sample_rayleigh(params.L, params.K, seed, trial);
}

namespace {

bool parse_double(std::string_view text, double& value)
{
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(value);
}

} // namespace

Channel channel_from_text(std::istream& in, std::optional<ChannelShape> expected)
{
    std::vector<std::vector<Complex>> rows;
    std::string line;
    int line_no = 0;
    int last_line = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<Complex> row;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
                ++pos;
            if (pos >= line.size())
                break;
            if (line[pos] == '#')
                break;
            const std::size_t start = pos;
            while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])))
                ++pos;
            const std::string_view token(line.data() + start, pos - start);
            const auto comma = token.find(',');
            double re = 0, im = 0;
            if (comma == std::string_view::npos || !parse_double(token.substr(0, comma), re) ||
                !parse_double(token.substr(comma + 1), im))
                throw ParseError("Malformed complex entry '" + std::string(token) + "', expected re,im", line_no,
                                 static_cast<int>(start) + 1);
            row.emplace_back(re, im);
        }
        if (row.empty())
            continue;
        const std::size_t want = expected ? static_cast<std::size_t>(expected->cols)
                                          : (rows.empty() ? row.size() : rows.front().size());
        if (row.size() != want) {
            const std::string detail = row.size() < want
                                           ? "missing " + std::to_string(want - row.size()) + " entries"
                                           : std::to_string(row.size() - want) + " extra entries";
            throw ParseError("Row " + std::to_string(rows.size() + 1) + " has " + std::to_string(row.size()) +
                                 " entries, expected " + std::to_string(want) + " (" + detail + ")",
                             line_no, static_cast<int>(line.size()) + 1);
        }
        rows.push_back(std::move(row));
        last_line = line_no;
    }

    if (rows.empty())
        throw ParseError("Channel text holds no entries", line_no, 1);
    if (expected && static_cast<int>(rows.size()) != expected->rows) {
        const int have = static_cast<int>(rows.size());
        const std::string detail = have < expected->rows
                                       ? "missing " + std::to_string((expected->rows - have) * expected->cols) + " entries"
                                       : std::to_string((have - expected->rows) * expected->cols) + " extra entries";
        throw ParseError("Found " + std::to_string(have) + " rows, expected " + std::to_string(expected->rows) + " (" +
                             detail + ")",
                         last_line + 1, 1);
    }

    Channel ch;
    ch.H.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            ch.H(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    return ch;
}

Channel channel_from_text(const std::filesystem::path& path, std::optional<ChannelShape> expected)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("Cannot open channel file " + path.string());
    return channel_from_text(in, expected);
}

void channel_to_text(std::ostream& out, const Channel& channel)
{
    char buf[64];
    auto put = [&](double x) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
        out.write(buf, ptr - buf);
    };
    for (Eigen::Index r = 0; r < channel.H.rows(); ++r) {
        for (Eigen::Index c = 0; c < channel.H.cols(); ++c) {
            if (c)
                out << ' ';
            put(channel.H(r, c).real());
            out << ',';
            put(channel.H(r, c).imag());
        }
        out << '\n';
    }
}

void channel_to_text(const std::filesystem::path& path, const Channel& channel)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("Cannot write channel file " + path.string());
    channel_to_text(out, channel);
}

} // namespace wcc
