// Copyright 2026 The vbmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VBMEM_IO_HPP
#define VBMEM_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "vbmem/error.hpp"
#include "vbmem/photodetection.hpp"

namespace vbmem {

/// Shortest-stable text form used in every emitted table.
inline std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

inline constexpr std::string_view kCountHeader = "projector,clicks,trials,bg_expected";

inline void write_counts_csv(std::ostream &os, std::span<const CountRecord> records) {
    os << kCountHeader << '\n';
    for (const CountRecord &r : records) {
        os << to_string(r.projector) << ',' << r.clicks << ',' << r.trials << ',' << format_number(r.bg_clicks_expected)
           << '\n';
    }
}

/// Parses the count-record CSV (header: projector,clicks,trials,bg_expected).
/// Throws ConfigError with the offending line number.
inline std::vector<CountRecord> read_counts_csv(std::istream &is) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorKind::ConfigError, "counts file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCountHeader) throw Error(ErrorKind::ConfigError, "counts header must be '" + std::string(kCountHeader) + "'");
    std::vector<CountRecord> out;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        auto fail = [&](const std::string &why) {
            throw Error(ErrorKind::ConfigError, "counts line " + std::to_string(line_no) + ": " + why);
        };
        if (cells.size() != 4) fail("expected 4 columns");
        const auto projector = projector_from_string(cells[0]);
        if (!projector) fail("unknown projector '" + cells[0] + "'");
        CountRecord r;
        r.projector = *projector;
        try {
            std::size_t used = 0;
            const long long clicks = std::stoll(cells[1], &used);
            if (used != cells[1].size() || clicks < 0) fail("clicks must be a non-negative integer");
            const long long trials = std::stoll(cells[2], &used);
            if (used != cells[2].size() || trials < 1) fail("trials must be a positive integer");
            r.bg_clicks_expected = std::stod(cells[3], &used);
            if (used != cells[3].size() || !(r.bg_clicks_expected >= 0.0)) fail("bg_expected must be >= 0");
            r.clicks = static_cast<std::uint64_t>(clicks);
            r.trials = static_cast<std::uint64_t>(trials);
        } catch (const std::logic_error &) {
            fail("malformed number");
        }
        if (r.clicks > r.trials) fail("clicks exceed trials");
        out.push_back(r);
    }
    return out;
}

inline std::vector<CountRecord> read_counts_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    return read_counts_csv(in);
}

/// Writes `contents` to `path`, replacing any existing file. Throws IoError.
inline void write_text_file(const std::filesystem::path &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

}  // namespace vbmem

#endif  // VBMEM_IO_HPP
