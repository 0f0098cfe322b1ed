// Copyright 2026 The qdet Authors
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

#include "grid.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qdet::cli {

namespace {

double parse_number(const std::string& s) {
    double v = 0;
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        const size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
    if (spec.empty()) {
        throw std::invalid_argument("empty grid");
    }
    if (spec.find(':') != std::string::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 3) {
            throw std::invalid_argument("range grids take the form start:stop:step");
        }
        const double start = parse_number(parts[0]);
        const double stop = parse_number(parts[1]);
        const double step = parse_number(parts[2]);
        if (!(step > 0)) {
            throw std::invalid_argument("grid step must be positive");
        }
        if (stop < start) {
            throw std::invalid_argument("grid stop must not precede start");
        }
        // Multiplying out avoids accumulated drift; the slack keeps the stop value.
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 10000000) {
            throw std::invalid_argument("grid too large");
        }
        std::vector<double> out;
        out.reserve(static_cast<size_t>(count));
        for (long i = 0; i < count; ++i) {
            out.push_back(start + static_cast<double>(i) * step);
        }
        return out;
    }
    std::vector<double> out;
    for (const auto& part : split(spec, ',')) {
        out.push_back(parse_number(part));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
    std::vector<int> out;
    if (spec.empty()) {
        return out;
    }
    for (const auto& part : split(spec, ',')) {
        int v = 0;
        const char* end = part.data() + part.size();
        const auto res = std::from_chars(part.data(), end, v);
        if (res.ec != std::errc() || res.ptr != end || v < 0) {
            throw std::invalid_argument("not a non-negative integer: '" + part + "'");
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace qdet::cli
