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

#include "table.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qdet::cli {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

// Keeps JSON key order equal to the column order.
using ordered_json = nlohmann::ordered_json;

ordered_json to_json_value(const Cell& c) {
    return std::visit(
        [](const auto& v) -> ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) {
                    return nullptr;
                }
                return v;
            } else {
                return v;
            }
        },
        c);
}

}  // namespace

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("row width does not match the table header");
    }
    rows.push_back(std::move(row));
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_csv(const Table& t, std::ostream& os) {
    for (size_t i = 0; i < t.columns.size(); ++i) {
        os << (i ? "," : "") << csv_escape(t.columns[i]);
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) {
                os << ',';
            }
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::string>) {
                        os << csv_escape(v);
                    } else if constexpr (std::is_same_v<T, double>) {
                        os << format_double(v);
                    } else if constexpr (std::is_same_v<T, int64_t>) {
                        os << v;
                    } else if constexpr (std::is_same_v<T, bool>) {
                        os << (v ? "true" : "false");
                    }
                },
                row[i]);
        }
        os << '\n';
    }
}

void write_json(const Table& t, std::ostream& os) {
    ordered_json arr = ordered_json::array();
    for (const auto& row : t.rows) {
        ordered_json obj = ordered_json::object();
        for (size_t i = 0; i < row.size(); ++i) {
            obj[t.columns[i]] = to_json_value(row[i]);
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

void write_table(const Table& t, Format fmt, std::ostream& os) {
    if (fmt == Format::Csv) {
        write_csv(t, os);
    } else {
        write_json(t, os);
    }
}

}  // namespace qdet::cli
