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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qdet::cli {

/// One output cell. monostate is an empty CSV field and a JSON null.
using Cell = std::variant<std::monostate, std::string, double, int64_t, bool>;

/// Column-ordered result table shared by the CSV and JSON writers.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Appends a row; throws if its width differs from the header.
    void add(std::vector<Cell> row);
};

enum class Format { Csv, Json };

/// Shortest round-trip decimal, locale independent; "nan"/"inf" for non-finite.
std::string format_double(double v);

/// Header line plus one line per row, comma separated, '\n' terminated.
void write_csv(const Table& t, std::ostream& os);

/// Array of objects keyed by column name, in column order.
void write_json(const Table& t, std::ostream& os);

void write_table(const Table& t, Format fmt, std::ostream& os);

}  // namespace qdet::cli
