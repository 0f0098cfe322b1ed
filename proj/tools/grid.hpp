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

#include <string>
#include <vector>

namespace qdet::cli {

/// Parses "start:stop:step" (inclusive of stop up to rounding), a comma
/// separated list, or a single number. Throws std::invalid_argument on
/// empty grids, non-positive steps or malformed numbers.
std::vector<double> parse_grid(const std::string& spec);

/// Comma separated non-negative integers.
std::vector<int> parse_int_list(const std::string& spec);

}  // namespace qdet::cli
