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

#include <span>
#include <vector>

#include "qdet/labels.hpp"

namespace qdet {

/// Eavesdropping variant of the tree at p = 1: every segment leaks a CNOT copy
/// to an environment qubit with probability r, and a fraction f of the
/// environment is accessible through its Z operators only.
struct EavesdropParams {
    double r = 0;
    double f = 0;

    void validate() const;
};

/// Critical eavesdropping rate at full access, (2 - sqrt 3) / 2.
double critical_rate();

/// Composition with an environment leaf: f (0,1,0,0,0) + (1-f) (n+x+y, z+a, 0, 0, 0).
Dist5 apply_eavesdrop(const Dist5& pi, double f);

/// (1-r) M_{p=1}(pi) + r M_e(M_{p=1}(pi)), renormalised.
Dist5 eavesdrop_step(const Dist5& pi, const EavesdropParams& params);

/// No system output bit is accessible: (1, 0, 0, 0, 0).
Dist5 eavesdrop_initial_condition();

/// Returns [pi(0), ..., pi(t)] from the eavesdrop initial condition.
std::vector<Dist5> iterate_eavesdrop(const EavesdropParams& params, int t);

struct EavesdropFixedPoint {
    Dist5 point;
    bool purified = false;  ///< pi_n* == 0: the environment disentangles R
};

/// Closed-form attracting fixed point. At f = 1 pi_n* = max(0, (4r^2-8r+1)/(1-r));
/// otherwise the positive root of the fixed-point quadratic. pi_x* follows from
/// the first fixed-point equation.
EavesdropFixedPoint eavesdrop_fixed_point(const EavesdropParams& params);

/// Single-parameter scaling form sqrt(y^2 / (4 sqrt 3) + 1).
double scaling_function(double y);

/// Leading-order asymptote of the fixed-point quadratic near (f, r) = (1, r_c):
/// sqrt(1 + y^2 r_c / (8 (1 - r_c))).
double scaling_function_leading_order(double y);

struct ScalingRow {
    double f = 0;
    double r = 0;
    double pi_n = 0;
    double y = 0;          ///< sqrt(1-f) / |r - r_c|
    double scaled = 0;     ///< (pi_n* + 4 (r - r_c)) / (4 |r - r_c|)
    double reference = 0;  ///< scaling_function(y)
    double leading = 0;    ///< scaling_function_leading_order(y)
};

/// One row per (f, r) pair, f-major. Points with r == r_c are skipped.
std::vector<ScalingRow> scaling_collapse(std::span<const double> f_values, std::span<const double> r_values);

}  // namespace qdet
