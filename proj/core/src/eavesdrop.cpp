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

#include "qdet/eavesdrop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qdet/recursion.hpp"

namespace qdet {

namespace {

// Discriminants down to this value are treated as a double root.
constexpr double kDiscriminantClamp = -1e-14;

Dist5 raw_eavesdrop(const Dist5& pi, double f) {
    Dist5 out;
    out[Label::N] = (1 - f) * (pi[Label::N] + pi[Label::X] + pi[Label::Y]);
    out[Label::Z] = f + (1 - f) * (pi[Label::Z] + pi[Label::A]);
    return out;
}

// Largest root in [0, 1] of a x^2 + b x + c.
double physical_root(double a, double b, double c) {
    std::vector<double> roots;
    if (std::abs(a) < 1e-300) {
        roots.push_back(-c / b);
    } else {
        double disc = b * b - 4 * a * c;
        if (disc < 0 && disc >= kDiscriminantClamp) {
            disc = 0;
        }
        if (disc < 0) {
            throw std::runtime_error("eavesdrop fixed-point quadratic has no real root");
        }
        const double sq = std::sqrt(disc);
        // Cancellation-free pair of roots.
        const double q = -0.5 * (b + std::copysign(sq, b));
        if (q != 0) {
            roots.push_back(q / a);
            roots.push_back(c / q);
        } else {
            roots.push_back(0.0);
        }
    }
    double best = -1;
    for (double x : roots) {
        if (x >= -1e-15 && x <= 1 + 1e-12) {
            best = std::max(best, std::clamp(x, 0.0, 1.0));
        }
    }
    if (best < 0) {
        throw std::runtime_error("eavesdrop fixed-point quadratic has no root in [0, 1]");
    }
    return best;
}

}  // namespace

void EavesdropParams::validate() const {
    if (!(r >= 0 && r <= 1) || !(f >= 0 && f <= 1)) {
        throw std::invalid_argument("eavesdrop parameters r and f must lie in [0, 1]");
    }
}

double critical_rate() {
    return (2 - std::sqrt(3.0)) / 2;
}

Dist5 apply_eavesdrop(const Dist5& pi, double f) {
    pi.validate();
    if (!(f >= 0 && f <= 1)) {
        throw std::invalid_argument("f must lie in [0, 1]");
    }
    return raw_eavesdrop(pi, f);
}

Dist5 eavesdrop_step(const Dist5& pi, const EavesdropParams& params) {
    Dist5 inner = recursion_step(pi, 1.0);
    Dist5 leaked = raw_eavesdrop(inner, params.f);
    Dist5 out;
    for (int i = 0; i < kNumLabels; ++i) {
        out.v[i] = (1 - params.r) * inner.v[i] + params.r * leaked.v[i];
    }
    return out.normalized();
}

Dist5 eavesdrop_initial_condition() {
    return Dist5{{1, 0, 0, 0, 0}};
}

std::vector<Dist5> iterate_eavesdrop(const EavesdropParams& params, int t) {
    params.validate();
    if (t < 0) {
        throw std::invalid_argument("t must be non-negative");
    }
    std::vector<Dist5> out{eavesdrop_initial_condition()};
    for (int k = 0; k < t; ++k) {
        out.push_back(eavesdrop_step(out.back(), params));
    }
    return out;
}

EavesdropFixedPoint eavesdrop_fixed_point(const EavesdropParams& params) {
    params.validate();
    const double r = params.r, f = params.f;
    double pin = 0;
    if (f == 1) {
        pin = r < 1 ? std::max(0.0, (4 * r * r - 8 * r + 1) / (1 - r)) : 0.0;
    } else {
        const double a = f * r - 2 * r + 1;
        const double b = 4 * r - 1 + 4 * f * r - 4 * f * r * r;
        const double c = 2 * (f - 1) * r;
        pin = physical_root(a, b, c);
    }
    // pi_x = (1/3)(1-r)(1 - pi_n (pi_n + 4 pi_x)), linear in pi_x.
    const double pix = (1 - r) * (1 - pin * pin) / (3 + 4 * (1 - r) * pin);
    EavesdropFixedPoint fp;
    fp.point = Dist5{{pin, 1 - pin - 2 * pix, pix, pix, 0}};
    fp.purified = pin == 0;
    return fp;
}

double scaling_function(double y) {
    return std::sqrt(y * y / (4 * std::sqrt(3.0)) + 1);
}

double scaling_function_leading_order(double y) {
    const double rc = critical_rate();
    return std::sqrt(1 + y * y * rc / (8 * (1 - rc)));
}

std::vector<ScalingRow> scaling_collapse(std::span<const double> f_values, std::span<const double> r_values) {
    const double rc = critical_rate();
    std::vector<ScalingRow> rows;
    for (double f : f_values) {
        for (double r : r_values) {
            const double dr = r - rc;
            if (dr == 0) {
                continue;
            }
            ScalingRow row;
            row.f = f;
            row.r = r;
            row.pi_n = eavesdrop_fixed_point({r, f}).point[Label::N];
            row.y = std::sqrt(1 - f) / std::abs(dr);
            row.scaled = (row.pi_n + 4 * dr) / (4 * std::abs(dr));
            row.reference = scaling_function(row.y);
            row.leading = scaling_function_leading_order(row.y);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace qdet
