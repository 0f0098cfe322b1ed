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

#include "qdet/recursion.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdet {

namespace {

using Vec5 = std::array<double, kNumLabels>;

Vec5 branching_polynomial(const Vec5& q) {
    const double n = q[0], z = q[1], x = q[2], y = q[3], a = q[4];
    return {
        n * n + 2 * n * (x + y),
        z * z + 2 * z * (n + x + y + a) + 2 * n * a,
        x * x + y * y,
        2 * x * y,
        a * a + 2 * a * (x + y),
    };
}

Vec5 clifford_average_linear(const Vec5& q, double p) {
    const double mean = (q[1] + q[2] + q[3]) / 3;
    return {
        q[0],
        (1 - p) * q[1] + p * mean,
        (1 - p) * q[2] + p * mean,
        (1 - p) * q[3] + p * mean,
        q[4],
    };
}

// The recursion map on raw 5-vectors, without validation or renormalisation.
Vec5 raw_map(const Vec5& q, double p) {
    return clifford_average_linear(branching_polynomial(q), p);
}

void check_probability(double p, const char* name) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

Dist5 make(double n, double z, double x, double y, double a) {
    return Dist5{{n, z, x, y, a}};
}

double z2_symmetric_x(double p) {
    if (8 * p - 3 >= 0) {
        return 2 * p / (8 * p - 3 + std::sqrt(40 * p * p - 24 * p + 9));
    }
    return (-std::sqrt(40 * p * p - 24 * p + 9) + 8 * p - 3) / (12 * (p - 1));
}

bool is_physical(const Dist5& d) {
    return std::all_of(d.v.begin(), d.v.end(), [](double x) { return x >= -1e-12; });
}

// Closed-form fixed points, including the finite p -> 1 limits.
std::vector<std::pair<Dist5, FixedPointKind>> candidate_points(double p) {
    std::vector<std::pair<Dist5, FixedPointKind>> out;
    const double z = qd_fixed_point_z(p);
    out.emplace_back(make(0, z, (1 - z) / 2, (1 - z) / 2, 0), FixedPointKind::QD);
    out.emplace_back(make(1, 0, 0, 0, 0), FixedPointKind::EncodingN);
    out.emplace_back(make(0, 0, 0, 0, 1), FixedPointKind::EncodingA);
    if (p < 1) {
        const double u = mixed_phase_weight(p);
        Dist5 mixed = make(1 - u, u / 2, u / 4, u / 4, 0);
        if (is_physical(mixed)) {
            out.emplace_back(mixed, FixedPointKind::Mixed);
            out.emplace_back(mixed.swapped_n_a(), FixedPointKind::Mixed);
        }
    }
    const double x = z2_symmetric_x(p);
    Dist5 sym = make(1 - 4 * x, 6 * x - 1, x, x, 1 - 4 * x);
    if (is_physical(sym)) {
        out.emplace_back(sym, FixedPointKind::Z2Symmetric);
    }
    return out;
}

}  // namespace

void ModelParams::validate() const {
    check_probability(p, "p");
    check_probability(f, "f");
    if (t < 0) {
        throw std::invalid_argument("t must be non-negative");
    }
}

Dist5 apply_branching(const Dist5& pi) {
    pi.validate();
    return Dist5{branching_polynomial(pi.v)};
}

Dist5 apply_clifford_average(const Dist5& pi, double p) {
    pi.validate();
    check_probability(p, "p");
    return Dist5{clifford_average_linear(pi.v, p)};
}

Dist5 recursion_step(const Dist5& pi, double p) {
    return Dist5{raw_map(pi.v, p)}.normalized();
}

Dist5 initial_condition(double f, bool z_only) {
    check_probability(f, "f");
    return z_only ? make(1 - f, f, 0, 0, 0) : make(1 - f, 0, 0, 0, f);
}

std::vector<Dist5> iterate(const Dist5& pi0, double p, int t) {
    pi0.validate();
    check_probability(p, "p");
    if (t < 0) {
        throw std::invalid_argument("t must be non-negative");
    }
    std::vector<Dist5> out;
    out.reserve(static_cast<size_t>(t) + 1);
    out.push_back(pi0);
    for (int k = 0; k < t; ++k) {
        out.push_back(recursion_step(out.back(), p));
    }
    return out;
}

ConvergedIterate iterate_to_convergence(const Dist5& pi0, double p, const ConvergenceOptions& opts) {
    pi0.validate();
    check_probability(p, "p");
    ConvergedIterate res{pi0, 0, false};
    for (long k = 0; k < opts.max_iterations; ++k) {
        Dist5 next = recursion_step(res.limit, p);
        double change = next.distance(res.limit);
        res.limit = next;
        res.iterations = k + 1;
        if (change < opts.tolerance) {
            res.converged = true;
            break;
        }
    }
    return res;
}

Matrix5 jacobian(const Dist5& pi, double p, double h) {
    Matrix5 jac{};
    for (int j = 1; j < kNumLabels; ++j) {
        Vec5 plus = pi.v, minus = pi.v;
        plus[j] += h;
        plus[0] -= h;
        minus[j] -= h;
        minus[0] += h;
        Vec5 fp = raw_map(plus, p), fm = raw_map(minus, p);
        for (int i = 0; i < kNumLabels; ++i) {
            jac[i][j] = (fp[i] - fm[i]) / (2 * h);
        }
    }
    return jac;
}

std::vector<std::complex<double>> tangent_eigenvalues(const Dist5& pi, double p, double h) {
    Matrix5 jac = jacobian(pi, p, h);
    // In the basis d_k = e_{k+1} - e_n a sum-zero vector has coordinates equal
    // to its components 1..4, and the map preserves the sum-zero subspace.
    Eigen::Matrix4d restricted;
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 4; ++k) {
            restricted(i, k) = jac[i + 1][k + 1];
        }
    }
    Eigen::EigenSolver<Eigen::Matrix4d> solver(restricted, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> ev(4);
    for (int i = 0; i < 4; ++i) {
        ev[i] = solver.eigenvalues()[i];
    }
    std::sort(ev.begin(), ev.end(), [](auto a, auto b) { return std::abs(a) > std::abs(b); });
    return ev;
}

std::string to_string(FixedPointKind k) {
    switch (k) {
        case FixedPointKind::QD:
            return "QD";
        case FixedPointKind::Mixed:
            return "mixed";
        case FixedPointKind::EncodingN:
            return "encoding-n";
        case FixedPointKind::EncodingA:
            return "encoding-a";
        case FixedPointKind::Z2Symmetric:
            return "Z2-symmetric-unstable";
    }
    return "?";
}

FixedPointReport assess_stability(const Dist5& point, FixedPointKind kind, double p) {
    FixedPointReport r;
    r.point = point;
    r.kind = kind;
    r.leading_eigenvalue_modulus = std::abs(tangent_eigenvalues(point, p).front());
    r.marginal = std::abs(r.leading_eigenvalue_modulus - 1) <= kStabilityMargin;
    r.stable = r.leading_eigenvalue_modulus < 1 - kStabilityMargin;
    return r;
}

std::vector<FixedPointReport> closed_form_fixed_points(double p) {
    if (!(p >= 0 && p < 1)) {
        throw std::invalid_argument("closed-form fixed points need p in [0, 1)");
    }
    std::vector<FixedPointReport> out;
    for (const auto& [point, kind] : candidate_points(p)) {
        out.push_back(assess_stability(point, kind, p));
    }
    return out;
}

double qd_fixed_point_z(double p) {
    const double disc = std::sqrt(24 * p * p - 24 * p + 9);
    if (p >= 0.5) {
        return 2 * p / (disc - 3 + 6 * p);
    }
    return (3 - 6 * p + disc) / (6 - 6 * p);
}

double mixed_phase_weight(double p) {
    return (6 - 8 * p) / (3 - 3 * p);
}

std::string to_string(Phase ph) {
    switch (ph) {
        case Phase::QD:
            return "QD";
        case Phase::Mixed:
            return "mixed";
        case Phase::Encoding:
            return "encoding";
    }
    return "?";
}

std::string to_string(PhaseStatus st) {
    switch (st) {
        case PhaseStatus::Ok:
            return "ok";
        case PhaseStatus::Critical:
            return "critical";
        case PhaseStatus::FirstOrderLine:
            return "first-order-line";
    }
    return "?";
}

PhaseReport classify_phase(double p, double f, const ConvergenceOptions& opts) {
    check_probability(p, "p");
    if (!(f > 0 && f < 1)) {
        throw std::invalid_argument("f must lie in (0, 1)");
    }
    constexpr double kMatchTolerance = 1e-6;

    ConvergedIterate it = iterate_to_convergence(initial_condition(f), p, opts);
    PhaseReport rep;
    rep.limit = it.limit;
    rep.iterations = it.iterations;
    rep.converged = it.converged;
    rep.status = PhaseStatus::Critical;
    if (!it.converged) {
        return rep;
    }

    const std::pair<Dist5, FixedPointKind>* match = nullptr;
    auto candidates = candidate_points(p);
    double best = kMatchTolerance;
    for (const auto& c : candidates) {
        double d = c.first.distance(it.limit);
        if (d <= best) {
            best = d;
            match = &c;
        }
    }
    if (match == nullptr) {
        return rep;
    }
    FixedPointReport stab = assess_stability(match->first, match->second, p);

    if (match->second == FixedPointKind::Z2Symmetric) {
        // Only the exactly symmetric leaf condition lands here. Kick the limit
        // along the Z2-odd direction to find the two broken-symmetry limits.
        if (stab.marginal || stab.stable) {
            return rep;
        }
        constexpr double kKick = 1e-6;
        Dist5 kicked = it.limit;
        kicked[Label::N] += kKick;
        kicked[Label::A] -= kKick;
        ConvergedIterate side = iterate_to_convergence(kicked, p, opts);
        if (!side.converged) {
            return rep;
        }
        rep.status = PhaseStatus::FirstOrderLine;
        rep.branches = std::array<Dist5, 2>{side.limit, side.limit.swapped_n_a()};
        return rep;
    }
    if (stab.marginal) {
        return rep;
    }
    rep.status = PhaseStatus::Ok;
    switch (match->second) {
        case FixedPointKind::QD:
            rep.phase = Phase::QD;
            break;
        case FixedPointKind::Mixed:
            rep.phase = Phase::Mixed;
            break;
        default:
            rep.phase = Phase::Encoding;
            break;
    }
    return rep;
}

MutualInfoDist mutual_info_distribution(const Dist5& pi) {
    pi.validate();
    MutualInfoDist d;
    for (Label s : kAllLabels) {
        d.prob[dimension(s)] += pi[s];
    }
    return d;
}

}  // namespace qdet
