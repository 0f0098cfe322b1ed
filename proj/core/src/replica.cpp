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

#include "qdet/replica.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qdet {

namespace {

void check_probability(double p, const char* name) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

ReplicaWeights qd_point(double p) {
    const double u = qd_branch_u(p);
    return {u, 1 - 2 * u, u};
}

}  // namespace

ReplicaWeights ReplicaWeights::normalized() const {
    const double s = sum();
    if (s == 0) {
        return *this;
    }
    return {sigma / s, nu / s, tau / s};
}

double ReplicaWeights::distance(const ReplicaWeights& o) const {
    return std::max({std::abs(sigma - o.sigma), std::abs(nu - o.nu), std::abs(tau - o.tau)});
}

ReplicaWeights apply_weight_map_raw(const ReplicaWeights& w, double p) {
    const double vs = w.sigma * w.sigma;
    const double vn = w.nu * w.nu + 2 * (w.sigma * w.nu + w.sigma * w.tau + w.nu * w.tau);
    const double vt = w.tau * w.tau;
    const double leak = p / (kLocalDimension + 1);
    return {vs + leak * vn, (1 - p) * vn, vt + leak * vn};
}

ReplicaWeights apply_weight_map(const ReplicaWeights& w, double p) {
    if (w.sigma < 0 || w.nu < 0 || w.tau < 0) {
        throw std::invalid_argument("replica weights must be non-negative");
    }
    check_probability(p, "p");
    return apply_weight_map_raw(w, p).normalized();
}

ReplicaWeights replica_initial_condition(double f) {
    check_probability(f, "f");
    return {1 - f, 0, f};
}

ReplicaWeights iterate_weights_raw(double p, double f, int t) {
    check_probability(p, "p");
    ReplicaWeights w = replica_initial_condition(f);
    for (int k = 0; k < t; ++k) {
        w = apply_weight_map_raw(w, p);
    }
    return w;
}

AnnealedPurities annealed_purities(const ReplicaWeights& w) {
    constexpr double q = kLocalDimension;
    // (sigma|O) and (tau|O) divided by q^2.
    return {
        (q * q * w.sigma + q * w.nu + q * w.tau) / (q * q),
        (q * w.sigma + q * w.nu + q * q * w.tau) / (q * q),
    };
}

double annealed_mutual_info(const ReplicaWeights& w) {
    const AnnealedPurities pur = annealed_purities(w);
    return std::log2(pur.rf) - std::log2(pur.f) + 1;
}

double annealed_I2(double p, double f, std::optional<int> t) {
    check_probability(p, "p");
    check_probability(f, "f");
    ReplicaWeights w = replica_initial_condition(f);
    if (t) {
        for (int k = 0; k < *t; ++k) {
            w = apply_weight_map(w, p);
        }
        return annealed_mutual_info(w);
    }
    for (long k = 0; k < 1000000; ++k) {
        ReplicaWeights next = apply_weight_map(w, p);
        const double change = next.distance(w);
        w = next;
        if (change < 1e-15) {
            break;
        }
    }
    return annealed_mutual_info(w);
}

double qd_branch_p(double u) {
    return 3 * (1 - u) * u / ((u + 1) * (1 - 2 * u * u));
}

double qd_branch_u(double p) {
    check_probability(p, "p");
    double lo = 0, hi = 0.5;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (qd_branch_p(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double replica_merge_point() {
    return 3.0 / 7.0 * (2 * std::sqrt(2.0) - 1);
}

std::string to_string(ReplicaFixedPointKind k) {
    switch (k) {
        case ReplicaFixedPointKind::EncodingSigma:
            return "encoding-sigma";
        case ReplicaFixedPointKind::EncodingTau:
            return "encoding-tau";
        case ReplicaFixedPointKind::QD:
            return "QD";
        case ReplicaFixedPointKind::IntermediateSigma:
            return "intermediate-sigma";
        case ReplicaFixedPointKind::IntermediateTau:
            return "intermediate-tau";
    }
    return "?";
}

double replica_leading_eigenvalue(const ReplicaWeights& w, double p) {
    constexpr double h = 1e-6;
    // Tangent directions nu - sigma and tau - sigma; coordinates are (nu, tau).
    double jac[2][2];
    for (int k = 0; k < 2; ++k) {
        ReplicaWeights plus = w, minus = w;
        plus.sigma -= h;
        minus.sigma += h;
        (k == 0 ? plus.nu : plus.tau) += h;
        (k == 0 ? minus.nu : minus.tau) -= h;
        const ReplicaWeights fp = apply_weight_map_raw(plus, p).normalized();
        const ReplicaWeights fm = apply_weight_map_raw(minus, p).normalized();
        jac[0][k] = (fp.nu - fm.nu) / (2 * h);
        jac[1][k] = (fp.tau - fm.tau) / (2 * h);
    }
    const double tr = jac[0][0] + jac[1][1];
    const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    const std::complex<double> root = std::sqrt(std::complex<double>(tr * tr - 4 * det, 0));
    return std::max(std::abs(0.5 * (tr + root)), std::abs(0.5 * (tr - root)));
}

std::vector<ReplicaFixedPoint> replica_fixed_points(double p) {
    check_probability(p, "p");
    std::vector<ReplicaFixedPoint> out;
    auto add = [&](ReplicaWeights w, ReplicaFixedPointKind kind) {
        ReplicaFixedPoint fp;
        fp.weights = w.normalized();
        fp.kind = kind;
        fp.leading_eigenvalue_modulus = replica_leading_eigenvalue(fp.weights, p);
        fp.stable = fp.leading_eigenvalue_modulus < 1 - 1e-8;
        out.push_back(fp);
    };
    add({1, 0, 0}, ReplicaFixedPointKind::EncodingSigma);
    add({0, 0, 1}, ReplicaFixedPointKind::EncodingTau);
    add(qd_point(p), ReplicaFixedPointKind::QD);

    // p u^2 - (3 - 3p) u + 4p - 3 = 0.
    if (p > 0) {
        double disc = (3 - 3 * p) * (3 - 3 * p) - 4 * p * (4 * p - 3);
        if (disc < 0 && disc > -1e-14) {
            disc = 0;
        }
        if (disc >= 0) {
            const double sq = std::sqrt(disc);
            const double u_plus = ((3 - 3 * p) + sq) / (2 * p);
            const double u_minus = ((3 - 3 * p) - sq) / (2 * p);
            const ReplicaWeights w{u_plus, 1 - u_plus - u_minus, u_minus};
            if (w.sigma >= -1e-12 && w.nu >= -1e-12 && w.tau >= -1e-12) {
                add(w, ReplicaFixedPointKind::IntermediateSigma);
                add(w.swapped(), ReplicaFixedPointKind::IntermediateTau);
            }
        }
    }
    return out;
}

ReplicaAttractor classify_replica_attractor(double p, double f, const ReplicaAttractorOptions& opts) {
    check_probability(p, "p");
    check_probability(f, "f");
    const ReplicaWeights qd = qd_point(p);
    const bool qd_stable = replica_leading_eigenvalue(qd, p) < 1;
    const ReplicaWeights enc_sigma{1, 0, 0}, enc_tau{0, 0, 1};

    ReplicaWeights w = replica_initial_condition(f);
    long done = 0;
    for (long budget = opts.initial_budget; done < opts.max_budget; budget *= 2) {
        budget = std::min(budget, opts.max_budget);
        for (; done < budget; ++done) {
            w = apply_weight_map(w, p);
            if (w.distance(enc_sigma) < opts.distance) {
                return ReplicaAttractor::EncodingSigma;
            }
            if (w.distance(enc_tau) < opts.distance) {
                return ReplicaAttractor::EncodingTau;
            }
            if (qd_stable && w.distance(qd) < opts.distance) {
                return ReplicaAttractor::QD;
            }
        }
    }
    return ReplicaAttractor::Undecided;
}

double compute_pc(double f) {
    if (!(f > 0 && f < 1)) {
        throw std::invalid_argument("f must lie in (0, 1)");
    }
    constexpr double kWidth = 1e-9;
    if (std::abs(f - 0.5) < 1e-12) {
        // The symmetric leaf condition never leaves the Z2-even line, so the
        // threshold is the loss of stability of the QD point itself.
        double lo = 0.75, hi = 1.0;
        while (hi - lo > kWidth) {
            const double mid = 0.5 * (lo + hi);
            if (replica_leading_eigenvalue(qd_point(mid), mid) < 1) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }
    double lo = 0.75, hi = replica_merge_point();
    while (hi - lo > kWidth) {
        const double mid = 0.5 * (lo + hi);
        ReplicaAttractor a = classify_replica_attractor(mid, f);
        if (a == ReplicaAttractor::Undecided) {
            // Still undecided after the full budget: the orbit is pinned to
            // the saddle, so mid is the threshold to within the bracket.
            return mid;
        }
        if (a == ReplicaAttractor::QD) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace qdet
