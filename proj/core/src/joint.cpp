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

#include "qdet/joint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qdet {

namespace {

constexpr int K = kNumLabels;

JointDist raw_branching(const JointDist& pi) {
    JointDist out;
    for (int s1 = 0; s1 < K; ++s1) {
        for (int t1 = 0; t1 < K; ++t1) {
            const double w1 = pi.m[s1 * K + t1];
            if (w1 == 0) {
                continue;
            }
            for (int s2 = 0; s2 < K; ++s2) {
                const int s = index(branch_compose(label_at(s1), label_at(s2)));
                for (int t2 = 0; t2 < K; ++t2) {
                    const int t = index(branch_compose(label_at(t1), label_at(t2)));
                    out.m[s * K + t] += w1 * pi.m[s2 * K + t2];
                }
            }
        }
    }
    return out;
}

JointDist raw_clifford_average(const JointDist& pi, double p) {
    JointDist avg;
    for (const Permutation3& sigma : Permutation3::all()) {
        for (int s = 0; s < K; ++s) {
            const int ss = index(sigma.apply(label_at(s)));
            for (int t = 0; t < K; ++t) {
                const int tt = index(sigma.apply(label_at(t)));
                avg.m[ss * K + tt] += pi.m[s * K + t] / 6;
            }
        }
    }
    JointDist out;
    for (int i = 0; i < K * K; ++i) {
        out.m[i] = (1 - p) * pi.m[i] + p * avg.m[i];
    }
    return out;
}

}  // namespace

double JointDist::sum() const {
    double s = 0;
    for (double x : m) {
        s += x;
    }
    return s;
}

bool JointDist::is_valid(double tol) const {
    for (double x : m) {
        if (!std::isfinite(x) || x < -tol) {
            return false;
        }
    }
    return std::abs(sum() - 1) <= tol;
}

void JointDist::validate(double tol) const {
    if (!is_valid(tol)) {
        throw std::invalid_argument("joint distribution must be non-negative and sum to 1");
    }
}

JointDist JointDist::normalized() const {
    const double s = sum();
    JointDist out = *this;
    if (s != 0) {
        for (double& x : out.m) {
            x /= s;
        }
    }
    return out;
}

double JointDist::distance(const JointDist& other) const {
    double d = 0;
    for (int i = 0; i < K * K; ++i) {
        d = std::max(d, std::abs(m[i] - other.m[i]));
    }
    return d;
}

Dist5 JointDist::marginal_first() const {
    Dist5 d;
    for (int s = 0; s < K; ++s) {
        for (int t = 0; t < K; ++t) {
            d.v[s] += m[s * K + t];
        }
    }
    return d;
}

Dist5 JointDist::marginal_second() const {
    Dist5 d;
    for (int s = 0; s < K; ++s) {
        for (int t = 0; t < K; ++t) {
            d.v[t] += m[s * K + t];
        }
    }
    return d;
}

JointDist JointDist::delta(Label s, Label t) {
    JointDist d;
    d(s, t) = 1;
    return d;
}

void JointParams::validate() const {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    if (!(f > 0 && f < g && g < 1)) {
        throw std::invalid_argument("joint subsystem fractions need 0 < f < g < 1");
    }
}

JointDist apply_joint_branching(const JointDist& pi) {
    pi.validate();
    return raw_branching(pi);
}

JointDist apply_joint_clifford_average(const JointDist& pi, double p) {
    pi.validate();
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    return raw_clifford_average(pi, p);
}

JointDist joint_step(const JointDist& pi, double p) {
    return raw_clifford_average(raw_branching(pi), p).normalized();
}

JointDist joint_initial_condition(double f, double g) {
    JointDist d;
    d(Label::N, Label::N) = 1 - g;
    d(Label::N, Label::A) = g - f;
    d(Label::A, Label::A) = f;
    return d;
}

JointDist iterate_joint(const JointParams& params, long t, double tolerance) {
    params.validate();
    if (t < 0) {
        throw std::invalid_argument("t must be non-negative");
    }
    JointDist pi = joint_initial_condition(params.f, params.g);
    for (long k = 0; k < t; ++k) {
        JointDist next = joint_step(pi, params.p);
        const double change = next.distance(pi);
        pi = next;
        if (change < tolerance) {
            break;
        }
    }
    return pi;
}

std::vector<JointDist> joint_trajectory(const JointParams& params, int t) {
    params.validate();
    std::vector<JointDist> out{joint_initial_condition(params.f, params.g)};
    for (int k = 0; k < t; ++k) {
        out.push_back(joint_step(out.back(), params.p));
    }
    return out;
}

JointSupportReport classify_joint_support(const JointDist& pi, double f, double g, double tol) {
    JointSupportReport r;
    r.n_allowed = f < g && g < 0.5;
    r.a_allowed = 0.5 < f && f < g;
    r.cross_allowed = f < 0.5 && 0.5 < g;
    for (Label s : kAllLabels) {
        for (Label t : kAllLabels) {
            const double w = pi(s, t);
            bool allowed = false;
            if (s == t && dimension(s) == 1) {
                r.diagonal_zxy += w;
                allowed = true;
            } else if (s == Label::N && t == Label::N) {
                r.diagonal_n += w;
                allowed = r.n_allowed;
            } else if (s == Label::A && t == Label::A) {
                r.diagonal_a += w;
                allowed = r.a_allowed;
            } else if (s == Label::N && t == Label::A) {
                r.cross_n_a += w;
                allowed = r.cross_allowed;
            }
            if (!allowed) {
                r.off_pattern_mass += w;
                if (w > tol) {
                    r.violations.emplace_back(s, t);
                }
            }
        }
    }
    return r;
}

}  // namespace qdet
