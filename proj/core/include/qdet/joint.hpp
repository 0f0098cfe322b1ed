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

#include <array>
#include <utility>
#include <vector>

#include "qdet/labels.hpp"

namespace qdet {

/// Joint distribution Pi(s, t) of the accessible subgroups of two nested
/// subsystems F (first slot) and G (second slot), F a subset of G.
struct JointDist {
    std::array<double, kNumLabels * kNumLabels> m{};

    double operator()(Label s, Label t) const { return m[index(s) * kNumLabels + index(t)]; }
    double& operator()(Label s, Label t) { return m[index(s) * kNumLabels + index(t)]; }

    double sum() const;
    bool is_valid(double tol = Dist5::kTolerance) const;
    void validate(double tol = Dist5::kTolerance) const;
    JointDist normalized() const;
    double distance(const JointDist& other) const;

    Dist5 marginal_first() const;   ///< distribution of s (subsystem F)
    Dist5 marginal_second() const;  ///< distribution of t (subsystem G)

    static JointDist delta(Label s, Label t);
};

struct JointParams {
    double p = 0;
    double f = 0;  ///< P(i in F)
    double g = 0;  ///< P(i in G); requires 0 < f < g < 1

    void validate() const;
};

/// Tensor square of the branching map, applied to both slots at once.
JointDist apply_joint_branching(const JointDist& pi);

/// (1-p) Pi + (p/6) sum_sigma (D_sigma (x) D_sigma) Pi, with the same
/// permutation in both slots.
JointDist apply_joint_clifford_average(const JointDist& pi, double p);

/// One generation of the joint recursion, renormalised.
JointDist joint_step(const JointDist& pi, double p);

/// Pi_nn = 1-g, Pi_na = g-f, Pi_aa = f.
JointDist joint_initial_condition(double f, double g);

/// Applies the joint recursion up to `t` times from the leaf condition,
/// stopping early once the sup-norm change drops below `tolerance`.
JointDist iterate_joint(const JointParams& params, long t, double tolerance = 1e-12);

/// Every iterate Pi(0..t), without early stopping.
std::vector<JointDist> joint_trajectory(const JointParams& params, int t);

/// Support pattern of a converged joint distribution.
struct JointSupportReport {
    double diagonal_zxy = 0;  ///< mass on s = t in {z, x, y}
    double diagonal_n = 0;    ///< mass on (n, n)
    double diagonal_a = 0;    ///< mass on (a, a)
    double cross_n_a = 0;     ///< mass on (n, a)

    bool n_allowed = false;  ///< f < g < 1/2
    bool a_allowed = false;  ///< 1/2 < f < g
    bool cross_allowed = false;  ///< f < 1/2 < g

    /// Entries carrying more than `tol` mass outside the allowed set.
    std::vector<std::pair<Label, Label>> violations;
    double off_pattern_mass = 0;

    bool consistent() const { return violations.empty(); }
};

JointSupportReport classify_joint_support(const JointDist& pi, double f, double g, double tol = 1e-6);

}  // namespace qdet
