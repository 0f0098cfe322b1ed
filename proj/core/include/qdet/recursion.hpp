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
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qdet/labels.hpp"

namespace qdet {

/// Parameters of the expanding-tree circuit.
struct ModelParams {
    double p = 0;  ///< probability of a random one-body Clifford on an edge
    double f = 0;  ///< probability that an output qubit belongs to F
    int t = 0;     ///< generations; the tree has 2^t output qubits

    void validate() const;
};

/// The branching half of the recursion: the quadratic map built from the
/// composition table. Input must be a valid Dist5.
Dist5 apply_branching(const Dist5& pi);

/// The Clifford-averaging half: (p P3 + (1-p) I) pi, where P3 fixes n and a
/// and replaces z, x, y by their mean.
Dist5 apply_clifford_average(const Dist5& pi, double p);

/// One generation of the backward recursion, renormalised onto the simplex.
Dist5 recursion_step(const Dist5& pi, double p);

/// Leaf distribution: (1-f, 0, 0, 0, f), or (1-f, f, 0, 0, 0) when only Z
/// operators on F are accessible.
Dist5 initial_condition(double f, bool z_only = false);

/// Returns [pi(0), ..., pi(t)].
std::vector<Dist5> iterate(const Dist5& pi0, double p, int t);

struct ConvergenceOptions {
    double tolerance = 1e-12;  ///< sup-norm change between successive iterates
    long max_iterations = 100000;
};

struct ConvergedIterate {
    Dist5 limit;
    long iterations = 0;
    bool converged = false;
};

ConvergedIterate iterate_to_convergence(const Dist5& pi0, double p, const ConvergenceOptions& opts = {});

using Matrix5 = std::array<std::array<double, kNumLabels>, kNumLabels>;

/// Central finite-difference linearisation of the recursion map at `pi`,
/// differenced along sum-zero directions e_k - e_n. Column j of the result is
/// dM/d(pi_j) restricted to the simplex (column n is left zero).
Matrix5 jacobian(const Dist5& pi, double p, double h = 1e-6);

/// Eigenvalues of the Jacobian on the 4-dimensional tangent space of the
/// simplex, sorted by decreasing modulus.
std::vector<std::complex<double>> tangent_eigenvalues(const Dist5& pi, double p, double h = 1e-6);

enum class FixedPointKind { QD, Mixed, EncodingN, EncodingA, Z2Symmetric };

std::string to_string(FixedPointKind k);

inline constexpr double kStabilityMargin = 1e-8;

struct FixedPointReport {
    Dist5 point;
    FixedPointKind kind = FixedPointKind::QD;
    bool stable = false;    ///< all tangent eigenvalues have modulus < 1 - margin
    bool marginal = false;  ///< leading modulus within the margin of 1
    double leading_eigenvalue_modulus = 0;
};

/// Stability of an arbitrary point under the recursion map.
FixedPointReport assess_stability(const Dist5& point, FixedPointKind kind, double p);

/// All physical closed-form fixed points at p in [0, 1), with numerically
/// determined stability. Throws std::invalid_argument for p outside [0, 1).
std::vector<FixedPointReport> closed_form_fixed_points(double p);

/// The QD-point value of pi_z; finite limit 1/3 at p = 1.
double qd_fixed_point_z(double p);

/// u = (6 - 8p) / (3 - 3p), the QD-realisation probability in the mixed phase.
double mixed_phase_weight(double p);

enum class Phase { QD, Mixed, Encoding };
enum class PhaseStatus { Ok, Critical, FirstOrderLine };

std::string to_string(Phase ph);
std::string to_string(PhaseStatus st);

struct PhaseReport {
    PhaseStatus status = PhaseStatus::Ok;
    Phase phase = Phase::QD;  ///< meaningful only when status == Ok
    Dist5 limit;              ///< converged (or last) iterate from the leaf condition
    /// On the first-order line: the two Z2-related symmetry-broken limits.
    std::optional<std::array<Dist5, 2>> branches;
    long iterations = 0;
    bool converged = false;
};

/// Iterates from the leaf condition and matches the limit against the
/// closed-form fixed points within 1e-6.
PhaseReport classify_phase(double p, double f, const ConvergenceOptions& opts = {});

/// Distribution of I(R, F) = dim(s) in {0, 1, 2}.
struct MutualInfoDist {
    std::array<double, 3> prob{};
    double mean() const { return prob[1] + 2 * prob[2]; }
};

MutualInfoDist mutual_info_distribution(const Dist5& pi);

}  // namespace qdet
