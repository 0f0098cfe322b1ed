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

#include <optional>
#include <string>
#include <vector>

namespace qdet {

/// Number of states of one qudit; the Haar/Clifford average of nu carries 1/(q+1).
inline constexpr int kLocalDimension = 2;

/// Coefficients of the averaged partial-swap operator on the sigma (identity),
/// nu and tau (swap) operator-states. Only ratios are physical.
struct ReplicaWeights {
    double sigma = 0;
    double nu = 0;
    double tau = 0;

    double sum() const { return sigma + nu + tau; }
    ReplicaWeights normalized() const;
    /// Exchanges sigma and tau.
    ReplicaWeights swapped() const { return {tau, nu, sigma}; }
    double distance(const ReplicaWeights& o) const;
};

/// One generation of the two-replica recursion: the branching products
/// (w_s^2, w_n^2 + 2(w_s w_n + w_s w_t + w_n w_t), w_t^2) followed by the
/// Clifford average [[1, p/3, 0], [0, 1-p, 0], [0, p/3, 1]].
ReplicaWeights apply_weight_map_raw(const ReplicaWeights& w, double p);

/// apply_weight_map_raw followed by renormalisation to unit sum.
ReplicaWeights apply_weight_map(const ReplicaWeights& w, double p);

/// (1-f, 0, f): the leaf operator (1-f)|sigma) + f|tau).
ReplicaWeights replica_initial_condition(double f);

/// Unnormalised weights after t generations; these give absolute purities.
ReplicaWeights iterate_weights_raw(double p, double f, int t);

struct AnnealedPurities {
    double f = 0;   ///< Tr rho_F^2 up to the common weight scale
    double rf = 0;  ///< Tr rho_RF^2 up to the common weight scale
};

/// Contraction with (sigma|, (tau| using (s|s) = (t|t) = 4, (s|t) = (s|n) = (t|n) = 2.
AnnealedPurities annealed_purities(const ReplicaWeights& w);

/// log2 Tr rho_RF^2 - log2 Tr rho_F^2 + 1 for the given weights.
double annealed_mutual_info(const ReplicaWeights& w);

/// I2 after t generations, or at the converged limit when t is empty.
double annealed_I2(double p, double f, std::optional<int> t = std::nullopt);

/// p(u) = 3 (1-u) u / ((u+1)(1-2u^2)) along the QD-point branch.
double qd_branch_p(double u);

/// Inverse of qd_branch_p on the branch u(0) = 0 -> u(1) = 1/2 (bisection to 1e-12).
double qd_branch_u(double p);

/// (3/7)(2 sqrt 2 - 1): where the intermediate fixed points merge with the QD point.
double replica_merge_point();

enum class ReplicaFixedPointKind { EncodingSigma, EncodingTau, QD, IntermediateSigma, IntermediateTau };

std::string to_string(ReplicaFixedPointKind k);

struct ReplicaFixedPoint {
    ReplicaWeights weights;  ///< normalised
    ReplicaFixedPointKind kind = ReplicaFixedPointKind::QD;
    bool stable = false;
    double leading_eigenvalue_modulus = 0;
};

/// Leading eigenvalue modulus of the normalised weight map at `w`, by central
/// differences on the 2-simplex.
double replica_leading_eigenvalue(const ReplicaWeights& w, double p);

/// Encoding, QD, and (for 3/4 <= p <= p_l) the two intermediate fixed points.
std::vector<ReplicaFixedPoint> replica_fixed_points(double p);

enum class ReplicaAttractor { EncodingSigma, EncodingTau, QD, Undecided };

struct ReplicaAttractorOptions {
    double distance = 1e-8;
    long initial_budget = 100000;
    long max_budget = 1000000;
};

/// Iterates from (1-f, 0, f), doubling the iteration budget while the orbit is
/// not within `distance` of an encoding or QD point.
ReplicaAttractor classify_replica_attractor(double p, double f, const ReplicaAttractorOptions& opts = {});

/// Threshold p_c(f) between the annealed QD and encoding regimes, bracketed in
/// (3/4, p_l) and located to 1e-6 or better. At f = 1/2 it is where the QD
/// point loses stability.
double compute_pc(double f);

}  // namespace qdet
