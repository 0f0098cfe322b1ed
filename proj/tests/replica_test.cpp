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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"

using namespace qdet;

namespace {

// Branching products followed by the Clifford-average matrix, written as an
// explicit 3x3 product.
ReplicaWeights matrix_oracle(const ReplicaWeights& w, double p) {
    const double v[3] = {w.sigma * w.sigma, w.nu * w.nu + 2 * (w.sigma * w.nu + w.sigma * w.tau + w.nu * w.tau),
                         w.tau * w.tau};
    const double m[3][3] = {{1, p / 3, 0}, {0, 1 - p, 0}, {0, p / 3, 1}};
    double out[3] = {0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            out[i] += m[i][j] * v[j];
        }
    }
    return {out[0], out[1], out[2]};
}

ReplicaWeights random_weights(std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    return ReplicaWeights{e(rng), e(rng), e(rng)}.normalized();
}

}  // namespace

TEST(WeightMap, EncodingPointsFixed) {
    EXPECT_LT(apply_weight_map({1, 0, 0}, 0.4).distance({1, 0, 0}), 1e-15);
    EXPECT_LT(apply_weight_map({0, 0, 1}, 0.4).distance({0, 0, 1}), 1e-15);
}

TEST(WeightMap, PureNuImage) {
    // With the swap-convention matrix used here, nu keeps weight 1 - p and
    // leaks p/3 to each of sigma and tau.
    const ReplicaWeights raw = apply_weight_map_raw({0, 1, 0}, 0.6);
    EXPECT_NEAR(raw.sigma, 0.2, 1e-15);
    EXPECT_NEAR(raw.nu, 0.4, 1e-15);
    EXPECT_NEAR(raw.tau, 0.2, 1e-15);
}

TEST(WeightMap, MatchesMatrixOracleAndPreservesPositivity) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < qdet::testing::kPropertyCases; ++i) {
        const ReplicaWeights w = random_weights(rng);
        const double p = qdet::testing::random_unit(rng);
        EXPECT_LT(apply_weight_map_raw(w, p).distance(matrix_oracle(w, p)), 1e-15);
        const ReplicaWeights out = apply_weight_map(w, p);
        EXPECT_GE(out.sigma, 0);
        EXPECT_GE(out.nu, 0);
        EXPECT_GE(out.tau, 0);
        EXPECT_NEAR(out.sum(), 1, 1e-12);
        // Exchange symmetry between sigma and tau.
        EXPECT_LT(apply_weight_map(w.swapped(), p).distance(out.swapped()), 1e-14);
    }
    EXPECT_THROW(apply_weight_map({-0.1, 1, 0.1}, 0.5), std::invalid_argument);
}

TEST(Purities, Contractions) {
    auto pur = annealed_purities({1, 0, 0});
    EXPECT_DOUBLE_EQ(pur.f, 1);
    EXPECT_DOUBLE_EQ(pur.rf, 0.5);
    pur = annealed_purities({0, 0, 1});
    EXPECT_DOUBLE_EQ(pur.f, 0.5);
    EXPECT_DOUBLE_EQ(pur.rf, 1);
    for (double u : {0.1, 0.25, 0.4}) {
        pur = annealed_purities({u, 1 - 2 * u, u});
        EXPECT_NEAR(pur.f, (2 + 2 * u) / 4, 1e-15);
        EXPECT_NEAR(pur.rf, (2 + 2 * u) / 4, 1e-15);
    }
}

TEST(Purities, LeafValues) {
    // A single leaf: F holds it with probability f; Tr rho_F^2 averages to 1 - f/2.
    for (double f : {0.0, 0.3, 1.0}) {
        const AnnealedPurities pur = annealed_purities(iterate_weights_raw(0.5, f, 0));
        EXPECT_NEAR(pur.f, 1 - f / 2, 1e-15);
        EXPECT_NEAR(pur.rf, 0.5 + f / 2, 1e-15);
    }
}

TEST(AnnealedI2, Limits) {
    EXPECT_NEAR(annealed_I2(0.9, 0.3), 0, 1e-9);
    EXPECT_NEAR(annealed_I2(0.9, 0.7), 2, 1e-9);
    for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        EXPECT_NEAR(annealed_I2(0.5, f), 1, 1e-9) << f;
    }
    // Finite t with t = 0 is the leaf value.
    EXPECT_NEAR(annealed_I2(0.5, 0.3, 0), std::log2(0.65) - std::log2(0.85) + 1, 1e-14);
}

TEST(QdBranch, InversionAndMonotonicity) {
    EXPECT_NEAR(qd_branch_p(0.25), 0.514286, 1e-6);
    EXPECT_NEAR(qd_branch_u(qd_branch_p(0.25)), 0.25, 1e-11);
    EXPECT_NEAR(qd_branch_u(0), 0, 1e-11);
    EXPECT_NEAR(qd_branch_u(1), 0.5, 1e-11);
    double prev = -1;
    for (int i = 0; i <= 1000; ++i) {
        const double u = qd_branch_u(i / 1000.0);
        EXPECT_GT(u, prev);
        prev = u;
    }
}

TEST(ReplicaFixedPoints, QdPointIsFixed) {
    for (double p = 0.05; p < 1; p += 0.05) {
        for (const ReplicaFixedPoint& fp : replica_fixed_points(p)) {
            EXPECT_LT(apply_weight_map(fp.weights, p).distance(fp.weights), 1e-10) << p << " " << to_string(fp.kind);
        }
    }
}

TEST(ReplicaFixedPoints, IntermediateWindow) {
    auto count_intermediate = [](double p) {
        int n = 0;
        for (const auto& fp : replica_fixed_points(p)) {
            n += fp.kind == ReplicaFixedPointKind::IntermediateSigma || fp.kind == ReplicaFixedPointKind::IntermediateTau;
        }
        return n;
    };
    EXPECT_EQ(count_intermediate(0.7), 0);
    EXPECT_EQ(count_intermediate(0.77), 2);
    EXPECT_EQ(count_intermediate(0.8), 0);

    for (const auto& fp : replica_fixed_points(0.75)) {
        if (fp.kind == ReplicaFixedPointKind::IntermediateSigma) {
            EXPECT_LT(fp.weights.distance({1, 0, 0}), 1e-9);
        }
    }
    const double pl = replica_merge_point();
    EXPECT_NEAR(pl, 0.78361, 1e-5);
    const ReplicaWeights qd{qd_branch_u(pl), 1 - 2 * qd_branch_u(pl), qd_branch_u(pl)};
    for (const auto& fp : replica_fixed_points(pl)) {
        if (fp.kind == ReplicaFixedPointKind::IntermediateSigma) {
            EXPECT_LT(fp.weights.distance(qd), 1e-6);
        }
    }
}

TEST(ReplicaFixedPoints, Stability) {
    auto stable = [](double p, ReplicaFixedPointKind kind) {
        for (const auto& fp : replica_fixed_points(p)) {
            if (fp.kind == kind) {
                return fp.stable;
            }
        }
        return false;
    };
    EXPECT_TRUE(stable(0.5, ReplicaFixedPointKind::QD));
    EXPECT_FALSE(stable(0.5, ReplicaFixedPointKind::EncodingSigma));
    EXPECT_TRUE(stable(0.77, ReplicaFixedPointKind::QD));
    EXPECT_TRUE(stable(0.77, ReplicaFixedPointKind::EncodingSigma));
    EXPECT_FALSE(stable(0.77, ReplicaFixedPointKind::IntermediateSigma));
    EXPECT_FALSE(stable(0.9, ReplicaFixedPointKind::QD));
    EXPECT_TRUE(stable(0.9, ReplicaFixedPointKind::EncodingTau));
}

TEST(Threshold, LimitsAndSymmetry) {
    EXPECT_NEAR(compute_pc(0.01), 0.75, 1e-3);
    EXPECT_NEAR(compute_pc(0.5), replica_merge_point(), 1e-5);
    EXPECT_NEAR(compute_pc(0.3), compute_pc(0.7), 1e-6);
    EXPECT_GT(compute_pc(0.3), compute_pc(0.1));
    EXPECT_THROW(compute_pc(0), std::invalid_argument);
}

TEST(Threshold, SeparatesAttractors) {
    const double pc = compute_pc(0.3);
    EXPECT_EQ(classify_replica_attractor(pc - 1e-3, 0.3), ReplicaAttractor::QD);
    EXPECT_EQ(classify_replica_attractor(pc + 1e-3, 0.3), ReplicaAttractor::EncodingSigma);
    EXPECT_EQ(classify_replica_attractor(pc + 1e-3, 0.7), ReplicaAttractor::EncodingTau);
}
