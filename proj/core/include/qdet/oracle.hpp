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
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qdet/labels.hpp"
#include "qdet/tableau.hpp"
#include "qdet/tree_circuit.hpp"

namespace qdet {

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). Callers write results into per-index slots, so aggregation
/// in index order is deterministic regardless of scheduling.
void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& body);

/// Accessible subgroup on `reference` for an observer holding `full` qubits
/// with complete access and `z_only` qubits whose Z operators alone are
/// accessible. The two sets must be disjoint and exclude the reference.
Label extract_subgroup(const StabTableau& tab, size_t reference, std::span<const size_t> full,
                       std::span<const size_t> z_only);

/// F of a realization: the selected leaves (full or Z-only access per the
/// spec) or the selected environment qubits (Z-only).
std::vector<size_t> observer_qubits(const BuiltState& state, const TreeRealization& real);

/// extract_subgroup for the realization's own F and access mode.
Label extract_subgroup(const BuiltState& state, const TreeRealization& real);

/// S(subset) in bits; alias of StabTableau::entropy.
int subsystem_entropy(const StabTableau& tab, std::span<const size_t> subset);

struct EntropyTriple {
    int s_r = 0;
    int s_f = 0;
    int s_rf = 0;

    int mutual_info() const { return s_r + s_f - s_rf; }
};

EntropyTriple entropies(const StabTableau& tab, size_t reference, std::span<const size_t> f);

/// Per-realization checks: 0 <= S(F) <= |F|, I in {0, 1, 2}, I = dim s, and
/// dim s_F + dim s_{F^c} = 2 for the complementary leaves. Standard variant
/// with full access only.
struct RealizationCheck {
    bool entropy_bounds = true;
    bool mutual_info_is_dimension = true;
    bool complement_sum_is_two = true;

    bool ok() const { return entropy_bounds && mutual_info_is_dimension && complement_sum_is_two; }
};

RealizationCheck check_realization(const BuiltState& state, const TreeRealization& real);

struct McEstimate {
    Dist5 pi;
    std::array<double, kNumLabels> std_error{};
    std::array<long, kNumLabels> counts{};
    long samples = 0;
};

/// Empirical distribution of the accessible subgroup over `samples`
/// realizations with sample indices 0..samples-1.
McEstimate mc_estimate_pi(const TreeSpec& spec, long samples, uint64_t seed, unsigned threads = 0);

/// Binomial standard error sqrt(p (1 - p) / n).
double binomial_std_error(double prob, long samples);

/// (estimate - reference) / se with se taken from the reference value; zero
/// difference scores 0 and any difference against se = 0 scores infinity.
double z_score(double estimate, double reference, long samples);

struct MutualInfoPoint {
    double f = 0;
    double mean = 0;
    double std_error = 0;
};

/// Mean I(R, F) over Bernoulli(f) leaf subsets, one row per grid value.
std::vector<MutualInfoPoint> mc_mutual_info_curve(double p, int t, std::span<const double> f_grid, long samples,
                                                  uint64_t seed, unsigned threads = 0);

/// I(R, F) of one realization as F grows along a random ordering of the
/// leaves; F at grid value f is the first round(f * 2^t) leaves.
std::vector<int> nested_mutual_info_sweep(const BuiltState& state, std::span<const size_t> order,
                                          std::span<const double> f_grid);

/// Random leaf ordering for nested sweeps of sample `index`.
std::vector<size_t> nested_order(const BuiltState& state, uint64_t seed, uint64_t index);

enum class CurveShape { Flat, Step, Other };

std::string to_string(CurveShape s);

/// Flat when I = 1 at both probes, Step when I goes from 0 to 2.
CurveShape classify_curve(int i_low, int i_high);

struct CurveShapeCounts {
    long flat = 0;
    long step = 0;
    long other = 0;

    long total() const { return flat + step + other; }
};

/// Nested sweeps of `realizations` circuits at (p, t), probed at f_low and f_high.
CurveShapeCounts mc_curve_shapes(double p, int t, long realizations, uint64_t seed, double f_low = 0.25,
                                 double f_high = 0.75, unsigned threads = 0);

struct PurityEstimate {
    double f = 0;  ///< mean Tr rho_F^2
    double rf = 0;  ///< mean Tr rho_RF^2
    double f_std_error = 0;
    double rf_std_error = 0;
    double ratio = 0;  ///< rf / f
    double ratio_std_error = 0;  ///< delta method, including the covariance
    long samples = 0;
};

/// Purities 2^{-S} of F and RF for Bernoulli(f) leaf subsets.
PurityEstimate mc_purities(const TreeSpec& spec, long samples, uint64_t seed, unsigned threads = 0);

}  // namespace qdet
