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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdet/labels.hpp"
#include "qdet/tableau.hpp"

namespace qdet {

/// Random stream for one Monte-Carlo sample, keyed by (seed, sample index,
/// stream id) so samples are independent of evaluation order.
class SampleRng {
   public:
    SampleRng(uint64_t seed, uint64_t index, uint64_t stream = 0);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer in [0, n).
    uint64_t below(uint64_t n);
    bool bernoulli(double prob) { return uniform() < prob; }

    std::mt19937_64& engine() { return engine_; }

   private:
    std::mt19937_64 engine_;
};

enum class TreeVariant { Standard, Eavesdrop };

std::string to_string(TreeVariant v);

/// Parameters of the random tree circuit.
///
/// Standard: each gate slot holds a uniformly random one-body Clifford with
/// probability p; F is a Bernoulli(f) subset of the leaves, with full or
/// Z-only access. Eavesdrop: every slot first leaks a CNOT copy to a fresh
/// environment qubit with probability r, then applies a random Clifford; F is
/// a Bernoulli(f) subset of the environment qubits with Z-only access.
struct TreeSpec {
    int t = 0;
    double p = 0;
    double f = 0;
    double r = 0;
    TreeVariant variant = TreeVariant::Standard;
    bool z_only = false;

    void validate() const;
};

/// One concrete circuit. Gate slots sit on the 2^t - 1 branching nodes in
/// depth-first pre-order: the node's qubit is acted on (eavesdrop, then
/// Clifford) and then branches by a CNOT onto a fresh recruit.
struct TreeRealization {
    TreeSpec spec;
    uint64_t seed = 0;
    uint64_t index = 0;
    /// 0 = no gate, k = Permutation3::from_index(k - 1).
    std::vector<uint8_t> gates;
    /// Eavesdrop variant only: whether slot i leaks to the environment.
    std::vector<uint8_t> eavesdrops;
    /// Membership in F of each leaf (standard) or environment qubit (eavesdrop).
    std::vector<uint8_t> in_f;

    size_t num_slots() const { return gates.size(); }
    size_t num_environment() const;
};

inline constexpr uint64_t kDefaultSeed = 20240611;

/// Number of gate slots, 2^t - 1.
size_t num_gate_slots(int t);
/// Number of system leaves, 2^t.
size_t num_leaves(int t);

TreeRealization sample_realization(const TreeSpec& spec, uint64_t seed, uint64_t index);

/// State of a realization together with its qubit roles.
struct BuiltState {
    StabTableau tableau{0};
    size_t reference = 0;
    /// Final qubits of the tree, left to right.
    std::vector<size_t> leaves;
    /// Environment qubits in slot order (eavesdrop variant).
    std::vector<size_t> environment;
};

/// Bell(R, A) on qubits 0 and 1, recruits from qubit 2 on, environment
/// qubits after all system qubits.
BuiltState build_state(const TreeRealization& real);

void to_json(nlohmann::json& j, const TreeSpec& s);
void from_json(const nlohmann::json& j, TreeSpec& s);
void to_json(nlohmann::json& j, const TreeRealization& r);
void from_json(const nlohmann::json& j, TreeRealization& r);

}  // namespace qdet
