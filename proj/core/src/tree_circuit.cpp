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

#include "qdet/tree_circuit.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qdet {

namespace {

void check_unit(double v, const char* name) {
    if (!(v >= 0 && v <= 1)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

struct Builder {
    const TreeRealization& real;
    BuiltState& out;
    size_t next_slot = 0;
    size_t next_recruit = 2;
    size_t next_env = 0;

    void grow(size_t q, int generations) {
        if (generations == 0) {
            out.leaves.push_back(q);
            return;
        }
        const size_t s = next_slot++;
        if (!real.eavesdrops.empty() && real.eavesdrops[s]) {
            const size_t e = out.environment[next_env++];
            out.tableau.cnot(q, e);
        }
        if (real.gates[s]) {
            out.tableau.apply_permutation(q, Permutation3::from_index(real.gates[s] - 1));
        }
        const size_t recruit = next_recruit++;
        out.tableau.cnot(q, recruit);
        grow(q, generations - 1);
        grow(recruit, generations - 1);
    }
};

}  // namespace

SampleRng::SampleRng(uint64_t seed, uint64_t index, uint64_t stream) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(index),
                      static_cast<uint32_t>(index >> 32), static_cast<uint32_t>(stream)};
    engine_.seed(seq);
}

double SampleRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

uint64_t SampleRng::below(uint64_t n) {
    // Rejection keeps the draw exactly uniform.
    const uint64_t limit = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % n;
    uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

std::string to_string(TreeVariant v) { return v == TreeVariant::Standard ? "standard" : "eavesdrop"; }

void TreeSpec::validate() const {
    if (t < 0 || t > 16) {
        throw std::invalid_argument("t must lie in [0, 16]");
    }
    check_unit(p, "p");
    check_unit(f, "f");
    check_unit(r, "r");
}

size_t TreeRealization::num_environment() const {
    return static_cast<size_t>(std::count(eavesdrops.begin(), eavesdrops.end(), uint8_t{1}));
}

size_t num_gate_slots(int t) { return (size_t{1} << t) - 1; }

size_t num_leaves(int t) { return size_t{1} << t; }

TreeRealization sample_realization(const TreeSpec& spec, uint64_t seed, uint64_t index) {
    spec.validate();
    TreeRealization real;
    real.spec = spec;
    real.seed = seed;
    real.index = index;
    SampleRng rng(seed, index);
    const size_t slots = num_gate_slots(spec.t);
    real.gates.resize(slots);
    const bool eavesdrop = spec.variant == TreeVariant::Eavesdrop;
    if (eavesdrop) {
        real.eavesdrops.resize(slots);
    }
    for (size_t s = 0; s < slots; ++s) {
        if (eavesdrop) {
            real.eavesdrops[s] = rng.bernoulli(spec.r);
        }
        // The eavesdrop variant always applies a random Clifford.
        if (eavesdrop || rng.bernoulli(spec.p)) {
            real.gates[s] = static_cast<uint8_t>(1 + rng.below(6));
        }
    }
    const size_t members = eavesdrop ? real.num_environment() : num_leaves(spec.t);
    real.in_f.resize(members);
    for (auto& m : real.in_f) {
        m = rng.bernoulli(spec.f);
    }
    return real;
}

BuiltState build_state(const TreeRealization& real) {
    const int t = real.spec.t;
    if (real.gates.size() != num_gate_slots(t)) {
        throw std::invalid_argument("realization has the wrong number of gate slots");
    }
    if (!real.eavesdrops.empty() && real.eavesdrops.size() != real.gates.size()) {
        throw std::invalid_argument("eavesdrop flags do not match the gate slots");
    }
    const size_t system = num_leaves(t) + 1;
    const size_t env = real.num_environment();
    BuiltState out;
    out.tableau = StabTableau(system + env);
    out.reference = 0;
    for (size_t e = 0; e < env; ++e) {
        out.environment.push_back(system + e);
    }
    out.tableau.make_bell_pair(0, 1);
    Builder builder{real, out};
    builder.grow(1, t);
    return out;
}

void to_json(nlohmann::json& j, const TreeSpec& s) {
    j = nlohmann::json{{"t", s.t},     {"p", s.p}, {"f", s.f}, {"r", s.r}, {"variant", to_string(s.variant)},
                       {"z_only", s.z_only}};
}

void from_json(const nlohmann::json& j, TreeSpec& s) {
    j.at("t").get_to(s.t);
    j.at("p").get_to(s.p);
    j.at("f").get_to(s.f);
    j.at("r").get_to(s.r);
    const std::string v = j.at("variant").get<std::string>();
    if (v == "standard") {
        s.variant = TreeVariant::Standard;
    } else if (v == "eavesdrop") {
        s.variant = TreeVariant::Eavesdrop;
    } else {
        throw std::invalid_argument("unknown tree variant: " + v);
    }
    j.at("z_only").get_to(s.z_only);
}

void to_json(nlohmann::json& j, const TreeRealization& r) {
    j = nlohmann::json{{"spec", r.spec},   {"seed", r.seed},           {"index", r.index},
                       {"gates", r.gates}, {"eavesdrops", r.eavesdrops}, {"in_f", r.in_f}};
}

void from_json(const nlohmann::json& j, TreeRealization& r) {
    j.at("spec").get_to(r.spec);
    j.at("seed").get_to(r.seed);
    j.at("index").get_to(r.index);
    j.at("gates").get_to(r.gates);
    j.at("eavesdrops").get_to(r.eavesdrops);
    j.at("in_f").get_to(r.in_f);
}

}  // namespace qdet
