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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qdet/gf2.hpp"
#include "qdet/labels.hpp"

namespace qdet {

/// Phase-free stabilizer generators of a state on n qubits.
///
/// Stored column-major: for every qubit q, x_column(q) and z_column(q) hold
/// that qubit's X and Z bits across all k generators. Gates then act as
/// word-parallel column operations, and ranks of restricted generator sets
/// come straight from column bit vectors.
class StabTableau {
   public:
    /// |0...0> on n qubits: generators Z_0, ..., Z_{n-1}.
    explicit StabTableau(size_t num_qubits);

    size_t num_qubits() const { return x_.size(); }
    size_t num_generators() const { return k_; }

    const BitVector& x_column(size_t q) const { return x_[q]; }
    const BitVector& z_column(size_t q) const { return z_[q]; }

    /// Turns |0>_a |0>_b into the Bell pair (|00> + |11>)/sqrt 2.
    void make_bell_pair(size_t a, size_t b);

    void cnot(size_t control, size_t target);
    void hadamard(size_t q);
    void phase(size_t q);
    /// Conjugation by a one-body Clifford acting as `perm` on (Z, X, Y).
    void apply_permutation(size_t q, const Permutation3& perm);

    /// Pauli of generator `row` on qubit `q`.
    Pauli pauli(size_t row, size_t q) const;
    /// Generator `row` as a string over {I, X, Y, Z}, qubit 0 first.
    std::string row_string(size_t row) const;

    /// Every pair of generators commutes.
    bool generators_commute() const;
    /// GF(2) rank of the generator matrix.
    size_t rank() const;

    /// Rank of the generators restricted to `qubits` (both X and Z columns).
    size_t restricted_rank(std::span<const size_t> qubits) const;

    /// Entanglement entropy in bits of a pure state:
    /// rank(restricted generators) - |subset|.
    int entropy(std::span<const size_t> subset) const;

   private:
    size_t k_;
    std::vector<BitVector> x_, z_;
};

}  // namespace qdet
