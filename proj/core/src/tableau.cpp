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

#include "qdet/tableau.hpp"

#include <stdexcept>
#include <utility>

namespace qdet {

namespace {

struct XZ {
    bool x;
    bool z;
};

constexpr XZ bits_of(Pauli p) {
    switch (p) {
        case Pauli::X:
            return {true, false};
        case Pauli::Z:
            return {false, true};
        case Pauli::Y:
            return {true, true};
        default:
            return {false, false};
    }
}

}  // namespace

StabTableau::StabTableau(size_t num_qubits) : k_(num_qubits), x_(num_qubits, BitVector(num_qubits)), z_(num_qubits, BitVector(num_qubits)) {
    for (size_t q = 0; q < num_qubits; ++q) {
        z_[q].set(q);
    }
}

void StabTableau::make_bell_pair(size_t a, size_t b) {
    hadamard(a);
    cnot(a, b);
}

void StabTableau::cnot(size_t control, size_t target) {
    if (control == target || control >= num_qubits() || target >= num_qubits()) {
        throw std::invalid_argument("cnot needs two distinct valid qubits");
    }
    x_[target] ^= x_[control];
    z_[control] ^= z_[target];
}

void StabTableau::hadamard(size_t q) { std::swap(x_[q], z_[q]); }

void StabTableau::phase(size_t q) { z_[q] ^= x_[q]; }

void StabTableau::apply_permutation(size_t q, const Permutation3& perm) {
    if (perm.index() == 0) {
        return;
    }
    // The action on (x, z) is linear: X -> perm(X), Z -> perm(Z).
    const XZ from_x = bits_of(perm.apply(Pauli::X));
    const XZ from_z = bits_of(perm.apply(Pauli::Z));
    auto xw = x_[q].words();
    auto zw = z_[q].words();
    for (size_t w = 0; w < xw.size(); ++w) {
        const uint64_t x = xw[w], z = zw[w];
        const uint64_t all = ~uint64_t{0};
        xw[w] = (x & (from_x.x ? all : 0)) ^ (z & (from_z.x ? all : 0));
        zw[w] = (x & (from_x.z ? all : 0)) ^ (z & (from_z.z ? all : 0));
    }
}

Pauli StabTableau::pauli(size_t row, size_t q) const {
    const bool x = x_[q].get(row), z = z_[q].get(row);
    if (x && z) {
        return Pauli::Y;
    }
    if (x) {
        return Pauli::X;
    }
    return z ? Pauli::Z : Pauli::I;
}

std::string StabTableau::row_string(size_t row) const {
    std::string s;
    s.reserve(num_qubits());
    for (size_t q = 0; q < num_qubits(); ++q) {
        s.push_back(to_char(pauli(row, q)));
    }
    return s;
}

bool StabTableau::generators_commute() const {
    for (size_t i = 0; i < k_; ++i) {
        for (size_t j = i + 1; j < k_; ++j) {
            bool parity = false;
            for (size_t q = 0; q < num_qubits(); ++q) {
                parity ^= (x_[q].get(i) && z_[q].get(j)) != (z_[q].get(i) && x_[q].get(j));
            }
            if (parity) {
                return false;
            }
        }
    }
    return true;
}

size_t StabTableau::rank() const {
    XorBasis basis(k_);
    for (size_t q = 0; q < num_qubits(); ++q) {
        basis.insert(x_[q]);
        basis.insert(z_[q]);
    }
    return basis.rank();
}

size_t StabTableau::restricted_rank(std::span<const size_t> qubits) const {
    // Row rank of the restriction equals the rank of its columns.
    XorBasis basis(k_);
    for (size_t q : qubits) {
        basis.insert(x_[q]);
        basis.insert(z_[q]);
    }
    return basis.rank();
}

int StabTableau::entropy(std::span<const size_t> subset) const {
    return static_cast<int>(restricted_rank(subset)) - static_cast<int>(subset.size());
}

}  // namespace qdet
