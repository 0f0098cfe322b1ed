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
#include <optional>
#include <string>
#include <string_view>

namespace qdet {

/// Subgroup of reference-qubit Pauli operators accessible from a subsystem.
///
/// The enumerator values fix the canonical component order (n, z, x, y, a)
/// used by every distribution, matrix and output column in the library.
enum class Label : uint8_t { N = 0, Z = 1, X = 2, Y = 3, A = 4 };

inline constexpr int kNumLabels = 5;
inline constexpr std::array<Label, kNumLabels> kAllLabels = {Label::N, Label::Z, Label::X, Label::Y, Label::A};

constexpr int index(Label s) { return static_cast<int>(s); }
constexpr Label label_at(int i) { return static_cast<Label>(i); }

/// Dimension of the subgroup as a vector space over GF(2): log2 of its size.
constexpr int dimension(Label s) {
    switch (s) {
        case Label::N:
            return 0;
        case Label::A:
            return 2;
        default:
            return 1;
    }
}

char to_char(Label s);
std::optional<Label> label_from_char(char c);

/// Single-qubit Pauli modulo phase. Order matches the pullback table (I, Z, X, Y).
enum class Pauli : uint8_t { I = 0, Z = 1, X = 2, Y = 3 };

inline constexpr std::array<Pauli, 4> kAllPaulis = {Pauli::I, Pauli::Z, Pauli::X, Pauli::Y};

char to_char(Pauli p);

/// Pulls P1 (x) P2 back through the branching isometry sum_i |ii><i|.
///
/// Returns std::nullopt when the pulled-back operator vanishes (an X or Y on
/// exactly one branch), which plays the role of the table's "0" entry.
std::optional<Pauli> pauli_pullback(Pauli p1, Pauli p2);

/// Bitmask over {I, Z, X, Y} (bit index = Pauli value) listing a label's elements.
uint8_t pauli_set(Label s);

/// Inverse of pauli_set; nullopt if the mask is not one of the five subgroups.
std::optional<Label> label_from_pauli_set(uint8_t mask);

/// The branching composition table B(s1, s2).
Label branch_compose(Label s1, Label s2);

/// A permutation of {Z, X, Y}: the action of a one-body Clifford modulo phase.
///
/// `image[k]` is the image of the k-th element of (Z, X, Y). The six
/// permutations are indexed 0..5 in lexicographic order of their images, with
/// index 0 the identity.
class Permutation3 {
   public:
    constexpr Permutation3() = default;
    static Permutation3 from_index(int i);
    static Permutation3 from_images(Pauli image_of_z, Pauli image_of_x, Pauli image_of_y);
    static const std::array<Permutation3, 6>& all();

    int index() const;
    Pauli apply(Pauli p) const;
    Label apply(Label s) const;
    /// (*this) after `inner`: x -> this(inner(x)).
    Permutation3 compose(const Permutation3& inner) const;
    Permutation3 inverse() const;

    bool operator==(const Permutation3&) const = default;

   private:
    // Images of Z, X, Y.
    std::array<Pauli, 3> image_ = {Pauli::Z, Pauli::X, Pauli::Y};
};

/// Probability vector over the five labels, in canonical order.
struct Dist5 {
    std::array<double, kNumLabels> v{};

    static constexpr double kTolerance = 1e-12;

    double operator[](Label s) const { return v[index(s)]; }
    double& operator[](Label s) { return v[index(s)]; }

    double sum() const;
    bool is_valid(double tol = kTolerance) const;
    /// Throws std::invalid_argument unless is_valid(tol).
    void validate(double tol = kTolerance) const;
    /// Divides by the sum; components are left untouched if the sum is zero.
    Dist5 normalized() const;
    /// Sup-norm distance.
    double distance(const Dist5& other) const;
    /// The Z2 image swapping n and a.
    Dist5 swapped_n_a() const;

    std::string to_string() const;
};

}  // namespace qdet
