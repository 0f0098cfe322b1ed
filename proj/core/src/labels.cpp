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

#include "qdet/labels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdet {

namespace {

using enum Label;

constexpr Label kBranchTable[5][5] = {
    // n  z  x  y  a
    {N, Z, N, N, Z},  // n
    {Z, Z, Z, Z, Z},  // z
    {N, Z, X, Y, A},  // x
    {N, Z, Y, X, A},  // y
    {Z, Z, A, A, A},  // a
};

// -1 marks an annihilated entry.
constexpr int kPullbackTable[4][4] = {
    // I  Z  X  Y
    {0, 1, -1, -1},  // I
    {1, 0, -1, -1},  // Z
    {-1, -1, 2, 3},  // X
    {-1, -1, 3, 2},  // Y
};

constexpr std::array<std::array<Pauli, 3>, 6> kPermutationImages = {{
    {Pauli::Z, Pauli::X, Pauli::Y},
    {Pauli::Z, Pauli::Y, Pauli::X},
    {Pauli::X, Pauli::Z, Pauli::Y},
    {Pauli::X, Pauli::Y, Pauli::Z},
    {Pauli::Y, Pauli::Z, Pauli::X},
    {Pauli::Y, Pauli::X, Pauli::Z},
}};

}  // namespace

char to_char(Label s) {
    static constexpr char kChars[] = {'n', 'z', 'x', 'y', 'a'};
    return kChars[index(s)];
}

std::optional<Label> label_from_char(char c) {
    switch (c) {
        case 'n':
            return N;
        case 'z':
            return Z;
        case 'x':
            return X;
        case 'y':
            return Y;
        case 'a':
            return A;
        default:
            return std::nullopt;
    }
}

char to_char(Pauli p) {
    static constexpr char kChars[] = {'I', 'Z', 'X', 'Y'};
    return kChars[static_cast<int>(p)];
}

std::optional<Pauli> pauli_pullback(Pauli p1, Pauli p2) {
    int r = kPullbackTable[static_cast<int>(p1)][static_cast<int>(p2)];
    if (r < 0) {
        return std::nullopt;
    }
    return static_cast<Pauli>(r);
}

uint8_t pauli_set(Label s) {
    constexpr uint8_t kI = 1u << 0, kZ = 1u << 1, kX = 1u << 2, kY = 1u << 3;
    switch (s) {
        case N:
            return kI;
        case Z:
            return kI | kZ;
        case X:
            return kI | kX;
        case Y:
            return kI | kY;
        case A:
            return kI | kZ | kX | kY;
    }
    return 0;
}

std::optional<Label> label_from_pauli_set(uint8_t mask) {
    for (Label s : kAllLabels) {
        if (pauli_set(s) == mask) {
            return s;
        }
    }
    return std::nullopt;
}

Label branch_compose(Label s1, Label s2) {
    return kBranchTable[index(s1)][index(s2)];
}

Permutation3 Permutation3::from_index(int i) {
    if (i < 0 || i >= 6) {
        throw std::out_of_range("Permutation3 index must be in [0, 6)");
    }
    const auto& im = kPermutationImages[i];
    return from_images(im[0], im[1], im[2]);
}

Permutation3 Permutation3::from_images(Pauli image_of_z, Pauli image_of_x, Pauli image_of_y) {
    std::array<Pauli, 3> im = {image_of_z, image_of_x, image_of_y};
    std::array<Pauli, 3> sorted = im;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<Pauli, 3>{Pauli::Z, Pauli::X, Pauli::Y}) {
        throw std::invalid_argument("Permutation3 images must be a permutation of Z, X, Y");
    }
    Permutation3 out;
    out.image_ = im;
    return out;
}

const std::array<Permutation3, 6>& Permutation3::all() {
    static const std::array<Permutation3, 6> kAll = [] {
        std::array<Permutation3, 6> a;
        for (int i = 0; i < 6; ++i) {
            a[i] = from_index(i);
        }
        return a;
    }();
    return kAll;
}

int Permutation3::index() const {
    for (int i = 0; i < 6; ++i) {
        if (kPermutationImages[i] == image_) {
            return i;
        }
    }
    return -1;  // unreachable for a validly constructed permutation
}

Pauli Permutation3::apply(Pauli p) const {
    if (p == Pauli::I) {
        return Pauli::I;
    }
    return image_[static_cast<int>(p) - 1];
}

Label Permutation3::apply(Label s) const {
    switch (s) {
        case Z:
            return static_cast<Label>(static_cast<int>(apply(Pauli::Z)));
        case X:
            return static_cast<Label>(static_cast<int>(apply(Pauli::X)));
        case Y:
            return static_cast<Label>(static_cast<int>(apply(Pauli::Y)));
        default:
            return s;
    }
}

Permutation3 Permutation3::compose(const Permutation3& inner) const {
    return from_images(apply(inner.apply(Pauli::Z)), apply(inner.apply(Pauli::X)), apply(inner.apply(Pauli::Y)));
}

Permutation3 Permutation3::inverse() const {
    std::array<Pauli, 3> inv{};
    constexpr std::array<Pauli, 3> kDomain = {Pauli::Z, Pauli::X, Pauli::Y};
    for (int k = 0; k < 3; ++k) {
        inv[static_cast<int>(image_[k]) - 1] = kDomain[k];
    }
    return from_images(inv[0], inv[1], inv[2]);
}

double Dist5::sum() const {
    double s = 0;
    for (double x : v) {
        s += x;
    }
    return s;
}

bool Dist5::is_valid(double tol) const {
    for (double x : v) {
        if (!std::isfinite(x) || x < -tol) {
            return false;
        }
    }
    return std::abs(sum() - 1.0) <= tol;
}

void Dist5::validate(double tol) const {
    if (!is_valid(tol)) {
        throw std::invalid_argument("not a probability vector over (n,z,x,y,a): " + to_string());
    }
}

Dist5 Dist5::normalized() const {
    double s = sum();
    if (s == 0) {
        return *this;
    }
    Dist5 out;
    for (int i = 0; i < kNumLabels; ++i) {
        out.v[i] = v[i] / s;
    }
    return out;
}

double Dist5::distance(const Dist5& other) const {
    double d = 0;
    for (int i = 0; i < kNumLabels; ++i) {
        d = std::max(d, std::abs(v[i] - other.v[i]));
    }
    return d;
}

Dist5 Dist5::swapped_n_a() const {
    Dist5 out = *this;
    std::swap(out.v[index(N)], out.v[index(A)]);
    return out;
}

std::string Dist5::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (int i = 0; i < kNumLabels; ++i) {
        os << (i ? ", " : "") << v[i];
    }
    os << ')';
    return os.str();
}

}  // namespace qdet
