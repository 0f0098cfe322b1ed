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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qdet {

/// Fixed-length bit vector over GF(2), packed into 64-bit words.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {}

    size_t size() const { return num_bits_; }
    size_t num_words() const { return words_.size(); }

    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(size_t i, bool value = true) {
        const uint64_t mask = uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

    BitVector& operator^=(const BitVector& o) {
        for (size_t w = 0; w < words_.size(); ++w) {
            words_[w] ^= o.words_[w];
        }
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

    bool any() const {
        for (uint64_t w : words_) {
            if (w) {
                return true;
            }
        }
        return false;
    }
    size_t popcount() const;
    /// Index of the lowest set bit, or nullopt if zero.
    std::optional<size_t> lowest_set_bit() const;

    std::span<uint64_t> words() { return words_; }
    std::span<const uint64_t> words() const { return words_; }

    bool operator==(const BitVector&) const = default;

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// Echelon basis of a subspace of GF(2)^n, keyed by each vector's lowest set
/// bit. Used for ranks of column sets of a stabilizer tableau.
class XorBasis {
   public:
    explicit XorBasis(size_t num_bits) : num_bits_(num_bits), pivots_(num_bits) {}

    size_t rank() const { return rank_; }
    size_t num_bits() const { return num_bits_; }

    /// Reduces v against the basis in place; v ends up zero iff it was in the span.
    void reduce(BitVector& v) const;
    /// Inserts v; returns true if it increased the rank.
    bool insert(BitVector v);
    /// Rank of span(basis + extras), leaving the basis untouched.
    size_t rank_with(std::span<const BitVector> extras) const;

   private:
    size_t num_bits_;
    size_t rank_ = 0;
    std::vector<std::optional<BitVector>> pivots_;
};

/// Rank of a set of vectors over GF(2).
size_t gf2_rank(std::span<const BitVector> vectors);

}  // namespace qdet
