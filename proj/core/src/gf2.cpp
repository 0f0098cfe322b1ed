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

#include "qdet/gf2.hpp"

namespace qdet {

size_t BitVector::popcount() const {
    size_t n = 0;
    for (uint64_t w : words_) {
        n += static_cast<size_t>(std::popcount(w));
    }
    return n;
}

std::optional<size_t> BitVector::lowest_set_bit() const {
    for (size_t w = 0; w < words_.size(); ++w) {
        if (words_[w]) {
            return w * 64 + static_cast<size_t>(std::countr_zero(words_[w]));
        }
    }
    return std::nullopt;
}

void XorBasis::reduce(BitVector& v) const {
    auto vw = v.words();
    for (size_t w = 0; w < vw.size(); ++w) {
        while (vw[w]) {
            const size_t bit = w * 64 + static_cast<size_t>(std::countr_zero(vw[w]));
            const auto& piv = pivots_[bit];
            if (!piv) {
                return;
            }
            // A pivot vector has no bits below its pivot, so earlier words are untouched.
            auto pw = piv->words();
            for (size_t k = w; k < vw.size(); ++k) {
                vw[k] ^= pw[k];
            }
        }
    }
}

bool XorBasis::insert(BitVector v) {
    reduce(v);
    auto low = v.lowest_set_bit();
    if (!low) {
        return false;
    }
    pivots_[*low] = std::move(v);
    ++rank_;
    return true;
}

size_t XorBasis::rank_with(std::span<const BitVector> extras) const {
    // Extras are reduced against the basis and then against each other.
    std::vector<BitVector> reduced;
    std::vector<size_t> reduced_pivots;
    for (const BitVector& e : extras) {
        BitVector v = e;
        bool changed = true;
        while (changed) {
            changed = false;
            reduce(v);
            auto low = v.lowest_set_bit();
            if (!low) {
                break;
            }
            for (size_t i = 0; i < reduced.size(); ++i) {
                if (reduced_pivots[i] == *low) {
                    v ^= reduced[i];
                    changed = true;
                    break;
                }
            }
        }
        if (auto low = v.lowest_set_bit()) {
            reduced_pivots.push_back(*low);
            reduced.push_back(std::move(v));
        }
    }
    return rank_ + reduced.size();
}

size_t gf2_rank(std::span<const BitVector> vectors) {
    if (vectors.empty()) {
        return 0;
    }
    XorBasis basis(vectors.front().size());
    for (const BitVector& v : vectors) {
        basis.insert(v);
    }
    return basis.rank();
}

}  // namespace qdet
