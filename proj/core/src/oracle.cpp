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

#include "qdet/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "qdet/gf2.hpp"

namespace qdet {

void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& body) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<size_t>(threads, n));
    if (threads <= 1) {
        for (size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next = n;
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

Label extract_subgroup(const StabTableau& tab, size_t reference, std::span<const size_t> full,
                       std::span<const size_t> z_only) {
    const size_t n = tab.num_qubits();
    // 0 = outside the observer, 1 = full access, 2 = Z-only access, 3 = reference.
    std::vector<uint8_t> role(n, 0);
    role.at(reference) = 3;
    for (size_t q : full) {
        if (role.at(q) != 0) {
            throw std::invalid_argument("observer qubits must be distinct and exclude the reference");
        }
        role[q] = 1;
    }
    for (size_t q : z_only) {
        if (role.at(q) != 0) {
            throw std::invalid_argument("observer qubits must be distinct and exclude the reference");
        }
        role[q] = 2;
    }
    // Stabilizer elements g visible to the observer are those orthogonal to
    // every constraint column: all columns outside, plus X columns of Z-only qubits.
    XorBasis constraints(tab.num_generators());
    for (size_t q = 0; q < n; ++q) {
        if (role[q] == 0) {
            constraints.insert(tab.x_column(q));
            constraints.insert(tab.z_column(q));
        } else if (role[q] == 2) {
            constraints.insert(tab.x_column(q));
        }
    }
    const BitVector& xr = tab.x_column(reference);
    const BitVector& zr = tab.z_column(reference);
    const BitVector both[] = {xr, zr};
    const size_t base = constraints.rank();
    const size_t all = constraints.rank_with(both);
    const size_t dim = all - base;
    if (dim == 0) {
        return Label::N;
    }
    if (dim == 2) {
        return Label::A;
    }
    // Exactly one non-identity Pauli P is accessible: P is in s iff adding the
    // two columns that must vanish under P leaves one rank short of `all`.
    const BitVector just_x[] = {xr};
    if (all - constraints.rank_with(just_x) == 1) {
        return Label::Z;
    }
    const BitVector just_z[] = {zr};
    if (all - constraints.rank_with(just_z) == 1) {
        return Label::X;
    }
    return Label::Y;
}

std::vector<size_t> observer_qubits(const BuiltState& state, const TreeRealization& real) {
    const auto& pool = real.spec.variant == TreeVariant::Eavesdrop ? state.environment : state.leaves;
    if (pool.size() != real.in_f.size()) {
        throw std::invalid_argument("F flags do not match the realization");
    }
    std::vector<size_t> f;
    for (size_t i = 0; i < pool.size(); ++i) {
        if (real.in_f[i]) {
            f.push_back(pool[i]);
        }
    }
    return f;
}

Label extract_subgroup(const BuiltState& state, const TreeRealization& real) {
    const std::vector<size_t> f = observer_qubits(state, real);
    const bool z_only = real.spec.variant == TreeVariant::Eavesdrop || real.spec.z_only;
    // In the eavesdrop variant the system leaves sit in neither access set,
    // so they are traced out with the rest of the unobserved qubits.
    if (z_only) {
        return extract_subgroup(state.tableau, state.reference, {}, f);
    }
    return extract_subgroup(state.tableau, state.reference, f, {});
}

int subsystem_entropy(const StabTableau& tab, std::span<const size_t> subset) { return tab.entropy(subset); }

EntropyTriple entropies(const StabTableau& tab, size_t reference, std::span<const size_t> f) {
    EntropyTriple e;
    const size_t r[] = {reference};
    e.s_r = tab.entropy(r);
    e.s_f = tab.entropy(f);
    std::vector<size_t> rf(f.begin(), f.end());
    rf.push_back(reference);
    e.s_rf = tab.entropy(rf);
    return e;
}

RealizationCheck check_realization(const BuiltState& state, const TreeRealization& real) {
    RealizationCheck check;
    std::vector<size_t> f, fc;
    for (size_t i = 0; i < state.leaves.size(); ++i) {
        (i < real.in_f.size() && real.in_f[i] ? f : fc).push_back(state.leaves[i]);
    }
    const EntropyTriple e = entropies(state.tableau, state.reference, f);
    check.entropy_bounds = e.s_f >= 0 && e.s_f <= static_cast<int>(f.size()) && e.s_rf >= 0 && e.s_r >= 0 &&
                           e.s_r <= 1;
    const int info = e.mutual_info();
    const int dim_f = dimension(extract_subgroup(state.tableau, state.reference, f, {}));
    const int dim_fc = dimension(extract_subgroup(state.tableau, state.reference, fc, {}));
    check.entropy_bounds = check.entropy_bounds && info >= 0 && info <= 2;
    check.mutual_info_is_dimension = info == dim_f;
    check.complement_sum_is_two = dim_f + dim_fc == 2;
    return check;
}

double binomial_std_error(double prob, long samples) {
    if (samples <= 0) {
        throw std::invalid_argument("samples must be positive");
    }
    return std::sqrt(std::max(0.0, prob * (1 - prob)) / static_cast<double>(samples));
}

double z_score(double estimate, double reference, long samples) {
    const double diff = estimate - reference;
    const double se = binomial_std_error(reference, samples);
    if (se == 0) {
        return diff == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return std::abs(diff) / se;
}

McEstimate mc_estimate_pi(const TreeSpec& spec, long samples, uint64_t seed, unsigned threads) {
    if (samples < 1) {
        throw std::invalid_argument("samples must be at least 1");
    }
    spec.validate();
    std::vector<uint8_t> labels(static_cast<size_t>(samples));
    parallel_for(labels.size(), threads, [&](size_t i) {
        const TreeRealization real = sample_realization(spec, seed, i);
        const BuiltState state = build_state(real);
        labels[i] = static_cast<uint8_t>(index(extract_subgroup(state, real)));
    });
    McEstimate est;
    est.samples = samples;
    for (uint8_t l : labels) {
        ++est.counts[l];
    }
    for (int k = 0; k < kNumLabels; ++k) {
        est.pi.v[k] = static_cast<double>(est.counts[k]) / static_cast<double>(samples);
        est.std_error[k] = binomial_std_error(est.pi.v[k], samples);
    }
    return est;
}

std::vector<MutualInfoPoint> mc_mutual_info_curve(double p, int t, std::span<const double> f_grid, long samples,
                                                  uint64_t seed, unsigned threads) {
    if (samples < 1) {
        throw std::invalid_argument("samples must be at least 1");
    }
    std::vector<MutualInfoPoint> out;
    for (double f : f_grid) {
        TreeSpec spec;
        spec.t = t;
        spec.p = p;
        spec.f = f;
        spec.validate();
        std::vector<int> info(static_cast<size_t>(samples));
        parallel_for(info.size(), threads, [&](size_t i) {
            const TreeRealization real = sample_realization(spec, seed, i);
            const BuiltState state = build_state(real);
            info[i] = entropies(state.tableau, state.reference, observer_qubits(state, real)).mutual_info();
        });
        double sum = 0, sum_sq = 0;
        for (int v : info) {
            sum += v;
            sum_sq += static_cast<double>(v) * v;
        }
        const double n = static_cast<double>(samples);
        const double mean = sum / n;
        const double var = samples > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)) : 0.0;
        out.push_back({f, mean, std::sqrt(var / n)});
    }
    return out;
}

std::vector<size_t> nested_order(const BuiltState& state, uint64_t seed, uint64_t index) {
    std::vector<size_t> order = state.leaves;
    SampleRng rng(seed, index, 1);
    // Fisher-Yates with an exactly uniform draw, so orders are portable.
    for (size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
    }
    return order;
}

std::vector<int> nested_mutual_info_sweep(const BuiltState& state, std::span<const size_t> order,
                                          std::span<const double> f_grid) {
    std::vector<int> out;
    out.reserve(f_grid.size());
    for (double f : f_grid) {
        if (!(f >= 0 && f <= 1)) {
            throw std::invalid_argument("f must lie in [0, 1]");
        }
        const auto m = static_cast<size_t>(std::lround(f * static_cast<double>(order.size())));
        out.push_back(entropies(state.tableau, state.reference, order.subspan(0, m)).mutual_info());
    }
    return out;
}

std::string to_string(CurveShape s) {
    switch (s) {
        case CurveShape::Flat:
            return "flat";
        case CurveShape::Step:
            return "step";
        case CurveShape::Other:
            return "other";
    }
    return "?";
}

CurveShape classify_curve(int i_low, int i_high) {
    if (i_low == 1 && i_high == 1) {
        return CurveShape::Flat;
    }
    if (i_low == 0 && i_high == 2) {
        return CurveShape::Step;
    }
    return CurveShape::Other;
}

CurveShapeCounts mc_curve_shapes(double p, int t, long realizations, uint64_t seed, double f_low, double f_high,
                                 unsigned threads) {
    if (realizations < 1) {
        throw std::invalid_argument("realizations must be at least 1");
    }
    TreeSpec spec;
    spec.t = t;
    spec.p = p;
    spec.validate();
    const double grid[] = {f_low, f_high};
    std::vector<uint8_t> shapes(static_cast<size_t>(realizations));
    parallel_for(shapes.size(), threads, [&](size_t i) {
        const TreeRealization real = sample_realization(spec, seed, i);
        const BuiltState state = build_state(real);
        const std::vector<size_t> order = nested_order(state, seed, i);
        const std::vector<int> info = nested_mutual_info_sweep(state, order, grid);
        shapes[i] = static_cast<uint8_t>(classify_curve(info[0], info[1]));
    });
    CurveShapeCounts counts;
    for (uint8_t s : shapes) {
        switch (static_cast<CurveShape>(s)) {
            case CurveShape::Flat:
                ++counts.flat;
                break;
            case CurveShape::Step:
                ++counts.step;
                break;
            case CurveShape::Other:
                ++counts.other;
                break;
        }
    }
    return counts;
}

PurityEstimate mc_purities(const TreeSpec& spec, long samples, uint64_t seed, unsigned threads) {
    if (samples < 1) {
        throw std::invalid_argument("samples must be at least 1");
    }
    if (spec.variant != TreeVariant::Standard) {
        throw std::invalid_argument("purities are defined for the standard tree only");
    }
    spec.validate();
    std::vector<std::array<double, 2>> pur(static_cast<size_t>(samples));
    parallel_for(pur.size(), threads, [&](size_t i) {
        const TreeRealization real = sample_realization(spec, seed, i);
        const BuiltState state = build_state(real);
        const EntropyTriple e = entropies(state.tableau, state.reference, observer_qubits(state, real));
        // Stabilizer states have flat spectra, so Tr rho^2 = 2^-S.
        pur[i] = {std::ldexp(1.0, -e.s_f), std::ldexp(1.0, -e.s_rf)};
    });
    const double n = static_cast<double>(samples);
    double mf = 0, mrf = 0;
    for (const auto& v : pur) {
        mf += v[0];
        mrf += v[1];
    }
    mf /= n;
    mrf /= n;
    double vf = 0, vrf = 0, cov = 0;
    for (const auto& v : pur) {
        vf += (v[0] - mf) * (v[0] - mf);
        vrf += (v[1] - mrf) * (v[1] - mrf);
        cov += (v[0] - mf) * (v[1] - mrf);
    }
    const double dof = samples > 1 ? n - 1 : 1;
    vf /= dof;
    vrf /= dof;
    cov /= dof;
    PurityEstimate est;
    est.samples = samples;
    est.f = mf;
    est.rf = mrf;
    est.f_std_error = std::sqrt(vf / n);
    est.rf_std_error = std::sqrt(vrf / n);
    est.ratio = mrf / mf;
    const double var_ratio = (vrf / (mf * mf) + mrf * mrf * vf / std::pow(mf, 4) - 2 * mrf * cov / std::pow(mf, 3)) / n;
    est.ratio_std_error = std::sqrt(std::max(0.0, var_ratio));
    return est;
}

}  // namespace qdet
