// Copyright 2026 The qsv Authors
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

#include "qsv/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "qsv/error.hpp"
#include "qsv/rng.hpp"

namespace qsv {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class T>
inline std::complex<double> widen(std::complex<T> v) {
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

template <class T>
inline std::complex<T> narrow(std::complex<double> v) {
    return {static_cast<T>(v.real()), static_cast<T>(v.imag())};
}

inline std::uint64_t insert_bit(std::uint64_t v, std::uint32_t pos, std::uint64_t bit) {
    std::uint64_t low = v & ((std::uint64_t(1) << pos) - 1);
    return ((v >> pos) << (pos + 1)) | (bit << pos) | low;
}

/// Split [0, count) into contiguous slices, one per worker. Slices write
/// disjoint amplitude groups so results do not depend on the worker count.
template <class F>
void parallel_for(std::uint64_t count, std::size_t workers, F &&body) {
    if (workers <= 1 || count < (std::uint64_t(1) << 12)) {
        body(std::uint64_t(0), count);
        return;
    }
    std::size_t w = static_cast<std::size_t>(std::min<std::uint64_t>(workers, count));
    std::vector<std::thread> threads;
    threads.reserve(w - 1);
    std::uint64_t per = count / w;
    std::uint64_t extra = count % w;
    std::uint64_t start = 0;
    for (std::size_t i = 0; i < w; ++i) {
        std::uint64_t len = per + (i < extra ? 1 : 0);
        std::uint64_t begin = start;
        std::uint64_t end = start + len;
        if (i + 1 == w) {
            body(begin, end);
        } else {
            threads.emplace_back([&body, begin, end] { body(begin, end); });
        }
        start = end;
    }
    for (auto &t : threads) {
        t.join();
    }
}

// ---------------------------------------------------------------------------
// Raw kernels over amplitude arrays (n_local qubits)
// ---------------------------------------------------------------------------

template <class T>
void kernel_1q(std::complex<T> *amps, std::size_t n, const Matrix &m, std::uint32_t target,
               std::size_t workers) {
    const std::uint64_t pairs = std::uint64_t(1) << (n - 1);
    const std::uint64_t tbit = std::uint64_t(1) << target;
    const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    parallel_for(pairs, workers, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            std::uint64_t i0 = insert_bit(i, target, 0);
            std::uint64_t i1 = i0 | tbit;
            Complex a0 = widen(amps[i0]);
            Complex a1 = widen(amps[i1]);
            amps[i0] = narrow<T>(m00 * a0 + m01 * a1);
            amps[i1] = narrow<T>(m10 * a0 + m11 * a1);
        }
    });
}

template <class T>
void kernel_controlled(std::complex<T> *amps, std::size_t n, const Matrix &m,
                       const std::vector<std::uint32_t> &controls, std::uint32_t target,
                       std::size_t workers) {
    // Iterate a compressed index and re-insert the fixed bits: 1 at every
    // control position, 0 at the target.
    std::vector<std::pair<std::uint32_t, std::uint64_t>> slots;
    for (std::uint32_t c : controls) {
        slots.emplace_back(c, 1);
    }
    slots.emplace_back(target, 0);
    std::sort(slots.begin(), slots.end());

    const std::uint64_t groups = std::uint64_t(1) << (n - slots.size());
    const std::uint64_t tbit = std::uint64_t(1) << target;
    const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    parallel_for(groups, workers, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            std::uint64_t v = i;
            for (const auto &[pos, bit] : slots) {
                v = insert_bit(v, pos, bit);
            }
            std::uint64_t i1 = v | tbit;
            Complex a0 = widen(amps[v]);
            Complex a1 = widen(amps[i1]);
            amps[v] = narrow<T>(m00 * a0 + m01 * a1);
            amps[i1] = narrow<T>(m10 * a0 + m11 * a1);
        }
    });
}

std::vector<std::uint64_t> group_offsets(const std::vector<std::uint32_t> &qubits) {
    const std::size_t dim = std::size_t(1) << qubits.size();
    std::vector<std::uint64_t> offsets(dim, 0);
    for (std::size_t pat = 0; pat < dim; ++pat) {
        for (std::size_t p = 0; p < qubits.size(); ++p) {
            if ((pat >> p) & 1u) {
                offsets[pat] |= std::uint64_t(1) << qubits[p];
            }
        }
    }
    return offsets;
}

// Fixed-size loops for the 4x4 and 8x8 kernel classes; DIM known at compile
// time keeps the inner matrix product in registers.
template <class T, std::size_t DIM>
void kernel_kq_fixed(std::complex<T> *amps, std::size_t n, const Matrix &m,
                     const std::vector<std::uint32_t> &qubits, std::size_t workers) {
    const std::size_t k = qubits.size();
    const std::uint64_t groups = std::uint64_t(1) << (n - k);
    const std::vector<std::uint64_t> offsets = group_offsets(qubits);

    parallel_for(groups, workers, [&](std::uint64_t begin, std::uint64_t end) {
        Complex tmp[DIM], res[DIM];
        for (std::uint64_t g = begin; g < end; ++g) {
            std::uint64_t base = g;
            for (std::size_t p = 0; p < k; ++p) {
                base = insert_bit(base, qubits[p], 0);
            }
            for (std::size_t pat = 0; pat < DIM; ++pat) {
                tmp[pat] = widen(amps[base | offsets[pat]]);
            }
            for (std::size_t row = 0; row < DIM; ++row) {
                Complex acc(0.0, 0.0);
                const Complex *mrow = &m.a[row * DIM];
                for (std::size_t col = 0; col < DIM; ++col) {
                    acc += mrow[col] * tmp[col];
                }
                res[row] = acc;
            }
            for (std::size_t pat = 0; pat < DIM; ++pat) {
                amps[base | offsets[pat]] = narrow<T>(res[pat]);
            }
        }
    });
}

// Generic gather/scatter path for any fused width.
template <class T>
void kernel_kq(std::complex<T> *amps, std::size_t n, const Matrix &m,
               const std::vector<std::uint32_t> &qubits, std::size_t workers) {
    const std::size_t k = qubits.size();
    if (k == 2) {
        kernel_kq_fixed<T, 4>(amps, n, m, qubits, workers);
        return;
    }
    if (k == 3) {
        kernel_kq_fixed<T, 8>(amps, n, m, qubits, workers);
        return;
    }
    const std::size_t dim = std::size_t(1) << k;
    const std::uint64_t groups = std::uint64_t(1) << (n - k);
    const std::vector<std::uint64_t> offsets = group_offsets(qubits);

    parallel_for(groups, workers, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<Complex> tmp(dim), res(dim);
        for (std::uint64_t g = begin; g < end; ++g) {
            std::uint64_t base = g;
            for (std::size_t p = 0; p < k; ++p) {
                base = insert_bit(base, qubits[p], 0);
            }
            for (std::size_t pat = 0; pat < dim; ++pat) {
                tmp[pat] = widen(amps[base | offsets[pat]]);
            }
            for (std::size_t row = 0; row < dim; ++row) {
                Complex acc(0.0, 0.0);
                const Complex *mrow = &m.a[row * dim];
                for (std::size_t col = 0; col < dim; ++col) {
                    acc += mrow[col] * tmp[col];
                }
                res[row] = acc;
            }
            for (std::size_t pat = 0; pat < dim; ++pat) {
                amps[base | offsets[pat]] = narrow<T>(res[pat]);
            }
        }
    });
}

// ---------------------------------------------------------------------------
// Gate preparation and dispatch
// ---------------------------------------------------------------------------

enum class KernelPath { one_q, controlled, k_q, none };

struct Prepared {
    KernelPath path = KernelPath::none;
    Matrix m;
    std::vector<std::uint32_t> qubits; // sorted, k_q path
    std::vector<std::uint32_t> controls;
    std::uint32_t target = 0;
    std::size_t k_targets = 0;
    std::size_t n_controls = 0;
};

Prepared prepare_gate(const Gate &g) {
    Prepared p;
    if (!g.is_unitary_kind()) {
        return p;
    }
    p.k_targets = g.targets.size();
    p.n_controls = g.controls.size();
    if (!g.controls.empty()) {
        p.path = KernelPath::controlled;
        p.m = gate_matrix(g);
        p.controls = g.controls;
        p.target = g.targets.at(0);
        return p;
    }
    if (g.targets.size() == 1) {
        p.path = KernelPath::one_q;
        p.m = gate_matrix(g);
        p.target = g.targets[0];
        return p;
    }
    p.path = KernelPath::k_q;
    p.m = permute_to_sorted(gate_matrix(g), g.targets, p.qubits);
    return p;
}

template <class T>
void apply_prepared_raw(std::complex<T> *amps, std::size_t n, const Prepared &p,
                        std::size_t workers) {
    switch (p.path) {
    case KernelPath::one_q:
        kernel_1q(amps, n, p.m, p.target, workers);
        return;
    case KernelPath::controlled:
        kernel_controlled(amps, n, p.m, p.controls, p.target, workers);
        return;
    case KernelPath::k_q:
        kernel_kq(amps, n, p.m, p.qubits, workers);
        return;
    case KernelPath::none:
        return;
    }
}

void apply_prepared(StateVector &s, const Prepared &p, std::size_t workers) {
    if (p.path == KernelPath::none) {
        return;
    }
    std::uint32_t top = 0;
    for (std::uint32_t q : p.qubits) {
        top = std::max(top, q);
    }
    if (p.path != KernelPath::k_q) {
        top = p.target;
        for (std::uint32_t q : p.controls) {
            top = std::max(top, q);
        }
    }
    if (top >= s.num_qubits()) {
        throw Error("gate operand out of range for this state");
    }
    if (s.is_single()) {
        apply_prepared_raw(s.data_f(), s.num_qubits(), p, workers);
    } else {
        apply_prepared_raw(s.data_d(), s.num_qubits(), p, workers);
    }
}

std::map<std::string, std::uint64_t>
format_counts(const std::map<std::uint64_t, std::uint64_t> &indices, std::size_t n_qubits,
              const std::vector<std::pair<std::uint32_t, std::uint32_t>> &measure_map,
              std::size_t n_cbits) {
    std::map<std::string, std::uint64_t> out;
    for (const auto &[index, count] : indices) {
        std::string key;
        if (measure_map.empty()) {
            key.resize(n_qubits);
            for (std::size_t q = 0; q < n_qubits; ++q) {
                key[n_qubits - 1 - q] = ((index >> q) & 1u) ? '1' : '0';
            }
        } else {
            key.assign(n_cbits, '0');
            for (const auto &[q, cb] : measure_map) {
                key[n_cbits - 1 - cb] = ((index >> q) & 1u) ? '1' : '0';
            }
        }
        out[key] += count;
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Public kernel wrappers
// ---------------------------------------------------------------------------

void apply_1q(StateVector &s, const Matrix &m, std::uint32_t target, std::size_t workers) {
    if (m.dim != 2) {
        throw Error("apply_1q needs a 2x2 matrix");
    }
    if (target >= s.num_qubits()) {
        throw Error("apply_1q: target out of range");
    }
    Prepared p;
    p.path = KernelPath::one_q;
    p.m = m;
    p.target = target;
    apply_prepared(s, p, workers);
}

void apply_controlled(StateVector &s, const Matrix &m,
                      const std::vector<std::uint32_t> &controls, std::uint32_t target,
                      std::size_t workers) {
    if (m.dim != 2) {
        throw Error("apply_controlled needs a 2x2 matrix");
    }
    std::vector<std::uint32_t> all = controls;
    all.push_back(target);
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw Error("apply_controlled: overlapping operands");
    }
    if (!all.empty() && all.back() >= s.num_qubits()) {
        throw Error("apply_controlled: operand out of range");
    }
    Prepared p;
    p.path = KernelPath::controlled;
    p.m = m;
    p.controls = controls;
    p.target = target;
    apply_prepared(s, p, workers);
}

void apply_kq(StateVector &s, const Matrix &m, const std::vector<std::uint32_t> &qubits,
              std::size_t workers) {
    if (qubits.empty() || m.dim != (std::size_t(1) << qubits.size())) {
        throw Error("apply_kq: matrix dimension does not match qubit count");
    }
    if (!std::is_sorted(qubits.begin(), qubits.end()) ||
        std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end()) {
        throw Error("apply_kq: qubits must be sorted and distinct");
    }
    if (qubits.back() >= s.num_qubits()) {
        throw Error("apply_kq: operand out of range");
    }
    Prepared p;
    p.path = qubits.size() == 1 ? KernelPath::one_q : KernelPath::k_q;
    p.m = m;
    p.qubits = qubits;
    p.target = qubits[0];
    apply_prepared(s, p, workers);
}

void apply_gate(StateVector &s, const Gate &g, std::size_t workers) {
    apply_prepared(s, prepare_gate(g), workers);
}

// ---------------------------------------------------------------------------
// ChunkedState
// ---------------------------------------------------------------------------

ChunkedState::ChunkedState(std::size_t n_qubits, std::size_t blocking_qubits, Precision p,
                           std::size_t worker_count, const MemoryLimits &limits)
    : n_qubits_(n_qubits), blocking_(blocking_qubits), precision_(p),
      workers_(std::max<std::size_t>(1, worker_count)) {
    if (blocking_qubits < 1 || blocking_qubits > n_qubits) {
        throw BlockingError("blocking_qubits must be in [1, n_qubits]");
    }
    std::uint64_t required = memory_bytes(n_qubits, p);
    if (n_qubits > limits.max_qubits || required > limits.budget_bytes) {
        throw CapacityError("state vector for " + std::to_string(n_qubits) + " qubits requires " +
                                std::to_string(required) + " bytes (budget " +
                                std::to_string(limits.budget_bytes) + " bytes, max " +
                                std::to_string(limits.max_qubits) + " qubits)",
                            required, limits.budget_bytes);
    }
    std::size_t chunks = std::size_t(1) << (n_qubits - blocking_qubits);
    std::size_t chunk_len = std::size_t(1) << blocking_qubits;
    if (p == Precision::single_fp) {
        chunks_f_.assign(chunks, std::vector<std::complex<float>>(chunk_len, {0.0f, 0.0f}));
        chunks_f_[0][0] = {1.0f, 0.0f};
    } else {
        chunks_d_.assign(chunks, std::vector<std::complex<double>>(chunk_len, {0.0, 0.0}));
        chunks_d_[0][0] = {1.0, 0.0};
    }
}

std::complex<double> ChunkedState::amplitude(std::uint64_t global_index) const {
    std::uint64_t chunk = global_index >> blocking_;
    std::uint64_t local = global_index & ((std::uint64_t(1) << blocking_) - 1);
    if (is_single()) {
        return widen(chunks_f_[static_cast<std::size_t>(chunk)][static_cast<std::size_t>(local)]);
    }
    return chunks_d_[static_cast<std::size_t>(chunk)][static_cast<std::size_t>(local)];
}

double ChunkedState::norm_sq() const {
    double total = 0.0;
    for (std::size_t c = 0; c < chunk_count(); ++c) {
        if (is_single()) {
            for (const auto &v : chunks_f_[c]) {
                total += static_cast<double>(v.real()) * v.real() +
                         static_cast<double>(v.imag()) * v.imag();
            }
        } else {
            for (const auto &v : chunks_d_[c]) {
                total += std::norm(v);
            }
        }
    }
    return total;
}

void ChunkedState::exchange(std::uint32_t low_bit, std::uint32_t high_bit) {
    if (low_bit >= blocking_ || high_bit < blocking_ || high_bit >= n_qubits_) {
        throw BlockingError("exchange bits must straddle the blocking boundary");
    }
    const std::uint32_t chunk_bit = high_bit - static_cast<std::uint32_t>(blocking_);
    const std::uint64_t lmask = std::uint64_t(1) << low_bit;
    const std::uint64_t chunk_len = std::uint64_t(1) << blocking_;
    for (std::uint64_t c0 = 0; c0 < chunk_count(); ++c0) {
        if ((c0 >> chunk_bit) & 1u) {
            continue;
        }
        std::size_t c1 = static_cast<std::size_t>(c0 | (std::uint64_t(1) << chunk_bit));
        for (std::uint64_t l = 0; l < chunk_len; ++l) {
            if (l & lmask) {
                std::size_t partner = static_cast<std::size_t>(l ^ lmask);
                if (is_single()) {
                    std::swap(chunks_f_[static_cast<std::size_t>(c0)][static_cast<std::size_t>(l)],
                              chunks_f_[c1][partner]);
                } else {
                    std::swap(chunks_d_[static_cast<std::size_t>(c0)][static_cast<std::size_t>(l)],
                              chunks_d_[c1][partner]);
                }
            }
        }
    }
}

StateVector ChunkedState::to_monolithic() && {
    StateVector out = uninitialized_state(n_qubits_, precision_);
    std::size_t chunk_len = std::size_t(1) << blocking_;
    for (std::size_t c = 0; c < chunk_count(); ++c) {
        if (is_single()) {
            std::copy(chunks_f_[c].begin(), chunks_f_[c].end(), out.data_f() + c * chunk_len);
        } else {
            std::copy(chunks_d_[c].begin(), chunks_d_[c].end(), out.data_d() + c * chunk_len);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

namespace {

void check_norm_for_sampling(double total) {
    if (std::abs(total - 1.0) > 1e-6) {
        throw NormalizationError("state norm " + std::to_string(total) +
                                 " deviates from 1 by more than 1e-6");
    }
}

} // namespace

std::map<std::uint64_t, std::uint64_t> sample_indices(const StateVector &s, std::uint64_t shots,
                                                      std::uint64_t seed) {
    std::vector<double> prefix(static_cast<std::size_t>(s.size()));
    double running = 0.0;
    for (std::uint64_t i = 0; i < s.size(); ++i) {
        running += std::norm(s.amplitude(i));
        prefix[static_cast<std::size_t>(i)] = running;
    }
    check_norm_for_sampling(running);

    std::map<std::uint64_t, std::uint64_t> counts;
    Rng rng(seed);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        double u = rng.next_double() * running;
        auto it = std::upper_bound(prefix.begin(), prefix.end(), u);
        std::uint64_t index = (it == prefix.end()) ? s.size() - 1
                                                   : static_cast<std::uint64_t>(it - prefix.begin());
        counts[index] += 1;
    }
    return counts;
}

std::map<std::uint64_t, std::uint64_t> sample_indices(const ChunkedState &s, std::uint64_t shots,
                                                      std::uint64_t seed) {
    const std::size_t chunks = s.chunk_count();
    const std::uint64_t chunk_len = std::uint64_t(1) << s.blocking_qubits();
    std::vector<std::vector<double>> prefix(chunks);
    std::vector<double> chunk_cum(chunks);
    double running = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
        prefix[c].resize(static_cast<std::size_t>(chunk_len));
        double local = 0.0;
        for (std::uint64_t l = 0; l < chunk_len; ++l) {
            local += std::norm(s.amplitude((std::uint64_t(c) << s.blocking_qubits()) | l));
            prefix[c][static_cast<std::size_t>(l)] = local;
        }
        running += local;
        chunk_cum[c] = running;
    }
    check_norm_for_sampling(running);

    std::map<std::uint64_t, std::uint64_t> counts;
    Rng rng(seed);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        double u = rng.next_double() * running;
        auto cit = std::upper_bound(chunk_cum.begin(), chunk_cum.end(), u);
        std::size_t c = (cit == chunk_cum.end()) ? chunks - 1
                                                 : static_cast<std::size_t>(cit - chunk_cum.begin());
        double below = (c == 0) ? 0.0 : chunk_cum[c - 1];
        double local_u = u - below;
        auto lit = std::upper_bound(prefix[c].begin(), prefix[c].end(), local_u);
        std::uint64_t l = (lit == prefix[c].end())
                              ? chunk_len - 1
                              : static_cast<std::uint64_t>(lit - prefix[c].begin());
        counts[(std::uint64_t(c) << s.blocking_qubits()) | l] += 1;
    }
    return counts;
}

std::map<std::string, std::uint64_t> sample(const StateVector &s, std::uint64_t shots,
                                            std::uint64_t seed) {
    return format_counts(sample_indices(s, shots, seed), s.num_qubits(), {}, 0);
}

// ---------------------------------------------------------------------------
// Monolithic run
// ---------------------------------------------------------------------------

RunResult run(const Circuit &c, const RunConfig &cfg) {
    validate_or_throw(c);
    auto t_start = Clock::now();

    Circuit transpiled = fuse_pass(c, cfg.fusion);

    if (cfg.blocking_qubits) {
        BlockingPlan plan = block_pass(transpiled, *cfg.blocking_qubits);
        double prep = seconds_since(t_start);
        RunResult result = run_chunked(plan, cfg);
        result.ledger.phases.initialize += prep;
        result.ledger.phases.wall += prep;
        return result;
    }

    RunResult result;
    result.executed_stats = stats(transpiled);

    StateVector state = init_zero_state(c.n_qubits, cfg.precision, cfg.limits);
    result.ledger.phases.initialize = seconds_since(t_start);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> measure_map;
    double compute_seconds = 0.0;
    for (const Gate &g : transpiled.gates) {
        if (g.kind == GateKind::BARRIER) {
            continue;
        }
        if (g.kind == GateKind::MEASURE) {
            for (std::size_t i = 0; i < g.targets.size(); ++i) {
                measure_map.emplace_back(g.targets[i], g.cbits[i]);
            }
            continue;
        }
        auto t_gate = Clock::now();
        apply_gate(state, g, cfg.worker_count);
        double dt = seconds_since(t_gate);
        compute_seconds += dt;
        result.ledger.add_gate(
            kernel_cost(g.targets.size(), g.controls.size(), c.n_qubits, cfg.precision), dt);
    }
    result.ledger.phases.compute = compute_seconds;

    auto t_final = Clock::now();
    if (cfg.shots > 0) {
        result.counts = format_counts(sample_indices(state, cfg.shots, cfg.seed), c.n_qubits,
                                      measure_map, c.n_cbits);
    }
    result.ledger.phases.finalize = seconds_since(t_final);
    result.ledger.phases.wall = seconds_since(t_start);

    if (cfg.keep_state) {
        result.final_state = std::move(state);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Chunked run
// ---------------------------------------------------------------------------

RunResult run_chunked(const BlockingPlan &plan, const RunConfig &cfg) {
    auto t_start = Clock::now();
    const std::size_t n = plan.n_qubits;
    const std::size_t b = plan.blocking_qubits;
    const std::size_t workers = std::max<std::size_t>(1, cfg.worker_count);

    RunResult result;
    result.executed_stats = stats(plan.rewritten);

    ChunkedState state(n, b, cfg.precision, workers, cfg.limits);
    result.ledger.phases.initialize = seconds_since(t_start);

    const std::uint64_t moved_bytes_per_exchange =
        (std::uint64_t(1) << (n - 1)) * amplitude_bytes(cfg.precision);
    const std::uint64_t pair_bytes = (std::uint64_t(1) << b) * amplitude_bytes(cfg.precision);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> measure_map;
    std::vector<Prepared> segment;
    std::vector<std::pair<std::size_t, std::size_t>> segment_shape; // (targets, controls)
    double compute_seconds = 0.0;
    double transfer_seconds = 0.0;

    auto flush_segment = [&] {
        if (segment.empty()) {
            return;
        }
        auto t_seg = Clock::now();
        // Each worker walks its own chunks; chunk results are independent of
        // the assignment, so any worker count gives identical amplitudes.
        std::vector<std::map<KernelClass, double>> worker_seconds(workers);
        auto work = [&](std::size_t w) {
            for (std::size_t chunk = w; chunk < state.chunk_count(); chunk += workers) {
                for (std::size_t gi = 0; gi < segment.size(); ++gi) {
                    auto t_gate = Clock::now();
                    if (state.is_single()) {
                        apply_prepared_raw(state.chunk_f(chunk), b, segment[gi], 1);
                    } else {
                        apply_prepared_raw(state.chunk_d(chunk), b, segment[gi], 1);
                    }
                    KernelClass cls = kernel_class_for(segment_shape[gi].first,
                                                       segment_shape[gi].second);
                    worker_seconds[w][cls] += seconds_since(t_gate);
                }
            }
        };
        std::vector<std::thread> threads;
        for (std::size_t w = 1; w < workers; ++w) {
            threads.emplace_back(work, w);
        }
        work(0);
        for (auto &t : threads) {
            t.join();
        }
        for (const auto &per_class : worker_seconds) {
            for (const auto &[cls, secs] : per_class) {
                result.ledger.per_class[cls].seconds += secs;
            }
        }
        compute_seconds += seconds_since(t_seg);
        segment.clear();
        segment_shape.clear();
    };

    for (std::size_t i = 0; i < plan.rewritten.gates.size(); ++i) {
        const Gate &g = plan.rewritten.gates[i];
        if (plan.exchange[i]) {
            flush_segment();
            auto t_x = Clock::now();
            std::uint32_t low = std::min(g.targets[0], g.targets[1]);
            std::uint32_t high = std::max(g.targets[0], g.targets[1]);
            const std::uint32_t chunk_bit = high - static_cast<std::uint32_t>(b);
            for (std::uint64_t c0 = 0; c0 < state.chunk_count(); ++c0) {
                if ((c0 >> chunk_bit) & 1u) {
                    continue;
                }
                std::size_t c1 = static_cast<std::size_t>(c0 | (std::uint64_t(1) << chunk_bit));
                if (state.worker_of(static_cast<std::size_t>(c0)) != state.worker_of(c1)) {
                    result.ledger.cross_worker_bytes += pair_bytes;
                }
            }
            state.exchange(low, high);
            result.ledger.inter_chunk_bytes += moved_bytes_per_exchange;
            transfer_seconds += seconds_since(t_x);
            continue;
        }
        if (g.kind == GateKind::BARRIER) {
            continue;
        }
        if (g.kind == GateKind::MEASURE) {
            for (std::size_t t = 0; t < g.targets.size(); ++t) {
                measure_map.emplace_back(g.targets[t], g.cbits[t]);
            }
            continue;
        }
        result.ledger.add_gate(
            kernel_cost(g.targets.size(), g.controls.size(), n, cfg.precision), 0.0);
        segment.push_back(prepare_gate(g));
        segment_shape.emplace_back(g.targets.size(), g.controls.size());
    }
    flush_segment();

    result.ledger.phases.compute = compute_seconds;
    result.ledger.phases.transfer = transfer_seconds;

    auto t_final = Clock::now();
    if (cfg.shots > 0) {
        result.counts = format_counts(sample_indices(state, cfg.shots, cfg.seed), n, measure_map,
                                      plan.rewritten.n_cbits);
    }
    result.ledger.phases.finalize = seconds_since(t_final);
    result.ledger.phases.wall = seconds_since(t_start);

    if (cfg.keep_state) {
        result.final_state = std::move(state).to_monolithic();
    }
    return result;
}

PhaseBreakdown phase_breakdown(const RunResult &r) {
    const PhaseTimes &p = r.ledger.phases;
    double accounted = p.initialize + p.transfer + p.compute + p.finalize;
    double denom = std::max(p.wall, accounted);
    PhaseBreakdown out;
    if (denom <= 0.0) {
        out.idle = 1.0;
        return out;
    }
    out.initialize = p.initialize / denom;
    out.transfer = p.transfer / denom;
    out.compute = p.compute / denom;
    out.finalize = p.finalize / denom;
    out.idle = (denom - accounted) / denom;
    return out;
}

} // namespace qsv
