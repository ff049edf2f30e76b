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

#pragma once

#include <map>
#include <optional>
#include <string>

#include "qsv/circuit.hpp"
#include "qsv/core.hpp"
#include "qsv/ledger.hpp"
#include "qsv/transpiler.hpp"

namespace qsv {

// ---------------------------------------------------------------------------
// Gate application kernels
// ---------------------------------------------------------------------------

/// 2x2 matrix against every amplitude pair differing in bit `target`.
/// Single-precision states accumulate in double internally, as all kernels
/// here do. Amplitude groups are disjoint, so any worker count produces
/// bit-identical results.
void apply_1q(StateVector &s, const Matrix &m, std::uint32_t target, std::size_t workers = 1);

/// The 2x2 update fires only on index pairs whose control bits are all one.
void apply_controlled(StateVector &s, const Matrix &m,
                      const std::vector<std::uint32_t> &controls, std::uint32_t target,
                      std::size_t workers = 1);

/// Dense 2^k x 2^k matrix over `qubits` (sorted ascending; matrix index bit
/// p corresponds to qubits[p]). Specialized loops cover k <= 3, a generic
/// gather/scatter path the rest.
void apply_kq(StateVector &s, const Matrix &m, const std::vector<std::uint32_t> &qubits,
              std::size_t workers = 1);

/// Kind dispatch onto the kernels above. MEASURE and BARRIER are no-ops.
void apply_gate(StateVector &s, const Gate &g, std::size_t workers = 1);

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

struct RunConfig {
    Precision precision = Precision::double_fp;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    FusionConfig fusion;
    std::optional<std::size_t> blocking_qubits;
    std::size_t worker_count = 1;
    bool keep_state = true;
    MemoryLimits limits = default_limits();
};

struct RunResult {
    std::optional<StateVector> final_state;
    std::map<std::string, std::uint64_t> counts;
    PerfLedger ledger;
    CircuitStats executed_stats; // stats of the circuit actually executed
};

/// The state vector partitioned into 2^(n-b) chunks of 2^b amplitudes;
/// chunk i holds global indices [i * 2^b, (i+1) * 2^b). Chunks are assigned
/// to workers round robin by chunk index.
class ChunkedState {
  public:
    ChunkedState(std::size_t n_qubits, std::size_t blocking_qubits, Precision p,
                 std::size_t worker_count, const MemoryLimits &limits = default_limits());

    std::size_t num_qubits() const { return n_qubits_; }
    std::size_t blocking_qubits() const { return blocking_; }
    std::size_t chunk_count() const { return std::size_t(1) << (n_qubits_ - blocking_); }
    std::size_t worker_count() const { return workers_; }
    std::size_t worker_of(std::size_t chunk) const { return chunk % workers_; }
    Precision precision() const { return precision_; }
    bool is_single() const { return precision_ == Precision::single_fp; }

    std::complex<float> *chunk_f(std::size_t i) { return chunks_f_[i].data(); }
    std::complex<double> *chunk_d(std::size_t i) { return chunks_d_[i].data(); }

    std::complex<double> amplitude(std::uint64_t global_index) const;
    double norm_sq() const;

    /// Physically move amplitudes between chunk pairs for an exchange
    /// SWAP(low_bit, high_bit) with high_bit >= blocking_qubits > low_bit.
    void exchange(std::uint32_t low_bit, std::uint32_t high_bit);

    /// Concatenate the chunks into one monolithic state (moves the data).
    StateVector to_monolithic() &&;

  private:
    std::size_t n_qubits_;
    std::size_t blocking_;
    Precision precision_;
    std::size_t workers_;
    std::vector<std::vector<std::complex<float>>> chunks_f_;
    std::vector<std::vector<std::complex<double>>> chunks_d_;
};

/// Validate, fuse per the config, then execute: monolithically, or through
/// block_pass + run_chunked when blocking_qubits is set. Shots are sampled
/// from the one final state, never by re-execution. Mid-circuit measurement
/// is rejected by validation.
RunResult run(const Circuit &c, const RunConfig &cfg);

/// Execute a blocking plan chunk by chunk. Compute gates touch only their
/// own chunk; every exchange swap moves exactly 2^(n-1) amplitudes between
/// chunk pairs and is charged to the ledger (cross-worker bytes tracked when
/// the pair spans workers). The final state equals the monolithic run and is
/// bit-identical across worker counts.
RunResult run_chunked(const BlockingPlan &plan, const RunConfig &cfg);

// ---------------------------------------------------------------------------
// Measurement sampling
// ---------------------------------------------------------------------------

/// Draw `shots` outcomes i.i.d. from |amp|^2 by inverse transform: a prefix
/// sum over probabilities and one binary search per shot. Throws
/// NormalizationError when the norm strays more than 1e-6 from one.
std::map<std::uint64_t, std::uint64_t> sample_indices(const StateVector &s, std::uint64_t shots,
                                                      std::uint64_t seed);

/// Chunked variant: per-chunk prefix sums, a chunk-level search, then the
/// intra-chunk search.
std::map<std::uint64_t, std::uint64_t> sample_indices(const ChunkedState &s, std::uint64_t shots,
                                                      std::uint64_t seed);

/// Bitstring-keyed sampling (qubit n-1 leftmost).
std::map<std::string, std::uint64_t> sample(const StateVector &s, std::uint64_t shots,
                                            std::uint64_t seed);

struct PhaseBreakdown {
    double initialize = 0.0;
    double transfer = 0.0;
    double compute = 0.0;
    double finalize = 0.0;
    double idle = 0.0;
};

/// Wall-time fractions per phase; they sum to one, idle absorbing whatever
/// the instrumented phases did not cover.
PhaseBreakdown phase_breakdown(const RunResult &r);

} // namespace qsv
