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

#include <cstdint>
#include <vector>

#include "qsv/circuit.hpp"
#include "qsv/core.hpp"

namespace qsv {

struct FusionConfig {
    bool enabled = true;
    std::size_t fusion_threshold = 14; // circuits below this qubit count pass through
    std::size_t max_fused_qubits = 3;  // up to 8x8 fused matrices by default
};

/// One fused group: the explicit unitary over its sorted qubits and the
/// indices of the source gates it replaced.
struct FusedUnitary {
    std::vector<std::uint32_t> qubits;
    Matrix matrix;
    std::vector<std::size_t> provenance;
};

struct FusionResult {
    Circuit circuit;
    std::vector<FusedUnitary> groups; // groups of size >= 2 only
};

/// Greedy forward gate fusion. A unitary gate joins the open group while the
/// union of qubits stays within max_fused_qubits; otherwise the group is
/// flushed as one explicit unitary (members embedded into the group space
/// and multiplied in program order). Controls fold into the matrix when the
/// full span fits; wider gates pass through untouched. Groups of one keep
/// the original gate. MEASURE and BARRIER flush and pass through. Circuits
/// below the threshold return unchanged.
FusionResult fuse_pass_detailed(const Circuit &c, const FusionConfig &cfg);
Circuit fuse_pass(const Circuit &c, const FusionConfig &cfg);

/// Result of the cache-blocking pass: every rewritten compute gate touches
/// only physical qubits below `blocking_qubits`; `exchange[i]` marks the
/// inserted boundary-crossing swaps that move amplitudes between chunks.
/// After the trailing restore sequence the logical-to-physical layout is the
/// identity again.
struct BlockingPlan {
    std::size_t n_qubits = 0;
    std::size_t blocking_qubits = 0;
    Circuit rewritten;
    std::vector<bool> exchange; // aligned with rewritten.gates
    std::vector<std::uint32_t> final_layout; // logical -> physical (identity)
    std::size_t inserted_swaps = 0; // exchange swaps, restore included
};

/// Rewrite `c` so every gate acts below the blocking boundary, inserting
/// exchange swaps that remap high qubits onto the lowest free low qubit.
/// Throws BlockingError when a gate spans more than b qubits.
BlockingPlan block_pass(const Circuit &c, std::size_t blocking_qubits);

struct BlockingSweepRow {
    std::size_t blocking_qubits = 0;
    std::size_t inserted_swaps = 0;
    std::uint64_t predicted_inter_chunk_bytes = 0;
};

/// One row per candidate boundary, using the exchange traffic formula
/// (swaps * 2^(n-1) * amplitude bytes) without touching any amplitudes.
std::vector<BlockingSweepRow> sweep_blocking(const Circuit &c,
                                             const std::vector<std::size_t> &b_values,
                                             Precision precision = Precision::single_fp);

/// Replace every SU4 gate with an equivalent {u3, rz, ry, p, cx} sequence
/// (state equality up to global phase).
Circuit su4_decompose(const Circuit &c);

/// Replace every MCX/MCZ gate with an exact expansion over emittable kinds.
Circuit decompose_multicontrolled(const Circuit &c);

/// su4_decompose followed by decompose_multicontrolled; after this pass any
/// circuit free of raw UNITARY gates can be serialized.
Circuit decompose_to_native(const Circuit &c);

} // namespace qsv
