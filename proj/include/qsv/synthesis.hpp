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

namespace qsv {

/// Append an exact expansion of a multi-controlled X onto `out`.
///
/// Small cases map to X/CX/CCX directly. Larger gates use borrowed-qubit
/// Toffoli chains when at least one circuit qubit is outside the gate's
/// span (borrowed qubits are restored, their state may be arbitrary). A gate
/// spanning every circuit qubit falls back to a multi-controlled phase
/// construction over {H, CP, CX, CCX}; such a gate has no exact expansion
/// over Toffoli chains alone.
void append_mcx(std::vector<Gate> &out, const std::vector<std::uint32_t> &controls,
                std::uint32_t target, std::size_t n_qubits);

/// Append an exact expansion of the diagonal phase theta on the all-ones
/// subspace of `qubits` (a multi-controlled phase; pi gives multi-controlled
/// Z). Recursive halving over {P, CP} and borrowed-qubit Toffoli chains.
void append_mcp(std::vector<Gate> &out, const std::vector<std::uint32_t> &qubits, double theta,
                std::size_t n_qubits);

/// Extract u3 angles and a global phase from a 2x2 unitary:
/// m = exp(i*phase) * U(theta, phi, lambda).
struct OneQubitAngles {
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;
    double phase = 0.0;
};
OneQubitAngles decompose_one_qubit(const Matrix &m);

/// Exact decomposition of an arbitrary two-qubit unitary over `qubits`
/// (index bit 0 of the matrix = qubits[0]) into one-qubit gates and CX,
/// equivalent up to global phase. Cosine-sine based; six CX gates.
std::vector<Gate> decompose_two_qubit(const Matrix &m, std::uint32_t q0, std::uint32_t q1);

} // namespace qsv
