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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsv/matrix.hpp"

namespace qsv {

enum class GateKind {
    H,
    X,
    Y,
    Z,
    S,
    T,
    RX,
    RY,
    RZ,
    P,
    U,
    SQRT_X,
    SQRT_Y,
    CX,
    CP,
    CCX,
    SWAP,
    MCX,
    MCZ,
    SU4,
    UNITARY,
    MEASURE,
    BARRIER,
};

const char *gate_kind_name(GateKind k);

/// One instruction. `targets` power the gate matrix (index bit p of the
/// matrix corresponds to targets[p]); `controls` condition it; `payload`
/// carries the explicit matrix for SU4 and UNITARY kinds, row major.
struct Gate {
    GateKind kind = GateKind::BARRIER;
    std::vector<std::uint32_t> targets;
    std::vector<std::uint32_t> controls;
    std::vector<double> params;
    std::vector<Complex> payload;
    std::vector<std::uint32_t> cbits; // MEASURE only: classical bit per target

    std::size_t span() const { return targets.size() + controls.size(); }
    std::vector<std::uint32_t> operands() const;
    bool is_unitary_kind() const {
        return kind != GateKind::MEASURE && kind != GateKind::BARRIER;
    }

    static Gate h(std::uint32_t q) { return simple(GateKind::H, q); }
    static Gate x(std::uint32_t q) { return simple(GateKind::X, q); }
    static Gate y(std::uint32_t q) { return simple(GateKind::Y, q); }
    static Gate z(std::uint32_t q) { return simple(GateKind::Z, q); }
    static Gate s(std::uint32_t q) { return simple(GateKind::S, q); }
    static Gate t(std::uint32_t q) { return simple(GateKind::T, q); }
    static Gate sqrt_x(std::uint32_t q) { return simple(GateKind::SQRT_X, q); }
    static Gate sqrt_y(std::uint32_t q) { return simple(GateKind::SQRT_Y, q); }
    static Gate rx(double theta, std::uint32_t q) { return param1(GateKind::RX, theta, q); }
    static Gate ry(double theta, std::uint32_t q) { return param1(GateKind::RY, theta, q); }
    static Gate rz(double theta, std::uint32_t q) { return param1(GateKind::RZ, theta, q); }
    static Gate p(double theta, std::uint32_t q) { return param1(GateKind::P, theta, q); }
    static Gate u(double theta, double phi, double lambda, std::uint32_t q);
    static Gate cx(std::uint32_t control, std::uint32_t target);
    static Gate cp(double theta, std::uint32_t control, std::uint32_t target);
    static Gate ccx(std::uint32_t c0, std::uint32_t c1, std::uint32_t target);
    static Gate swap(std::uint32_t a, std::uint32_t b);
    static Gate mcx(std::vector<std::uint32_t> controls, std::uint32_t target);
    static Gate mcz(std::vector<std::uint32_t> controls, std::uint32_t target);
    static Gate su4(std::uint32_t q0, std::uint32_t q1, Matrix m);
    static Gate unitary(std::vector<std::uint32_t> qubits, Matrix m);
    static Gate measure(std::uint32_t qubit, std::uint32_t cbit);
    static Gate barrier(std::vector<std::uint32_t> qubits);

  private:
    static Gate simple(GateKind k, std::uint32_t q);
    static Gate param1(GateKind k, double theta, std::uint32_t q);
};

struct CircuitMetadata {
    std::string name;
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, std::string>> params;
};

struct Circuit {
    std::size_t n_qubits = 0;
    std::size_t n_cbits = 0;
    std::vector<Gate> gates;
    CircuitMetadata metadata;
};

struct CircuitStats {
    std::size_t total_gates = 0;    // unitary gates only
    std::size_t depth = 0;          // ASAP layering over per-qubit dependencies
    std::size_t non_local_gates = 0; // gates whose operand set spans >= 2 qubits
    double non_local_fraction = 0.0;
    int non_local_percent = 0; // fraction rounded to whole percent
    std::map<GateKind, std::size_t> histogram;
};

/// Matrix of the gate's target action (2^t x 2^t over `targets`); control
/// semantics are applied separately. Throws for MEASURE/BARRIER.
Matrix gate_matrix(const Gate &g);

/// Matrix over the gate's full span (controls folded in as a conditional
/// block), index bits ordered by sorted(controls + targets).
Matrix gate_full_matrix(const Gate &g, std::vector<std::uint32_t> &span_out);

/// Product matrix(g2) * matrix(g1) for two control-free gates on identical
/// target sets; g1 is applied first.
Matrix compose_same_target(const Gate &g1, const Gate &g2);

/// Combined operator for control-free gates on disjoint qubit sets, laid out
/// little endian over the union sorted ascending.
Matrix tensor_expand(const Gate &g1, const Gate &g2);

CircuitStats stats(const Circuit &c);

/// All structural violations (bounds, operand overlap, trailing-measure
/// rule, payload unitarity, arity); empty when the circuit is well formed.
std::vector<std::string> validate(const Circuit &c);

/// Throws ValidationError when validate() reports issues.
void validate_or_throw(const Circuit &c);

/// Structural equality; angles and payload entries compared within
/// `tolerance` (0 for exact).
bool gates_equal(const Gate &a, const Gate &b, double tolerance);
bool circuits_equal(const Circuit &a, const Circuit &b, double tolerance);

} // namespace qsv
