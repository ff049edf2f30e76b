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

#include "qsv/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qsv/error.hpp"

namespace qsv {

const char *gate_kind_name(GateKind k) {
    switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::S: return "S";
    case GateKind::T: return "T";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::P: return "P";
    case GateKind::U: return "U";
    case GateKind::SQRT_X: return "SQRT_X";
    case GateKind::SQRT_Y: return "SQRT_Y";
    case GateKind::CX: return "CX";
    case GateKind::CP: return "CP";
    case GateKind::CCX: return "CCX";
    case GateKind::SWAP: return "SWAP";
    case GateKind::MCX: return "MCX";
    case GateKind::MCZ: return "MCZ";
    case GateKind::SU4: return "SU4";
    case GateKind::UNITARY: return "UNITARY";
    case GateKind::MEASURE: return "MEASURE";
    case GateKind::BARRIER: return "BARRIER";
    }
    return "?";
}

std::vector<std::uint32_t> Gate::operands() const {
    std::vector<std::uint32_t> all = targets;
    all.insert(all.end(), controls.begin(), controls.end());
    return all;
}

Gate Gate::simple(GateKind k, std::uint32_t q) {
    Gate g;
    g.kind = k;
    g.targets = {q};
    return g;
}

Gate Gate::param1(GateKind k, double theta, std::uint32_t q) {
    Gate g = simple(k, q);
    g.params = {theta};
    return g;
}

Gate Gate::u(double theta, double phi, double lambda, std::uint32_t q) {
    Gate g = simple(GateKind::U, q);
    g.params = {theta, phi, lambda};
    return g;
}

Gate Gate::cx(std::uint32_t control, std::uint32_t target) {
    Gate g = simple(GateKind::CX, target);
    g.controls = {control};
    return g;
}

Gate Gate::cp(double theta, std::uint32_t control, std::uint32_t target) {
    Gate g = param1(GateKind::CP, theta, target);
    g.controls = {control};
    return g;
}

Gate Gate::ccx(std::uint32_t c0, std::uint32_t c1, std::uint32_t target) {
    Gate g = simple(GateKind::CCX, target);
    g.controls = {c0, c1};
    return g;
}

Gate Gate::swap(std::uint32_t a, std::uint32_t b) {
    Gate g;
    g.kind = GateKind::SWAP;
    g.targets = {a, b};
    return g;
}

Gate Gate::mcx(std::vector<std::uint32_t> controls, std::uint32_t target) {
    Gate g = simple(GateKind::MCX, target);
    g.controls = std::move(controls);
    return g;
}

Gate Gate::mcz(std::vector<std::uint32_t> controls, std::uint32_t target) {
    Gate g = simple(GateKind::MCZ, target);
    g.controls = std::move(controls);
    return g;
}

Gate Gate::su4(std::uint32_t q0, std::uint32_t q1, Matrix m) {
    Gate g;
    g.kind = GateKind::SU4;
    g.targets = {q0, q1};
    g.payload = std::move(m.a);
    return g;
}

Gate Gate::unitary(std::vector<std::uint32_t> qubits, Matrix m) {
    Gate g;
    g.kind = GateKind::UNITARY;
    g.targets = std::move(qubits);
    g.payload = std::move(m.a);
    return g;
}

Gate Gate::measure(std::uint32_t qubit, std::uint32_t cbit) {
    Gate g;
    g.kind = GateKind::MEASURE;
    g.targets = {qubit};
    g.cbits = {cbit};
    return g;
}

Gate Gate::barrier(std::vector<std::uint32_t> qubits) {
    Gate g;
    g.kind = GateKind::BARRIER;
    g.targets = std::move(qubits);
    return g;
}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2);
    m.a = {a, b, c, d};
    return m;
}

Matrix target_matrix(const Gate &g) {
    using std::polar;
    switch (g.kind) {
    case GateKind::H:
        return mat2(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
    case GateKind::X:
    case GateKind::CX:
    case GateKind::CCX:
    case GateKind::MCX:
        return mat2(0, 1, 1, 0);
    case GateKind::Y:
        return mat2(0, Complex(0, -1), Complex(0, 1), 0);
    case GateKind::Z:
    case GateKind::MCZ:
        return mat2(1, 0, 0, -1);
    case GateKind::S:
        return mat2(1, 0, 0, Complex(0, 1));
    case GateKind::T:
        return mat2(1, 0, 0, polar(1.0, std::numbers::pi / 4));
    case GateKind::SQRT_X:
        return mat2(Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5));
    case GateKind::SQRT_Y:
        return mat2(Complex(0.5, 0.5), Complex(-0.5, -0.5), Complex(0.5, 0.5), Complex(0.5, 0.5));
    case GateKind::RX: {
        double h = g.params.at(0) / 2;
        return mat2(std::cos(h), Complex(0, -std::sin(h)), Complex(0, -std::sin(h)), std::cos(h));
    }
    case GateKind::RY: {
        double h = g.params.at(0) / 2;
        return mat2(std::cos(h), -std::sin(h), std::sin(h), std::cos(h));
    }
    case GateKind::RZ: {
        double h = g.params.at(0) / 2;
        return mat2(polar(1.0, -h), 0, 0, polar(1.0, h));
    }
    case GateKind::P:
    case GateKind::CP:
        return mat2(1, 0, 0, polar(1.0, g.params.at(0)));
    case GateKind::U: {
        double th = g.params.at(0), phi = g.params.at(1), lam = g.params.at(2);
        double c = std::cos(th / 2), s = std::sin(th / 2);
        return mat2(c, -polar(1.0, lam) * s, polar(1.0, phi) * s, polar(1.0, phi + lam) * c);
    }
    case GateKind::SWAP: {
        Matrix m = Matrix::identity(4);
        m(1, 1) = m(2, 2) = 0;
        m(1, 2) = m(2, 1) = 1;
        return m;
    }
    case GateKind::SU4:
        return Matrix(4, g.payload);
    case GateKind::UNITARY: {
        std::size_t dim = std::size_t(1) << g.targets.size();
        if (g.payload.size() != dim * dim) {
            throw Error("UNITARY payload size does not match target count");
        }
        return Matrix(dim, g.payload);
    }
    case GateKind::MEASURE:
    case GateKind::BARRIER:
        break;
    }
    throw Error(std::string("gate kind ") + gate_kind_name(g.kind) + " has no matrix");
}

std::size_t expected_params(GateKind k) {
    switch (k) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::P:
    case GateKind::CP:
        return 1;
    case GateKind::U:
        return 3;
    default:
        return 0;
    }
}

// -1 means "any number of controls allowed" (MCX/MCZ).
int expected_controls(GateKind k) {
    switch (k) {
    case GateKind::CX:
    case GateKind::CP:
        return 1;
    case GateKind::CCX:
        return 2;
    case GateKind::MCX:
    case GateKind::MCZ:
        return -1;
    default:
        return 0;
    }
}

std::size_t expected_targets(GateKind k) {
    switch (k) {
    case GateKind::SWAP:
    case GateKind::SU4:
        return 2;
    case GateKind::UNITARY:
    case GateKind::BARRIER:
    case GateKind::MEASURE:
        return 0; // variable
    default:
        return 1;
    }
}

} // namespace

Matrix gate_matrix(const Gate &g) {
    if (!g.is_unitary_kind()) {
        throw Error(std::string("gate kind ") + gate_kind_name(g.kind) + " has no matrix");
    }
    return target_matrix(g);
}

Matrix gate_full_matrix(const Gate &g, std::vector<std::uint32_t> &span_out) {
    Matrix tm = gate_matrix(g);

    span_out = g.operands();
    std::sort(span_out.begin(), span_out.end());

    const std::size_t n = span_out.size();
    const std::uint64_t dim = std::uint64_t(1) << n;

    // Bit position of each target / control within the sorted span.
    std::vector<std::size_t> tpos(g.targets.size());
    std::uint64_t ctrl_mask = 0;
    for (std::size_t p = 0; p < g.targets.size(); ++p) {
        tpos[p] = static_cast<std::size_t>(
            std::lower_bound(span_out.begin(), span_out.end(), g.targets[p]) - span_out.begin());
    }
    for (std::uint32_t c : g.controls) {
        std::size_t pos = static_cast<std::size_t>(
            std::lower_bound(span_out.begin(), span_out.end(), c) - span_out.begin());
        ctrl_mask |= std::uint64_t(1) << pos;
    }

    Matrix out(static_cast<std::size_t>(dim));
    for (std::uint64_t col = 0; col < dim; ++col) {
        if ((col & ctrl_mask) != ctrl_mask) {
            out(static_cast<std::size_t>(col), static_cast<std::size_t>(col)) = 1.0;
            continue;
        }
        std::size_t mc = 0;
        for (std::size_t p = 0; p < tpos.size(); ++p) {
            mc |= ((col >> tpos[p]) & 1u) << p;
        }
        for (std::size_t mr = 0; mr < tm.dim; ++mr) {
            Complex v = tm(mr, mc);
            if (v == Complex(0.0, 0.0)) {
                continue;
            }
            std::uint64_t row = col;
            for (std::size_t p = 0; p < tpos.size(); ++p) {
                std::uint64_t bit = std::uint64_t(1) << tpos[p];
                row = (row & ~bit) | (((std::uint64_t(mr) >> p) & 1u) << tpos[p]);
            }
            out(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) = v;
        }
    }
    return out;
}

Matrix compose_same_target(const Gate &g1, const Gate &g2) {
    if (!g1.controls.empty() || !g2.controls.empty()) {
        throw Error("compose_same_target requires control-free gates");
    }
    std::vector<std::uint32_t> s1 = g1.targets, s2 = g2.targets;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) {
        throw Error("compose_same_target: target sets differ");
    }
    std::vector<std::uint32_t> sorted;
    Matrix m1 = permute_to_sorted(gate_matrix(g1), g1.targets, sorted);
    Matrix m2 = permute_to_sorted(gate_matrix(g2), g2.targets, sorted);
    return mul(m2, m1);
}

Matrix tensor_expand(const Gate &g1, const Gate &g2) {
    if (!g1.controls.empty() || !g2.controls.empty()) {
        throw Error("tensor_expand requires control-free gates");
    }
    std::set<std::uint32_t> seen(g1.targets.begin(), g1.targets.end());
    for (std::uint32_t q : g2.targets) {
        if (seen.count(q)) {
            throw Error("tensor_expand: qubit sets overlap");
        }
        seen.insert(q);
    }
    std::vector<std::uint32_t> all(seen.begin(), seen.end());
    Matrix e1 = embed(gate_matrix(g1), g1.targets, all);
    Matrix e2 = embed(gate_matrix(g2), g2.targets, all);
    return mul(e2, e1);
}

CircuitStats stats(const Circuit &c) {
    CircuitStats st;
    std::vector<std::size_t> qubit_layer(c.n_qubits, 0);

    for (const Gate &g : c.gates) {
        if (g.kind == GateKind::MEASURE) {
            continue;
        }
        if (g.kind == GateKind::BARRIER) {
            // Synchronize the listed qubits (all qubits when none listed).
            std::size_t level = 0;
            if (g.targets.empty()) {
                for (std::size_t q = 0; q < c.n_qubits; ++q) {
                    level = std::max(level, qubit_layer[q]);
                }
                for (std::size_t q = 0; q < c.n_qubits; ++q) {
                    qubit_layer[q] = level;
                }
            } else {
                for (std::uint32_t q : g.targets) {
                    level = std::max(level, qubit_layer[q]);
                }
                for (std::uint32_t q : g.targets) {
                    qubit_layer[q] = level;
                }
            }
            continue;
        }
        st.total_gates += 1;
        st.histogram[g.kind] += 1;
        std::vector<std::uint32_t> ops = g.operands();
        if (ops.size() >= 2) {
            st.non_local_gates += 1;
        }
        std::size_t layer = 0;
        for (std::uint32_t q : ops) {
            layer = std::max(layer, qubit_layer[q]);
        }
        layer += 1;
        for (std::uint32_t q : ops) {
            qubit_layer[q] = layer;
        }
        st.depth = std::max(st.depth, layer);
    }

    if (st.total_gates > 0) {
        st.non_local_fraction =
            static_cast<double>(st.non_local_gates) / static_cast<double>(st.total_gates);
        st.non_local_percent = static_cast<int>(std::lround(st.non_local_fraction * 100.0));
    }
    return st;
}

std::vector<std::string> validate(const Circuit &c) {
    std::vector<std::string> issues;
    bool measuring = false;

    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate &g = c.gates[i];
        const std::string where = "gate " + std::to_string(i) + " (" + gate_kind_name(g.kind) + ")";

        for (std::uint32_t q : g.operands()) {
            if (q >= c.n_qubits) {
                issues.push_back(where + ": qubit " + std::to_string(q) + " out of range");
            }
        }
        std::set<std::uint32_t> distinct;
        for (std::uint32_t q : g.operands()) {
            if (!distinct.insert(q).second) {
                issues.push_back(where + ": overlapping operands at gate " + std::to_string(i));
                break;
            }
        }

        if (g.kind == GateKind::MEASURE) {
            measuring = true;
            if (g.cbits.size() != g.targets.size()) {
                issues.push_back(where + ": classical bit count mismatch");
            }
            for (std::uint32_t cb : g.cbits) {
                if (cb >= c.n_cbits) {
                    issues.push_back(where + ": classical bit " + std::to_string(cb) +
                                     " out of range");
                }
            }
            continue;
        }
        if (measuring) {
            issues.push_back(where + ": only measurements may follow the first measurement");
        }
        if (g.kind == GateKind::BARRIER) {
            continue;
        }

        if (std::size_t want = expected_targets(g.kind); want != 0 && g.targets.size() != want) {
            issues.push_back(where + ": expected " + std::to_string(want) + " target(s), got " +
                             std::to_string(g.targets.size()));
            continue;
        }
        if (g.kind == GateKind::UNITARY && g.targets.empty()) {
            issues.push_back(where + ": UNITARY needs at least one target");
            continue;
        }
        if (int want = expected_controls(g.kind);
            want >= 0 && g.controls.size() != static_cast<std::size_t>(want)) {
            issues.push_back(where + ": expected " + std::to_string(want) + " control(s), got " +
                             std::to_string(g.controls.size()));
        }
        if (g.params.size() != expected_params(g.kind)) {
            issues.push_back(where + ": expected " + std::to_string(expected_params(g.kind)) +
                             " parameter(s), got " + std::to_string(g.params.size()));
        }
        if ((g.kind == GateKind::SU4 || g.kind == GateKind::UNITARY)) {
            if (!g.controls.empty()) {
                issues.push_back(where + ": controls are not supported on matrix-payload gates");
            }
            std::size_t dim = std::size_t(1) << g.targets.size();
            if (g.payload.size() != dim * dim) {
                issues.push_back(where + ": payload size does not match target count");
            } else {
                double dev = unitarity_deviation(Matrix(dim, g.payload));
                if (dev >= 1e-10) {
                    issues.push_back(where + ": payload is not unitary (deviation " +
                                     std::to_string(dev) + ")");
                }
            }
        }
    }
    return issues;
}

void validate_or_throw(const Circuit &c) {
    std::vector<std::string> issues = validate(c);
    if (!issues.empty()) {
        std::string msg = "circuit validation failed: " + issues.front();
        if (issues.size() > 1) {
            msg += " (+" + std::to_string(issues.size() - 1) + " more)";
        }
        throw ValidationError(msg, std::move(issues));
    }
}

bool gates_equal(const Gate &a, const Gate &b, double tolerance) {
    if (a.kind != b.kind || a.targets != b.targets || a.controls != b.controls ||
        a.cbits != b.cbits || a.params.size() != b.params.size() ||
        a.payload.size() != b.payload.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.params.size(); ++i) {
        if (std::abs(a.params[i] - b.params[i]) > tolerance) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.payload.size(); ++i) {
        if (std::abs(a.payload[i] - b.payload[i]) > tolerance) {
            return false;
        }
    }
    return true;
}

bool circuits_equal(const Circuit &a, const Circuit &b, double tolerance) {
    if (a.n_qubits != b.n_qubits || a.gates.size() != b.gates.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.gates.size(); ++i) {
        if (!gates_equal(a.gates[i], b.gates[i], tolerance)) {
            return false;
        }
    }
    return true;
}

} // namespace qsv
