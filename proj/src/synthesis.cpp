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

#include "qsv/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qsv/error.hpp"

namespace qsv {

namespace {

std::vector<std::uint32_t> free_qubits(const std::vector<std::uint32_t> &controls,
                                       std::uint32_t target, std::size_t n_qubits) {
    std::set<std::uint32_t> used(controls.begin(), controls.end());
    used.insert(target);
    std::vector<std::uint32_t> out;
    for (std::uint32_t q = 0; q < n_qubits; ++q) {
        if (!used.count(q)) {
            out.push_back(q);
        }
    }
    return out;
}

} // namespace

void append_mcx(std::vector<Gate> &out, const std::vector<std::uint32_t> &controls,
                std::uint32_t target, std::size_t n_qubits) {
    const std::size_t k = controls.size();
    if (k == 0) {
        out.push_back(Gate::x(target));
        return;
    }
    if (k == 1) {
        out.push_back(Gate::cx(controls[0], target));
        return;
    }
    if (k == 2) {
        out.push_back(Gate::ccx(controls[0], controls[1], target));
        return;
    }

    std::vector<std::uint32_t> borrows = free_qubits(controls, target, n_qubits);

    if (borrows.size() >= k - 2) {
        // Toffoli staircase over k-2 borrowed qubits. The borrows may hold
        // arbitrary state; running the ladder twice cancels their
        // contribution and restores them. 4(k-2) Toffolis total.
        std::vector<Gate> stairs;
        stairs.push_back(Gate::ccx(controls[k - 1], borrows[k - 3], target));
        for (std::size_t i = 2; i + 1 < k; ++i) {
            stairs.push_back(Gate::ccx(controls[k - i], borrows[k - i - 2], borrows[k - i - 1]));
        }
        stairs.push_back(Gate::ccx(controls[0], controls[1], borrows[0]));

        auto down = [&] {
            for (const Gate &g : stairs) {
                out.push_back(g);
            }
        };
        auto up_middle = [&] {
            for (std::size_t i = stairs.size() - 1; i-- > 1;) {
                out.push_back(stairs[i]);
            }
        };
        down();
        up_middle();
        down();
        up_middle();
        return;
    }

    if (!borrows.empty()) {
        // Split the controls around one borrowed qubit; after the split each
        // sub-gate sees enough free qubits for the staircase.
        std::uint32_t b = borrows.front();
        std::size_t half = (k + 1) / 2;
        std::vector<std::uint32_t> first(controls.begin(), controls.begin() + half);
        std::vector<std::uint32_t> second(controls.begin() + half, controls.end());
        second.push_back(b);

        append_mcx(out, second, target, n_qubits);
        append_mcx(out, first, b, n_qubits);
        append_mcx(out, second, target, n_qubits);
        append_mcx(out, first, b, n_qubits);
        return;
    }

    // The gate spans every circuit qubit: no borrow exists, and no exact
    // Toffoli-chain expansion exists either. Conjugate a multi-controlled
    // phase by H on the target instead.
    std::vector<std::uint32_t> phase_qubits = controls;
    phase_qubits.push_back(target);
    out.push_back(Gate::h(target));
    append_mcp(out, phase_qubits, std::numbers::pi, n_qubits);
    out.push_back(Gate::h(target));
}

void append_mcp(std::vector<Gate> &out, const std::vector<std::uint32_t> &qubits, double theta,
                std::size_t n_qubits) {
    const std::size_t q = qubits.size();
    if (q == 0) {
        return;
    }
    if (q == 1) {
        out.push_back(Gate::p(theta, qubits[0]));
        return;
    }
    if (q == 2) {
        out.push_back(Gate::cp(theta, qubits[0], qubits[1]));
        return;
    }

    // Writing x_A for the conjunction of the leading q-2 qubits, the pieces
    // contribute theta/2 * (x_b - (x_b xor x_A) + x_A) * x_t, which equals
    // theta * x_A x_b x_t. The sub-MCX always has a borrow available (the
    // phase target is outside its span).
    std::vector<std::uint32_t> head(qubits.begin(), qubits.end() - 2);
    std::uint32_t b = qubits[q - 2];
    std::uint32_t t = qubits[q - 1];

    out.push_back(Gate::cp(theta / 2, b, t));
    append_mcx(out, head, b, n_qubits);
    out.push_back(Gate::cp(-theta / 2, b, t));
    append_mcx(out, head, b, n_qubits);

    head.push_back(t);
    append_mcp(out, head, theta / 2, n_qubits);
}

// ---------------------------------------------------------------------------
// One-qubit extraction
// ---------------------------------------------------------------------------

OneQubitAngles decompose_one_qubit(const Matrix &m) {
    if (m.dim != 2) {
        throw Error("decompose_one_qubit needs a 2x2 matrix");
    }
    OneQubitAngles a;
    double c = std::abs(m(0, 0));
    double s = std::abs(m(1, 0));
    a.theta = 2.0 * std::atan2(s, c);

    constexpr double tiny = 1e-12;
    if (s <= tiny) {
        // Diagonal: keep phi = 0.
        a.phase = std::arg(m(0, 0));
        a.lambda = std::arg(m(1, 1)) - a.phase;
    } else if (c <= tiny) {
        // Anti-diagonal: keep lambda = 0.
        a.phase = std::arg(-m(0, 1));
        a.phi = std::arg(m(1, 0)) - a.phase;
    } else {
        a.phase = std::arg(m(0, 0));
        a.phi = std::arg(m(1, 0)) - a.phase;
        a.lambda = std::arg(-m(0, 1)) - a.phase;
    }
    return a;
}

// ---------------------------------------------------------------------------
// Two-qubit cosine-sine decomposition
// ---------------------------------------------------------------------------

namespace {

using Mat2 = Matrix;

Mat2 block_of(const Matrix &m, std::size_t rh, std::size_t ch) {
    Mat2 b(2);
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            b(r, c) = m(2 * rh + r, 2 * ch + c);
        }
    }
    return b;
}

std::pair<Complex, Complex> matvec2(const Mat2 &m, Complex v0, Complex v1) {
    return {m(0, 0) * v0 + m(0, 1) * v1, m(1, 0) * v0 + m(1, 1) * v1};
}

// Unit column u placed at `col`; the other column is its orthogonal
// complement, making the result unitary.
Mat2 complete_from_column(Complex u0, Complex u1, std::size_t col) {
    Mat2 m(2);
    m(0, col) = u0;
    m(1, col) = u1;
    m(0, 1 - col) = -std::conj(u1);
    m(1, 1 - col) = std::conj(u0);
    return m;
}

// m = w diag(e0, e1) w† for a 2x2 unitary (hence normal) matrix.
void eig_unitary2(const Mat2 &m, Mat2 &w, Complex &e0, Complex &e1) {
    if (std::abs(m(0, 1)) < 1e-14 && std::abs(m(1, 0)) < 1e-14) {
        w = Matrix::identity(2);
        e0 = m(0, 0);
        e1 = m(1, 1);
        return;
    }
    Complex tr = m(0, 0) + m(1, 1);
    Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Complex disc = std::sqrt(tr * tr - 4.0 * det);
    e0 = (tr + disc) / 2.0;
    e1 = (tr - disc) / 2.0;

    // Null vector of (m - e0); take the better conditioned row.
    Complex r0a = m(0, 0) - e0, r0b = m(0, 1);
    Complex r1a = m(1, 0), r1b = m(1, 1) - e0;
    Complex v0, v1;
    if (std::abs(r0a) + std::abs(r0b) > std::abs(r1a) + std::abs(r1b)) {
        v0 = -r0b;
        v1 = r0a;
    } else {
        v0 = -r1b;
        v1 = r1a;
    }
    double norm = std::sqrt(std::norm(v0) + std::norm(v1));
    w = complete_from_column(v0 / norm, v1 / norm, 0);
    // The complement column is the other eigenvector since m is normal.
}

struct Multiplexor {
    Mat2 before; // applied first
    double rz = 0.0;
    double select_phase = 0.0;
    Mat2 after; // applied last
};

// Gate pattern realizing (v0 when select=0, v1 when select=1) up to a global
// phase: before(t), CX(s,t), RZ(t), CX(s,t), P(s), after(t).
Multiplexor demultiplex(const Mat2 &v0, const Mat2 &v1) {
    Mat2 delta = mul(v0, adjoint(v1));
    Mat2 w(2);
    Complex e0, e1;
    eig_unitary2(delta, w, e0, e1);

    double d0 = std::arg(e0) / 2.0;
    double d1 = std::arg(e1) / 2.0;
    Mat2 dmat(2);
    dmat(0, 0) = std::polar(1.0, d0);
    dmat(1, 1) = std::polar(1.0, d1);

    Multiplexor mx;
    mx.after = w;
    mx.before = mul(adjoint(dmat), mul(adjoint(w), v0));
    mx.rz = d1 - d0;
    mx.select_phase = -(d0 + d1);
    return mx;
}

void push_one_qubit(std::vector<Gate> &out, const Mat2 &m, std::uint32_t q) {
    OneQubitAngles a = decompose_one_qubit(m);
    out.push_back(Gate::u(a.theta, a.phi, a.lambda, q));
}

void push_multiplexor(std::vector<Gate> &out, const Multiplexor &mx, std::uint32_t select,
                      std::uint32_t tgt) {
    push_one_qubit(out, mx.before, tgt);
    out.push_back(Gate::cx(select, tgt));
    out.push_back(Gate::rz(mx.rz, tgt));
    out.push_back(Gate::cx(select, tgt));
    out.push_back(Gate::p(mx.select_phase, select));
    push_one_qubit(out, mx.after, tgt);
}

} // namespace

std::vector<Gate> decompose_two_qubit(const Matrix &m, std::uint32_t q0, std::uint32_t q1) {
    if (m.dim != 4) {
        throw Error("decompose_two_qubit needs a 4x4 matrix");
    }

    Mat2 g00 = block_of(m, 0, 0);
    Mat2 g01 = block_of(m, 0, 1);
    Mat2 g10 = block_of(m, 1, 0);
    Mat2 g11 = block_of(m, 1, 1);

    // Cosine-sine decomposition across the high qubit:
    //   m = blkdiag(L0, L1) * [C -S; S C] * blkdiag(R0†, R1†)
    // The eigenvectors of g00† g00 give the shared right factor R0 and C^2.
    Mat2 h = mul(adjoint(g00), g00);
    double ha = h(0, 0).real();
    double hd = h(1, 1).real();
    Complex hb = h(0, 1);

    Mat2 r0(2);
    double lam0, lam1;
    if (std::abs(hb) < 1e-14) {
        r0 = Matrix::identity(2);
        lam0 = ha;
        lam1 = hd;
    } else {
        double mid = (ha + hd) / 2.0;
        double disc = std::sqrt(std::max(0.0, (ha - hd) * (ha - hd) / 4.0 + std::norm(hb)));
        lam0 = mid + disc;
        lam1 = mid - disc;
        Complex v0, v1;
        if (std::abs(lam0 - hd) > std::abs(lam0 - ha)) {
            v0 = lam0 - hd;
            v1 = std::conj(hb);
        } else {
            v0 = hb;
            v1 = lam0 - ha;
        }
        double norm = std::sqrt(std::norm(v0) + std::norm(v1));
        r0 = complete_from_column(v0 / norm, v1 / norm, 0);
    }

    double c0 = std::sqrt(std::clamp(lam0, 0.0, 1.0));
    double c1 = std::sqrt(std::clamp(lam1, 0.0, 1.0));
    double s0 = std::sqrt(std::max(0.0, 1.0 - c0 * c0));
    double s1 = std::sqrt(std::max(0.0, 1.0 - c1 * c1));

    // Left factors column by column; a vanishing cosine or sine leaves the
    // column free, fixed by orthogonal completion.
    constexpr double tau = 1e-12;
    Mat2 l0(2), l1(2);
    int l0_known = -1, l1_known = -1;
    for (std::size_t i = 0; i < 2; ++i) {
        Complex rc0 = r0(0, i), rc1 = r0(1, i);
        double ci = (i == 0) ? c0 : c1;
        double si = (i == 0) ? s0 : s1;
        if (ci > tau) {
            auto [u0, u1] = matvec2(g00, rc0, rc1);
            double norm = std::sqrt(std::norm(u0) + std::norm(u1));
            l0(0, i) = u0 / norm;
            l0(1, i) = u1 / norm;
            l0_known = (l0_known == -1) ? static_cast<int>(i) : 2;
        }
        if (si > tau) {
            auto [u0, u1] = matvec2(g10, rc0, rc1);
            double norm = std::sqrt(std::norm(u0) + std::norm(u1));
            l1(0, i) = u0 / norm;
            l1(1, i) = u1 / norm;
            l1_known = (l1_known == -1) ? static_cast<int>(i) : 2;
        }
    }
    auto finish_columns = [](Mat2 &l, int known) {
        if (known == 2) {
            Complex proj = std::conj(l(0, 0)) * l(0, 1) + std::conj(l(1, 0)) * l(1, 1);
            l(0, 1) -= proj * l(0, 0);
            l(1, 1) -= proj * l(1, 0);
            double norm = std::sqrt(std::norm(l(0, 1)) + std::norm(l(1, 1)));
            l(0, 1) /= norm;
            l(1, 1) /= norm;
        } else if (known == -1) {
            l = Matrix::identity(2);
        } else {
            std::size_t kcol = static_cast<std::size_t>(known);
            l = complete_from_column(l(0, kcol), l(1, kcol), kcol);
        }
    };
    finish_columns(l0, l0_known);
    finish_columns(l1, l1_known);

    // R1† = -S L0† g01 + C L1† g11 (the stacked block column has orthonormal
    // columns, so this is exact).
    Mat2 cdiag(2), sdiag(2);
    cdiag(0, 0) = c0;
    cdiag(1, 1) = c1;
    sdiag(0, 0) = s0;
    sdiag(1, 1) = s1;
    Mat2 r1_adj(2);
    {
        Mat2 a = mul(sdiag, mul(adjoint(l0), g01));
        Mat2 b = mul(cdiag, mul(adjoint(l1), g11));
        for (std::size_t i = 0; i < 4; ++i) {
            r1_adj.a[i] = b.a[i] - a.a[i];
        }
    }

    std::vector<Gate> gates;
    Multiplexor right = demultiplex(adjoint(r0), r1_adj);
    push_multiplexor(gates, right, q1, q0);

    // Middle factor: RY(2*t_v) on the high qubit selected by the low qubit.
    double t0 = std::atan2(s0, c0);
    double t1 = std::atan2(s1, c1);
    gates.push_back(Gate::cx(q0, q1));
    gates.push_back(Gate::ry(t0 - t1, q1));
    gates.push_back(Gate::cx(q0, q1));
    gates.push_back(Gate::ry(t0 + t1, q1));

    Multiplexor left = demultiplex(l0, l1);
    push_multiplexor(gates, left, q1, q0);

    // The construction is exact; verify against the input up to global phase
    // and fail loudly on any residual.
    Matrix prod = Matrix::identity(4);
    const std::vector<std::uint32_t> space = {0, 1};
    for (const Gate &g : gates) {
        Gate local = g;
        for (auto &t : local.targets) {
            t = (t == q0) ? 0 : 1;
        }
        for (auto &t : local.controls) {
            t = (t == q0) ? 0 : 1;
        }
        std::vector<std::uint32_t> span;
        Matrix full = gate_full_matrix(local, span);
        prod = mul(embed(full, span, space), prod);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < 16; ++i) {
        if (std::abs(m.a[i]) > std::abs(m.a[best])) {
            best = i;
        }
    }
    Complex align = m.a[best] / prod.a[best];
    double worst = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
        worst = std::max(worst, std::abs(prod.a[i] * align - m.a[i]));
    }
    if (worst > 1e-8) {
        throw Error("two-qubit decomposition residual " + std::to_string(worst));
    }
    return gates;
}

} // namespace qsv
