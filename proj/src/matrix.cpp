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

#include "qsv/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsv/error.hpp"

namespace qsv {

Matrix Matrix::identity(std::size_t d) {
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
        m(i, i) = Complex(1.0, 0.0);
    }
    return m;
}

Matrix mul(const Matrix &lhs, const Matrix &rhs) {
    if (lhs.dim != rhs.dim) {
        throw Error("matrix dimension mismatch in multiply");
    }
    Matrix out(lhs.dim);
    for (std::size_t r = 0; r < lhs.dim; ++r) {
        for (std::size_t k = 0; k < lhs.dim; ++k) {
            Complex v = lhs(r, k);
            if (v == Complex(0.0, 0.0)) {
                continue;
            }
            for (std::size_t c = 0; c < lhs.dim; ++c) {
                out(r, c) += v * rhs(k, c);
            }
        }
    }
    return out;
}

Matrix adjoint(const Matrix &m) {
    Matrix out(m.dim);
    for (std::size_t r = 0; r < m.dim; ++r) {
        for (std::size_t c = 0; c < m.dim; ++c) {
            out(c, r) = std::conj(m(r, c));
        }
    }
    return out;
}

Matrix kron(const Matrix &high, const Matrix &low) {
    Matrix out(high.dim * low.dim);
    for (std::size_t rh = 0; rh < high.dim; ++rh) {
        for (std::size_t ch = 0; ch < high.dim; ++ch) {
            for (std::size_t rl = 0; rl < low.dim; ++rl) {
                for (std::size_t cl = 0; cl < low.dim; ++cl) {
                    out(rh * low.dim + rl, ch * low.dim + cl) = high(rh, ch) * low(rl, cl);
                }
            }
        }
    }
    return out;
}

double unitarity_deviation(const Matrix &m) {
    Matrix prod = mul(adjoint(m), m);
    double worst = 0.0;
    for (std::size_t r = 0; r < prod.dim; ++r) {
        for (std::size_t c = 0; c < prod.dim; ++c) {
            Complex expect = (r == c) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
            worst = std::max(worst, std::abs(prod(r, c) - expect));
        }
    }
    return worst;
}

double max_abs_diff(const Matrix &lhs, const Matrix &rhs) {
    if (lhs.dim != rhs.dim) {
        throw Error("matrix dimension mismatch in compare");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.a.size(); ++i) {
        worst = std::max(worst, std::abs(lhs.a[i] - rhs.a[i]));
    }
    return worst;
}

Matrix permute_to_sorted(const Matrix &m, const std::vector<std::uint32_t> &qubits,
                         std::vector<std::uint32_t> &sorted_out) {
    sorted_out = qubits;
    std::sort(sorted_out.begin(), sorted_out.end());
    if (std::is_sorted(qubits.begin(), qubits.end())) {
        return m;
    }
    return embed(m, qubits, sorted_out);
}

Matrix embed(const Matrix &m, const std::vector<std::uint32_t> &source_qubits,
             const std::vector<std::uint32_t> &target_qubits) {
    const std::size_t k = source_qubits.size();
    const std::size_t n = target_qubits.size();
    if (m.dim != (std::size_t(1) << k)) {
        throw Error("embed: matrix dimension does not match qubit count");
    }

    // Position of each source qubit within the (sorted) target list.
    std::vector<std::size_t> pos(k);
    std::vector<bool> is_source(n, false);
    for (std::size_t p = 0; p < k; ++p) {
        auto it = std::lower_bound(target_qubits.begin(), target_qubits.end(), source_qubits[p]);
        if (it == target_qubits.end() || *it != source_qubits[p]) {
            throw Error("embed: source qubit missing from target set");
        }
        pos[p] = static_cast<std::size_t>(it - target_qubits.begin());
        is_source[pos[p]] = true;
    }

    std::uint64_t rest_mask = 0;
    for (std::size_t b = 0; b < n; ++b) {
        if (!is_source[b]) {
            rest_mask |= std::uint64_t(1) << b;
        }
    }

    const std::uint64_t full = std::uint64_t(1) << n;
    Matrix out(static_cast<std::size_t>(full));
    for (std::uint64_t r = 0; r < full; ++r) {
        std::uint64_t rest = r & rest_mask;
        std::size_t mr = 0;
        for (std::size_t p = 0; p < k; ++p) {
            mr |= ((r >> pos[p]) & 1u) << p;
        }
        for (std::size_t mc = 0; mc < m.dim; ++mc) {
            Complex v = m(mr, mc);
            if (v == Complex(0.0, 0.0)) {
                continue;
            }
            std::uint64_t c = rest;
            for (std::size_t p = 0; p < k; ++p) {
                c |= ((std::uint64_t(mc) >> p) & 1u) << pos[p];
            }
            out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = v;
        }
    }
    return out;
}

Matrix haar_unitary(std::size_t dim, Rng &rng) {
    // Gaussian matrix, then modified Gram-Schmidt; the resulting Q is Haar
    // once each column phase is fixed by the sign of the R diagonal.
    Matrix g(dim);
    for (auto &v : g.a) {
        v = Complex(rng.next_gaussian(), rng.next_gaussian());
    }

    Matrix q(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        std::vector<Complex> v(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            v[r] = g(r, col);
        }
        // Two orthogonalization sweeps keep the columns orthonormal to
        // machine precision.
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (std::size_t prev = 0; prev < col; ++prev) {
                Complex proj(0.0, 0.0);
                for (std::size_t r = 0; r < dim; ++r) {
                    proj += std::conj(q(r, prev)) * v[r];
                }
                for (std::size_t r = 0; r < dim; ++r) {
                    v[r] -= proj * q(r, prev);
                }
            }
        }
        double norm = 0.0;
        for (const auto &x : v) {
            norm += std::norm(x);
        }
        norm = std::sqrt(norm);
        // R diagonal entry is `norm` times the phase of the pivot; divide the
        // phase out so the distribution is exactly Haar.
        Complex pivot = v[col % dim];
        Complex phase = (std::abs(pivot) > 0.0) ? pivot / std::abs(pivot) : Complex(1.0, 0.0);
        for (std::size_t r = 0; r < dim; ++r) {
            q(r, col) = v[r] / (norm * phase);
        }
    }
    return q;
}

namespace {

Complex determinant(const Matrix &m) {
    // Gaussian elimination with partial pivoting on a copy.
    Matrix lu = m;
    Complex det(1.0, 0.0);
    for (std::size_t col = 0; col < lu.dim; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < lu.dim; ++r) {
            if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) {
                pivot = r;
            }
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < lu.dim; ++c) {
                std::swap(lu(pivot, c), lu(col, c));
            }
            det = -det;
        }
        Complex d = lu(col, col);
        if (d == Complex(0.0, 0.0)) {
            return Complex(0.0, 0.0);
        }
        det *= d;
        for (std::size_t r = col + 1; r < lu.dim; ++r) {
            Complex f = lu(r, col) / d;
            for (std::size_t c = col; c < lu.dim; ++c) {
                lu(r, c) -= f * lu(col, c);
            }
        }
    }
    return det;
}

} // namespace

Matrix haar_special_unitary(std::size_t dim, Rng &rng) {
    Matrix u = haar_unitary(dim, rng);
    Complex det = determinant(u);
    // det lies on the unit circle; divide out its principal dim-th root.
    double angle = std::arg(det) / static_cast<double>(dim);
    Complex scale = std::polar(1.0, -angle);
    for (auto &v : u.a) {
        v *= scale;
    }
    return u;
}

} // namespace qsv
