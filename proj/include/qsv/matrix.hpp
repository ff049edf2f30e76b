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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qsv/rng.hpp"

namespace qsv {

using Complex = std::complex<double>;

/// Dense square complex matrix, row major. Gate matrices are small (dim is
/// 2^k for k-qubit operators) so everything here is plain O(dim^2..dim^3).
struct Matrix {
    std::size_t dim = 0;
    std::vector<Complex> a;

    Matrix() = default;
    explicit Matrix(std::size_t d) : dim(d), a(d * d, Complex(0.0, 0.0)) {}
    Matrix(std::size_t d, std::vector<Complex> entries) : dim(d), a(std::move(entries)) {}

    Complex &operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

    static Matrix identity(std::size_t d);
};

Matrix mul(const Matrix &lhs, const Matrix &rhs);
Matrix adjoint(const Matrix &m);

/// Tensor product where `low` occupies the low index bits (qubit order is
/// little endian everywhere in this project).
Matrix kron(const Matrix &high, const Matrix &low);

/// max_ij |(M^dagger M - I)_ij|; zero for an exact unitary.
double unitarity_deviation(const Matrix &m);

double max_abs_diff(const Matrix &lhs, const Matrix &rhs);

/// Reinterpret `m`, whose index bit p corresponds to qubits[p], as a matrix
/// over the same qubits sorted ascending.
Matrix permute_to_sorted(const Matrix &m, const std::vector<std::uint32_t> &qubits,
                         std::vector<std::uint32_t> &sorted_out);

/// Embed `m` acting on `source_qubits` (index bit p = source_qubits[p]) into
/// the space of `target_qubits`, which must be sorted and contain every
/// source qubit; identity on the rest.
Matrix embed(const Matrix &m, const std::vector<std::uint32_t> &source_qubits,
             const std::vector<std::uint32_t> &target_qubits);

/// Haar-distributed unitary via QR of a Gaussian matrix with the phases of
/// the R diagonal divided out.
Matrix haar_unitary(std::size_t dim, Rng &rng);

/// Haar unitary rescaled to determinant one.
Matrix haar_special_unitary(std::size_t dim, Rng &rng);

} // namespace qsv
