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
#include <string>

#include "qsv/circuit.hpp"

namespace qsv {

enum class BenchApp { qv, qft, rqc, grover, ghz, qw };

const char *bench_app_name(BenchApp app);
BenchApp bench_app_from_name(const std::string &name);

struct BenchSpec {
    BenchApp app = BenchApp::ghz;
    std::size_t n_qubits = 0;
    std::size_t depth = 0;          // qv, rqc
    std::size_t iterations = 1;     // qw steps, grover rounds
    std::uint64_t seed = 0;         // qv, rqc
    std::uint64_t marked_state = 0; // grover
};

/// Quantum-volume style circuit: `depth` layers, each applying Haar-random
/// SU(4) blocks to consecutive pairs of a fresh seeded permutation of the
/// qubits. depth * floor(n/2) two-qubit gates, all non-local.
Circuit gen_qv(std::size_t n, std::size_t depth, std::uint64_t seed);

/// Fourier transform circuit: per qubit i ascending, H(i) then controlled
/// phases pi/2^(j-i) from each higher qubit j, and a terminal qubit
/// reversal. n + n(n-1)/2 + floor(n/2) gates. The transform reads registers
/// most-significant-bit first: on basis state |j> the amplitude at index k
/// is exp(2*pi*i*rev(j)*rev(k)/2^n)/sqrt(2^n) with rev the n-bit reversal.
Circuit gen_qft(std::size_t n);

/// Random circuit layers: every qubit draws from {sqrt(X), sqrt(Y), T}
/// without repeating its previous choice, then CZ on the 4-phase pairing
/// (i, i+1) for i congruent to layer mod 4.
Circuit gen_rqc(std::size_t n, std::size_t depth, std::uint64_t seed);

/// Search circuit: uniform superposition, then per round an oracle (the
/// marked state's zero bits conjugated by X around a native multi-controlled
/// Z) and the reflection diffuser. One round costs 5n + 2 + 2 * (zero bits
/// of the marked state) gates.
Circuit gen_grover(std::size_t n, std::uint64_t marked_state, std::size_t iterations = 1);

/// Entangler: H on qubit 0 then a CX chain; n gates, depth n.
Circuit gen_ghz(std::size_t n);

/// Coined walk on a 2^(n-1)-site ring: qubit 0 is the coin, qubits 1..n-1
/// the position register. Each step applies H to the coin, a coin-controlled
/// increment and a coin-negated decrement, both as descending cascades of
/// multi-controlled X expanded over Toffoli/CX/X chains (the full-register
/// cascade head goes through the phase-based expansion).
Circuit gen_qw(std::size_t n, std::size_t iterations);

/// Dispatch on spec.app; metadata records the generator and its parameters.
Circuit gen(const BenchSpec &spec);

} // namespace qsv
