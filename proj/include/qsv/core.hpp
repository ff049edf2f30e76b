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
#include <string>
#include <vector>

#include "qsv/error.hpp"

namespace qsv {

/// Amplitude storage width. A run-time property so one build can compare
/// single and double precision side by side.
enum class Precision { single_fp, double_fp };

/// Bytes per complex amplitude: 8 (two floats) or 16 (two doubles).
std::uint64_t amplitude_bytes(Precision p);

const char *precision_name(Precision p);
Precision precision_from_name(const std::string &name);

/// Allocation guard rails. Defaults: 30 qubits, 8 GiB. Overridable through
/// the environment (QSV_MAX_QUBITS, QSV_MEMORY_BUDGET_BYTES).
struct MemoryLimits {
    std::size_t max_qubits = 30;
    std::uint64_t budget_bytes = std::uint64_t(8) << 30;
};

/// Limits with environment overrides applied.
MemoryLimits default_limits();

/// Bytes needed for the amplitude array of an n-qubit state: 2^n per
/// amplitude width. Pure formula, no budget check.
std::uint64_t memory_bytes(std::size_t n_qubits, Precision p);

/// The 2^n complex amplitude array of an n-qubit register. Index bit b holds
/// the value of qubit b (little endian: qubit 0 is the least significant
/// index bit). Exactly one of the two storage vectors is populated.
class StateVector {
  public:
    StateVector() = default;

    std::size_t num_qubits() const { return n_qubits_; }
    Precision precision() const { return precision_; }
    std::uint64_t size() const { return std::uint64_t(1) << n_qubits_; }
    bool is_single() const { return precision_ == Precision::single_fp; }

    std::complex<float> *data_f() { return amps_f_.data(); }
    const std::complex<float> *data_f() const { return amps_f_.data(); }
    std::complex<double> *data_d() { return amps_d_.data(); }
    const std::complex<double> *data_d() const { return amps_d_.data(); }

    /// Amplitude widened to double precision regardless of storage.
    std::complex<double> amplitude(std::uint64_t index) const;
    void set_amplitude(std::uint64_t index, std::complex<double> value);

    /// Widened copy of the whole array; intended for small states.
    std::vector<std::complex<double>> amplitudes() const;

    /// Sum of squared magnitudes, accumulated in double precision.
    double norm_sq() const;

    friend StateVector init_zero_state(std::size_t, Precision, const MemoryLimits &);
    friend StateVector tensor_combine(const StateVector &, const StateVector &,
                                      const MemoryLimits &);
    friend StateVector uninitialized_state(std::size_t, Precision);

  private:
    std::size_t n_qubits_ = 0;
    Precision precision_ = Precision::double_fp;
    std::vector<std::complex<float>> amps_f_;
    std::vector<std::complex<double>> amps_d_;
};

/// |0...0> on n qubits. Throws CapacityError (naming the required bytes) if
/// the allocation would exceed the limits.
StateVector init_zero_state(std::size_t n_qubits, Precision p,
                            const MemoryLimits &limits = default_limits());

/// Tensor product: result[i * 2^nb + j] = a[i] * b[j], so b occupies the low
/// qubits of the combined register. Precisions must match.
StateVector tensor_combine(const StateVector &a, const StateVector &b,
                           const MemoryLimits &limits = default_limits());

/// Allocated but not initialized to |0...0>; for internal assembly paths.
StateVector uninitialized_state(std::size_t n_qubits, Precision p);

/// Convenience for norm_sq as a free function.
double norm_sq(const StateVector &s);

} // namespace qsv
