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

#include "qsv/core.hpp"

#include <cstdlib>

namespace qsv {

std::uint64_t amplitude_bytes(Precision p) {
    return p == Precision::single_fp ? 8 : 16;
}

const char *precision_name(Precision p) {
    return p == Precision::single_fp ? "single" : "double";
}

Precision precision_from_name(const std::string &name) {
    if (name == "single" || name == "sp" || name == "float") {
        return Precision::single_fp;
    }
    if (name == "double" || name == "dp") {
        return Precision::double_fp;
    }
    throw Error("unknown precision '" + name + "' (expected single or double)");
}

MemoryLimits default_limits() {
    MemoryLimits limits;
    if (const char *env = std::getenv("QSV_MAX_QUBITS")) {
        limits.max_qubits = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
    }
    if (const char *env = std::getenv("QSV_MEMORY_BUDGET_BYTES")) {
        limits.budget_bytes = std::strtoull(env, nullptr, 10);
    }
    return limits;
}

std::uint64_t memory_bytes(std::size_t n_qubits, Precision p) {
    return (std::uint64_t(1) << n_qubits) * amplitude_bytes(p);
}

namespace {

void check_capacity(std::size_t n_qubits, Precision p, const MemoryLimits &limits) {
    if (n_qubits < 1) {
        throw Error("state needs at least one qubit");
    }
    if (n_qubits > 62) {
        throw Error("qubit count out of representable range");
    }
    std::uint64_t required = memory_bytes(n_qubits, p);
    if (n_qubits > limits.max_qubits || required > limits.budget_bytes) {
        throw CapacityError("state vector for " + std::to_string(n_qubits) + " qubits requires " +
                                std::to_string(required) + " bytes (budget " +
                                std::to_string(limits.budget_bytes) + " bytes, max " +
                                std::to_string(limits.max_qubits) + " qubits)",
                            required, limits.budget_bytes);
    }
}

} // namespace

std::complex<double> StateVector::amplitude(std::uint64_t index) const {
    if (is_single()) {
        const auto &v = amps_f_[static_cast<std::size_t>(index)];
        return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    }
    return amps_d_[static_cast<std::size_t>(index)];
}

void StateVector::set_amplitude(std::uint64_t index, std::complex<double> value) {
    if (is_single()) {
        amps_f_[static_cast<std::size_t>(index)] = {static_cast<float>(value.real()),
                                                    static_cast<float>(value.imag())};
    } else {
        amps_d_[static_cast<std::size_t>(index)] = value;
    }
}

std::vector<std::complex<double>> StateVector::amplitudes() const {
    std::vector<std::complex<double>> out(static_cast<std::size_t>(size()));
    for (std::uint64_t i = 0; i < size(); ++i) {
        out[static_cast<std::size_t>(i)] = amplitude(i);
    }
    return out;
}

double StateVector::norm_sq() const {
    double total = 0.0;
    if (is_single()) {
        for (const auto &v : amps_f_) {
            total += static_cast<double>(v.real()) * v.real() +
                     static_cast<double>(v.imag()) * v.imag();
        }
    } else {
        for (const auto &v : amps_d_) {
            total += std::norm(v);
        }
    }
    return total;
}

StateVector uninitialized_state(std::size_t n_qubits, Precision p) {
    StateVector s;
    s.n_qubits_ = n_qubits;
    s.precision_ = p;
    std::size_t len = std::size_t(1) << n_qubits;
    if (p == Precision::single_fp) {
        s.amps_f_.assign(len, {0.0f, 0.0f});
    } else {
        s.amps_d_.assign(len, {0.0, 0.0});
    }
    return s;
}

StateVector init_zero_state(std::size_t n_qubits, Precision p, const MemoryLimits &limits) {
    check_capacity(n_qubits, p, limits);
    StateVector s = uninitialized_state(n_qubits, p);
    s.set_amplitude(0, {1.0, 0.0});
    return s;
}

StateVector tensor_combine(const StateVector &a, const StateVector &b,
                           const MemoryLimits &limits) {
    if (a.precision() != b.precision()) {
        throw Error("tensor_combine: precision mismatch");
    }
    std::size_t n = a.num_qubits() + b.num_qubits();
    check_capacity(n, a.precision(), limits);
    StateVector out = uninitialized_state(n, a.precision());
    const std::uint64_t nb = b.size();
    for (std::uint64_t i = 0; i < a.size(); ++i) {
        std::complex<double> ai = a.amplitude(i);
        for (std::uint64_t j = 0; j < nb; ++j) {
            out.set_amplitude(i * nb + j, ai * b.amplitude(j));
        }
    }
    return out;
}

double norm_sq(const StateVector &s) {
    return s.norm_sq();
}

} // namespace qsv
