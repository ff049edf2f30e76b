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

#include "qsv/ledger.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "qsv/error.hpp"

namespace qsv {

const char *kernel_class_name(KernelClass k) {
    switch (k) {
    case KernelClass::one_qubit: return "1q";
    case KernelClass::controlled: return "controlled";
    case KernelClass::two_qubit: return "2q";
    case KernelClass::three_qubit: return "3q";
    case KernelClass::generic_k: return "generic";
    }
    return "?";
}

KernelClass kernel_class_for(std::size_t k_targets, std::size_t n_controls) {
    if (n_controls > 0) {
        return KernelClass::controlled;
    }
    switch (k_targets) {
    case 1: return KernelClass::one_qubit;
    case 2: return KernelClass::two_qubit;
    case 3: return KernelClass::three_qubit;
    default: return KernelClass::generic_k;
    }
}

KernelCost kernel_cost(std::size_t k_targets, std::size_t n_controls, std::size_t n_qubits,
                       Precision precision) {
    if (k_targets < 1 || k_targets + n_controls > n_qubits) {
        throw Error("kernel_cost: invalid operand counts");
    }
    KernelCost cost;
    cost.kernel_class = kernel_class_for(k_targets, n_controls);

    const std::uint64_t dim = std::uint64_t(1) << k_targets;
    const std::uint64_t groups = std::uint64_t(1) << (n_qubits - k_targets - n_controls);
    // Dense dim x dim matrix against each amplitude group: dim^2 complex
    // multiplies (6 flops) and dim*(dim-1) complex adds (2 flops).
    const std::uint64_t flops_per_group = 6 * dim * dim + 2 * dim * (dim - 1);
    cost.flops = groups * flops_per_group;
    cost.bytes = (std::uint64_t(1) << (n_qubits - n_controls)) * amplitude_bytes(precision) * 2;
    cost.arithmetic_intensity = static_cast<double>(cost.flops) / static_cast<double>(cost.bytes);
    return cost;
}

void PerfLedger::add_gate(const KernelCost &cost, double seconds) {
    total_flops += cost.flops;
    total_bytes += cost.bytes;
    KernelClassStats &s = per_class[cost.kernel_class];
    s.count += 1;
    s.flops += cost.flops;
    s.bytes += cost.bytes;
    s.seconds += seconds;
}

void PerfLedger::merge_counts(const PerfLedger &other) {
    total_flops += other.total_flops;
    total_bytes += other.total_bytes;
    inter_chunk_bytes += other.inter_chunk_bytes;
    cross_worker_bytes += other.cross_worker_bytes;
    for (const auto &[cls, stats] : other.per_class) {
        KernelClassStats &s = per_class[cls];
        s.count += stats.count;
        s.flops += stats.flops;
        s.bytes += stats.bytes;
        s.seconds += stats.seconds;
    }
}

MachineModel load_machine_model(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open machine model file '" + path + "'");
    }
    MachineModel m;
    double bw_gib = 0.0, sp_tflops = 0.0, dp_tflops = 0.0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped;
        for (char c : line) {
            if (c == '#') {
                break;
            }
            if (!std::isspace(static_cast<unsigned char>(c))) {
                stripped += c;
            }
        }
        if (stripped.empty()) {
            continue;
        }
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw Error("machine model '" + path + "' line " + std::to_string(lineno) +
                        ": expected key = value");
        }
        std::string key = stripped.substr(0, eq);
        std::string value = stripped.substr(eq + 1);
        if (key == "name") {
            m.name = value;
        } else if (key == "peak_bw_gib_s") {
            bw_gib = std::stod(value);
        } else if (key == "peak_sp_tflops") {
            sp_tflops = std::stod(value);
        } else if (key == "peak_dp_tflops") {
            dp_tflops = std::stod(value);
        } else {
            throw Error("machine model '" + path + "': unknown key '" + key + "'");
        }
    }
    m.peak_bandwidth_bytes_s = bw_gib * 1024.0 * 1024.0 * 1024.0;
    m.peak_flops_sp = sp_tflops * 1e12;
    m.peak_flops_dp = dp_tflops * 1e12;
    if (m.peak_bandwidth_bytes_s <= 0 || m.peak_flops_sp <= 0) {
        throw Error("machine model '" + path + "': peak values must be positive");
    }
    if (m.peak_flops_dp <= 0) {
        m.peak_flops_dp = m.peak_flops_sp / 2.0;
    }
    return m;
}

double ridge_point(const MachineModel &m, Precision p) {
    return m.peak_flops(p) / m.peak_bandwidth_bytes_s;
}

double roofline_attainable(const MachineModel &m, double intensity, Precision p) {
    if (intensity <= 0) {
        throw Error("roofline_attainable: intensity must be positive");
    }
    return std::min(m.peak_flops(p), intensity * m.peak_bandwidth_bytes_s);
}

BoundKind classify_bound(const MachineModel &m, const KernelCost &cost, Precision p) {
    return cost.arithmetic_intensity < ridge_point(m, p) ? BoundKind::memory_bound
                                                         : BoundKind::compute_bound;
}

} // namespace qsv
