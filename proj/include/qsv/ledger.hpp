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
#include <string>

#include "qsv/core.hpp"

namespace qsv {

/// Kernel taxonomy by operand shape: plain 1-, 2-, 3-qubit matrices, the
/// control-conditioned path, and the generic k-qubit fallback.
enum class KernelClass { one_qubit, controlled, two_qubit, three_qubit, generic_k };

const char *kernel_class_name(KernelClass k);
KernelClass kernel_class_for(std::size_t k_targets, std::size_t n_controls);

/// Modeled cost of one k-qubit gate with c controls on an n-qubit state.
/// Complex multiply counts 6 flops, complex add 2; bytes count one read and
/// one write of every touched amplitude and ignore matrix or index traffic.
struct KernelCost {
    KernelClass kernel_class = KernelClass::one_qubit;
    std::uint64_t flops = 0;
    std::uint64_t bytes = 0;
    double arithmetic_intensity = 0.0;
};

KernelCost kernel_cost(std::size_t k_targets, std::size_t n_controls, std::size_t n_qubits,
                       Precision precision);

struct KernelClassStats {
    std::uint64_t count = 0;
    std::uint64_t flops = 0;
    std::uint64_t bytes = 0;
    double seconds = 0.0;
};

struct PhaseTimes {
    double initialize = 0.0;
    double transfer = 0.0;
    double compute = 0.0;
    double finalize = 0.0;
    double wall = 0.0;
};

/// Per-run counters. Flop and byte totals are exact integer sums of the
/// kernel cost of every executed gate.
struct PerfLedger {
    std::uint64_t total_flops = 0;
    std::uint64_t total_bytes = 0;
    std::uint64_t inter_chunk_bytes = 0;
    std::uint64_t cross_worker_bytes = 0;
    std::map<KernelClass, KernelClassStats> per_class;
    PhaseTimes phases;

    void add_gate(const KernelCost &cost, double seconds);
    void merge_counts(const PerfLedger &other);
};

/// Peak numbers of the machine being modeled; reports compare measured runs
/// against this model, they never assert against it.
struct MachineModel {
    std::string name;
    double peak_bandwidth_bytes_s = 0.0;
    double peak_flops_sp = 0.0;
    double peak_flops_dp = 0.0;

    double peak_flops(Precision p) const {
        return p == Precision::single_fp ? peak_flops_sp : peak_flops_dp;
    }
};

/// Key-value text file: name, peak_bw_gib_s, peak_sp_tflops, peak_dp_tflops.
MachineModel load_machine_model(const std::string &path);

/// Intensity at which the bandwidth bound meets the compute bound.
double ridge_point(const MachineModel &m, Precision p);

/// min(peak flops, intensity * peak bandwidth).
double roofline_attainable(const MachineModel &m, double intensity, Precision p);

enum class BoundKind { memory_bound, compute_bound };
BoundKind classify_bound(const MachineModel &m, const KernelCost &cost, Precision p);

} // namespace qsv
