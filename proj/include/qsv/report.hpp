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

#include <string>
#include <vector>

#include "qsv/bench.hpp"
#include "qsv/engine.hpp"
#include "qsv/ledger.hpp"

namespace qsv {

struct ScalingVariant {
    std::string label;
    RunConfig config;
};

struct ScalingRow {
    std::string app;
    std::size_t qubits = 0;
    std::string variant;
    std::size_t repeats = 0;
    double mean_seconds = 0.0;
    double std_seconds = 0.0;
    std::uint64_t flops = 0;
    std::uint64_t bytes = 0;
    std::string status = "ok"; // capacity errors record the point as skipped
};

/// Run `base` with its qubit count swept over `qubit_range` for each config
/// variant, `repeats` times per point (wall times averaged; flop and byte
/// columns are deterministic and identical across repeats).
std::vector<ScalingRow> scaling_table(const BenchSpec &base,
                                      const std::vector<std::size_t> &qubit_range,
                                      const std::vector<ScalingVariant> &variants,
                                      std::size_t repeats = 5);

std::string scaling_csv(const std::vector<ScalingRow> &rows, bool with_times);

struct RooflineRow {
    std::string kernel;
    double intensity = 0.0;
    double achieved_flops_s = 0.0;   // measured on this host
    double attainable_flops_s = 0.0; // bound of the modeled machine
    bool reliable = true;            // false when no time was recorded
};

/// One row per kernel class in the ledger. Achieved throughput is measured
/// locally while the attainable column describes the modeled machine, so
/// the two are never asserted against each other.
std::vector<RooflineRow> roofline_report(const PerfLedger &ledger, const MachineModel &model,
                                         Precision precision);

std::string roofline_csv(const std::vector<RooflineRow> &rows, const std::string &machine_name);

std::string sweep_csv(const std::vector<BlockingSweepRow> &rows);

/// Machine-readable run report: circuit stats, config, phase seconds, flop
/// and byte totals, exchange traffic, counts, per-kernel-class histogram.
/// with_times=false drops every timing field so output is reproducible.
std::string run_report_json(const Circuit &original, const RunConfig &cfg, const RunResult &result,
                            bool with_times);

/// Rebuild the ledger counters from a report produced by run_report_json.
PerfLedger ledger_from_report_json(const std::string &json_text, Precision &precision_out);

} // namespace qsv
