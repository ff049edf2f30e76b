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

#include "qsv/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace qsv {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace

std::vector<ScalingRow> scaling_table(const BenchSpec &base,
                                      const std::vector<std::size_t> &qubit_range,
                                      const std::vector<ScalingVariant> &variants,
                                      std::size_t repeats) {
    std::vector<ScalingRow> rows;
    for (std::size_t n : qubit_range) {
        BenchSpec spec = base;
        spec.n_qubits = n;
        for (const ScalingVariant &variant : variants) {
            ScalingRow row;
            row.app = bench_app_name(base.app);
            row.qubits = n;
            row.variant = variant.label;
            row.repeats = repeats;
            try {
                Circuit circuit = gen(spec);
                RunConfig cfg = variant.config;
                cfg.keep_state = false;
                std::vector<double> times;
                for (std::size_t r = 0; r < repeats; ++r) {
                    RunResult result = run(circuit, cfg);
                    times.push_back(result.ledger.phases.wall);
                    row.flops = result.ledger.total_flops;
                    row.bytes = result.ledger.total_bytes;
                }
                double mean = 0.0;
                for (double t : times) {
                    mean += t;
                }
                mean /= static_cast<double>(times.size());
                double var = 0.0;
                for (double t : times) {
                    var += (t - mean) * (t - mean);
                }
                var /= static_cast<double>(times.size());
                row.mean_seconds = mean;
                row.std_seconds = std::sqrt(var);
            } catch (const CapacityError &e) {
                row.status = std::string("skipped: ") + e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string scaling_csv(const std::vector<ScalingRow> &rows, bool with_times) {
    std::string out = "app,qubits,variant,repeats,mean_s,std_s,flops,bytes,status\n";
    for (const ScalingRow &r : rows) {
        out += r.app + "," + std::to_string(r.qubits) + "," + r.variant + "," +
               std::to_string(r.repeats) + ",";
        if (with_times && r.status == "ok") {
            out += fmt_double(r.mean_seconds) + "," + fmt_double(r.std_seconds);
        } else {
            out += "-,-";
        }
        out += "," + std::to_string(r.flops) + "," + std::to_string(r.bytes) + ",\"" + r.status +
               "\"\n";
    }
    return out;
}

std::vector<RooflineRow> roofline_report(const PerfLedger &ledger, const MachineModel &model,
                                         Precision precision) {
    std::vector<RooflineRow> rows;
    for (const auto &[cls, stats] : ledger.per_class) {
        if (stats.bytes == 0) {
            continue;
        }
        RooflineRow row;
        row.kernel = kernel_class_name(cls);
        row.intensity = static_cast<double>(stats.flops) / static_cast<double>(stats.bytes);
        row.attainable_flops_s = roofline_attainable(model, row.intensity, precision);
        if (stats.seconds > 0.0) {
            row.achieved_flops_s = static_cast<double>(stats.flops) / stats.seconds;
        } else {
            row.reliable = false;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string roofline_csv(const std::vector<RooflineRow> &rows, const std::string &machine_name) {
    std::string out = "kernel,intensity,achieved_flops_s,attainable_flops_s,reliable,machine\n";
    for (const RooflineRow &r : rows) {
        out += r.kernel + "," + fmt_double(r.intensity) + ",";
        out += (r.reliable ? fmt_double(r.achieved_flops_s) : std::string("-")) + ",";
        out += fmt_double(r.attainable_flops_s) + ",";
        out += (r.reliable ? "yes" : "no");
        out += "," + machine_name + "\n";
    }
    return out;
}

std::string sweep_csv(const std::vector<BlockingSweepRow> &rows) {
    std::string out = "blocking_qubits,inserted_swaps,predicted_inter_chunk_bytes\n";
    for (const BlockingSweepRow &r : rows) {
        out += std::to_string(r.blocking_qubits) + "," + std::to_string(r.inserted_swaps) + "," +
               std::to_string(r.predicted_inter_chunk_bytes) + "\n";
    }
    return out;
}

std::string run_report_json(const Circuit &original, const RunConfig &cfg, const RunResult &result,
                            bool with_times) {
    nlohmann::json j;

    CircuitStats original_stats = stats(original);
    nlohmann::json circuit;
    circuit["name"] = original.metadata.name;
    circuit["n_qubits"] = original.n_qubits;
    circuit["gates"] = original_stats.total_gates;
    circuit["depth"] = original_stats.depth;
    circuit["non_local_gates"] = original_stats.non_local_gates;
    circuit["non_local_fraction"] = original_stats.non_local_fraction;
    circuit["non_local_percent"] = original_stats.non_local_percent;
    nlohmann::json hist;
    for (const auto &[kind, count] : original_stats.histogram) {
        hist[gate_kind_name(kind)] = count;
    }
    circuit["histogram"] = hist;
    j["circuit"] = circuit;

    nlohmann::json executed;
    executed["gates"] = result.executed_stats.total_gates;
    executed["depth"] = result.executed_stats.depth;
    j["executed"] = executed;

    nlohmann::json config;
    config["precision"] = precision_name(cfg.precision);
    config["shots"] = cfg.shots;
    config["seed"] = cfg.seed;
    config["workers"] = cfg.worker_count;
    config["fusion"] = {{"enabled", cfg.fusion.enabled},
                        {"threshold", cfg.fusion.fusion_threshold},
                        {"max_qubits", cfg.fusion.max_fused_qubits}};
    if (cfg.blocking_qubits) {
        config["blocking_qubits"] = *cfg.blocking_qubits;
    } else {
        config["blocking_qubits"] = nullptr;
    }
    j["config"] = config;

    if (with_times) {
        const PhaseTimes &p = result.ledger.phases;
        j["phases_s"] = {{"initialize", p.initialize},
                         {"transfer", p.transfer},
                         {"compute", p.compute},
                         {"finalize", p.finalize},
                         {"wall", p.wall}};
    }

    j["flops"] = result.ledger.total_flops;
    j["bytes"] = result.ledger.total_bytes;
    j["inter_chunk_bytes"] = result.ledger.inter_chunk_bytes;
    j["cross_worker_bytes"] = result.ledger.cross_worker_bytes;

    nlohmann::json counts = nlohmann::json::object();
    for (const auto &[key, value] : result.counts) {
        counts[key] = value;
    }
    j["counts"] = counts;

    nlohmann::json kernels = nlohmann::json::object();
    for (const auto &[cls, stats] : result.ledger.per_class) {
        nlohmann::json k;
        k["count"] = stats.count;
        k["flops"] = stats.flops;
        k["bytes"] = stats.bytes;
        if (with_times) {
            k["seconds"] = stats.seconds;
        }
        kernels[kernel_class_name(cls)] = k;
    }
    j["kernels"] = kernels;

    return j.dump(2) + "\n";
}

PerfLedger ledger_from_report_json(const std::string &json_text, Precision &precision_out) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    PerfLedger ledger;
    ledger.total_flops = j.value("flops", std::uint64_t(0));
    ledger.total_bytes = j.value("bytes", std::uint64_t(0));
    ledger.inter_chunk_bytes = j.value("inter_chunk_bytes", std::uint64_t(0));
    ledger.cross_worker_bytes = j.value("cross_worker_bytes", std::uint64_t(0));
    precision_out = precision_from_name(j.at("config").value("precision", "double"));
    if (j.contains("phases_s")) {
        const auto &p = j["phases_s"];
        ledger.phases.initialize = p.value("initialize", 0.0);
        ledger.phases.transfer = p.value("transfer", 0.0);
        ledger.phases.compute = p.value("compute", 0.0);
        ledger.phases.finalize = p.value("finalize", 0.0);
        ledger.phases.wall = p.value("wall", 0.0);
    }
    if (j.contains("kernels")) {
        for (auto it = j["kernels"].begin(); it != j["kernels"].end(); ++it) {
            KernelClass cls;
            std::string name = it.key();
            if (name == "1q") cls = KernelClass::one_qubit;
            else if (name == "controlled") cls = KernelClass::controlled;
            else if (name == "2q") cls = KernelClass::two_qubit;
            else if (name == "3q") cls = KernelClass::three_qubit;
            else cls = KernelClass::generic_k;
            KernelClassStats s;
            s.count = it.value().value("count", std::uint64_t(0));
            s.flops = it.value().value("flops", std::uint64_t(0));
            s.bytes = it.value().value("bytes", std::uint64_t(0));
            s.seconds = it.value().value("seconds", 0.0);
            ledger.per_class[cls] = s;
        }
    }
    return ledger;
}

} // namespace qsv
