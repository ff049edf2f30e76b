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

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsv/bench.hpp"
#include "qsv/engine.hpp"
#include "qsv/qasm.hpp"
#include "qsv/report.hpp"

namespace {

constexpr const char *kVersion = "qsv 0.1.0";

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw qsv::Error("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string &path, const std::string &content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw qsv::Error("cannot write '" + path + "'");
    }
    out << content;
}

// "A..B" or a single value.
std::vector<std::size_t> parse_range(const std::string &text) {
    std::size_t dots = text.find("..");
    std::vector<std::size_t> out;
    if (dots == std::string::npos) {
        out.push_back(std::stoull(text));
        return out;
    }
    std::size_t from = std::stoull(text.substr(0, dots));
    std::size_t to = std::stoull(text.substr(dots + 2));
    for (std::size_t v = from; v <= to; ++v) {
        out.push_back(v);
    }
    return out;
}

std::string stats_text(const qsv::Circuit &c) {
    qsv::CircuitStats st = qsv::stats(c);
    std::string out = std::to_string(st.total_gates) + " gates, depth " +
                      std::to_string(st.depth) + ", " + std::to_string(st.non_local_gates) +
                      " non-local (" + std::to_string(st.non_local_percent) + "%)\n";
    out += "qubits: " + std::to_string(c.n_qubits) + "\n";
    for (const auto &[kind, count] : st.histogram) {
        out += std::string("  ") + qsv::gate_kind_name(kind) + ": " + std::to_string(count) + "\n";
    }
    return out;
}

std::string stats_json(const qsv::Circuit &c) {
    qsv::CircuitStats st = qsv::stats(c);
    nlohmann::json j;
    j["n_qubits"] = c.n_qubits;
    j["gates"] = st.total_gates;
    j["depth"] = st.depth;
    j["non_local_gates"] = st.non_local_gates;
    j["non_local_fraction"] = st.non_local_fraction;
    j["non_local_percent"] = st.non_local_percent;
    nlohmann::json hist = nlohmann::json::object();
    for (const auto &[kind, count] : st.histogram) {
        hist[qsv::gate_kind_name(kind)] = count;
    }
    j["histogram"] = hist;
    return j.dump(2) + "\n";
}

struct GenOptions {
    std::string app;
    std::size_t qubits = 0;
    std::size_t depth = 10;
    std::size_t iterations = 1;
    std::uint64_t seed = 0;
    std::int64_t marked = -1;
    std::string output;
    bool raw = false;
};

int cmd_gen(const GenOptions &opt) {
    qsv::BenchSpec spec;
    spec.app = qsv::bench_app_from_name(opt.app);
    spec.n_qubits = opt.qubits;
    spec.depth = opt.depth;
    spec.iterations = opt.iterations;
    spec.seed = opt.seed;
    spec.marked_state = opt.marked >= 0 ? static_cast<std::uint64_t>(opt.marked)
                                        : (std::uint64_t(1) << opt.qubits) - 1;
    qsv::Circuit circuit = qsv::gen(spec);

    bool needs_lowering = false;
    for (const qsv::Gate &g : circuit.gates) {
        if (!qsv::is_emittable(g.kind)) {
            needs_lowering = true;
            break;
        }
    }
    if (needs_lowering && !opt.raw) {
        // The generator seed stays in the header comment, so the original
        // payload form can always be regenerated.
        circuit = qsv::decompose_to_native(circuit);
    }
    write_output(opt.output, qsv::emit(circuit));
    return 0;
}

struct RunOptions {
    std::string input;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::string precision = "double";
    std::size_t workers = 1;
    std::string fusion = "on";
    std::size_t fusion_threshold = 14;
    std::size_t fusion_max_qubits = 3;
    std::int64_t blocking_qubits = -1;
    std::string report_path;
    std::string format = "text";
    bool no_timestamps = false;
};

qsv::RunConfig run_config_from(const RunOptions &opt) {
    qsv::RunConfig cfg;
    cfg.precision = qsv::precision_from_name(opt.precision);
    cfg.shots = opt.shots;
    cfg.seed = opt.seed;
    cfg.worker_count = opt.workers;
    cfg.fusion.enabled = opt.fusion != "off";
    cfg.fusion.fusion_threshold = opt.fusion_threshold;
    cfg.fusion.max_fused_qubits = opt.fusion_max_qubits;
    if (opt.blocking_qubits >= 0) {
        cfg.blocking_qubits = static_cast<std::size_t>(opt.blocking_qubits);
    }
    return cfg;
}

int cmd_run(const RunOptions &opt) {
    qsv::Circuit circuit = qsv::parse(read_file(opt.input));
    qsv::RunConfig cfg = run_config_from(opt);
    cfg.keep_state = false;
    qsv::RunResult result = qsv::run(circuit, cfg);

    std::string report = qsv::run_report_json(circuit, cfg, result, !opt.no_timestamps);
    if (!opt.report_path.empty()) {
        write_output(opt.report_path, report);
    }

    if (opt.format == "json") {
        std::cout << report;
        return 0;
    }
    qsv::CircuitStats st = qsv::stats(circuit);
    std::cout << opt.input << ": " << circuit.n_qubits << " qubits, " << st.total_gates
              << " gates, depth " << st.depth << "\n";
    std::cout << "flops: " << result.ledger.total_flops
              << "  bytes: " << result.ledger.total_bytes
              << "  inter-chunk bytes: " << result.ledger.inter_chunk_bytes << "\n";
    if (!opt.no_timestamps) {
        qsv::PhaseBreakdown pb = qsv::phase_breakdown(result);
        std::printf("phases: initialize %.1f%%  transfer %.1f%%  compute %.1f%%  "
                    "finalize %.1f%%  idle %.1f%%\n",
                    pb.initialize * 100, pb.transfer * 100, pb.compute * 100, pb.finalize * 100,
                    pb.idle * 100);
        std::printf("wall: %.6f s\n", result.ledger.phases.wall);
    }
    if (cfg.shots > 0) {
        std::cout << "counts (" << cfg.shots << " shots):\n";
        for (const auto &[key, value] : result.counts) {
            std::cout << "  " << key << ": " << value << "\n";
        }
    }
    return 0;
}

struct TranspileOptions {
    std::string input;
    std::string output;
    std::string fusion = "off";
    std::size_t fusion_threshold = 14;
    std::size_t fusion_max_qubits = 3;
    std::int64_t blocking_qubits = -1;
    bool decompose = false;
    std::string sweep;
    std::string precision = "single";
};

int cmd_transpile(const TranspileOptions &opt) {
    qsv::Circuit circuit = qsv::parse(read_file(opt.input));

    if (!opt.sweep.empty()) {
        std::vector<std::size_t> bs = parse_range(opt.sweep);
        auto rows = qsv::sweep_blocking(circuit, bs, qsv::precision_from_name(opt.precision));
        write_output(opt.output, qsv::sweep_csv(rows));
        return 0;
    }

    if (opt.decompose) {
        circuit = qsv::decompose_to_native(circuit);
    }
    if (opt.fusion == "on") {
        qsv::FusionConfig fc;
        fc.enabled = true;
        fc.fusion_threshold = opt.fusion_threshold;
        fc.max_fused_qubits = opt.fusion_max_qubits;
        circuit = qsv::fuse_pass(circuit, fc);
    }
    if (opt.blocking_qubits >= 0) {
        qsv::BlockingPlan plan =
            qsv::block_pass(circuit, static_cast<std::size_t>(opt.blocking_qubits));
        std::cerr << "blocking: " << plan.inserted_swaps << " exchange swaps inserted (b="
                  << plan.blocking_qubits << ")\n";
        circuit = plan.rewritten;
    }
    write_output(opt.output, qsv::emit(circuit));
    return 0;
}

struct BenchOptions {
    std::string app;
    std::string qubits;
    std::size_t depth = 10;
    std::size_t iterations = 1;
    std::uint64_t seed = 0;
    std::int64_t marked = -1;
    std::size_t repeats = 5;
    std::uint64_t shots = 0;
    std::string precision = "double";
    std::size_t workers = 1;
    bool fusion_sweep = false;
    std::string output;
    bool no_timestamps = false;
};

int cmd_bench(const BenchOptions &opt) {
    qsv::BenchSpec base;
    base.app = qsv::bench_app_from_name(opt.app);
    base.depth = opt.depth;
    base.iterations = opt.iterations;
    base.seed = opt.seed;

    std::vector<std::size_t> range = parse_range(opt.qubits);
    if (opt.marked >= 0) {
        base.marked_state = static_cast<std::uint64_t>(opt.marked);
    }

    qsv::RunConfig cfg;
    cfg.precision = qsv::precision_from_name(opt.precision);
    cfg.shots = opt.shots;
    cfg.worker_count = opt.workers;

    std::vector<qsv::ScalingVariant> variants;
    if (opt.fusion_sweep) {
        qsv::RunConfig on = cfg;
        on.fusion.enabled = true;
        qsv::RunConfig off = cfg;
        off.fusion.enabled = false;
        variants.push_back({"fusion-on", on});
        variants.push_back({"fusion-off", off});
    } else {
        variants.push_back({"default", cfg});
    }

    // Grover's marked state defaults to all ones per point, so it has to be
    // resolved inside the sweep when unspecified.
    std::vector<qsv::ScalingRow> rows;
    if (base.app == qsv::BenchApp::grover && opt.marked < 0) {
        for (std::size_t n : range) {
            qsv::BenchSpec point = base;
            point.marked_state = (std::uint64_t(1) << n) - 1;
            auto part = qsv::scaling_table(point, {n}, variants, opt.repeats);
            rows.insert(rows.end(), part.begin(), part.end());
        }
    } else {
        rows = qsv::scaling_table(base, range, variants, opt.repeats);
    }
    write_output(opt.output, qsv::scaling_csv(rows, !opt.no_timestamps));
    return 0;
}

struct RooflineOptions {
    std::string machine;
    std::string report;
    std::string output;
};

int cmd_roofline(const RooflineOptions &opt) {
    qsv::MachineModel model = qsv::load_machine_model(opt.machine);
    qsv::Precision precision = qsv::Precision::double_fp;
    qsv::PerfLedger ledger = qsv::ledger_from_report_json(read_file(opt.report), precision);
    auto rows = qsv::roofline_report(ledger, model, precision);
    write_output(opt.output, qsv::roofline_csv(rows, model.name));
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"state-vector quantum circuit simulator and performance harness"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GenOptions gen_opt;
    CLI::App *gen = app.add_subcommand("gen", "generate a benchmark circuit as OpenQASM");
    gen->add_option("app", gen_opt.app, "one of qv, qft, rqc, grover, ghz, qw")->required();
    gen->add_option("--qubits", gen_opt.qubits, "number of qubits")->required();
    gen->add_option("--depth", gen_opt.depth, "layer count (qv, rqc)");
    gen->add_option("--iterations", gen_opt.iterations, "steps (qw) or rounds (grover)");
    gen->add_option("--seed", gen_opt.seed, "generator seed (default 0)");
    gen->add_option("--marked", gen_opt.marked, "marked basis state (grover; default all ones)");
    gen->add_option("-o,--output", gen_opt.output, "output file (default stdout)");
    gen->add_flag("--raw", gen_opt.raw, "skip lowering of non-serializable gates");

    std::string stats_input, stats_format = "text";
    CLI::App *stats_cmd = app.add_subcommand("stats", "static statistics of a QASM circuit");
    stats_cmd->add_option("file", stats_input, "input .qasm file")->required();
    stats_cmd->add_option("--format", stats_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    RunOptions run_opt;
    CLI::App *run_cmd = app.add_subcommand("run", "simulate a QASM circuit");
    run_cmd->add_option("file", run_opt.input, "input .qasm file")->required();
    run_cmd->add_option("--shots", run_opt.shots, "measurement samples to draw");
    run_cmd->add_option("--seed", run_opt.seed, "sampling seed (default 0)");
    run_cmd->add_option("--precision", run_opt.precision, "single or double")
        ->check(CLI::IsMember({"single", "double"}));
    run_cmd->add_option("--workers", run_opt.workers, "parallel workers");
    run_cmd->add_option("--fusion", run_opt.fusion, "on or off (default on)")
        ->check(CLI::IsMember({"on", "off"}));
    run_cmd->add_option("--fusion-threshold", run_opt.fusion_threshold,
                        "minimum qubit count for fusion (default 14)");
    run_cmd->add_option("--fusion-max-qubits", run_opt.fusion_max_qubits,
                        "fused matrix size limit (default 3)");
    run_cmd->add_option("--blocking-qubits", run_opt.blocking_qubits,
                        "chunked execution boundary");
    run_cmd->add_option("--report", run_opt.report_path, "write a JSON report here");
    run_cmd->add_option("--format", run_opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    run_cmd->add_flag("--no-timestamps", run_opt.no_timestamps,
                      "omit timing fields for reproducible output");

    TranspileOptions tp_opt;
    CLI::App *tp = app.add_subcommand("transpile", "rewrite a circuit with the optimizer passes");
    tp->add_option("file", tp_opt.input, "input .qasm file")->required();
    tp->add_option("-o,--output", tp_opt.output, "output file (default stdout)");
    tp->add_option("--fusion", tp_opt.fusion, "on or off (default off)")
        ->check(CLI::IsMember({"on", "off"}));
    tp->add_option("--fusion-threshold", tp_opt.fusion_threshold, "fusion threshold (default 14)");
    tp->add_option("--fusion-max-qubits", tp_opt.fusion_max_qubits, "fusion width (default 3)");
    tp->add_option("--blocking-qubits", tp_opt.blocking_qubits, "insert exchange swaps for b");
    tp->add_flag("--decompose", tp_opt.decompose, "lower SU4/MCX/MCZ to serializable gates");
    tp->add_option("--sweep-blocking", tp_opt.sweep,
                   "emit a swap/traffic table over a range of b values, e.g. 14..18");
    tp->add_option("--precision", tp_opt.precision, "precision for traffic prediction")
        ->check(CLI::IsMember({"single", "double"}));

    BenchOptions bench_opt;
    CLI::App *bench_cmd = app.add_subcommand("bench", "scaling table over a qubit range");
    bench_cmd->add_option("app", bench_opt.app, "one of qv, qft, rqc, grover, ghz, qw")
        ->required();
    bench_cmd->add_option("--qubits", bench_opt.qubits, "range, e.g. 4..14")->required();
    bench_cmd->add_option("--depth", bench_opt.depth, "layer count (qv, rqc)");
    bench_cmd->add_option("--iterations", bench_opt.iterations, "steps (qw) or rounds (grover)");
    bench_cmd->add_option("--seed", bench_opt.seed, "generator seed");
    bench_cmd->add_option("--marked", bench_opt.marked, "marked state (grover)");
    bench_cmd->add_option("--repeats", bench_opt.repeats, "runs per point (default 5)");
    bench_cmd->add_option("--shots", bench_opt.shots, "samples per run");
    bench_cmd->add_option("--precision", bench_opt.precision, "single or double")
        ->check(CLI::IsMember({"single", "double"}));
    bench_cmd->add_option("--workers", bench_opt.workers, "parallel workers");
    bench_cmd->add_flag("--fusion-sweep", bench_opt.fusion_sweep,
                        "compare fusion on and off variants");
    bench_cmd->add_option("-o,--output", bench_opt.output, "output CSV (default stdout)");
    bench_cmd->add_flag("--no-timestamps", bench_opt.no_timestamps,
                        "omit timing columns for reproducible output");

    RooflineOptions roof_opt;
    CLI::App *roof = app.add_subcommand("roofline", "roofline rows from a run report");
    roof->add_option("--machine", roof_opt.machine, "machine model file")->required();
    roof->add_option("--report", roof_opt.report, "JSON report from `run --report`")->required();
    roof->add_option("-o,--output", roof_opt.output, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) {
            return cmd_gen(gen_opt);
        }
        if (stats_cmd->parsed()) {
            qsv::Circuit c = qsv::parse(read_file(stats_input));
            std::cout << (stats_format == "json" ? stats_json(c) : stats_text(c));
            return 0;
        }
        if (run_cmd->parsed()) {
            return cmd_run(run_opt);
        }
        if (tp->parsed()) {
            return cmd_transpile(tp_opt);
        }
        if (bench_cmd->parsed()) {
            return cmd_bench(bench_opt);
        }
        if (roof->parsed()) {
            return cmd_roofline(roof_opt);
        }
    } catch (const qsv::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
