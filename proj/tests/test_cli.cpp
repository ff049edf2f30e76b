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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

std::string binary_path() {
    const char *env = std::getenv("QSV_BIN");
    REQUIRE_MESSAGE(env != nullptr, "QSV_BIN must point at the CLI binary");
    return env;
}

std::string models_dir() {
    const char *env = std::getenv("QSV_MODELS");
    REQUIRE_MESSAGE(env != nullptr, "QSV_MODELS must point at the models directory");
    return env;
}

CommandResult run_cli_env(const std::string &env_prefix, const std::string &args) {
    CommandResult result;
    std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + binary_path() + " " + args +
                      " 2>&1";
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    while (std::size_t got = fread(buffer, 1, sizeof(buffer), pipe)) {
        result.output.append(buffer, got);
    }
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

CommandResult run_cli(const std::string &args) {
    return run_cli_env("", args);
}

std::string tmp_file(const std::string &name) {
    return "/tmp/qsv_cli_test_" + name;
}

} // namespace

TEST_CASE("version flag") {
    CommandResult r = run_cli("--version");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("qsv") != std::string::npos);
}

TEST_CASE("generate then inspect") {
    std::string qasm = tmp_file("ghz5.qasm");
    CommandResult gen = run_cli("gen ghz --qubits 5 -o " + qasm);
    CHECK(gen.exit_code == 0);

    CommandResult st = run_cli("stats " + qasm);
    CHECK(st.exit_code == 0);
    CHECK(st.output.find("5 gates, depth 5") != std::string::npos);
}

TEST_CASE("run reports only the entangled bitstrings") {
    std::string qasm = tmp_file("ghz5b.qasm");
    REQUIRE(run_cli("gen ghz --qubits 5 -o " + qasm).exit_code == 0);
    CommandResult r = run_cli("run " + qasm + " --shots 100 --seed 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("counts") != std::string::npos);
    CHECK(r.output.find("00000") != std::string::npos);
    CHECK(r.output.find("11111") != std::string::npos);
    CHECK(r.output.find("00001") == std::string::npos);
    CHECK(r.output.find("01111") == std::string::npos);
}

TEST_CASE("missing required flag is a usage error") {
    CommandResult r = run_cli("gen qv");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("--qubits") != std::string::npos);
}

TEST_CASE("runtime failures exit with 2") {
    CommandResult missing = run_cli("stats /tmp/qsv_no_such_file.qasm");
    CHECK(missing.exit_code == 2);

    std::string bad = tmp_file("bad.qasm");
    FILE *f = fopen(bad.c_str(), "w");
    REQUIRE(f);
    fputs("OPENQASM 2.0; qreg q[1]; foo q[0];\n", f);
    fclose(f);
    CommandResult parse_err = run_cli("stats " + bad);
    CHECK(parse_err.exit_code == 2);
    CHECK(parse_err.output.find("unknown gate") != std::string::npos);
}

TEST_CASE("deterministic json output under --no-timestamps") {
    std::string qasm = tmp_file("qft6.qasm");
    REQUIRE(run_cli("gen qft --qubits 6 -o " + qasm).exit_code == 0);
    CommandResult a = run_cli("run " + qasm + " --shots 64 --seed 9 --format json --no-timestamps");
    CommandResult b = run_cli("run " + qasm + " --shots 64 --seed 9 --format json --no-timestamps");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
}

TEST_CASE("transpile sweep emits the blocking table") {
    std::string qasm = tmp_file("qft8.qasm");
    REQUIRE(run_cli("gen qft --qubits 8 -o " + qasm).exit_code == 0);
    CommandResult r = run_cli("transpile " + qasm + " --sweep-blocking 4..8");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("blocking_qubits,inserted_swaps,predicted_inter_chunk_bytes") !=
          std::string::npos);
    // Five rows plus header.
    std::size_t lines = 0;
    for (char ch : r.output) {
        if (ch == '\n') {
            ++lines;
        }
    }
    CHECK(lines == 6);
}

TEST_CASE("bench and roofline pipeline") {
    std::string qasm = tmp_file("ghz8.qasm");
    std::string report = tmp_file("report.json");
    REQUIRE(run_cli("gen ghz --qubits 8 -o " + qasm).exit_code == 0);
    REQUIRE(run_cli("run " + qasm + " --shots 10 --report " + report).exit_code == 0);

    CommandResult roof =
        run_cli("roofline --machine " + models_dir() + "/a100.model --report " + report);
    CHECK(roof.exit_code == 0);
    CHECK(roof.output.find("kernel,intensity") != std::string::npos);
    CHECK(roof.output.find("a100") != std::string::npos);

    CommandResult bench = run_cli("bench ghz --qubits 4..6 --repeats 2 --no-timestamps");
    CHECK(bench.exit_code == 0);
    CHECK(bench.output.find("app,qubits,variant") != std::string::npos);
}

TEST_CASE("memory budget honors the environment override") {
    std::string qasm = tmp_file("ghz12.qasm");
    REQUIRE(run_cli("gen ghz --qubits 12 -o " + qasm).exit_code == 0);
    CommandResult r = run_cli_env("QSV_MEMORY_BUDGET_BYTES=1024", "run " + qasm);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("budget 1024") != std::string::npos);
}

TEST_CASE("generated qv circuits round trip through the parser") {
    std::string qasm = tmp_file("qv6.qasm");
    REQUIRE(run_cli("gen qv --qubits 6 --depth 2 --seed 3 -o " + qasm).exit_code == 0);
    CommandResult st = run_cli("stats " + qasm);
    CHECK(st.exit_code == 0);
    // The payload blocks were lowered for serialization; the seed comment
    // documents how to regenerate the original.
    FILE *f = fopen(qasm.c_str(), "r");
    REQUIRE(f);
    std::string text;
    char buffer[4096];
    while (std::size_t got = fread(buffer, 1, sizeof(buffer), f)) {
        text.append(buffer, got);
    }
    fclose(f);
    CHECK(text.find("seed=3") != std::string::npos);
}
