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

#include <numbers>

#include "qsv/bench.hpp"
#include "qsv/qasm.hpp"
#include "qsv/rng.hpp"
#include "qsv/transpiler.hpp"

using namespace qsv;

TEST_CASE("minimal program") {
    Circuit c = parse("OPENQASM 2.0; qreg q[1]; h q[0];");
    CHECK(c.n_qubits == 1);
    REQUIRE(c.gates.size() == 1);
    CHECK(c.gates[0].kind == GateKind::H);
    CHECK(c.gates[0].targets == std::vector<std::uint32_t>{0});
}

TEST_CASE("two-qubit entangler parses with the right stats") {
    Circuit c = parse("OPENQASM 2.0; qreg q[2]; h q[0]; cx q[0],q[1];");
    CircuitStats st = stats(c);
    CHECK(st.total_gates == 2);
    CHECK(st.non_local_percent == 50);
}

TEST_CASE("missing header is a positioned error") {
    try {
        parse("h q[0];");
        FAIL("expected a parse error");
    } catch (const QasmError &e) {
        CHECK(e.line == 1);
    }
}

TEST_CASE("parse errors carry positions") {
    auto expect_error = [](const std::string &src, const std::string &needle) {
        try {
            parse(src);
            FAIL_CHECK("expected error for: " << src);
        } catch (const QasmError &e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
            CHECK(e.line >= 1);
            CHECK(e.column >= 1);
        }
    };
    expect_error("OPENQASM 2.0; qreg q[2]; foo q[0];", "unknown gate");
    expect_error("OPENQASM 2.0; qreg q[2]; cx q[0];", "expects 2 qubit argument(s)");
    expect_error("OPENQASM 2.0; qreg q[2]; h r[0];", "undeclared register");
    expect_error("OPENQASM 2.0; qreg q[2]; h q[5];", "out of range");
    expect_error("OPENQASM 2.0; qreg q[2]; rx q[0];", "parameter");
    expect_error("OPENQASM 2.0; qreg q[1]; gate foo a { h a; }", "unsupported construct");
    expect_error("OPENQASM 2.0; qreg q[1]; if (c == 1) h q[0];", "unsupported construct");
    expect_error("OPENQASM 2.0; qreg q[1]; opaque magic a;", "unsupported construct");
    expect_error("OPENQASM 1.0; qreg q[1];", "unsupported version");
    expect_error("OPENQASM 2.0; qreg q[1]; creg c[1]; h q[0]; measure q[0] -> c[0]; h q[0];",
                 "measurement");
}

TEST_CASE("registers flatten in declaration order") {
    Circuit c = parse("OPENQASM 2.0;\nqreg a[2];\nqreg b[2];\nx a[1];\nx b[0];\n");
    CHECK(c.n_qubits == 4);
    CHECK(c.gates[0].targets == std::vector<std::uint32_t>{1});
    CHECK(c.gates[1].targets == std::vector<std::uint32_t>{2});
}

TEST_CASE("whole-register broadcast") {
    Circuit c = parse("OPENQASM 2.0; qreg q[3]; creg c[3]; h q; measure q -> c;");
    CHECK(c.gates.size() == 6);
    CHECK(c.gates[0].kind == GateKind::H);
    CHECK(c.gates[5].kind == GateKind::MEASURE);
    CHECK(c.gates[5].targets == std::vector<std::uint32_t>{2});
    CHECK(c.gates[5].cbits == std::vector<std::uint32_t>{2});
}

TEST_CASE("angle expressions") {
    Circuit c = parse("OPENQASM 2.0; qreg q[1];\n"
                      "rz(pi/2) q[0];\n"
                      "rz(-pi/4) q[0];\n"
                      "rz(2*pi) q[0];\n"
                      "rz(1.5e-3) q[0];\n"
                      "rz(cos(0)) q[0];\n"
                      "rz((1+2)*3) q[0];\n");
    CHECK(c.gates[0].params[0] == doctest::Approx(std::numbers::pi / 2));
    CHECK(c.gates[1].params[0] == doctest::Approx(-std::numbers::pi / 4));
    CHECK(c.gates[2].params[0] == doctest::Approx(2 * std::numbers::pi));
    CHECK(c.gates[3].params[0] == doctest::Approx(1.5e-3));
    CHECK(c.gates[4].params[0] == doctest::Approx(1.0));
    CHECK(c.gates[5].params[0] == doctest::Approx(9.0));
}

TEST_CASE("comments and whitespace are ignored") {
    Circuit plain = parse("OPENQASM 2.0; qreg q[2]; h q[0]; cx q[0],q[1];");
    Circuit noisy = parse("// leading comment\nOPENQASM   2.0 ;\n\n qreg q[2]; // regs\n"
                          "  h    q[0]  ; // gate\ncx q[0] , q[1];\n// trailing\n");
    CHECK(circuits_equal(plain, noisy, 0.0));
}

TEST_CASE("gate aliases map onto one kind") {
    Circuit c = parse("OPENQASM 2.0; qreg q[2];\n"
                      "u1(0.5) q[0]; p(0.5) q[0];\n"
                      "cu1(0.25) q[0],q[1]; cp(0.25) q[0],q[1];\n"
                      "cz q[0],q[1];\n"
                      "u2(0.1,0.2) q[0];\n");
    CHECK(c.gates[0].kind == GateKind::P);
    CHECK(gates_equal(c.gates[0], c.gates[1], 0.0));
    CHECK(c.gates[2].kind == GateKind::CP);
    CHECK(gates_equal(c.gates[2], c.gates[3], 0.0));
    CHECK(c.gates[4].kind == GateKind::CP);
    CHECK(c.gates[4].params[0] == doctest::Approx(std::numbers::pi));
    CHECK(c.gates[5].kind == GateKind::U);
    CHECK(c.gates[5].params[0] == doctest::Approx(std::numbers::pi / 2));

    Circuit u = parse("OPENQASM 2.0; qreg q[1]; u(0.1,0.2,0.3) q[0]; u3(0.1,0.2,0.3) q[0];");
    CHECK(gates_equal(u.gates[0], u.gates[1], 0.0));
}

TEST_CASE("measurement survives a round trip") {
    Circuit c = parse("OPENQASM 2.0; qreg q[3]; creg c[2];\n"
                      "h q[0]; cx q[0],q[2];\n"
                      "measure q[0] -> c[1];\nmeasure q[2] -> c[0];\n");
    Circuit back = parse(emit(c));
    CHECK(back.n_cbits == 2);
    CHECK(circuits_equal(c, back, 0.0));
    CHECK(back.gates[2].cbits == std::vector<std::uint32_t>{1});
    CHECK(back.gates[3].cbits == std::vector<std::uint32_t>{0});
}

TEST_CASE("emit rejects kinds with no textual form") {
    Circuit c;
    c.n_qubits = 3;
    c.gates = {Gate::mcz({0, 1}, 2)};
    CHECK_THROWS_AS((void)emit(c), Error);

    Circuit s;
    s.n_qubits = 2;
    Rng rng(5);
    s.gates = {Gate::su4(0, 1, haar_special_unitary(4, rng))};
    CHECK_THROWS_AS((void)emit(s), Error);
}

TEST_CASE("round trips") {
    CHECK(roundtrip_check(gen_ghz(2)));
    CHECK(roundtrip_check(gen_ghz(5)));
    CHECK(roundtrip_check(gen_qft(6)));

    // Fourier circuit gate mix at n = 4: 4 h, 6 controlled phases, 2 swaps.
    Circuit qft4 = gen_qft(4);
    std::string text = emit(qft4);
    auto count_of = [&](const std::string &needle) {
        std::size_t count = 0, pos = 0;
        while ((pos = text.find(needle, pos)) != std::string::npos) {
            ++count;
            pos += needle.size();
        }
        return count;
    };
    CHECK(count_of("\nh ") == 4);
    CHECK(count_of("\ncu1(") == 6);
    CHECK(count_of("\nswap ") == 2);

    // Payload circuits round trip after lowering.
    Circuit qv = su4_decompose(gen_qv(4, 2, 7));
    CHECK(roundtrip_check(qv));
    Circuit grover = decompose_multicontrolled(gen_grover(5, 17));
    CHECK(roundtrip_check(grover));
    CHECK(roundtrip_check(gen_qw(5, 2)));
    CHECK(roundtrip_check(gen_rqc(6, 4, 3)));
}

TEST_CASE("round trip across every emittable benchmark up to 12 qubits") {
    for (std::size_t n = 2; n <= 12; n += 5) {
        CHECK(roundtrip_check(gen_ghz(n)));
        CHECK(roundtrip_check(gen_qft(n)));
        CHECK(roundtrip_check(decompose_multicontrolled(gen_grover(n, (1u << n) - 1))));
        CHECK(roundtrip_check(gen_qw(n, 1)));
        CHECK(roundtrip_check(gen_rqc(n, 3, n)));
        CHECK(roundtrip_check(su4_decompose(gen_qv(n, 2, n))));
    }
}

TEST_CASE("parser survives malformed input") {
    // Structured fuzzing: random mutations of a valid program plus random
    // bytes. The parser must always produce a circuit or a positioned error.
    const std::string base = "OPENQASM 2.0;\nqreg q[3];\ncreg c[3];\nh q[0];\ncx q[0],q[1];\n"
                             "rz(pi/7) q[2];\nbarrier q;\nmeasure q -> c;\n";
    Rng rng(99);
    int errors = 0, circuits = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::string text = base;
        std::size_t mutations = 1 + rng.next_below(8);
        for (std::size_t m = 0; m < mutations; ++m) {
            switch (rng.next_below(4)) {
            case 0: // flip a character
                if (!text.empty()) {
                    text[rng.next_below(text.size())] =
                        static_cast<char>(rng.next_below(256));
                }
                break;
            case 1: // truncate
                text = text.substr(0, rng.next_below(text.size() + 1));
                break;
            case 2: // duplicate a slice
                if (!text.empty()) {
                    std::size_t at = rng.next_below(text.size());
                    text.insert(at, text.substr(at / 2, rng.next_below(10) + 1));
                }
                break;
            default: // random garbage
                for (int k = 0; k < 5; ++k) {
                    text += static_cast<char>(rng.next_below(256));
                }
                break;
            }
        }
        try {
            parse(text);
            ++circuits;
        } catch (const QasmError &e) {
            CHECK(e.line >= 1);
            CHECK(e.column >= 1);
            ++errors;
        }
    }
    CHECK(errors + circuits == 1000);
    CHECK(errors > 0); // the corpus must actually exercise failures
}

TEST_CASE("parser handles megabyte-scale garbage") {
    Rng rng(5);
    std::string big = "OPENQASM 2.0;\nqreg q[2];\n";
    while (big.size() < (1u << 20)) {
        switch (rng.next_below(3)) {
        case 0: big += "h q[0];\n"; break;
        case 1: big += "cx q[0],q[1];\n"; break;
        default: big += static_cast<char>(rng.next_below(256)); break;
        }
    }
    try {
        Circuit c = parse(big);
        CHECK(c.n_qubits == 2);
    } catch (const QasmError &e) {
        CHECK(e.line >= 1);
    }
}
