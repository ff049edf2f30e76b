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

#include <cmath>

#include "oracle.hpp"
#include "qsv/bench.hpp"
#include "qsv/engine.hpp"
#include "qsv/qasm.hpp"

using namespace qsv;

TEST_CASE("closed-form gate counts hold across sizes") {
    for (std::size_t n = 2; n <= 34; ++n) {
        CircuitStats ghz = stats(gen_ghz(n));
        CHECK(ghz.total_gates == n);
        CHECK(ghz.depth == n);
        CHECK(ghz.non_local_gates == n - 1);

        CircuitStats qft = stats(gen_qft(n));
        CHECK(qft.total_gates == n + n * (n - 1) / 2 + n / 2);

        CircuitStats qv = stats(gen_qv(n, 4, 11));
        CHECK(qv.total_gates == 4 * (n / 2));
        CHECK(qv.non_local_gates == qv.total_gates);
        CHECK(qv.depth == 4);
    }
}

TEST_CASE("profiling-scale structural numbers") {
    CircuitStats qft31 = stats(gen_qft(31));
    CHECK(qft31.total_gates == 511);
    CHECK(qft31.non_local_percent == 94);

    CircuitStats ghz31 = stats(gen_ghz(31));
    CHECK(ghz31.total_gates == 31);
    CHECK(ghz31.depth == 31);

    CircuitStats qv31 = stats(gen_qv(31, 10, 0));
    CHECK(qv31.total_gates == 150);
    CHECK(qv31.non_local_percent == 100);
    CHECK(qv31.depth == 10);
}

TEST_CASE("generators are deterministic") {
    BenchSpec spec;
    spec.app = BenchApp::qv;
    spec.n_qubits = 4;
    spec.depth = 2;
    spec.seed = 7;
    Circuit a = gen(spec);
    Circuit b = gen(spec);
    CHECK(circuits_equal(a, b, 0.0));

    Circuit ra = gen_rqc(6, 5, 123);
    Circuit rb = gen_rqc(6, 5, 123);
    CHECK(circuits_equal(ra, rb, 0.0));
    CHECK(emit(ra) == emit(rb));

    // Different seeds disagree.
    CHECK(!circuits_equal(gen_rqc(6, 5, 123), gen_rqc(6, 5, 124), 0.0));
}

TEST_CASE("dispatch covers every app") {
    BenchSpec ghz;
    ghz.app = BenchApp::ghz;
    ghz.n_qubits = 5;
    CHECK(circuits_equal(gen(ghz), gen_ghz(5), 0.0));
    CHECK(bench_app_from_name("qw") == BenchApp::qw);
    CHECK_THROWS_AS((void)bench_app_from_name("nope"), Error);
}

TEST_CASE("qv payloads are unitary") {
    Circuit qv = gen_qv(6, 3, 3);
    for (const Gate &g : qv.gates) {
        REQUIRE(g.kind == GateKind::SU4);
        CHECK(unitarity_deviation(Matrix(4, g.payload)) < 1e-10);
    }
}

TEST_CASE("rqc single-qubit draws never repeat per qubit") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Circuit rqc = gen_rqc(7, 6, seed);
        std::vector<GateKind> last(7, GateKind::BARRIER);
        std::size_t one_qubit_gates = 0;
        for (const Gate &g : rqc.gates) {
            if (g.kind == GateKind::SQRT_X || g.kind == GateKind::SQRT_Y ||
                g.kind == GateKind::T) {
                std::uint32_t q = g.targets[0];
                CHECK(g.kind != last[q]);
                last[q] = g.kind;
                ++one_qubit_gates;
            }
        }
        CHECK(one_qubit_gates == 7 * 6);
    }
}

TEST_CASE("rqc total count follows the documented pattern") {
    // n single-qubit gates per layer plus the stride-4 pairing row.
    auto pairs_in_layer = [](std::size_t n, std::size_t layer) {
        std::size_t count = 0;
        for (std::size_t i = layer % 4; i + 1 < n; i += 4) {
            ++count;
        }
        return count;
    };
    for (std::size_t n : {4, 7, 31}) {
        for (std::size_t depth : {1, 2, 12}) {
            std::size_t expect = n * depth;
            for (std::size_t layer = 0; layer < depth; ++layer) {
                expect += pairs_in_layer(n, layer);
            }
            CHECK(stats(gen_rqc(n, depth, 5)).total_gates == expect);
        }
    }
}

TEST_CASE("entangler state") {
    RunConfig cfg;
    RunResult r = run(gen_ghz(3), cfg);
    const double isq = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(r.final_state->amplitude(0) - std::complex<double>(isq, 0)) < 1e-12);
    CHECK(std::abs(r.final_state->amplitude(7) - std::complex<double>(isq, 0)) < 1e-12);
}

TEST_CASE("grover amplifies the marked state") {
    // Single round at n=2 lands exactly on the marked state.
    RunConfig cfg;
    RunResult two = run(gen_grover(2, 3), cfg);
    CHECK(std::norm(two.final_state->amplitude(3)) == doctest::Approx(1.0).epsilon(1e-12));

    // n=3 after one round: 25/32.
    RunResult three = run(gen_grover(3, 5), cfg);
    CHECK(std::norm(three.final_state->amplitude(5)) ==
          doctest::Approx(25.0 / 32.0).epsilon(1e-12));

    // Optimal round count beats 0.9 for n up to 10.
    for (std::size_t n = 2; n <= 10; ++n) {
        std::uint64_t marked = (std::uint64_t(1) << n) - 1 - (n % 2);
        std::size_t rounds = static_cast<std::size_t>(
            std::floor(std::numbers::pi / 4.0 * std::sqrt(double(std::uint64_t(1) << n))));
        RunResult r = run(gen_grover(n, marked, rounds), cfg);
        CHECK(std::norm(r.final_state->amplitude(marked)) > 0.9);
    }
}

TEST_CASE("walk distribution after one step on two sites") {
    RunConfig cfg;
    RunResult r = run(gen_qw(2, 1), cfg);
    auto marginal = oracle::position_marginal(*r.final_state);
    REQUIRE(marginal.size() == 2);
    CHECK(marginal[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(marginal[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("walk probability is conserved") {
    RunConfig cfg;
    for (std::size_t n : {3, 5, 7, 10}) {
        RunResult r = run(gen_qw(n, 3), cfg);
        auto marginal = oracle::position_marginal(*r.final_state);
        double total = 0.0;
        for (double p : marginal) {
            total += p;
        }
        CHECK(std::abs(total - 1.0) < 1e-10);
    }
}

TEST_CASE("degenerate generator sizes") {
    CHECK(stats(gen_qv(2, 1, 0)).total_gates == 1);
    CHECK(stats(gen_qft(1)).total_gates == 1);
    Circuit ghz1 = gen_ghz(1);
    REQUIRE(ghz1.gates.size() == 1);
    CHECK(ghz1.gates[0].kind == GateKind::H);
}

TEST_CASE("walk interferes unlike the classical walk") {
    RunConfig cfg;
    RunResult r = run(gen_qw(6, 10), cfg);
    auto quantum = oracle::position_marginal(*r.final_state);
    auto classical = oracle::classical_walk(5, 10);
    CHECK(oracle::total_variation(quantum, classical) > 0.1);
}

TEST_CASE("generator preconditions") {
    CHECK_THROWS_AS((void)gen_qv(1, 1, 0), Error);
    CHECK_THROWS_AS((void)gen_qft(0), Error);
    CHECK_THROWS_AS((void)gen_grover(4, 16), Error);
    CHECK_THROWS_AS((void)gen_qw(1, 1), Error);
}
