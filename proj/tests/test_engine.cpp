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
#include <numbers>

#include "oracle.hpp"
#include "qsv/bench.hpp"
#include "qsv/engine.hpp"
#include "qsv/rng.hpp"

using namespace qsv;

namespace {

const double isq = 1.0 / std::sqrt(2.0);

StateVector random_state(std::size_t n, std::uint64_t seed, Precision p = Precision::double_fp) {
    Rng rng(seed);
    StateVector s = init_zero_state(n, p);
    double norm = 0.0;
    std::vector<std::complex<double>> amps(std::size_t(1) << n);
    for (auto &a : amps) {
        a = {rng.next_gaussian(), rng.next_gaussian()};
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (std::uint64_t i = 0; i < s.size(); ++i) {
        s.set_amplitude(i, amps[static_cast<std::size_t>(i)] / norm);
    }
    return s;
}

} // namespace

TEST_CASE("one-qubit application") {
    StateVector s = init_zero_state(1, Precision::double_fp);
    apply_1q(s, gate_matrix(Gate::h(0)), 0);
    CHECK(std::abs(s.amplitude(0) - std::complex<double>(isq, 0)) < 1e-15);
    CHECK(std::abs(s.amplitude(1) - std::complex<double>(isq, 0)) < 1e-15);

    StateVector x = init_zero_state(1, Precision::double_fp);
    x.set_amplitude(0, 0.0);
    x.set_amplitude(1, 1.0);
    apply_1q(x, gate_matrix(Gate::x(0)), 0);
    CHECK(std::abs(x.amplitude(0) - std::complex<double>(1, 0)) < 1e-15);
    CHECK(std::abs(x.amplitude(1)) < 1e-15);

    // Inverse rotation pair returns the original state.
    StateVector r = random_state(3, 5);
    StateVector before = random_state(3, 5);
    apply_gate(r, Gate::rz(0.731, 1));
    apply_gate(r, Gate::rz(-0.731, 1));
    CHECK(oracle::max_diff(r, before) < 1e-12);
}

TEST_CASE("controlled application") {
    // CX with control q0 on |10> (index 1) -> index 3.
    StateVector s = init_zero_state(2, Precision::double_fp);
    s.set_amplitude(0, 0.0);
    s.set_amplitude(1, 1.0);
    apply_controlled(s, gate_matrix(Gate::x(0)), {0}, 1);
    CHECK(std::abs(s.amplitude(3) - std::complex<double>(1, 0)) < 1e-15);
    CHECK(std::abs(s.amplitude(1)) < 1e-15);

    // Control clear: |00> unchanged.
    StateVector z = init_zero_state(2, Precision::double_fp);
    apply_controlled(z, gate_matrix(Gate::x(0)), {0}, 1);
    CHECK(std::abs(z.amplitude(0) - std::complex<double>(1, 0)) < 1e-15);

    // Toffoli truth table: AND-controlled NOT over all 8 basis states.
    for (std::uint64_t basis = 0; basis < 8; ++basis) {
        StateVector t = init_zero_state(3, Precision::double_fp);
        t.set_amplitude(0, 0.0);
        t.set_amplitude(basis, 1.0);
        apply_gate(t, Gate::ccx(0, 1, 2));
        std::uint64_t expect = ((basis & 3) == 3) ? basis ^ 4 : basis;
        CHECK(std::abs(t.amplitude(expect) - std::complex<double>(1, 0)) < 1e-15);
    }
}

TEST_CASE("k-qubit path agrees with the one-qubit kernel") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Rng rng(seed);
        std::size_t n = 1 + rng.next_below(4);
        std::uint32_t target = static_cast<std::uint32_t>(rng.next_below(n));
        Matrix m = haar_unitary(2, rng);

        StateVector a = random_state(n, seed + 10000);
        StateVector b = random_state(n, seed + 10000);
        apply_1q(a, m, target);
        apply_kq(b, m, {target});
        CHECK(oracle::max_diff(a, b) < 1e-12);
    }
}

TEST_CASE("identity leaves the state untouched exactly") {
    StateVector s = random_state(4, 77);
    StateVector before = random_state(4, 77);
    apply_kq(s, Matrix::identity(8), {0, 2, 3});
    for (std::uint64_t i = 0; i < s.size(); ++i) {
        CHECK(s.amplitude(i) == before.amplitude(i));
    }
}

TEST_CASE("fused Hadamard pair gives the uniform state") {
    StateVector s = init_zero_state(2, Precision::double_fp);
    apply_kq(s, tensor_expand(Gate::h(0), Gate::h(1)), {0, 1});
    for (std::uint64_t i = 0; i < 4; ++i) {
        CHECK(std::abs(s.amplitude(i) - std::complex<double>(0.5, 0)) < 1e-15);
    }
}

TEST_CASE("worker counts do not change kernel results") {
    Rng rng(3);
    Matrix m = haar_unitary(2, rng);
    for (std::size_t n : {4, 14}) { // below and above the parallel threshold
        StateVector one = random_state(n, 42);
        StateVector four = random_state(n, 42);
        apply_1q(one, m, 2, 1);
        apply_1q(four, m, 2, 4);
        for (std::uint64_t i = 0; i < one.size(); ++i) {
            CHECK(one.amplitude(i) == four.amplitude(i));
        }
    }
}

TEST_CASE("run reproduces small benchmark states") {
    RunConfig cfg;
    RunResult ghz = run(gen_ghz(3), cfg);
    const StateVector &s = *ghz.final_state;
    CHECK(std::abs(s.amplitude(0) - std::complex<double>(isq, 0)) < 1e-12);
    CHECK(std::abs(s.amplitude(7) - std::complex<double>(isq, 0)) < 1e-12);
    for (std::uint64_t i = 1; i < 7; ++i) {
        CHECK(std::abs(s.amplitude(i)) < 1e-12);
    }
}

TEST_CASE("empty circuit sampling") {
    Circuit c;
    c.n_qubits = 2;
    RunConfig cfg;
    cfg.shots = 5;
    RunResult r = run(c, cfg);
    REQUIRE(r.counts.size() == 1);
    CHECK(r.counts.at("00") == 5);
}

TEST_CASE("single Hadamard sampling is balanced and reproducible") {
    Circuit c;
    c.n_qubits = 1;
    c.gates = {Gate::h(0)};
    RunConfig cfg;
    cfg.shots = 10000;
    cfg.seed = 7;
    RunResult r = run(c, cfg);
    double zero = static_cast<double>(r.counts.count("0") ? r.counts.at("0") : 0);
    CHECK(std::abs(zero - 5000.0) < 3 * 50.0); // 3 sigma, sigma = sqrt(n p q) = 50

    RunResult again = run(c, cfg);
    CHECK(r.counts == again.counts);
}

TEST_CASE("sampling statistics pass a chi-square test") {
    Circuit c;
    c.n_qubits = 1;
    c.gates = {Gate::h(0)};
    RunConfig cfg;
    cfg.shots = 1000000;
    cfg.seed = 1;
    RunResult r = run(c, cfg);
    double c0 = static_cast<double>(r.counts.at("0"));
    double c1 = static_cast<double>(r.counts.at("1"));
    double expect = 500000.0;
    double chi2 = (c0 - expect) * (c0 - expect) / expect + (c1 - expect) * (c1 - expect) / expect;
    CHECK(chi2 < 10.83); // 1 dof, p > 0.001
}

TEST_CASE("sampling rejects unnormalized states") {
    StateVector s = init_zero_state(2, Precision::double_fp);
    s.set_amplitude(0, {0.5, 0.0});
    CHECK_THROWS_AS((void)sample_indices(s, 10, 0), NormalizationError);
}

TEST_CASE("deterministic state sampling") {
    StateVector s = init_zero_state(3, Precision::double_fp);
    auto counts = sample(s, 25, 3);
    REQUIRE(counts.size() == 1);
    CHECK(counts.at("000") == 25);
}

TEST_CASE("trailing measurements map qubits onto classical bits") {
    // Measure only qubit 1 of a 2-qubit entangler into classical bit 0: the
    // reported keys marginalize over the unmeasured qubit.
    Circuit c;
    c.n_qubits = 2;
    c.n_cbits = 1;
    c.gates = {Gate::h(0), Gate::cx(0, 1), Gate::measure(1, 0)};
    RunConfig cfg;
    cfg.shots = 400;
    cfg.seed = 2;
    RunResult r = run(c, cfg);
    std::uint64_t total = 0;
    for (const auto &[key, count] : r.counts) {
        CHECK(key.size() == 1);
        CHECK((key == "0" || key == "1"));
        total += count;
    }
    CHECK(total == 400);
    CHECK(r.counts.size() == 2); // both outcomes present at these odds
}

TEST_CASE("unitarity holds across benchmarks and precisions") {
    std::vector<Circuit> circuits;
    circuits.push_back(gen_ghz(10));
    circuits.push_back(gen_qft(8));
    circuits.push_back(gen_qv(8, 3, 1));
    circuits.push_back(gen_rqc(8, 3, 1));
    circuits.push_back(gen_grover(8, 200));
    circuits.push_back(gen_qw(6, 2));

    for (const Circuit &c : circuits) {
        for (Precision p : {Precision::double_fp, Precision::single_fp}) {
            StateVector s = init_zero_state(c.n_qubits, p);
            for (const Gate &g : c.gates) {
                apply_gate(s, g);
                double drift = std::abs(s.norm_sq() - 1.0);
                CHECK(drift < (p == Precision::double_fp ? 1e-9 : 1e-4));
            }
        }
    }
}

TEST_CASE("oracle equivalence for every benchmark at small sizes") {
    std::vector<Circuit> circuits;
    for (std::size_t n = 2; n <= 6; ++n) {
        circuits.push_back(gen_ghz(n));
        circuits.push_back(gen_qft(n));
        circuits.push_back(gen_qv(n, 3, n));
        circuits.push_back(gen_rqc(n, 4, n));
        circuits.push_back(gen_grover(n, (std::uint64_t(1) << n) - 1));
    }
    circuits.push_back(gen_qw(4, 3));
    circuits.push_back(gen_qw(5, 3));

    RunConfig cfg;
    cfg.fusion.enabled = false;
    for (const Circuit &c : circuits) {
        RunResult r = run(c, cfg);
        auto expect = oracle::simulate(c);
        CHECK(oracle::max_diff(*r.final_state, expect) < 1e-10);
    }
}

TEST_CASE("chunked execution matches monolithic and is worker independent") {
    Circuit c = gen_qv(12, 10, 9);
    RunConfig mono_cfg;
    mono_cfg.fusion.enabled = false;
    RunResult mono = run(c, mono_cfg);

    BlockingPlan plan = block_pass(c, 8);
    std::vector<StateVector> states;
    for (std::size_t workers : {1, 2, 4}) {
        RunConfig cfg;
        cfg.fusion.enabled = false;
        cfg.worker_count = workers;
        RunResult chunked = run_chunked(plan, cfg);
        CHECK(oracle::max_diff(*chunked.final_state, *mono.final_state) < 1e-12);
        states.push_back(std::move(*chunked.final_state));
    }
    // Bit identical across worker counts.
    for (std::size_t w = 1; w < states.size(); ++w) {
        for (std::uint64_t i = 0; i < states[0].size(); ++i) {
            CHECK(states[0].amplitude(i) == states[w].amplitude(i));
        }
    }
}

TEST_CASE("exchange ledger accounting is exact") {
    // n=4, b=2, one swap across the boundary moves 2^3 amplitudes.
    Circuit c;
    c.n_qubits = 4;
    c.gates = {Gate::swap(0, 3)};
    BlockingPlan plan = block_pass(c, 2);
    RunConfig cfg;
    cfg.precision = Precision::single_fp;
    cfg.fusion.enabled = false;
    RunResult r = run_chunked(plan, cfg);
    CHECK(r.ledger.inter_chunk_bytes ==
          plan.inserted_swaps * (std::uint64_t(1) << 3) * 8);

    // Boundary at n: no exchanges at all.
    BlockingPlan full = block_pass(gen_qft(6), 6);
    RunConfig dcfg;
    dcfg.fusion.enabled = false;
    RunResult rf = run_chunked(full, dcfg);
    CHECK(rf.ledger.inter_chunk_bytes == 0);
    CHECK(rf.ledger.phases.transfer == 0.0);
}

TEST_CASE("chunked sampling agrees with the chunk layout") {
    Circuit c = gen_ghz(10);
    RunConfig cfg;
    cfg.fusion.enabled = false;
    cfg.blocking_qubits = 6;
    cfg.shots = 200;
    cfg.seed = 11;
    cfg.worker_count = 2;
    RunResult r = run(c, cfg);
    std::uint64_t total = 0;
    for (const auto &[key, count] : r.counts) {
        CHECK((key == "0000000000" || key == "1111111111"));
        total += count;
    }
    CHECK(total == 200);

    // Counts are independent of the worker count for a fixed seed.
    for (std::size_t w : {1, 4}) {
        RunConfig other = cfg;
        other.worker_count = w;
        CHECK(run(c, other).counts == r.counts);
    }
}

TEST_CASE("fusion and blocking compose inside run") {
    Circuit c = gen_qft(10);
    RunConfig plain;
    plain.fusion.enabled = false;
    RunResult reference = run(c, plain);

    RunConfig both;
    both.fusion.enabled = true;
    both.fusion.fusion_threshold = 1;
    both.blocking_qubits = 6;
    both.worker_count = 2;
    RunResult combined = run(c, both);
    CHECK(oracle::max_diff(*combined.final_state, *reference.final_state) < 1e-10);
    CHECK(combined.ledger.inter_chunk_bytes > 0);
}

TEST_CASE("phase breakdown sums to one") {
    RunConfig cfg;
    cfg.shots = 100;
    RunResult mono = run(gen_ghz(8), cfg);
    PhaseBreakdown pb = phase_breakdown(mono);
    CHECK(pb.initialize + pb.transfer + pb.compute + pb.finalize + pb.idle ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pb.transfer == 0.0);

    RunConfig chunked = cfg;
    chunked.blocking_qubits = 8;
    RunResult blocked = run(gen_ghz(12), chunked);
    PhaseBreakdown pb2 = phase_breakdown(blocked);
    CHECK(pb2.initialize + pb2.transfer + pb2.compute + pb2.finalize + pb2.idle ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(blocked.ledger.inter_chunk_bytes > 0);
    CHECK(pb2.transfer > 0.0);
}

TEST_CASE("fourier transform matches the reference spectrum") {
    for (std::size_t n = 1; n <= 10; ++n) {
        Circuit qft = gen_qft(n);
        // A handful of basis inputs per size.
        Rng rng(n);
        for (int trial = 0; trial < 4; ++trial) {
            std::uint64_t j = rng.next_below(std::uint64_t(1) << n);
            StateVector s = init_zero_state(n, Precision::double_fp);
            s.set_amplitude(0, 0.0);
            s.set_amplitude(j, 1.0);
            for (const Gate &g : qft.gates) {
                apply_gate(s, g);
            }
            auto expect = oracle::dft_reference(n, j);
            CHECK(oracle::max_diff(s, expect) < 1e-10);
        }
    }
}

TEST_CASE("mid-circuit measurement is rejected by run") {
    Circuit c;
    c.n_qubits = 1;
    c.n_cbits = 1;
    c.gates = {Gate::measure(0, 0), Gate::h(0)};
    RunConfig cfg;
    CHECK_THROWS_AS((void)run(c, cfg), ValidationError);
}

TEST_CASE("capacity errors surface from run") {
    Circuit c = gen_ghz(31);
    RunConfig cfg;
    cfg.precision = Precision::single_fp;
    CHECK_THROWS_AS((void)run(c, cfg), CapacityError);
}
