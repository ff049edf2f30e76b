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

#include "qsv/bench.hpp"

#include <numbers>
#include <numeric>

#include "qsv/error.hpp"
#include "qsv/rng.hpp"
#include "qsv/synthesis.hpp"

namespace qsv {

const char *bench_app_name(BenchApp app) {
    switch (app) {
    case BenchApp::qv: return "qv";
    case BenchApp::qft: return "qft";
    case BenchApp::rqc: return "rqc";
    case BenchApp::grover: return "grover";
    case BenchApp::ghz: return "ghz";
    case BenchApp::qw: return "qw";
    }
    return "?";
}

BenchApp bench_app_from_name(const std::string &name) {
    if (name == "qv") return BenchApp::qv;
    if (name == "qft") return BenchApp::qft;
    if (name == "rqc") return BenchApp::rqc;
    if (name == "grover") return BenchApp::grover;
    if (name == "ghz") return BenchApp::ghz;
    if (name == "qw") return BenchApp::qw;
    throw Error("unknown benchmark '" + name + "' (expected qv, qft, rqc, grover, ghz or qw)");
}

Circuit gen_qv(std::size_t n, std::size_t depth, std::uint64_t seed) {
    if (n < 2 || depth < 1) {
        throw Error("qv needs at least 2 qubits and depth 1");
    }
    Circuit c;
    c.n_qubits = n;
    c.metadata.name = "qv";
    c.metadata.seed = seed;
    c.metadata.params = {{"qubits", std::to_string(n)}, {"depth", std::to_string(depth)}};

    Rng rng(seed);
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t layer = 0; layer < depth; ++layer) {
        rng.shuffle(order);
        for (std::size_t pair = 0; pair < n / 2; ++pair) {
            Matrix u = haar_special_unitary(4, rng);
            c.gates.push_back(Gate::su4(order[2 * pair], order[2 * pair + 1], std::move(u)));
        }
    }
    return c;
}

Circuit gen_qft(std::size_t n) {
    if (n < 1) {
        throw Error("qft needs at least 1 qubit");
    }
    Circuit c;
    c.n_qubits = n;
    c.metadata.name = "qft";
    c.metadata.params = {{"qubits", std::to_string(n)}};

    for (std::size_t i = 0; i < n; ++i) {
        c.gates.push_back(Gate::h(static_cast<std::uint32_t>(i)));
        for (std::size_t j = i + 1; j < n; ++j) {
            double angle = std::numbers::pi / static_cast<double>(std::uint64_t(1) << (j - i));
            c.gates.push_back(Gate::cp(angle, static_cast<std::uint32_t>(j),
                                       static_cast<std::uint32_t>(i)));
        }
    }
    for (std::size_t i = 0; i < n / 2; ++i) {
        c.gates.push_back(
            Gate::swap(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(n - 1 - i)));
    }
    return c;
}

Circuit gen_rqc(std::size_t n, std::size_t depth, std::uint64_t seed) {
    if (n < 2 || depth < 1) {
        throw Error("rqc needs at least 2 qubits and depth 1");
    }
    Circuit c;
    c.n_qubits = n;
    c.metadata.name = "rqc";
    c.metadata.seed = seed;
    c.metadata.params = {{"qubits", std::to_string(n)}, {"depth", std::to_string(depth)}};

    Rng rng(seed);
    const GateKind pool[3] = {GateKind::SQRT_X, GateKind::SQRT_Y, GateKind::T};
    std::vector<int> previous(n, -1);

    for (std::size_t layer = 0; layer < depth; ++layer) {
        for (std::size_t q = 0; q < n; ++q) {
            int pick;
            if (previous[q] < 0) {
                pick = static_cast<int>(rng.next_below(3));
            } else {
                // Two remaining choices once the previous one is excluded.
                int offset = static_cast<int>(rng.next_below(2));
                pick = (previous[q] + 1 + offset) % 3;
            }
            previous[q] = pick;
            Gate g;
            g.kind = pool[pick];
            g.targets = {static_cast<std::uint32_t>(q)};
            c.gates.push_back(std::move(g));
        }
        // CZ written as CP(pi); pairs (i, i+1) with i = layer mod 4 stepping
        // by 4 trace out a four-phase pattern along the line.
        std::size_t offset = layer % 4;
        for (std::size_t i = offset; i + 1 < n; i += 4) {
            c.gates.push_back(Gate::cp(std::numbers::pi, static_cast<std::uint32_t>(i),
                                       static_cast<std::uint32_t>(i + 1)));
        }
    }
    return c;
}

Circuit gen_grover(std::size_t n, std::uint64_t marked_state, std::size_t iterations) {
    if (n < 2) {
        throw Error("grover needs at least 2 qubits");
    }
    if (marked_state >= (std::uint64_t(1) << n)) {
        throw Error("marked state out of range");
    }
    Circuit c;
    c.n_qubits = n;
    c.metadata.name = "grover";
    c.metadata.params = {{"qubits", std::to_string(n)},
                         {"marked", std::to_string(marked_state)},
                         {"iterations", std::to_string(iterations)}};

    std::vector<std::uint32_t> head(n - 1);
    std::iota(head.begin(), head.end(), 0);
    std::uint32_t last = static_cast<std::uint32_t>(n - 1);

    auto h_all = [&] {
        for (std::size_t q = 0; q < n; ++q) {
            c.gates.push_back(Gate::h(static_cast<std::uint32_t>(q)));
        }
    };
    auto x_all = [&] {
        for (std::size_t q = 0; q < n; ++q) {
            c.gates.push_back(Gate::x(static_cast<std::uint32_t>(q)));
        }
    };

    h_all();
    for (std::size_t round = 0; round < iterations; ++round) {
        // Oracle: flip the phase of the marked state.
        for (std::size_t q = 0; q < n; ++q) {
            if (((marked_state >> q) & 1u) == 0) {
                c.gates.push_back(Gate::x(static_cast<std::uint32_t>(q)));
            }
        }
        c.gates.push_back(Gate::mcz(head, last));
        for (std::size_t q = 0; q < n; ++q) {
            if (((marked_state >> q) & 1u) == 0) {
                c.gates.push_back(Gate::x(static_cast<std::uint32_t>(q)));
            }
        }
        // Diffuser: reflection about the uniform state.
        h_all();
        x_all();
        c.gates.push_back(Gate::mcz(head, last));
        x_all();
        h_all();
    }
    return c;
}

Circuit gen_ghz(std::size_t n) {
    if (n < 1) {
        throw Error("ghz needs at least 1 qubit");
    }
    Circuit c;
    c.n_qubits = n;
    c.metadata.name = "ghz";
    c.metadata.params = {{"qubits", std::to_string(n)}};
    c.gates.push_back(Gate::h(0));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        c.gates.push_back(
            Gate::cx(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + 1)));
    }
    return c;
}

Circuit gen_qw(std::size_t n, std::size_t iterations) {
    if (n < 2 || iterations < 1) {
        throw Error("qw needs at least 2 qubits (coin + position) and 1 iteration");
    }
    Circuit c;
    c.n_qubits = n;
    c.metadata.name = "qw";
    c.metadata.params = {{"qubits", std::to_string(n)},
                         {"iterations", std::to_string(iterations)}};

    const std::uint32_t coin = 0;
    const std::size_t m = n - 1; // position register width

    // Ripple increment of the position register, conditioned on the coin:
    // flip position bit j when the coin and all lower position bits are set.
    auto controlled_increment = [&] {
        for (std::size_t j = m; j-- > 0;) {
            std::vector<std::uint32_t> controls = {coin};
            for (std::size_t i = 0; i < j; ++i) {
                controls.push_back(static_cast<std::uint32_t>(1 + i));
            }
            append_mcx(c.gates, controls, static_cast<std::uint32_t>(1 + j), n);
        }
    };

    for (std::size_t step = 0; step < iterations; ++step) {
        c.gates.push_back(Gate::h(coin));
        controlled_increment();
        // Decrement on a clear coin: negate the coin, conjugate the position
        // register by X (which turns +1 into -1 mod 2^m), undo both.
        c.gates.push_back(Gate::x(coin));
        for (std::size_t i = 0; i < m; ++i) {
            c.gates.push_back(Gate::x(static_cast<std::uint32_t>(1 + i)));
        }
        controlled_increment();
        for (std::size_t i = 0; i < m; ++i) {
            c.gates.push_back(Gate::x(static_cast<std::uint32_t>(1 + i)));
        }
        c.gates.push_back(Gate::x(coin));
    }
    return c;
}

Circuit gen(const BenchSpec &spec) {
    switch (spec.app) {
    case BenchApp::qv:
        return gen_qv(spec.n_qubits, spec.depth, spec.seed);
    case BenchApp::qft:
        return gen_qft(spec.n_qubits);
    case BenchApp::rqc:
        return gen_rqc(spec.n_qubits, spec.depth, spec.seed);
    case BenchApp::grover:
        return gen_grover(spec.n_qubits, spec.marked_state, spec.iterations);
    case BenchApp::ghz:
        return gen_ghz(spec.n_qubits);
    case BenchApp::qw:
        return gen_qw(spec.n_qubits, spec.iterations);
    }
    throw Error("unknown benchmark app");
}

} // namespace qsv
