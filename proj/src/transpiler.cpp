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

#include "qsv/transpiler.hpp"

#include <algorithm>
#include <numbers>
#include <set>

#include "qsv/error.hpp"
#include "qsv/synthesis.hpp"

namespace qsv {

// ---------------------------------------------------------------------------
// Gate fusion
// ---------------------------------------------------------------------------

namespace {

struct OpenGroup {
    std::vector<std::uint32_t> qubits; // sorted
    std::vector<std::size_t> members;  // source gate indices
    Matrix matrix;                     // over `qubits`, little endian

    bool empty() const { return members.empty(); }
};

std::vector<std::uint32_t> union_sorted(const std::vector<std::uint32_t> &a,
                                        const std::vector<std::uint32_t> &b) {
    std::set<std::uint32_t> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    return {s.begin(), s.end()};
}

} // namespace

FusionResult fuse_pass_detailed(const Circuit &c, const FusionConfig &cfg) {
    FusionResult result;
    if (!cfg.enabled || c.n_qubits < cfg.fusion_threshold) {
        result.circuit = c;
        return result;
    }

    Circuit out;
    out.n_qubits = c.n_qubits;
    out.n_cbits = c.n_cbits;
    out.metadata = c.metadata;

    OpenGroup group;

    auto flush = [&] {
        if (group.empty()) {
            return;
        }
        if (group.members.size() == 1) {
            // Single-member groups keep the original gate so fusion never
            // grows the gate count.
            out.gates.push_back(c.gates[group.members.front()]);
        } else {
            FusedUnitary fused;
            fused.qubits = group.qubits;
            fused.matrix = group.matrix;
            fused.provenance = group.members;
            out.gates.push_back(Gate::unitary(group.qubits, group.matrix));
            result.groups.push_back(std::move(fused));
        }
        group = OpenGroup{};
    };

    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate &g = c.gates[i];
        if (!g.is_unitary_kind()) {
            flush();
            out.gates.push_back(g);
            continue;
        }
        std::vector<std::uint32_t> span = g.operands();
        std::sort(span.begin(), span.end());

        if (span.size() > cfg.max_fused_qubits) {
            // Too wide to ever fuse; flush and pass through natively so the
            // engine's control-conditioned path still sees it.
            flush();
            out.gates.push_back(g);
            continue;
        }

        std::vector<std::uint32_t> merged = union_sorted(group.qubits, span);
        if (!group.empty() && merged.size() > cfg.max_fused_qubits) {
            flush();
            merged = span;
        }

        std::vector<std::uint32_t> full_span;
        Matrix full = gate_full_matrix(g, full_span);
        if (group.empty()) {
            group.qubits = span;
            group.matrix = embed(full, full_span, span);
            group.members = {i};
        } else {
            if (merged != group.qubits) {
                group.matrix = embed(group.matrix, group.qubits, merged);
                group.qubits = merged;
            }
            group.matrix = mul(embed(full, full_span, group.qubits), group.matrix);
            group.members.push_back(i);
        }
    }
    flush();

    result.circuit = std::move(out);
    return result;
}

Circuit fuse_pass(const Circuit &c, const FusionConfig &cfg) {
    return fuse_pass_detailed(c, cfg).circuit;
}

// ---------------------------------------------------------------------------
// Cache blocking
// ---------------------------------------------------------------------------

BlockingPlan block_pass(const Circuit &c, std::size_t blocking_qubits) {
    if (blocking_qubits < 1 || blocking_qubits > c.n_qubits) {
        throw BlockingError("blocking_qubits must be in [1, n_qubits]");
    }

    BlockingPlan plan;
    plan.n_qubits = c.n_qubits;
    plan.blocking_qubits = blocking_qubits;
    plan.rewritten.n_qubits = c.n_qubits;
    plan.rewritten.n_cbits = c.n_cbits;
    plan.rewritten.metadata = c.metadata;

    // layout[logical] = physical position; phys[physical] = logical qubit.
    std::vector<std::uint32_t> layout(c.n_qubits);
    std::vector<std::uint32_t> phys(c.n_qubits);
    for (std::uint32_t q = 0; q < c.n_qubits; ++q) {
        layout[q] = q;
        phys[q] = q;
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> exchange_log;

    auto push_gate = [&](Gate g, bool is_exchange) {
        plan.rewritten.gates.push_back(std::move(g));
        plan.exchange.push_back(is_exchange);
        if (is_exchange) {
            plan.inserted_swaps += 1;
        }
    };

    auto apply_exchange = [&](std::uint32_t low, std::uint32_t high) {
        // Swap the occupants of physical positions low and high.
        std::uint32_t llog = phys[low];
        std::uint32_t hlog = phys[high];
        std::swap(phys[low], phys[high]);
        layout[llog] = high;
        layout[hlog] = low;
        exchange_log.emplace_back(low, high);
        push_gate(Gate::swap(low, high), true);
    };

    auto emit_restore = [&] {
        // Exchanges are self-inverse transpositions; replaying them in
        // reverse returns the layout to the identity.
        for (auto it = exchange_log.rbegin(); it != exchange_log.rend(); ++it) {
            std::uint32_t llog = phys[it->first];
            std::uint32_t hlog = phys[it->second];
            std::swap(phys[it->first], phys[it->second]);
            layout[llog] = it->second;
            layout[hlog] = it->first;
            push_gate(Gate::swap(it->first, it->second), true);
        }
        exchange_log.clear();
    };

    bool restored = false;
    for (const Gate &g : c.gates) {
        if (g.kind == GateKind::MEASURE) {
            // Measurements read the logical state; restore first.
            if (!restored) {
                emit_restore();
                restored = true;
            }
            push_gate(g, false);
            continue;
        }
        if (restored) {
            throw BlockingError("gate after measurement in blocking pass");
        }
        if (g.kind == GateKind::BARRIER) {
            Gate mapped = g;
            for (auto &q : mapped.targets) {
                q = layout[q];
            }
            push_gate(std::move(mapped), false);
            continue;
        }

        if (g.span() > blocking_qubits) {
            throw BlockingError("gate spans " + std::to_string(g.span()) +
                                " qubits which exceeds the blocking boundary " +
                                std::to_string(blocking_qubits));
        }

        // Current physical positions of the gate's operands.
        std::vector<std::uint32_t> ops = g.operands();
        std::set<std::uint32_t> in_use;
        for (std::uint32_t q : ops) {
            in_use.insert(layout[q]);
        }
        for (std::uint32_t q : ops) {
            std::uint32_t pos = layout[q];
            if (pos < blocking_qubits) {
                continue;
            }
            // Lowest free physical qubit below the boundary.
            std::uint32_t low = 0;
            while (in_use.count(low)) {
                ++low;
            }
            if (low >= blocking_qubits) {
                throw BlockingError("no free qubit below the blocking boundary");
            }
            apply_exchange(low, pos);
            in_use.erase(pos);
            in_use.insert(low);
        }

        Gate mapped = g;
        for (auto &q : mapped.targets) {
            q = layout[q];
        }
        for (auto &q : mapped.controls) {
            q = layout[q];
        }
        push_gate(std::move(mapped), false);
    }
    if (!restored) {
        emit_restore();
    }

    plan.final_layout = layout;
    return plan;
}

std::vector<BlockingSweepRow> sweep_blocking(const Circuit &c,
                                             const std::vector<std::size_t> &b_values,
                                             Precision precision) {
    std::vector<BlockingSweepRow> rows;
    for (std::size_t b : b_values) {
        BlockingPlan plan = block_pass(c, b);
        BlockingSweepRow row;
        row.blocking_qubits = b;
        row.inserted_swaps = plan.inserted_swaps;
        row.predicted_inter_chunk_bytes =
            static_cast<std::uint64_t>(plan.inserted_swaps) *
            (std::uint64_t(1) << (c.n_qubits - 1)) * amplitude_bytes(precision);
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Lowering passes
// ---------------------------------------------------------------------------

Circuit su4_decompose(const Circuit &c) {
    Circuit out;
    out.n_qubits = c.n_qubits;
    out.n_cbits = c.n_cbits;
    out.metadata = c.metadata;
    for (const Gate &g : c.gates) {
        if (g.kind != GateKind::SU4) {
            out.gates.push_back(g);
            continue;
        }
        Matrix payload(4, g.payload);
        for (Gate &piece : decompose_two_qubit(payload, g.targets[0], g.targets[1])) {
            out.gates.push_back(std::move(piece));
        }
    }
    return out;
}

Circuit decompose_multicontrolled(const Circuit &c) {
    Circuit out;
    out.n_qubits = c.n_qubits;
    out.n_cbits = c.n_cbits;
    out.metadata = c.metadata;
    for (const Gate &g : c.gates) {
        if (g.kind == GateKind::MCX) {
            append_mcx(out.gates, g.controls, g.targets[0], c.n_qubits);
        } else if (g.kind == GateKind::MCZ) {
            std::vector<std::uint32_t> qubits = g.controls;
            qubits.push_back(g.targets[0]);
            append_mcp(out.gates, qubits, std::numbers::pi, c.n_qubits);
        } else {
            out.gates.push_back(g);
        }
    }
    return out;
}

Circuit decompose_to_native(const Circuit &c) {
    return decompose_multicontrolled(su4_decompose(c));
}

} // namespace qsv
