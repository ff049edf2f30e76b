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
#include <string_view>

#include "qsv/circuit.hpp"

namespace qsv {

/// Parse an OpenQASM 2.0 subset into a validated circuit.
///
/// Accepted grammar: the `OPENQASM 2.0;` header, an optional
/// `include "qelib1.inc";`, `qreg`/`creg` declarations, gate statements from
/// {h, x, y, z, s, t, sx, sy, rx, ry, rz, u1, u2, u3, p, cx, cz, cp, cu1,
/// ccx, swap}, `barrier`, and `measure`. Quantum registers flatten into one
/// qubit index space in declaration order. Angle expressions support
/// numbers, pi, + - * / ^, parentheses and the qelib functions. `gate`
/// definitions, `if` and `opaque` are rejected as unsupported constructs.
/// Every failure throws QasmError carrying line and column.
Circuit parse(std::string_view text);

/// Serialize a circuit back to the accepted subset. Angles print with 17
/// significant digits so they survive a round trip exactly. Throws when the
/// circuit contains kinds with no textual form (UNITARY, SU4, MCX, MCZ);
/// run the decomposition passes first for those.
std::string emit(const Circuit &c);

/// True when the gate kind can appear in emitted text.
bool is_emittable(GateKind k);

/// parse(emit(c)) equals c gate for gate (angles within 1e-15).
bool roundtrip_check(const Circuit &c);

} // namespace qsv
