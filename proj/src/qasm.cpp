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

#include "qsv/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>

#include "qsv/error.hpp"

namespace qsv {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
    identifier,
    number,
    string,
    symbol, // one of ; , ( ) [ ] and the arrow ->
    end,
};

struct Token {
    Tok kind = Tok::end;
    std::string text;
    double value = 0.0;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space_and_comments();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= src_.size()) {
            t.kind = Tok::end;
            return t;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Tok::identifier;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                t.text += src_[pos_];
                advance();
            }
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            t.kind = Tok::number;
            std::size_t start = pos_;
            bool seen_exp = false;
            while (pos_ < src_.size()) {
                char d = src_[pos_];
                if (std::isdigit(static_cast<unsigned char>(d)) || d == '.') {
                    advance();
                } else if ((d == 'e' || d == 'E') && !seen_exp) {
                    seen_exp = true;
                    advance();
                    if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                        advance();
                    }
                } else {
                    break;
                }
            }
            t.text = std::string(src_.substr(start, pos_ - start));
            try {
                t.value = std::stod(t.text);
            } catch (const std::exception &) {
                throw QasmError("malformed number '" + t.text + "'", t.line, t.column);
            }
            return t;
        }
        if (c == '"') {
            t.kind = Tok::string;
            advance();
            while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                t.text += src_[pos_];
                advance();
            }
            if (pos_ >= src_.size() || src_[pos_] != '"') {
                throw QasmError("unterminated string", t.line, t.column);
            }
            advance();
            return t;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            t.kind = Tok::symbol;
            t.text = "->";
            advance();
            advance();
            return t;
        }
        static const std::string singles = ";,()[]{}+-*/^=<>";
        if (singles.find(c) != std::string::npos) {
            t.kind = Tok::symbol;
            t.text = std::string(1, c);
            advance();
            return t;
        }
        throw QasmError(std::string("unexpected character '") + c + "'", line_, column_);
    }

  private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Register {
    std::string name;
    std::size_t size = 0;
    std::size_t offset = 0; // position within the flattened index space
};

struct GateSignature {
    GateKind kind;
    std::size_t params;
    std::size_t qubits; // controls come first in the argument list
    std::size_t controls;
};

const std::map<std::string, GateSignature> &gate_table() {
    static const std::map<std::string, GateSignature> table = {
        {"h", {GateKind::H, 0, 1, 0}},
        {"x", {GateKind::X, 0, 1, 0}},
        {"y", {GateKind::Y, 0, 1, 0}},
        {"z", {GateKind::Z, 0, 1, 0}},
        {"s", {GateKind::S, 0, 1, 0}},
        {"t", {GateKind::T, 0, 1, 0}},
        {"sx", {GateKind::SQRT_X, 0, 1, 0}},
        {"sy", {GateKind::SQRT_Y, 0, 1, 0}},
        {"rx", {GateKind::RX, 1, 1, 0}},
        {"ry", {GateKind::RY, 1, 1, 0}},
        {"rz", {GateKind::RZ, 1, 1, 0}},
        {"p", {GateKind::P, 1, 1, 0}},
        {"u1", {GateKind::P, 1, 1, 0}},
        {"u2", {GateKind::U, 2, 1, 0}},
        {"u3", {GateKind::U, 3, 1, 0}},
        {"u", {GateKind::U, 3, 1, 0}},
        {"cx", {GateKind::CX, 0, 2, 1}},
        {"cz", {GateKind::CP, 0, 2, 1}},
        {"cp", {GateKind::CP, 1, 2, 1}},
        {"cu1", {GateKind::CP, 1, 2, 1}},
        {"ccx", {GateKind::CCX, 0, 3, 2}},
        {"swap", {GateKind::SWAP, 0, 2, 0}},
    };
    return table;
}

class Parser {
  public:
    explicit Parser(std::string_view src) : lexer_(src) { shift(); }

    Circuit parse_program() {
        expect_identifier("OPENQASM");
        Token version = expect(Tok::number, "version number");
        if (version.text != "2.0") {
            throw QasmError("unsupported version '" + version.text + "' (need 2.0)", version.line,
                            version.column);
        }
        expect_symbol(";");

        while (current_.kind != Tok::end) {
            statement();
        }

        circuit_.n_qubits = qubit_count_;
        circuit_.n_cbits = cbit_count_;
        if (circuit_.n_qubits == 0) {
            throw QasmError("no quantum register declared", current_.line, current_.column);
        }

        std::vector<std::string> issues = validate(circuit_);
        if (!issues.empty()) {
            // Map the first structural issue back to the statement position.
            std::size_t gate_index = circuit_.gates.size();
            std::size_t pos = issues.front().find("gate ");
            if (pos != std::string::npos) {
                gate_index = std::strtoull(issues.front().c_str() + pos + 5, nullptr, 10);
            }
            std::size_t line = 1, col = 1;
            if (gate_index < gate_positions_.size()) {
                line = gate_positions_[gate_index].first;
                col = gate_positions_[gate_index].second;
            }
            throw QasmError(issues.front(), line, col);
        }
        return circuit_;
    }

  private:
    void statement() {
        Token t = current_;
        if (t.kind != Tok::identifier) {
            throw QasmError("expected a statement", t.line, t.column);
        }
        if (t.text == "include") {
            shift();
            expect(Tok::string, "include file name");
            expect_symbol(";");
            return;
        }
        if (t.text == "qreg" || t.text == "creg") {
            declare_register(t.text == "qreg");
            return;
        }
        if (t.text == "gate" || t.text == "if" || t.text == "opaque") {
            throw QasmError("unsupported construct '" + t.text + "'", t.line, t.column);
        }
        if (t.text == "barrier") {
            shift();
            Gate g = Gate::barrier(parse_qubit_list(t));
            push_gate(std::move(g), t);
            expect_symbol(";");
            return;
        }
        if (t.text == "measure") {
            shift();
            measure_statement(t);
            return;
        }
        gate_statement(t);
    }

    void declare_register(bool quantum) {
        Token kw = current_;
        shift();
        Token name = expect(Tok::identifier, "register name");
        expect_symbol("[");
        Token size = expect(Tok::number, "register size");
        expect_symbol("]");
        expect_symbol(";");

        if (size.value < 1 || size.value != std::floor(size.value)) {
            throw QasmError("register size must be a positive integer", size.line, size.column);
        }
        auto &table = quantum ? qregs_ : cregs_;
        if (table.count(name.text) || (quantum ? cregs_ : qregs_).count(name.text)) {
            throw QasmError("register '" + name.text + "' already declared", name.line,
                            name.column);
        }
        if (!circuit_.gates.empty()) {
            throw QasmError("register declared after gate statements", kw.line, kw.column);
        }
        Register reg;
        reg.name = name.text;
        reg.size = static_cast<std::size_t>(size.value);
        reg.offset = quantum ? qubit_count_ : cbit_count_;
        (quantum ? qubit_count_ : cbit_count_) += reg.size;
        table[name.text] = reg;
    }

    // A register reference, either fully indexed or a whole register.
    struct Arg {
        const Register *reg;
        std::optional<std::size_t> index;
        Token where;
    };

    Arg parse_arg(bool quantum) {
        Token name = expect(Tok::identifier, "register reference");
        const auto &table = quantum ? qregs_ : cregs_;
        auto it = table.find(name.text);
        if (it == table.end()) {
            throw QasmError("undeclared register '" + name.text + "'", name.line, name.column);
        }
        Arg arg{&it->second, std::nullopt, name};
        if (current_.kind == Tok::symbol && current_.text == "[") {
            shift();
            Token idx = expect(Tok::number, "index");
            expect_symbol("]");
            if (idx.value < 0 || idx.value != std::floor(idx.value)) {
                throw QasmError("index must be a non-negative integer", idx.line, idx.column);
            }
            std::size_t i = static_cast<std::size_t>(idx.value);
            if (i >= arg.reg->size) {
                throw QasmError("index " + std::to_string(i) + " out of range for register '" +
                                    name.text + "' of size " + std::to_string(arg.reg->size),
                                idx.line, idx.column);
            }
            arg.index = i;
        }
        return arg;
    }

    std::vector<std::uint32_t> parse_qubit_list(const Token &at) {
        std::vector<std::uint32_t> out;
        for (;;) {
            Arg arg = parse_arg(true);
            if (arg.index) {
                out.push_back(static_cast<std::uint32_t>(arg.reg->offset + *arg.index));
            } else {
                for (std::size_t i = 0; i < arg.reg->size; ++i) {
                    out.push_back(static_cast<std::uint32_t>(arg.reg->offset + i));
                }
            }
            if (current_.kind == Tok::symbol && current_.text == ",") {
                shift();
                continue;
            }
            break;
        }
        if (out.empty()) {
            throw QasmError("expected at least one qubit", at.line, at.column);
        }
        return out;
    }

    void measure_statement(const Token &at) {
        Arg q = parse_arg(true);
        Token arrow = current_;
        expect_symbol("->");
        Arg c = parse_arg(false);
        expect_symbol(";");

        std::size_t count = q.index ? 1 : q.reg->size;
        std::size_t ccount = c.index ? 1 : c.reg->size;
        if (count != ccount) {
            throw QasmError("measure operand sizes differ", arrow.line, arrow.column);
        }
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t qi = q.reg->offset + (q.index ? *q.index : i);
            std::size_t ci = c.reg->offset + (c.index ? *c.index : i);
            push_gate(Gate::measure(static_cast<std::uint32_t>(qi), static_cast<std::uint32_t>(ci)),
                      at);
        }
    }

    void gate_statement(const Token &name) {
        auto it = gate_table().find(name.text);
        if (it == gate_table().end()) {
            throw QasmError("unknown gate '" + name.text + "'", name.line, name.column);
        }
        const GateSignature &sig = it->second;
        shift();

        std::vector<double> params;
        if (current_.kind == Tok::symbol && current_.text == "(") {
            shift();
            if (!(current_.kind == Tok::symbol && current_.text == ")")) {
                params.push_back(parse_expr());
                while (current_.kind == Tok::symbol && current_.text == ",") {
                    shift();
                    params.push_back(parse_expr());
                }
            }
            expect_symbol(")");
        }
        if (params.size() != sig.params) {
            throw QasmError("gate '" + name.text + "' expects " + std::to_string(sig.params) +
                                " parameter(s), got " + std::to_string(params.size()),
                            name.line, name.column);
        }

        std::vector<Arg> args;
        args.push_back(parse_arg(true));
        while (current_.kind == Tok::symbol && current_.text == ",") {
            shift();
            args.push_back(parse_arg(true));
        }
        expect_symbol(";");
        if (args.size() != sig.qubits) {
            throw QasmError("gate '" + name.text + "' expects " + std::to_string(sig.qubits) +
                                " qubit argument(s), got " + std::to_string(args.size()),
                            name.line, name.column);
        }

        // Whole-register arguments broadcast; every broadcast register must
        // have the same length, indexed arguments stay fixed.
        std::size_t reps = 1;
        for (const Arg &a : args) {
            if (!a.index) {
                if (reps != 1 && reps != a.reg->size) {
                    throw QasmError("mismatched register sizes in broadcast", a.where.line,
                                    a.where.column);
                }
                reps = a.reg->size;
            }
        }
        for (std::size_t r = 0; r < reps; ++r) {
            std::vector<std::uint32_t> qubits;
            for (const Arg &a : args) {
                std::size_t i = a.index ? *a.index : r;
                qubits.push_back(static_cast<std::uint32_t>(a.reg->offset + i));
            }
            Gate g;
            g.kind = sig.kind;
            g.params = params;
            if (name.text == "u2") {
                g.params = {std::numbers::pi / 2, params[0], params[1]};
            } else if (name.text == "cz") {
                g.params = {std::numbers::pi};
            }
            g.controls.assign(qubits.begin(), qubits.begin() + sig.controls);
            g.targets.assign(qubits.begin() + sig.controls, qubits.end());
            push_gate(std::move(g), name);
        }
    }

    // expr := term (('+'|'-') term)*
    double parse_expr() {
        double v = parse_term();
        while (current_.kind == Tok::symbol && (current_.text == "+" || current_.text == "-")) {
            bool plus = current_.text == "+";
            shift();
            double rhs = parse_term();
            v = plus ? v + rhs : v - rhs;
        }
        return v;
    }

    double parse_term() {
        double v = parse_factor();
        while (current_.kind == Tok::symbol && (current_.text == "*" || current_.text == "/")) {
            bool mulop = current_.text == "*";
            shift();
            double rhs = parse_factor();
            v = mulop ? v * rhs : v / rhs;
        }
        return v;
    }

    double parse_factor() {
        if (current_.kind == Tok::symbol && (current_.text == "-" || current_.text == "+")) {
            bool neg = current_.text == "-";
            shift();
            double v = parse_factor();
            return neg ? -v : v;
        }
        double v = parse_primary();
        if (current_.kind == Tok::symbol && current_.text == "^") {
            shift();
            double e = parse_factor();
            v = std::pow(v, e);
        }
        return v;
    }

    double parse_primary() {
        Token t = current_;
        if (t.kind == Tok::number) {
            shift();
            return t.value;
        }
        if (t.kind == Tok::symbol && t.text == "(") {
            shift();
            double v = parse_expr();
            expect_symbol(")");
            return v;
        }
        if (t.kind == Tok::identifier) {
            shift();
            if (t.text == "pi") {
                return std::numbers::pi;
            }
            if (current_.kind == Tok::symbol && current_.text == "(") {
                shift();
                double arg = parse_expr();
                expect_symbol(")");
                if (t.text == "sin") return std::sin(arg);
                if (t.text == "cos") return std::cos(arg);
                if (t.text == "tan") return std::tan(arg);
                if (t.text == "exp") return std::exp(arg);
                if (t.text == "ln") return std::log(arg);
                if (t.text == "sqrt") return std::sqrt(arg);
                throw QasmError("unknown function '" + t.text + "'", t.line, t.column);
            }
            throw QasmError("unknown constant '" + t.text + "'", t.line, t.column);
        }
        throw QasmError("expected an expression", t.line, t.column);
    }

    void push_gate(Gate g, const Token &at) {
        gate_positions_.emplace_back(at.line, at.column);
        circuit_.gates.push_back(std::move(g));
    }

    void shift() { current_ = lexer_.next(); }

    Token expect(Tok kind, const std::string &what) {
        if (current_.kind != kind) {
            throw QasmError("expected " + what, current_.line, current_.column);
        }
        Token t = current_;
        shift();
        return t;
    }

    void expect_symbol(const std::string &sym) {
        if (current_.kind != Tok::symbol || current_.text != sym) {
            throw QasmError("expected '" + sym + "'", current_.line, current_.column);
        }
        shift();
    }

    void expect_identifier(const std::string &name) {
        if (current_.kind != Tok::identifier || current_.text != name) {
            throw QasmError("expected '" + name + "'", current_.line, current_.column);
        }
        shift();
    }

    Lexer lexer_;
    Token current_;
    Circuit circuit_;
    std::map<std::string, Register> qregs_;
    std::map<std::string, Register> cregs_;
    std::size_t qubit_count_ = 0;
    std::size_t cbit_count_ = 0;
    std::vector<std::pair<std::size_t, std::size_t>> gate_positions_;
};

// ---------------------------------------------------------------------------
// Emitter
// ---------------------------------------------------------------------------

std::string format_angle(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string qubit_ref(std::uint32_t q) {
    return "q[" + std::to_string(q) + "]";
}

} // namespace

Circuit parse(std::string_view text) {
    Parser parser(text);
    return parser.parse_program();
}

bool is_emittable(GateKind k) {
    switch (k) {
    case GateKind::MCX:
    case GateKind::MCZ:
    case GateKind::SU4:
    case GateKind::UNITARY:
        return false;
    default:
        return true;
    }
}

std::string emit(const Circuit &c) {
    std::string out;
    out += "OPENQASM 2.0;\n";
    out += "include \"qelib1.inc\";\n";
    if (!c.metadata.name.empty()) {
        out += "// generator: " + c.metadata.name;
        if (c.metadata.seed) {
            out += " seed=" + std::to_string(*c.metadata.seed);
        }
        for (const auto &[k, v] : c.metadata.params) {
            out += " " + k + "=" + v;
        }
        out += "\n";
    }
    out += "qreg q[" + std::to_string(c.n_qubits) + "];\n";
    if (c.n_cbits > 0) {
        out += "creg c[" + std::to_string(c.n_cbits) + "];\n";
    }

    for (const Gate &g : c.gates) {
        if (!is_emittable(g.kind)) {
            throw Error(std::string("gate kind ") + gate_kind_name(g.kind) +
                        " has no textual form; decompose it first");
        }
        switch (g.kind) {
        case GateKind::H: out += "h " + qubit_ref(g.targets[0]); break;
        case GateKind::X: out += "x " + qubit_ref(g.targets[0]); break;
        case GateKind::Y: out += "y " + qubit_ref(g.targets[0]); break;
        case GateKind::Z: out += "z " + qubit_ref(g.targets[0]); break;
        case GateKind::S: out += "s " + qubit_ref(g.targets[0]); break;
        case GateKind::T: out += "t " + qubit_ref(g.targets[0]); break;
        case GateKind::SQRT_X: out += "sx " + qubit_ref(g.targets[0]); break;
        case GateKind::SQRT_Y: out += "sy " + qubit_ref(g.targets[0]); break;
        case GateKind::RX:
            out += "rx(" + format_angle(g.params[0]) + ") " + qubit_ref(g.targets[0]);
            break;
        case GateKind::RY:
            out += "ry(" + format_angle(g.params[0]) + ") " + qubit_ref(g.targets[0]);
            break;
        case GateKind::RZ:
            out += "rz(" + format_angle(g.params[0]) + ") " + qubit_ref(g.targets[0]);
            break;
        case GateKind::P:
            out += "u1(" + format_angle(g.params[0]) + ") " + qubit_ref(g.targets[0]);
            break;
        case GateKind::U:
            out += "u3(" + format_angle(g.params[0]) + "," + format_angle(g.params[1]) + "," +
                   format_angle(g.params[2]) + ") " + qubit_ref(g.targets[0]);
            break;
        case GateKind::CX:
            out += "cx " + qubit_ref(g.controls[0]) + "," + qubit_ref(g.targets[0]);
            break;
        case GateKind::CP:
            out += "cu1(" + format_angle(g.params[0]) + ") " + qubit_ref(g.controls[0]) + "," +
                   qubit_ref(g.targets[0]);
            break;
        case GateKind::CCX:
            out += "ccx " + qubit_ref(g.controls[0]) + "," + qubit_ref(g.controls[1]) + "," +
                   qubit_ref(g.targets[0]);
            break;
        case GateKind::SWAP:
            out += "swap " + qubit_ref(g.targets[0]) + "," + qubit_ref(g.targets[1]);
            break;
        case GateKind::BARRIER: {
            out += "barrier ";
            if (g.targets.empty()) {
                out += "q";
            } else {
                for (std::size_t i = 0; i < g.targets.size(); ++i) {
                    out += (i ? "," : "") + qubit_ref(g.targets[i]);
                }
            }
            break;
        }
        case GateKind::MEASURE:
            out += "measure " + qubit_ref(g.targets[0]) + " -> c[" + std::to_string(g.cbits[0]) +
                   "]";
            break;
        default:
            throw Error("unreachable emit case");
        }
        out += ";\n";
    }
    return out;
}

bool roundtrip_check(const Circuit &c) {
    Circuit back = parse(emit(c));
    return circuits_equal(c, back, 1e-15);
}

} // namespace qsv
