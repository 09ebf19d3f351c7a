// Copyright 2026 The QFw Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <unordered_map>

#include "lexer.hpp"
#include "qfw/qasm.hpp"

namespace qfw::qasm {

using detail::Token;
using detail::TokenKind;

std::string_view to_string(ParseErrorCategory category) {
    switch (category) {
    case ParseErrorCategory::syntax: return "syntax";
    case ParseErrorCategory::unsupported: return "unsupported";
    case ParseErrorCategory::semantic: return "semantic";
    }
    return "unknown";
}

ParseError::ParseError(ParseErrorCategory category, std::size_t line, std::size_t column,
                       const std::string &message)
    : Error(ErrorCode::validation, std::string(to_string(category)) + " error at " +
                                       std::to_string(line) + ":" + std::to_string(column) +
                                       ": " + message),
      category_(category), line_(line), column_(column), detail_(message) {}

namespace {

// Angle expression evaluated against the actual parameters of the enclosing
// gate definition (empty at top level).
using Expr = std::function<double(std::span<const double>)>;

struct BodyOp {
    Token at;
    std::string gate;
    std::vector<Expr> params;
    std::vector<std::size_t> args; // indices into the definition's qubit formals
};

struct GateDef {
    std::string name;
    std::size_t num_params = 0;
    std::size_t num_args = 0;
    std::vector<BodyOp> body;
};

struct Register {
    std::size_t offset = 0;
    std::size_t size = 0;
};

// qelib1.inc gates that are not primitives of the IR, written in terms of
// primitives (or earlier entries of this list).
constexpr std::string_view kQelibComposites = R"(
gate u0(gamma) q { id q; }
gate u(theta,phi,lambda) q { u3(theta,phi,lambda) q; }
gate p(lambda) q { u1(lambda) q; }
gate sx a { sdg a; h a; sdg a; }
gate sxdg a { s a; h a; s a; }
gate cy a,b { sdg b; cx a,b; s b; }
gate ch a,b { h b; sdg b; cx a,b; h b; t b; cx a,b; t b; h b; s b; x b; s a; }
gate crz(lambda) a,b { rz(lambda/2) b; cx a,b; rz(-lambda/2) b; cx a,b; }
gate cry(lambda) a,b { ry(lambda/2) b; cx a,b; ry(-lambda/2) b; cx a,b; }
gate crx(lambda) a,b { u1(pi/2) b; cx a,b; u3(-lambda/2,0,0) b; cx a,b; u3(lambda/2,-pi/2,0) b; }
gate cu1(lambda) a,b { u1(lambda/2) a; cx a,b; u1(-lambda/2) b; cx a,b; u1(lambda/2) b; }
gate cp(lambda) a,b { cu1(lambda) a,b; }
gate cu3(theta,phi,lambda) c,t { u1((lambda+phi)/2) c; u1((lambda-phi)/2) t; cx c,t; u3(-theta/2,0,-(phi+lambda)/2) t; cx c,t; u3(theta/2,phi,0) t; }
gate rzz(theta) a,b { cx a,b; u1(theta) b; cx a,b; }
gate cswap a,b,c { cx c,b; ccx a,b,c; cx c,b; }
)";

std::optional<GateKind> primitive(std::string_view name) {
    if (name == "U") {
        return GateKind::u3;
    }
    if (name == "CX") {
        return GateKind::cx;
    }
    auto kind = gate_kind_from_name(name);
    if (kind && !is_unitary(*kind)) {
        return std::nullopt;
    }
    return kind;
}

class Parser {
  public:
    Parser(std::string_view source, const std::unordered_map<std::string, GateDef> *builtins)
        : tokens_(detail::tokenize(source)), builtins_(builtins) {}

    Circuit parse_program() {
        expect_header();
        while (peek().kind != TokenKind::end) {
            statement();
        }
        return std::move(circuit_);
    }

    // Parses a definitions-only source and returns the gate table.
    std::unordered_map<std::string, GateDef> parse_definitions() {
        while (peek().kind != TokenKind::end) {
            expect_keyword("gate");
            gate_definition();
        }
        return std::move(user_gates_);
    }

  private:
    // -- token helpers -----------------------------------------------------

    [[nodiscard]] const Token &peek(std::size_t ahead = 0) const {
        const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }

    const Token &advance() {
        const Token &t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) {
            ++pos_;
        }
        return t;
    }

    [[noreturn]] static void fail(ParseErrorCategory category, const Token &at,
                                  const std::string &message) {
        throw ParseError(category, at.line, at.column, message);
    }

    const Token &expect(TokenKind kind) {
        if (peek().kind != kind) {
            fail(ParseErrorCategory::syntax, peek(),
                 "expected " + std::string(detail::describe(kind)) + ", found " +
                     found(peek()));
        }
        return advance();
    }

    static std::string found(const Token &t) {
        if (t.kind == TokenKind::end) {
            return "end of input";
        }
        return "'" + t.text + "'";
    }

    bool accept(TokenKind kind) {
        if (peek().kind == kind) {
            advance();
            return true;
        }
        return false;
    }

    void expect_keyword(std::string_view word) {
        if (peek().kind != TokenKind::identifier || peek().text != word) {
            fail(ParseErrorCategory::syntax, peek(),
                 "expected '" + std::string(word) + "', found " + found(peek()));
        }
        advance();
    }

    std::size_t expect_index() {
        const Token &t = expect(TokenKind::integer);
        try {
            return static_cast<std::size_t>(std::stoull(t.text));
        } catch (const std::out_of_range &) {
            fail(ParseErrorCategory::semantic, t, "integer literal out of range");
        }
    }

    // -- program structure ---------------------------------------------------

    void expect_header() {
        const Token &t = peek();
        if (t.kind != TokenKind::identifier || t.text != "OPENQASM") {
            fail(ParseErrorCategory::syntax, t, "expected 'OPENQASM 2.0;' header");
        }
        advance();
        const Token &version = peek();
        if (version.kind != TokenKind::real && version.kind != TokenKind::integer) {
            fail(ParseErrorCategory::syntax, version, "expected version number");
        }
        advance();
        if (version.text != "2.0" && version.text != "2") {
            fail(ParseErrorCategory::unsupported, version,
                 "unsupported OpenQASM version " + version.text);
        }
        expect(TokenKind::semicolon);
    }

    void statement() {
        const Token &t = peek();
        if (t.kind != TokenKind::identifier) {
            fail(ParseErrorCategory::syntax, t, "expected statement, found " + found(t));
        }
        const Token at = advance();
        if (at.text == "include") {
            include(at);
        } else if (at.text == "qreg" || at.text == "creg") {
            declaration(at.text == "qreg");
        } else if (at.text == "gate") {
            gate_definition();
        } else if (at.text == "opaque") {
            fail(ParseErrorCategory::unsupported, at, "opaque gates are not supported");
        } else if (at.text == "if") {
            conditional(at);
        } else if (at.text == "measure") {
            measure();
        } else if (at.text == "reset") {
            reset();
        } else if (at.text == "barrier") {
            barrier();
        } else if (at.text == "OPENQASM") {
            fail(ParseErrorCategory::syntax, at, "duplicate OPENQASM header");
        } else {
            gate_call(at);
        }
    }

    void include(const Token &at) {
        const Token &file = expect(TokenKind::string);
        if (file.text != "qelib1.inc") {
            fail(ParseErrorCategory::unsupported, at,
                 "only \"qelib1.inc\" may be included, got \"" + file.text + "\"");
        }
        expect(TokenKind::semicolon);
    }

    void declaration(bool quantum) {
        const Token name = expect(TokenKind::identifier);
        expect(TokenKind::lbracket);
        const Token size_tok = peek();
        const std::size_t size = expect_index();
        expect(TokenKind::rbracket);
        expect(TokenKind::semicolon);
        if (size == 0) {
            fail(ParseErrorCategory::semantic, size_tok, "register size must be positive");
        }
        if (qregs_.contains(name.text) || cregs_.contains(name.text)) {
            fail(ParseErrorCategory::semantic, name,
                 "redeclaration of register '" + name.text + "'");
        }
        if (quantum) {
            qregs_[name.text] = {circuit_.num_qubits, size};
            circuit_.num_qubits += size;
        } else {
            cregs_[name.text] = {circuit_.num_clbits, size};
            circuit_.num_clbits += size;
        }
    }

    void conditional(const Token &at) {
        expect(TokenKind::lparen);
        const Token reg = expect(TokenKind::identifier);
        expect(TokenKind::equals);
        expect_index();
        expect(TokenKind::rparen);
        if (!cregs_.contains(reg.text)) {
            fail(ParseErrorCategory::semantic, reg,
                 "unknown classical register '" + reg.text + "'");
        }
        // The guarded operation must still be well-formed before rejection.
        const Token op = expect(TokenKind::identifier);
        if (op.text == "measure") {
            measure_operands();
        } else if (op.text == "reset") {
            qubit_operand();
            expect(TokenKind::semicolon);
        } else {
            call_syntax();
        }
        fail(ParseErrorCategory::unsupported, at, "classically controlled 'if' is not supported");
    }

    // -- operands --------------------------------------------------------------

    struct Operand {
        Token at;
        std::vector<std::size_t> indices;
        bool whole_register = false;
    };

    Operand operand(const std::map<std::string, Register> &regs, std::string_view what) {
        const Token name = expect(TokenKind::identifier);
        const auto it = regs.find(name.text);
        if (it == regs.end()) {
            fail(ParseErrorCategory::semantic, name,
                 "unknown " + std::string(what) + " register '" + name.text + "'");
        }
        Operand out{name, {}, false};
        if (accept(TokenKind::lbracket)) {
            const Token idx_tok = peek();
            const std::size_t idx = expect_index();
            expect(TokenKind::rbracket);
            if (idx >= it->second.size) {
                fail(ParseErrorCategory::semantic, idx_tok,
                     "index " + std::to_string(idx) + " out of range for register '" +
                         name.text + "' of size " + std::to_string(it->second.size));
            }
            out.indices.push_back(it->second.offset + idx);
        } else {
            out.whole_register = true;
            for (std::size_t i = 0; i < it->second.size; ++i) {
                out.indices.push_back(it->second.offset + i);
            }
        }
        return out;
    }

    Operand qubit_operand() { return operand(qregs_, "quantum"); }
    Operand clbit_operand() { return operand(cregs_, "classical"); }

    std::vector<Operand> qubit_operand_list() {
        std::vector<Operand> out;
        out.push_back(qubit_operand());
        while (accept(TokenKind::comma)) {
            out.push_back(qubit_operand());
        }
        return out;
    }

    // Expands register operands into per-index operand tuples.
    std::vector<std::vector<std::size_t>> broadcast(const std::vector<Operand> &ops) {
        std::size_t width = 1;
        const Operand *first_reg = nullptr;
        for (const auto &op : ops) {
            if (!op.whole_register) {
                continue;
            }
            if (first_reg == nullptr) {
                first_reg = &op;
                width = op.indices.size();
            } else if (op.indices.size() != width) {
                fail(ParseErrorCategory::semantic, op.at,
                     "register size mismatch: '" + op.at.text + "' has " +
                         std::to_string(op.indices.size()) + " qubits, '" + first_reg->at.text +
                         "' has " + std::to_string(width));
            }
        }
        std::vector<std::vector<std::size_t>> out(width);
        for (std::size_t i = 0; i < width; ++i) {
            for (const auto &op : ops) {
                out[i].push_back(op.whole_register ? op.indices[i] : op.indices[0]);
            }
        }
        return out;
    }

    // -- statements ------------------------------------------------------------

    std::pair<Operand, Operand> measure_operands() {
        Operand q = qubit_operand();
        expect(TokenKind::arrow);
        Operand c = clbit_operand();
        expect(TokenKind::semicolon);
        if (q.whole_register != c.whole_register) {
            fail(ParseErrorCategory::semantic, q.at,
                 "measure operands must both be registers or both be indexed");
        }
        if (q.indices.size() != c.indices.size()) {
            fail(ParseErrorCategory::semantic, q.at,
                 "measure register size mismatch: " + std::to_string(q.indices.size()) +
                     " qubits into " + std::to_string(c.indices.size()) + " clbits");
        }
        return {std::move(q), std::move(c)};
    }

    void measure() {
        const auto [q, c] = measure_operands();
        for (std::size_t i = 0; i < q.indices.size(); ++i) {
            circuit_.instructions.push_back({GateKind::measure, {q.indices[i]}, {c.indices[i]}, {}});
        }
    }

    void reset() {
        const Operand q = qubit_operand();
        expect(TokenKind::semicolon);
        for (std::size_t idx : q.indices) {
            circuit_.instructions.push_back({GateKind::reset, {idx}, {}, {}});
        }
    }

    void barrier() {
        const auto ops = qubit_operand_list();
        expect(TokenKind::semicolon);
        Instruction instr{GateKind::barrier, {}, {}, {}};
        std::set<std::size_t> seen;
        for (const auto &op : ops) {
            for (std::size_t idx : op.indices) {
                if (!seen.insert(idx).second) {
                    fail(ParseErrorCategory::semantic, op.at, "duplicate qubit in barrier");
                }
                instr.qubits.push_back(idx);
            }
        }
        circuit_.instructions.push_back(std::move(instr));
    }

    struct CallSyntax {
        std::vector<Expr> params;
        std::vector<Operand> operands;
    };

    CallSyntax call_syntax() {
        CallSyntax out;
        out.params = param_list(nullptr);
        out.operands = qubit_operand_list();
        expect(TokenKind::semicolon);
        return out;
    }

    void gate_call(const Token &name) {
        const CallSyntax call = call_syntax();
        std::vector<double> values;
        values.reserve(call.params.size());
        for (const auto &e : call.params) {
            values.push_back(e({}));
        }
        for (const auto &qubits : broadcast(call.operands)) {
            apply(name, name.text, values, qubits);
        }
    }

    std::vector<Expr> param_list(const std::vector<std::string> *formals) {
        std::vector<Expr> out;
        if (!accept(TokenKind::lparen)) {
            return out;
        }
        if (accept(TokenKind::rparen)) {
            return out;
        }
        out.push_back(expression(formals));
        while (accept(TokenKind::comma)) {
            out.push_back(expression(formals));
        }
        expect(TokenKind::rparen);
        return out;
    }

    const GateDef *find_definition(const std::string &name) const {
        if (auto it = user_gates_.find(name); it != user_gates_.end()) {
            return &it->second;
        }
        if (builtins_ != nullptr) {
            if (auto it = builtins_->find(name); it != builtins_->end()) {
                return &it->second;
            }
        }
        return nullptr;
    }

    // Emits (or expands) one gate application on concrete qubits.
    void apply(const Token &at, const std::string &name, const std::vector<double> &params,
               const std::vector<std::size_t> &qubits) {
        std::set<std::size_t> distinct(qubits.begin(), qubits.end());
        if (distinct.size() != qubits.size()) {
            fail(ParseErrorCategory::semantic, at,
                 "duplicate qubit operand in application of '" + name + "'");
        }
        if (const GateDef *def = find_definition(name)) {
            check_shape(at, name, def->num_args, def->num_params, qubits.size(), params.size());
            for (const auto &op : def->body) {
                std::vector<double> inner_params;
                inner_params.reserve(op.params.size());
                for (const auto &e : op.params) {
                    inner_params.push_back(e(params));
                }
                std::vector<std::size_t> inner_qubits;
                for (std::size_t a : op.args) {
                    inner_qubits.push_back(qubits[a]);
                }
                if (op.gate == "barrier") {
                    circuit_.instructions.push_back(
                        {GateKind::barrier, std::move(inner_qubits), {}, {}});
                } else {
                    apply(at, op.gate, inner_params, inner_qubits);
                }
            }
            return;
        }
        const auto kind = primitive(name);
        if (!kind) {
            fail(ParseErrorCategory::unsupported, at, "unsupported gate '" + name + "'");
        }
        const GateInfo &info = gate_info(*kind);
        check_shape(at, name, info.num_qubits, info.num_params, qubits.size(), params.size());
        circuit_.instructions.push_back({*kind, qubits, {}, params});
    }

    static void check_shape(const Token &at, const std::string &name, std::size_t want_args,
                            std::size_t want_params, std::size_t got_args,
                            std::size_t got_params) {
        if (want_params != got_params) {
            fail(ParseErrorCategory::semantic, at,
                 "gate '" + name + "' takes " + std::to_string(want_params) +
                     " parameter(s), got " + std::to_string(got_params));
        }
        if (want_args != got_args) {
            fail(ParseErrorCategory::semantic, at,
                 "gate '" + name + "' takes " + std::to_string(want_args) +
                     " qubit(s), got " + std::to_string(got_args));
        }
    }

    // -- gate definitions -----------------------------------------------------

    std::vector<std::string> identifier_list(TokenKind terminator) {
        std::vector<std::string> out;
        if (peek().kind == terminator) {
            return out;
        }
        out.push_back(expect(TokenKind::identifier).text);
        while (accept(TokenKind::comma)) {
            out.push_back(expect(TokenKind::identifier).text);
        }
        return out;
    }

    void gate_definition() {
        const Token name = expect(TokenKind::identifier);
        if (user_gates_.contains(name.text)) {
            fail(ParseErrorCategory::semantic, name,
                 "redeclaration of gate '" + name.text + "'");
        }
        std::vector<std::string> formals;
        if (accept(TokenKind::lparen)) {
            formals = identifier_list(TokenKind::rparen);
            expect(TokenKind::rparen);
        }
        const std::vector<std::string> args = identifier_list(TokenKind::lbrace);
        if (args.empty()) {
            fail(ParseErrorCategory::syntax, peek(), "gate definition needs at least one qubit");
        }
        check_unique(name, formals, "parameter");
        check_unique(name, args, "qubit argument");

        GateDef def{name.text, formals.size(), args.size(), {}};
        expect(TokenKind::lbrace);
        while (!accept(TokenKind::rbrace)) {
            def.body.push_back(body_op(name.text, formals, args));
        }
        user_gates_.emplace(name.text, std::move(def));
    }

    void check_unique(const Token &gate, const std::vector<std::string> &names,
                      std::string_view what) {
        std::set<std::string> seen;
        for (const auto &n : names) {
            if (!seen.insert(n).second) {
                fail(ParseErrorCategory::semantic, gate,
                     "duplicate " + std::string(what) + " '" + n + "' in gate '" + gate.text +
                         "'");
            }
        }
    }

    BodyOp body_op(const std::string &defining, const std::vector<std::string> &formals,
                   const std::vector<std::string> &args) {
        const Token op = expect(TokenKind::identifier);
        if (op.text == "measure" || op.text == "reset" || op.text == "if" ||
            op.text == "gate" || op.text == "qreg" || op.text == "creg" || op.text == "opaque") {
            fail(ParseErrorCategory::semantic, op,
                 "'" + op.text + "' is not allowed inside a gate body");
        }
        BodyOp out{op, op.text, {}, {}};
        if (op.text != "barrier") {
            if (op.text == defining) {
                fail(ParseErrorCategory::semantic, op,
                     "recursive gate definition '" + defining + "'");
            }
            if (find_definition(op.text) == nullptr && !primitive(op.text)) {
                fail(ParseErrorCategory::unsupported, op, "unsupported gate '" + op.text + "'");
            }
            out.params = param_list(&formals);
        }
        for (;;) {
            const Token arg = expect(TokenKind::identifier);
            if (peek().kind == TokenKind::lbracket) {
                fail(ParseErrorCategory::syntax, peek(),
                     "indexed operands are not allowed inside a gate body");
            }
            const auto it = std::find(args.begin(), args.end(), arg.text);
            if (it == args.end()) {
                fail(ParseErrorCategory::semantic, arg,
                     "unknown qubit argument '" + arg.text + "' in gate body");
            }
            const auto idx = static_cast<std::size_t>(it - args.begin());
            if (std::find(out.args.begin(), out.args.end(), idx) != out.args.end()) {
                fail(ParseErrorCategory::semantic, arg,
                     "duplicate qubit operand '" + arg.text + "' in gate body");
            }
            out.args.push_back(idx);
            if (!accept(TokenKind::comma)) {
                break;
            }
        }
        expect(TokenKind::semicolon);
        if (op.text != "barrier") {
            const GateDef *def = find_definition(op.text);
            const std::size_t want_args =
                def != nullptr ? def->num_args : gate_info(*primitive(op.text)).num_qubits;
            const std::size_t want_params =
                def != nullptr ? def->num_params : gate_info(*primitive(op.text)).num_params;
            check_shape(op, op.text, want_args, want_params, out.args.size(), out.params.size());
        }
        return out;
    }

    // -- expressions ----------------------------------------------------------

    Expr expression(const std::vector<std::string> *formals) {
        Expr lhs = term(formals);
        for (;;) {
            if (accept(TokenKind::plus)) {
                Expr rhs = term(formals);
                lhs = [lhs, rhs](std::span<const double> p) { return lhs(p) + rhs(p); };
            } else if (accept(TokenKind::minus)) {
                Expr rhs = term(formals);
                lhs = [lhs, rhs](std::span<const double> p) { return lhs(p) - rhs(p); };
            } else {
                return lhs;
            }
        }
    }

    Expr term(const std::vector<std::string> *formals) {
        Expr lhs = unary(formals);
        for (;;) {
            if (accept(TokenKind::star)) {
                Expr rhs = unary(formals);
                lhs = [lhs, rhs](std::span<const double> p) { return lhs(p) * rhs(p); };
            } else if (peek().kind == TokenKind::slash) {
                advance();
                Expr rhs = unary(formals);
                lhs = [lhs, rhs](std::span<const double> p) { return lhs(p) / rhs(p); };
            } else {
                return lhs;
            }
        }
    }

    Expr unary(const std::vector<std::string> *formals) {
        if (accept(TokenKind::minus)) {
            Expr inner = unary(formals);
            return [inner](std::span<const double> p) { return -inner(p); };
        }
        if (accept(TokenKind::plus)) {
            return unary(formals);
        }
        return power(formals);
    }

    Expr power(const std::vector<std::string> *formals) {
        Expr base = primary(formals);
        if (accept(TokenKind::caret)) {
            Expr exponent = unary(formals);
            return [base, exponent](std::span<const double> p) {
                return std::pow(base(p), exponent(p));
            };
        }
        return base;
    }

    Expr primary(const std::vector<std::string> *formals) {
        const Token t = peek();
        switch (t.kind) {
        case TokenKind::integer:
        case TokenKind::real: {
            advance();
            const double v = std::strtod(t.text.c_str(), nullptr);
            return [v](std::span<const double>) { return v; };
        }
        case TokenKind::lparen: {
            advance();
            Expr inner = expression(formals);
            expect(TokenKind::rparen);
            return inner;
        }
        case TokenKind::identifier: {
            advance();
            if (t.text == "pi") {
                return [](std::span<const double>) { return std::numbers::pi; };
            }
            if (auto fn = function(t.text)) {
                expect(TokenKind::lparen);
                Expr arg = expression(formals);
                expect(TokenKind::rparen);
                return [fn, arg](std::span<const double> p) { return fn(arg(p)); };
            }
            if (formals != nullptr) {
                const auto it = std::find(formals->begin(), formals->end(), t.text);
                if (it != formals->end()) {
                    const auto idx = static_cast<std::size_t>(it - formals->begin());
                    return [idx](std::span<const double> p) { return p[idx]; };
                }
            }
            fail(ParseErrorCategory::semantic, t, "unknown identifier '" + t.text + "' in expression");
        }
        default:
            fail(ParseErrorCategory::syntax, t, "expected expression, found " + found(t));
        }
    }

    static double (*function(const std::string &name))(double) {
        if (name == "sin") return [](double v) { return std::sin(v); };
        if (name == "cos") return [](double v) { return std::cos(v); };
        if (name == "tan") return [](double v) { return std::tan(v); };
        if (name == "exp") return [](double v) { return std::exp(v); };
        if (name == "ln") return [](double v) { return std::log(v); };
        if (name == "sqrt") return [](double v) { return std::sqrt(v); };
        return nullptr;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const std::unordered_map<std::string, GateDef> *builtins_;
    Circuit circuit_;
    std::map<std::string, Register> qregs_;
    std::map<std::string, Register> cregs_;
    std::unordered_map<std::string, GateDef> user_gates_;
};

const std::unordered_map<std::string, GateDef> &qelib_composites() {
    static const auto table = Parser(kQelibComposites, nullptr).parse_definitions();
    return table;
}

} // namespace

Circuit parse(std::string_view source) {
    return Parser(source, &qelib_composites()).parse_program();
}

} // namespace qfw::qasm
