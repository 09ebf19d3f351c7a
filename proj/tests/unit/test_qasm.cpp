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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qfw/bench.hpp"
#include "qfw/qasm.hpp"
#include "support/corpus.hpp"

using qfw::Circuit;
using qfw::GateKind;
using qfw::Instruction;
using qfw::qasm::ParseError;
using qfw::qasm::ParseErrorCategory;

namespace {

ParseError parse_failure(const std::string &source) {
    try {
        (void)qfw::qasm::parse(source);
    } catch (const ParseError &e) {
        return e;
    }
    FAIL("expected a parse error for: " << source);
    throw std::logic_error("unreachable");
}

std::size_t count_kind(const Circuit &c, GateKind kind) {
    std::size_t n = 0;
    for (const auto &instr : c.instructions) {
        n += instr.kind == kind ? 1 : 0;
    }
    return n;
}

const std::string kHeader = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

} // namespace

TEST_CASE("bell program transliterates directly") {
    const Circuit c = qfw::qasm::parse(
        "OPENQASM 2.0; include \"qelib1.inc\"; qreg q[2]; creg c[2]; h q[0]; cx q[0],q[1]; "
        "measure q -> c;");
    CHECK(c.num_qubits == 2);
    CHECK(c.num_clbits == 2);
    REQUIRE(c.instructions.size() == 4);
    CHECK(c.instructions[0] == Instruction{GateKind::h, {0}, {}, {}});
    CHECK(c.instructions[1] == Instruction{GateKind::cx, {0, 1}, {}, {}});
    CHECK(c.instructions[2] == Instruction{GateKind::measure, {0}, {0}, {}});
    CHECK(c.instructions[3] == Instruction{GateKind::measure, {1}, {1}, {}});
}

TEST_CASE("empty program") {
    const Circuit c = qfw::qasm::parse("OPENQASM 2.0; qreg q[1];");
    CHECK(c.num_qubits == 1);
    CHECK(c.num_clbits == 0);
    CHECK(c.instructions.empty());
    CHECK(qfw::qasm::validate(c).empty());
}

TEST_CASE("ghz-20 text from the bench generator") {
    const Circuit c = qfw::qasm::parse(qfw::qasm::emit(qfw::bench::ghz(20)));
    CHECK(c.num_qubits == 20);
    CHECK(c.num_clbits == 20);
    CHECK(count_kind(c, GateKind::h) == 1);
    CHECK(count_kind(c, GateKind::cx) == 19);
    CHECK(count_kind(c, GateKind::measure) == 20);
    CHECK(c.instructions.size() == 40);
}

TEST_CASE("registers flatten in declaration order") {
    const Circuit c = qfw::qasm::parse(kHeader +
                                       "qreg a[2]; qreg b[3]; creg x[1]; creg y[2];\n"
                                       "x b[0]; cx a[1], b[2]; measure b[1] -> y[1];");
    CHECK(c.num_qubits == 5);
    CHECK(c.num_clbits == 3);
    CHECK(c.instructions[0].qubits == std::vector<std::size_t>{2});
    CHECK(c.instructions[1].qubits == std::vector<std::size_t>{1, 4});
    CHECK(c.instructions[2].qubits == std::vector<std::size_t>{3});
    CHECK(c.instructions[2].clbits == std::vector<std::size_t>{2});
}

TEST_CASE("register broadcast") {
    const Circuit c = qfw::qasm::parse(kHeader + "qreg a[2]; qreg b[2]; h a; cx a, b; cz a[0], b;");
    REQUIRE(c.instructions.size() == 6);
    CHECK(c.instructions[0].qubits == std::vector<std::size_t>{0});
    CHECK(c.instructions[1].qubits == std::vector<std::size_t>{1});
    CHECK(c.instructions[2].qubits == std::vector<std::size_t>{0, 2});
    CHECK(c.instructions[3].qubits == std::vector<std::size_t>{1, 3});
    CHECK(c.instructions[4] == Instruction{GateKind::cz, {0, 2}, {}, {}});
    CHECK(c.instructions[5] == Instruction{GateKind::cz, {0, 3}, {}, {}});
}

TEST_CASE("user gates expand inline with substituted parameters") {
    const Circuit c = qfw::qasm::parse(kHeader +
                                       "gate rot(a, b) t { rz(a) t; rx(b / 2) t; }\n"
                                       "gate pair(a) p, r { rot(a, 2 * a) r; cx p, r; }\n"
                                       "qreg q[2]; pair(0.5) q[1], q[0];");
    REQUIRE(c.instructions.size() == 3);
    CHECK(c.instructions[0] == Instruction{GateKind::rz, {0}, {}, {0.5}});
    CHECK(c.instructions[1] == Instruction{GateKind::rx, {0}, {}, {0.5}});
    CHECK(c.instructions[2] == Instruction{GateKind::cx, {1, 0}, {}, {}});
}

TEST_CASE("builtin primitives U and CX") {
    const Circuit c = qfw::qasm::parse("OPENQASM 2.0; qreg q[2]; U(1, 2, 3) q[1]; CX q[1], q[0];");
    REQUIRE(c.instructions.size() == 2);
    CHECK(c.instructions[0] == Instruction{GateKind::u3, {1}, {}, {1, 2, 3}});
    CHECK(c.instructions[1] == Instruction{GateKind::cx, {1, 0}, {}, {}});
}

TEST_CASE("angle expressions") {
    using std::numbers::pi;
    auto angle = [](const std::string &expr) {
        const Circuit c = qfw::qasm::parse(kHeader + "qreg q[1]; rz(" + expr + ") q[0];");
        return c.instructions.at(0).params.at(0);
    };
    CHECK(angle("3") == doctest::Approx(3.0));
    CHECK(angle("0.125") == doctest::Approx(0.125));
    CHECK(angle("1e-3") == doctest::Approx(1e-3));
    CHECK(angle("2.5E+1") == doctest::Approx(25.0));
    CHECK(angle("-pi/2") == doctest::Approx(-pi / 2));
    CHECK(angle("2*pi/3") == doctest::Approx(2 * pi / 3));
    CHECK(angle("-(1 - 3) * 2") == doctest::Approx(4.0));
    CHECK(angle("2^3^2") == doctest::Approx(512.0));
    CHECK(angle("sin(pi/2) + cos(pi)") == doctest::Approx(0.0));
    CHECK(angle("sqrt(16) - exp(0) + ln(1)") == doctest::Approx(3.0));
    CHECK(angle("1 - 2 - 3") == doctest::Approx(-4.0));
}

TEST_CASE("barrier and reset are kept in the IR") {
    const Circuit c = qfw::qasm::parse(kHeader + "qreg q[3]; barrier q; reset q[1]; barrier q[0], q[2];");
    REQUIRE(c.instructions.size() == 3);
    CHECK(c.instructions[0] == Instruction{GateKind::barrier, {0, 1, 2}, {}, {}});
    CHECK(c.instructions[1] == Instruction{GateKind::reset, {1}, {}, {}});
    CHECK(c.instructions[2] == Instruction{GateKind::barrier, {0, 2}, {}, {}});
}

TEST_CASE("the builtin gate table does not require the include") {
    const Circuit c = qfw::qasm::parse("OPENQASM 2.0; qreg q[1]; h q[0];");
    CHECK(c.instructions.size() == 1);
}

TEST_CASE("syntax errors carry positions") {
    SUBCASE("missing semicolon") {
        const auto e = parse_failure("OPENQASM 2.0;\nqreg q[1]\nh q[0];");
        CHECK(e.category() == ParseErrorCategory::syntax);
        CHECK(e.line() == 3);
        CHECK(e.column() == 1);
    }
    SUBCASE("missing header") {
        const auto e = parse_failure("qreg q[1];");
        CHECK(e.category() == ParseErrorCategory::syntax);
        CHECK(e.line() == 1);
    }
    SUBCASE("wrong version") {
        CHECK(parse_failure("OPENQASM 3.0; qreg q[1];").category() == ParseErrorCategory::unsupported);
    }
    SUBCASE("stray character") {
        const auto e = parse_failure("OPENQASM 2.0;\nqreg q[1];\n  h q[0] $;");
        CHECK(e.category() == ParseErrorCategory::syntax);
        CHECK(e.line() == 3);
        CHECK(e.column() == 10);
    }
    SUBCASE("unterminated gate body") {
        CHECK(parse_failure(kHeader + "gate g a { h a;").category() == ParseErrorCategory::syntax);
    }
    SUBCASE("indexed operand inside a gate body") {
        CHECK(parse_failure(kHeader + "qreg q[1]; gate g a { h a[0]; }").category() ==
              ParseErrorCategory::syntax);
    }
    SUBCASE("message includes category and position") {
        const auto e = parse_failure("OPENQASM 2.0;\nqreg q[1]\nh q[0];");
        CHECK(std::string(e.what()).find("syntax error at 3:1") != std::string::npos);
        CHECK(e.code() == qfw::ErrorCode::validation);
    }
}

TEST_CASE("unsupported constructs") {
    CHECK(parse_failure(kHeader + "opaque magic a;").category() == ParseErrorCategory::unsupported);
    CHECK(parse_failure(kHeader + "qreg q[1]; creg c[1]; if (c==1) x q[0];").category() ==
          ParseErrorCategory::unsupported);
    CHECK(parse_failure(kHeader + "qreg q[1]; frobnicate q[0];").category() ==
          ParseErrorCategory::unsupported);
    CHECK(parse_failure("OPENQASM 2.0; include \"other.inc\"; qreg q[1];").category() ==
          ParseErrorCategory::unsupported);
    CHECK(parse_failure(kHeader + "gate g a { mystery a; } qreg q[1]; g q[0];").category() ==
          ParseErrorCategory::unsupported);
}

TEST_CASE("semantic errors") {
    CHECK(parse_failure(kHeader + "qreg q[2]; h q[2];").category() == ParseErrorCategory::semantic);
    CHECK(parse_failure(kHeader + "qreg q[2]; qreg q[3];").category() == ParseErrorCategory::semantic);
    CHECK(parse_failure(kHeader + "qreg q[2]; creg q[3];").category() == ParseErrorCategory::semantic);
    CHECK(parse_failure(kHeader + "qreg q[0];").category() == ParseErrorCategory::semantic);
    CHECK(parse_failure(kHeader + "qreg q[2]; h r[0];").category() == ParseErrorCategory::semantic);
    CHECK(parse_failure(kHeader + "qreg q[2]; creg c[1]; measure q -> c;").category() ==
          ParseErrorCategory::semantic);
    CHECK(parse_failure(kHeader + "qreg q[2]; cx q[1], q[1];").category() ==
          ParseErrorCategory::semantic);
    CHECK(parse_failure(kHeader + "qreg q[2]; rx q[0];").category() == ParseErrorCategory::semantic);
    CHECK(parse_failure(kHeader + "qreg a[2]; qreg b[3]; cx a, b;").category() ==
          ParseErrorCategory::semantic);
    SUBCASE("recursive gate definitions") {
        const auto direct = parse_failure(kHeader + "gate g a { g a; }");
        CHECK(direct.category() == ParseErrorCategory::semantic);
        CHECK(direct.line() == 3);
    }
}

TEST_CASE("emit writes one statement per instruction") {
    Circuit c;
    c.num_qubits = 1;
    c.instructions.push_back({GateKind::h, {0}, {}, {}});
    const std::string text = qfw::qasm::emit(c);
    std::size_t hits = 0;
    for (std::size_t pos = text.find("h q[0];"); pos != std::string::npos;
         pos = text.find("h q[0];", pos + 1)) {
        ++hits;
    }
    CHECK(hits == 1);
    CHECK(text.find("creg") == std::string::npos);
    CHECK(qfw::qasm::parse(text) == c);
}

TEST_CASE("emitted angles round trip") {
    using std::numbers::pi;
    Circuit c;
    c.num_qubits = 1;
    c.instructions.push_back({GateKind::rz, {0}, {}, {pi / 4}});
    const Circuit back = qfw::qasm::parse(qfw::qasm::emit(c));
    CHECK(std::abs(back.instructions.at(0).params.at(0) - pi / 4) < 1e-12);

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-1e3, 1e3);
    for (int i = 0; i < 200; ++i) {
        Circuit r;
        r.num_qubits = 1;
        const double a = dist(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
        r.instructions.push_back({GateKind::u3, {0}, {}, {a, -a, a / 3}});
        CHECK(qfw::qasm::parse(qfw::qasm::emit(r)) == r);
    }
}

TEST_CASE("round trip over the corpus") {
    const auto corpus = qfw::testing::load_corpus();
    CHECK(corpus.size() >= 30);
    for (const auto &program : corpus) {
        INFO(program.name);
        const Circuit first = qfw::qasm::parse(program.source);
        CHECK(qfw::qasm::validate(first).empty());
        const Circuit second = qfw::qasm::parse(qfw::qasm::emit(first));
        CHECK(second == first);
    }
}

TEST_CASE("parse failures always point into the source") {
    const auto corpus = qfw::testing::load_corpus();
    std::mt19937_64 rng(2024);
    const std::string junk = "{}[];,()->=\"$#q0.e";
    std::size_t failures = 0;
    for (int trial = 0; trial < 600; ++trial) {
        std::string source = corpus[rng() % corpus.size()].source;
        switch (rng() % 3) {
        case 0: source.resize(rng() % (source.size() + 1)); break;
        case 1: source.insert(rng() % (source.size() + 1), 1, junk[rng() % junk.size()]); break;
        default:
            if (!source.empty()) {
                source.erase(rng() % source.size(), 1);
            }
        }
        try {
            (void)qfw::qasm::parse(source);
        } catch (const ParseError &e) {
            ++failures;
            // Count lines; a position just past the last character is allowed
            // for errors at end of input.
            std::vector<std::size_t> lengths{0};
            for (char ch : source) {
                if (ch == '\n') {
                    lengths.push_back(0);
                } else {
                    ++lengths.back();
                }
            }
            INFO(e.what());
            REQUIRE(e.line() >= 1);
            REQUIRE(e.line() <= lengths.size());
            CHECK(e.column() >= 1);
            CHECK(e.column() <= lengths[e.line() - 1] + 1);
        }
    }
    CHECK(failures > 100);
}

TEST_CASE("validate reports each violation") {
    CHECK(qfw::qasm::validate(qfw::bench::ghz(3)).empty());

    Circuit dup;
    dup.num_qubits = 2;
    dup.instructions.push_back({GateKind::cx, {0, 0}, {}, {}});
    CHECK(qfw::qasm::validate(dup) ==
          std::vector<std::string>{"duplicate qubit operand in instruction 0"});

    Circuit range;
    range.num_qubits = 2;
    range.num_clbits = 1;
    range.instructions.push_back({GateKind::measure, {5}, {0}, {}});
    const auto violations = qfw::qasm::validate(range);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("out of range") != std::string::npos);

    Circuit several;
    several.num_qubits = 1;
    several.instructions.push_back({GateKind::rx, {0}, {}, {}});
    several.instructions.push_back({GateKind::cx, {0}, {}, {}});
    several.instructions.push_back({GateKind::measure, {0}, {3}, {}});
    several.instructions.push_back({GateKind::rz, {0}, {}, {std::nan("")}});
    CHECK(qfw::qasm::validate(several).size() == 4);
}
