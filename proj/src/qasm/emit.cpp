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

#include <charconv>
#include <sstream>

#include "qfw/qasm.hpp"

namespace qfw::qasm {

namespace {

// Shortest representation that parses back to the same double.
std::string format_angle(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

} // namespace

std::string emit(const Circuit &circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    if (circuit.num_qubits > 0) {
        out << "qreg q[" << circuit.num_qubits << "];\n";
    }
    if (circuit.num_clbits > 0) {
        out << "creg c[" << circuit.num_clbits << "];\n";
    }
    for (const auto &instr : circuit.instructions) {
        out << gate_info(instr.kind).name;
        if (!instr.params.empty()) {
            out << '(';
            for (std::size_t i = 0; i < instr.params.size(); ++i) {
                out << (i == 0 ? "" : ",") << format_angle(instr.params[i]);
            }
            out << ')';
        }
        for (std::size_t i = 0; i < instr.qubits.size(); ++i) {
            out << (i == 0 ? " " : ",") << "q[" << instr.qubits[i] << ']';
        }
        if (instr.kind == GateKind::measure && !instr.clbits.empty()) {
            out << " -> c[" << instr.clbits.front() << ']';
        }
        out << ";\n";
    }
    return out.str();
}

} // namespace qfw::qasm
