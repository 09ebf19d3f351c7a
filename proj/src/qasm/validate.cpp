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

#include <cmath>
#include <set>

#include "qfw/qasm.hpp"

namespace qfw::qasm {

std::vector<std::string> validate(const Circuit &circuit) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < circuit.instructions.size(); ++i) {
        const Instruction &instr = circuit.instructions[i];
        const GateInfo &info = gate_info(instr.kind);
        const std::string where = "instruction " + std::to_string(i);
        const std::string label = where + " (" + std::string(info.name) + ")";

        if (instr.kind == GateKind::barrier) {
            if (instr.qubits.empty()) {
                out.push_back(label + " needs at least one qubit operand");
            }
        } else if (instr.qubits.size() != info.num_qubits) {
            out.push_back(label + " expects " + std::to_string(info.num_qubits) +
                          " qubit operand(s), got " + std::to_string(instr.qubits.size()));
        }
        const std::size_t want_clbits = instr.kind == GateKind::measure ? 1 : 0;
        if (instr.clbits.size() != want_clbits) {
            out.push_back(label + " expects " + std::to_string(want_clbits) +
                          " clbit operand(s), got " + std::to_string(instr.clbits.size()));
        }
        if (instr.params.size() != info.num_params) {
            out.push_back(label + " expects " + std::to_string(info.num_params) +
                          " parameter(s), got " + std::to_string(instr.params.size()));
        }
        for (double p : instr.params) {
            if (!std::isfinite(p)) {
                out.push_back("non-finite parameter in " + where);
                break;
            }
        }
        for (std::size_t q : instr.qubits) {
            if (q >= circuit.num_qubits) {
                out.push_back("qubit index " + std::to_string(q) + " out of range in " + where +
                              " (num_qubits=" + std::to_string(circuit.num_qubits) + ")");
            }
        }
        for (std::size_t c : instr.clbits) {
            if (c >= circuit.num_clbits) {
                out.push_back("clbit index " + std::to_string(c) + " out of range in " + where +
                              " (num_clbits=" + std::to_string(circuit.num_clbits) + ")");
            }
        }
        const std::set<std::size_t> distinct(instr.qubits.begin(), instr.qubits.end());
        if (distinct.size() != instr.qubits.size()) {
            out.push_back("duplicate qubit operand in " + where);
        }
    }
    return out;
}

} // namespace qfw::qasm
