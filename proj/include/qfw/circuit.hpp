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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qfw {

enum class GateKind {
    h,
    x,
    y,
    z,
    s,
    sdg,
    t,
    tdg,
    rx,
    ry,
    rz,
    u1,
    u2,
    u3,
    cx,
    cz,
    swap,
    ccx,
    id,
    measure,
    reset,
    barrier,
};

/// Static shape of a gate kind. `num_qubits == 0` means variadic (barrier).
struct GateInfo {
    GateKind kind;
    std::string_view name;
    std::size_t num_qubits;
    std::size_t num_params;
};

[[nodiscard]] const GateInfo &gate_info(GateKind kind);
[[nodiscard]] std::optional<GateKind> gate_kind_from_name(std::string_view name);
[[nodiscard]] const std::vector<GateInfo> &all_gates();

/// True for kinds that act as a unitary on the state (everything except
/// measure, reset and barrier).
[[nodiscard]] bool is_unitary(GateKind kind);

struct Instruction {
    GateKind kind{GateKind::id};
    std::vector<std::size_t> qubits;
    std::vector<std::size_t> clbits;
    std::vector<double> params;

    friend bool operator==(const Instruction &, const Instruction &) = default;
};

/// Gate-level program in a single flat qubit space and a single flat clbit
/// space. The name is a label only and takes no part in equality.
struct Circuit {
    std::string name;
    std::size_t num_qubits = 0;
    std::size_t num_clbits = 0;
    std::vector<Instruction> instructions;

    friend bool operator==(const Circuit &a, const Circuit &b) {
        return a.num_qubits == b.num_qubits && a.num_clbits == b.num_clbits &&
               a.instructions == b.instructions;
    }
};

} // namespace qfw
