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
#include <stdexcept>

#include "qfw/circuit.hpp"

namespace qfw {

namespace {

const std::vector<GateInfo> kGates = {
    {GateKind::h, "h", 1, 0},         {GateKind::x, "x", 1, 0},
    {GateKind::y, "y", 1, 0},         {GateKind::z, "z", 1, 0},
    {GateKind::s, "s", 1, 0},         {GateKind::sdg, "sdg", 1, 0},
    {GateKind::t, "t", 1, 0},         {GateKind::tdg, "tdg", 1, 0},
    {GateKind::rx, "rx", 1, 1},       {GateKind::ry, "ry", 1, 1},
    {GateKind::rz, "rz", 1, 1},       {GateKind::u1, "u1", 1, 1},
    {GateKind::u2, "u2", 1, 2},       {GateKind::u3, "u3", 1, 3},
    {GateKind::cx, "cx", 2, 0},       {GateKind::cz, "cz", 2, 0},
    {GateKind::swap, "swap", 2, 0},   {GateKind::ccx, "ccx", 3, 0},
    {GateKind::id, "id", 1, 0},       {GateKind::measure, "measure", 1, 0},
    {GateKind::reset, "reset", 1, 0}, {GateKind::barrier, "barrier", 0, 0},
};

} // namespace

const std::vector<GateInfo> &all_gates() { return kGates; }

const GateInfo &gate_info(GateKind kind) {
    const auto it = std::find_if(kGates.begin(), kGates.end(),
                                 [kind](const GateInfo &g) { return g.kind == kind; });
    if (it == kGates.end()) {
        throw std::logic_error("gate kind missing from gate table");
    }
    return *it;
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    for (const auto &g : kGates) {
        if (g.name == name) {
            return g.kind;
        }
    }
    return std::nullopt;
}

bool is_unitary(GateKind kind) {
    return kind != GateKind::measure && kind != GateKind::reset && kind != GateKind::barrier;
}

} // namespace qfw
