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

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "parallel.hpp"
#include "qfw/error.hpp"
#include "qfw/simulator.hpp"

namespace qfw {

StateVector::StateVector(std::size_t num_qubits)
    : num_qubits_(num_qubits), amplitudes_(std::size_t{1} << num_qubits) {
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::size_t num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
        throw std::invalid_argument("amplitude count does not match 2^num_qubits");
    }
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto &a : amplitudes_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

namespace sim {

namespace {

using Matrix2 = std::array<Amplitude, 4>; // row-major

Matrix2 u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {Amplitude(c, 0), -std::polar(s, lambda), std::polar(s, phi),
            std::polar(c, phi + lambda)};
}

Matrix2 single_qubit_matrix(const Instruction &instr) {
    using std::numbers::pi;
    const auto &p = instr.params;
    const double r = 1.0 / std::numbers::sqrt2;
    const Amplitude i(0, 1);
    switch (instr.kind) {
    case GateKind::h: return {r, r, r, -r};
    case GateKind::x: return {0, 1, 1, 0};
    case GateKind::y: return {0, -i, i, 0};
    case GateKind::z: return {1, 0, 0, -1};
    case GateKind::s: return {1, 0, 0, i};
    case GateKind::sdg: return {1, 0, 0, -i};
    case GateKind::t: return {1, 0, 0, std::polar(1.0, pi / 4)};
    case GateKind::tdg: return {1, 0, 0, std::polar(1.0, -pi / 4)};
    case GateKind::rx: {
        const double c = std::cos(p[0] / 2);
        const double s = std::sin(p[0] / 2);
        return {c, Amplitude(0, -s), Amplitude(0, -s), c};
    }
    case GateKind::ry: {
        const double c = std::cos(p[0] / 2);
        const double s = std::sin(p[0] / 2);
        return {c, -s, s, c};
    }
    case GateKind::rz: return {std::polar(1.0, -p[0] / 2), 0, 0, std::polar(1.0, p[0] / 2)};
    case GateKind::u1: return {1, 0, 0, std::polar(1.0, p[0])};
    case GateKind::u2: return u3_matrix(pi / 2, p[0], p[1]);
    case GateKind::u3: return u3_matrix(p[0], p[1], p[2]);
    default: break;
    }
    throw std::logic_error("not a single-qubit gate");
}

// Spreads the bits of `base` around zero bits at each position in
// `sorted_bits` (ascending).
template <std::size_t N>
std::size_t insert_zero_bits(std::size_t base, const std::array<std::size_t, N> &sorted_bits) {
    for (std::size_t bit : sorted_bits) {
        const std::size_t low = base & ((std::size_t{1} << bit) - 1);
        base = ((base >> bit) << (bit + 1)) | low;
    }
    return base;
}

template <std::size_t N>
std::array<std::size_t, N> sorted(std::array<std::size_t, N> bits) {
    std::sort(bits.begin(), bits.end());
    return bits;
}

void check_operands(const StateVector &state, const Instruction &instr) {
    const GateInfo &info = gate_info(instr.kind);
    if (!is_unitary(instr.kind)) {
        throw Error(ErrorCode::validation,
                    "apply_gate: '" + std::string(info.name) + "' is not a unitary instruction");
    }
    if (instr.qubits.size() != info.num_qubits || instr.params.size() != info.num_params) {
        throw Error(ErrorCode::validation,
                    "apply_gate: malformed '" + std::string(info.name) + "' instruction");
    }
    for (std::size_t q : instr.qubits) {
        if (q >= state.num_qubits()) {
            throw Error(ErrorCode::validation, "apply_gate: qubit index " + std::to_string(q) +
                                                   " out of range for " +
                                                   std::to_string(state.num_qubits()) +
                                                   "-qubit state");
        }
    }
    for (std::size_t i = 0; i < instr.qubits.size(); ++i) {
        for (std::size_t j = i + 1; j < instr.qubits.size(); ++j) {
            if (instr.qubits[i] == instr.qubits[j]) {
                throw Error(ErrorCode::validation, "apply_gate: duplicate qubit operand");
            }
        }
    }
}

} // namespace

void apply_gate(StateVector &state, const Instruction &instr, std::size_t workers) {
    check_operands(state, instr);
    std::span<Amplitude> amp = state.amplitudes();
    const std::size_t n = state.num_qubits();
    const auto &q = instr.qubits;

    switch (instr.kind) {
    case GateKind::id: return;
    case GateKind::cx: {
        const std::size_t cbit = std::size_t{1} << q[0];
        const std::size_t tbit = std::size_t{1} << q[1];
        const auto bits = sorted(std::array{q[0], q[1]});
        detail::for_blocks(std::size_t{1} << (n - 2), workers, [&](std::size_t b, std::size_t e) {
            for (std::size_t k = b; k < e; ++k) {
                const std::size_t i = insert_zero_bits(k, bits) | cbit;
                std::swap(amp[i], amp[i | tbit]);
            }
        });
        return;
    }
    case GateKind::cz: {
        const std::size_t mask = (std::size_t{1} << q[0]) | (std::size_t{1} << q[1]);
        const auto bits = sorted(std::array{q[0], q[1]});
        detail::for_blocks(std::size_t{1} << (n - 2), workers, [&](std::size_t b, std::size_t e) {
            for (std::size_t k = b; k < e; ++k) {
                const std::size_t i = insert_zero_bits(k, bits) | mask;
                amp[i] = -amp[i];
            }
        });
        return;
    }
    case GateKind::swap: {
        const std::size_t abit = std::size_t{1} << q[0];
        const std::size_t bbit = std::size_t{1} << q[1];
        const auto bits = sorted(std::array{q[0], q[1]});
        detail::for_blocks(std::size_t{1} << (n - 2), workers, [&](std::size_t b, std::size_t e) {
            for (std::size_t k = b; k < e; ++k) {
                const std::size_t i = insert_zero_bits(k, bits);
                std::swap(amp[i | abit], amp[i | bbit]);
            }
        });
        return;
    }
    case GateKind::ccx: {
        const std::size_t controls = (std::size_t{1} << q[0]) | (std::size_t{1} << q[1]);
        const std::size_t tbit = std::size_t{1} << q[2];
        const auto bits = sorted(std::array{q[0], q[1], q[2]});
        detail::for_blocks(std::size_t{1} << (n - 3), workers, [&](std::size_t b, std::size_t e) {
            for (std::size_t k = b; k < e; ++k) {
                const std::size_t i = insert_zero_bits(k, bits) | controls;
                std::swap(amp[i], amp[i | tbit]);
            }
        });
        return;
    }
    default: break;
    }

    const Matrix2 m = single_qubit_matrix(instr);
    const std::size_t tbit = std::size_t{1} << q[0];
    const std::array bits{q[0]};
    detail::for_blocks(std::size_t{1} << (n - 1), workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
            const std::size_t i0 = insert_zero_bits(k, bits);
            const std::size_t i1 = i0 | tbit;
            const Amplitude a0 = amp[i0];
            const Amplitude a1 = amp[i1];
            amp[i0] = m[0] * a0 + m[1] * a1;
            amp[i1] = m[2] * a0 + m[3] * a1;
        }
    });
}

} // namespace sim
} // namespace qfw
