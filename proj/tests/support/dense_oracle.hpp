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

// Brute-force reference for small circuits: every gate is lifted to a full
// 2^n x 2^n matrix, the matrices are multiplied together, and the product is
// applied to |0...0>. Gate matrices are written out here from their textbook
// definitions and share nothing with the simulator kernels.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qfw/circuit.hpp"

namespace qfw::testing {

using Complex = std::complex<double>;

/// Row-major square matrix.
struct DenseMatrix {
    std::size_t dim = 0;
    std::vector<Complex> data;

    explicit DenseMatrix(std::size_t d) : dim(d), data(d * d) {}

    static DenseMatrix identity(std::size_t d) {
        DenseMatrix m(d);
        for (std::size_t i = 0; i < d; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    Complex &operator()(std::size_t r, std::size_t c) { return data[r * dim + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data[r * dim + c]; }

    DenseMatrix operator*(const DenseMatrix &rhs) const {
        DenseMatrix out(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t k = 0; k < dim; ++k) {
                const Complex a = (*this)(r, k);
                if (a == Complex{}) {
                    continue;
                }
                for (std::size_t c = 0; c < dim; ++c) {
                    out(r, c) += a * rhs(k, c);
                }
            }
        }
        return out;
    }
};

namespace detail {

inline DenseMatrix pauli_x() {
    DenseMatrix m(2);
    m(0, 1) = m(1, 0) = 1.0;
    return m;
}
inline DenseMatrix pauli_y() {
    DenseMatrix m(2);
    m(0, 1) = Complex(0, -1);
    m(1, 0) = Complex(0, 1);
    return m;
}
inline DenseMatrix pauli_z() {
    DenseMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}
inline DenseMatrix phase(Complex p) {
    DenseMatrix m = DenseMatrix::identity(2);
    m(1, 1) = p;
    return m;
}
// exp(-i theta/2 P) = cos(theta/2) I - i sin(theta/2) P
inline DenseMatrix rotation(const DenseMatrix &pauli, double theta) {
    DenseMatrix m(2);
    const DenseMatrix id = DenseMatrix::identity(2);
    for (std::size_t i = 0; i < 4; ++i) {
        m.data[i] = std::cos(theta / 2) * id.data[i] - Complex(0, 1) * std::sin(theta / 2) * pauli.data[i];
    }
    return m;
}
inline DenseMatrix u3(double theta, double phi, double lambda) {
    DenseMatrix m(2);
    m(0, 0) = std::cos(theta / 2);
    m(0, 1) = -std::exp(Complex(0, lambda)) * std::sin(theta / 2);
    m(1, 0) = std::exp(Complex(0, phi)) * std::sin(theta / 2);
    m(1, 1) = std::exp(Complex(0, phi + lambda)) * std::cos(theta / 2);
    return m;
}

// Local operator on k qubits; local basis bit i belongs to the i-th operand.
inline DenseMatrix local_matrix(const Instruction &instr) {
    using std::numbers::pi;
    const auto &p = instr.params;
    switch (instr.kind) {
    case GateKind::id: return DenseMatrix::identity(2);
    case GateKind::x: return pauli_x();
    case GateKind::y: return pauli_y();
    case GateKind::z: return pauli_z();
    case GateKind::h: {
        DenseMatrix m(2);
        const DenseMatrix x = pauli_x();
        const DenseMatrix z = pauli_z();
        for (std::size_t i = 0; i < 4; ++i) {
            m.data[i] = (x.data[i] + z.data[i]) / std::sqrt(2.0);
        }
        return m;
    }
    case GateKind::s: return phase(Complex(0, 1));
    case GateKind::sdg: return phase(Complex(0, -1));
    case GateKind::t: return phase(Complex(1, 1) / std::sqrt(2.0));
    case GateKind::tdg: return phase(Complex(1, -1) / std::sqrt(2.0));
    case GateKind::rx: return rotation(pauli_x(), p[0]);
    case GateKind::ry: return rotation(pauli_y(), p[0]);
    case GateKind::rz: return rotation(pauli_z(), p[0]);
    case GateKind::u1: return phase(std::exp(Complex(0, p[0])));
    case GateKind::u2: return u3(pi / 2, p[0], p[1]);
    case GateKind::u3: return u3(p[0], p[1], p[2]);
    case GateKind::cx: {
        // |c t>, index c + 2t: |10> (1) <-> |11> (3)
        DenseMatrix m(4);
        m(0, 0) = m(2, 2) = 1.0;
        m(1, 3) = m(3, 1) = 1.0;
        return m;
    }
    case GateKind::cz: {
        DenseMatrix m = DenseMatrix::identity(4);
        m(3, 3) = -1.0;
        return m;
    }
    case GateKind::swap: {
        DenseMatrix m(4);
        m(0, 0) = m(3, 3) = 1.0;
        m(1, 2) = m(2, 1) = 1.0;
        return m;
    }
    case GateKind::ccx: {
        DenseMatrix m = DenseMatrix::identity(8);
        m(3, 3) = m(7, 7) = 0.0;
        m(3, 7) = m(7, 3) = 1.0;
        return m;
    }
    default: break;
    }
    throw std::invalid_argument("oracle: no matrix for non-unitary instruction");
}

} // namespace detail

/// Lifts an instruction to the full 2^n space: entry (r, c) is the local
/// matrix entry for the operand bits of r and c when all other bits agree.
inline DenseMatrix full_matrix(std::size_t num_qubits, const Instruction &instr) {
    const DenseMatrix local = detail::local_matrix(instr);
    const std::size_t dim = std::size_t{1} << num_qubits;
    std::size_t operand_mask = 0;
    for (std::size_t q : instr.qubits) {
        operand_mask |= std::size_t{1} << q;
    }
    auto local_index = [&](std::size_t basis) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < instr.qubits.size(); ++i) {
            idx |= ((basis >> instr.qubits[i]) & 1U) << i;
        }
        return idx;
    };
    DenseMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~operand_mask) == (c & ~operand_mask)) {
                m(r, c) = local(local_index(r), local_index(c));
            }
        }
    }
    return m;
}

/// Final state of a measurement-free circuit via the full matrix product.
inline std::vector<Complex> oracle_state(const Circuit &circuit) {
    const std::size_t dim = std::size_t{1} << circuit.num_qubits;
    DenseMatrix total = DenseMatrix::identity(dim);
    for (const auto &instr : circuit.instructions) {
        if (instr.kind == GateKind::barrier) {
            continue;
        }
        total = full_matrix(circuit.num_qubits, instr) * total;
    }
    std::vector<Complex> out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        out[r] = total(r, 0);
    }
    return out;
}

} // namespace qfw::testing
