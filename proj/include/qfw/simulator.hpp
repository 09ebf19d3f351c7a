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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stop_token>
#include <string>
#include <vector>

#include "qfw/circuit.hpp"

namespace qfw {

using Amplitude = std::complex<double>;

/// Dense state over `num_qubits` qubits. Qubit 0 is the least-significant bit
/// of the amplitude index.
class StateVector {
  public:
    explicit StateVector(std::size_t num_qubits);
    StateVector(std::size_t num_qubits, std::vector<Amplitude> amplitudes);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }
    [[nodiscard]] const Amplitude &operator[](std::size_t i) const { return amplitudes_[i]; }

    /// L2 norm of the amplitude vector.
    [[nodiscard]] double norm() const;

  private:
    std::size_t num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

struct SimConfig {
    std::size_t max_qubits = 24;
    std::size_t workers = 1;
    std::optional<std::uint64_t> seed;
};

struct ExecutionStats {
    double wall_time_seconds = 0.0;
    std::string backend;
    std::size_t workers = 1;
    std::size_t num_qubits = 0;
    /// "node:slots,..." for runs that went through the resource manager.
    std::string placement;
};

/// Histogram keyed by bitstrings of length num_clbits, clbit 0 rightmost.
using Counts = std::map<std::string, std::uint64_t>;

struct ExecutionResult {
    Counts counts;
    std::uint64_t shots = 0;
    ExecutionStats stats;
};

namespace sim {

/// Applies a unitary instruction in place. The index space is split into
/// `workers` contiguous blocks; the result does not depend on `workers`.
void apply_gate(StateVector &state, const Instruction &instr, std::size_t workers = 1);

/// Executes `circuit` and samples `shots` measurement records.
///
/// All-terminal measurements are sampled from the final distribution. A
/// measurement or reset followed by further operations on its qubit switches
/// the remainder of the circuit to per-shot trajectories. Counts depend only
/// on (circuit, shots, seed), never on `config.workers`.
///
/// Throws Error(validation) for invalid circuits or zero shots and
/// Error(resource) when the circuit exceeds `config.max_qubits`. A stop
/// request aborts with Error(backend).
[[nodiscard]] ExecutionResult run(const Circuit &circuit, std::uint64_t shots,
                                  const SimConfig &config, std::stop_token stop = {});

/// Exact final state of a measurement-free circuit.
[[nodiscard]] StateVector final_amplitudes(const Circuit &circuit, const SimConfig &config = {});

/// Counter-based uniform draw in [0, 1) keyed by (seed, shot, draw).
[[nodiscard]] double counter_uniform(std::uint64_t seed, std::uint64_t shot, std::uint64_t draw);

} // namespace sim
} // namespace qfw
