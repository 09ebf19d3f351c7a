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
#include <chrono>
#include <random>
#include <unordered_map>

#include "parallel.hpp"
#include "qfw/error.hpp"
#include "qfw/qasm.hpp"
#include "qfw/simulator.hpp"

namespace qfw::sim {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void check_runnable(const Circuit &circuit, const SimConfig &config) {
    if (config.workers < 1) {
        throw Error(ErrorCode::validation, "workers must be >= 1");
    }
    if (circuit.num_qubits > config.max_qubits) {
        throw Error(ErrorCode::resource, "circuit needs " + std::to_string(circuit.num_qubits) +
                                             " qubits, simulator limit is " +
                                             std::to_string(config.max_qubits));
    }
    const auto violations = qasm::validate(circuit);
    if (!violations.empty()) {
        throw Error(ErrorCode::validation, "invalid circuit: " + violations.front());
    }
}

void throw_if_stopped(const std::stop_token &stop) {
    if (stop.stop_requested()) {
        throw Error(ErrorCode::backend, "execution cancelled");
    }
}

// Inverse-CDF lookup; `u` in [0, 1).
std::size_t sample_index(const std::vector<double> &cdf, double u) {
    const double target = u * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

std::vector<double> cumulative(const StateVector &state) {
    std::vector<double> cdf(state.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        acc += std::norm(state[i]);
        cdf[i] = acc;
    }
    return cdf;
}

// Projects `qubit` onto a random outcome and renormalises.
int collapse(StateVector &state, std::size_t qubit, double u) {
    const std::size_t bit = std::size_t{1} << qubit;
    auto amp = state.amplitudes();
    double p1 = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        const double p = std::norm(amp[i]);
        total += p;
        if (i & bit) {
            p1 += p;
        }
    }
    const int outcome = u * total < total - p1 ? 0 : 1;
    const double kept = outcome == 1 ? p1 : total - p1;
    const double scale = 1.0 / std::sqrt(kept);
    for (std::size_t i = 0; i < amp.size(); ++i) {
        const bool one = (i & bit) != 0;
        amp[i] = (one == (outcome == 1)) ? amp[i] * scale : Amplitude{};
    }
    return outcome;
}

struct MeasureTarget {
    std::size_t qubit;
    std::size_t clbit;
};

std::string to_bitstring(const std::vector<char> &clbits) {
    return std::string(clbits.rbegin(), clbits.rend());
}

// A measurement is terminal when nothing after it except measurements and
// barriers touches its qubit. Returns the index of the first measure/reset
// that is not terminal, or the instruction count if there is none.
std::size_t first_nonterminal(const Circuit &circuit) {
    const auto &ins = circuit.instructions;
    std::vector<std::size_t> last_touch(circuit.num_qubits, 0);
    std::vector<bool> touched(circuit.num_qubits, false);
    for (std::size_t i = 0; i < ins.size(); ++i) {
        if (ins[i].kind == GateKind::measure || ins[i].kind == GateKind::barrier) {
            continue;
        }
        for (std::size_t q : ins[i].qubits) {
            last_touch[q] = i;
            touched[q] = true;
        }
    }
    for (std::size_t i = 0; i < ins.size(); ++i) {
        if (ins[i].kind == GateKind::reset) {
            return i;
        }
        if (ins[i].kind == GateKind::measure) {
            const std::size_t q = ins[i].qubits[0];
            if (touched[q] && last_touch[q] > i) {
                return i;
            }
        }
    }
    return ins.size();
}

Counts sample_terminal(const StateVector &state, const std::vector<MeasureTarget> &measures,
                       std::size_t num_clbits, std::uint64_t shots, std::uint64_t seed,
                       std::size_t workers) {
    const std::vector<double> cdf = cumulative(state);
    // Clbit -> measured qubit after last-write-wins resolution.
    std::vector<std::optional<std::size_t>> source(num_clbits);
    for (const auto &m : measures) {
        source[m.clbit] = m.qubit;
    }

    const std::size_t w = std::max<std::size_t>(1, std::min<std::uint64_t>(workers, shots));
    std::vector<std::unordered_map<std::size_t, std::uint64_t>> partial(w);
    detail::for_fixed_blocks(shots, w, [&](std::size_t block, std::size_t b, std::size_t e) {
        auto &hist = partial[block];
        for (std::size_t shot = b; shot < e; ++shot) {
            ++hist[sample_index(cdf, counter_uniform(seed, shot, 0))];
        }
    });

    Counts counts;
    std::vector<char> bits(num_clbits);
    for (const auto &hist : partial) {
        for (const auto &[index, n] : hist) {
            for (std::size_t c = 0; c < num_clbits; ++c) {
                bits[c] = source[c] && ((index >> *source[c]) & 1U) ? '1' : '0';
            }
            counts[to_bitstring(bits)] += n;
        }
    }
    return counts;
}

Counts sample_trajectories(const Circuit &circuit, const StateVector &prefix_state,
                           std::size_t suffix_begin, const std::vector<MeasureTarget> &deferred,
                           std::uint64_t shots, std::uint64_t seed, std::size_t workers,
                           const std::stop_token &stop) {
    const std::size_t w = std::max<std::size_t>(1, std::min<std::uint64_t>(workers, shots));
    std::vector<Counts> partial(w);
    detail::for_fixed_blocks(shots, w, [&](std::size_t block, std::size_t b, std::size_t e) {
        std::vector<char> bits(circuit.num_clbits);
        std::vector<bool> written(circuit.num_clbits);
        for (std::size_t shot = b; shot < e; ++shot) {
            if (stop.stop_requested()) {
                return;
            }
            StateVector state = prefix_state;
            std::fill(bits.begin(), bits.end(), '0');
            std::fill(written.begin(), written.end(), false);
            std::uint64_t draw = 0;
            for (std::size_t i = suffix_begin; i < circuit.instructions.size(); ++i) {
                const Instruction &instr = circuit.instructions[i];
                switch (instr.kind) {
                case GateKind::barrier: break;
                case GateKind::measure: {
                    const int outcome =
                        collapse(state, instr.qubits[0], counter_uniform(seed, shot, draw++));
                    bits[instr.clbits[0]] = outcome ? '1' : '0';
                    written[instr.clbits[0]] = true;
                    break;
                }
                case GateKind::reset:
                    if (collapse(state, instr.qubits[0], counter_uniform(seed, shot, draw++))) {
                        apply_gate(state, {GateKind::x, instr.qubits, {}, {}});
                    }
                    break;
                default: apply_gate(state, instr); break;
                }
            }
            if (!deferred.empty()) {
                const std::size_t index =
                    sample_index(cumulative(state), counter_uniform(seed, shot, draw++));
                for (const auto &m : deferred) {
                    if (!written[m.clbit]) {
                        bits[m.clbit] = ((index >> m.qubit) & 1U) ? '1' : '0';
                    }
                }
            }
            ++partial[block][to_bitstring(bits)];
        }
    });
    throw_if_stopped(stop);

    Counts counts;
    for (const auto &part : partial) {
        for (const auto &[key, n] : part) {
            counts[key] += n;
        }
    }
    return counts;
}

} // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t shot, std::uint64_t draw) {
    const std::uint64_t h = mix64(seed ^ mix64(shot ^ mix64(draw)));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

ExecutionResult run(const Circuit &circuit, std::uint64_t shots, const SimConfig &config,
                    std::stop_token stop) {
    const auto start = std::chrono::steady_clock::now();
    check_runnable(circuit, config);
    if (shots < 1) {
        throw Error(ErrorCode::validation, "shots must be >= 1");
    }
    const std::uint64_t seed = config.seed ? *config.seed : std::random_device{}();

    const std::size_t split = first_nonterminal(circuit);
    StateVector state(circuit.num_qubits);
    std::vector<MeasureTarget> measures;
    for (std::size_t i = 0; i < split; ++i) {
        throw_if_stopped(stop);
        const Instruction &instr = circuit.instructions[i];
        if (instr.kind == GateKind::measure) {
            measures.push_back({instr.qubits[0], instr.clbits[0]});
        } else if (is_unitary(instr.kind)) {
            apply_gate(state, instr, config.workers);
        }
    }

    ExecutionResult result;
    result.shots = shots;
    if (split == circuit.instructions.size()) {
        result.counts =
            sample_terminal(state, measures, circuit.num_clbits, shots, seed, config.workers);
    } else {
        result.counts = sample_trajectories(circuit, state, split, measures, shots, seed,
                                            config.workers, stop);
    }
    result.stats.backend = "statevector";
    result.stats.workers = config.workers;
    result.stats.num_qubits = circuit.num_qubits;
    result.stats.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

StateVector final_amplitudes(const Circuit &circuit, const SimConfig &config) {
    check_runnable(circuit, config);
    StateVector state(circuit.num_qubits);
    for (const auto &instr : circuit.instructions) {
        if (instr.kind == GateKind::measure || instr.kind == GateKind::reset) {
            throw Error(ErrorCode::validation,
                        "final_amplitudes: circuit contains non-unitary instruction '" +
                            std::string(gate_info(instr.kind).name) + "'");
        }
        if (instr.kind != GateKind::barrier) {
            apply_gate(state, instr, config.workers);
        }
    }
    return state;
}

} // namespace qfw::sim
