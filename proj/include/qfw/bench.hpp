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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qfw/circuit.hpp"
#include "qfw/error.hpp"

namespace qfw {
class WireClient;
}

namespace qfw::bench {

/// h(0), then cx(k-1, k) for k = 1..n-1, then measure qubit k into clbit k.
[[nodiscard]] Circuit ghz(std::size_t num_qubits);

/// Deterministic layered circuit without measurements. Each layer visits the
/// qubits in a random order and covers them with 1-, 2- and 3-qubit gates.
[[nodiscard]] Circuit random_circuit(std::size_t num_qubits, std::size_t depth, std::uint64_t seed);

enum class CampaignMode { sequential, concurrent };

struct BenchReport {
    std::string workload;
    std::size_t tasks = 0;
    CampaignMode mode = CampaignMode::sequential;
    double wall_time_seconds = 0.0;
    /// Server-side execution time of each task, in submission order.
    std::vector<double> per_task_seconds;
};

[[nodiscard]] nlohmann::json to_json(const BenchReport &report);
[[nodiscard]] std::string format_table(const BenchReport &report);

struct CampaignOptions {
    std::size_t count = 1;
    CampaignMode mode = CampaignMode::sequential;
    std::optional<std::string> backend;
    std::uint64_t shots = 1;
    std::optional<std::uint64_t> seed;
    std::string workload = "custom";
};

/// A campaign task failed; the report covers the tasks finished before it.
class CampaignError : public Error {
  public:
    CampaignError(const std::string &message, BenchReport partial)
        : Error(ErrorCode::backend, message), partial_(std::move(partial)) {}

    [[nodiscard]] const BenchReport &partial() const noexcept { return partial_; }

  private:
    BenchReport partial_;
};

/// Submits `options.count` copies of `circuit` through `client`. Sequential
/// mode waits for each sync_run before the next; concurrent mode submits all
/// with async_run and then waits for all of them.
[[nodiscard]] BenchReport run_campaign(WireClient &client, const Circuit &circuit,
                                       const CampaignOptions &options);

} // namespace qfw::bench
