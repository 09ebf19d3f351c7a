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

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfw/backend.hpp"
#include "qfw/circuit.hpp"
#include "qfw/error.hpp"
#include "qfw/qtm.hpp"
#include "qfw/simulator.hpp"

namespace qfw {

using Cid = std::string;

/// Mirrors the application-side task dictionary.
struct TaskInfo {
    std::string qasm;
    std::size_t num_qubits = 0;
    std::uint64_t num_shots = 1;
    /// Opaque label, carried through untouched.
    std::string compiler;
    std::optional<std::string> backend;
    std::optional<std::uint64_t> seed;
};

enum class CircuitState { created, queued, running, done, failed };

[[nodiscard]] std::string_view to_string(CircuitState state);

struct CircuitHandle {
    Cid cid;
    CircuitState state = CircuitState::created;
    std::optional<ExecutionResult> result;
    std::optional<std::string> error;
};

/// rc values returned by sync_run.
enum class RunStatus : int { ok = 0, backend_failure = 1, invalid_request = 2 };

struct RunOutcome {
    RunStatus rc = RunStatus::ok;
    ExecutionResult result;
    ExecutionStats stats;
    std::string error;
};

/// Raised by run_ensemble when a member fails; carries whatever was merged
/// before the failure.
class EnsembleError : public Error {
  public:
    EnsembleError(const std::string &message, ExecutionResult partial)
        : Error(ErrorCode::backend, message), partial_(std::move(partial)) {}

    [[nodiscard]] const ExecutionResult &partial() const noexcept { return partial_; }

  private:
    ExecutionResult partial_;
};

/// ceil(num_qubits / 10): one simulator process per ten qubits.
[[nodiscard]] std::size_t procs_for_circuit(std::size_t num_qubits);

/// Maps a circuit to the number of simulator processes it should get. The
/// default only looks at the qubit count; depth-aware sizing plugs in here.
using SizingFunction = std::function<std::size_t(const Circuit &)>;

[[nodiscard]] SizingFunction default_sizing();

/// Quantum platform manager: the circuit-level API in front of the task
/// manager and the backend registry.
///
/// Handles move created -> queued -> running -> done|failed. A task that can
/// never be placed goes straight from created to failed.
class PlatformManager {
  public:
    PlatformManager(BackendRegistry &registry, TaskManager &tasks,
                    SizingFunction sizing = default_sizing());
    ~PlatformManager();

    PlatformManager(const PlatformManager &) = delete;
    PlatformManager &operator=(const PlatformManager &) = delete;

    Cid create_circuit(const TaskInfo &info, SessionId session = kDefaultSession);

    /// Blocks until the task is terminal. Invalid requests (unknown cid,
    /// wrong state) throw; execution failures come back as a nonzero rc.
    RunOutcome sync_run(const Cid &cid);

    void async_run(const Cid &cid);

    [[nodiscard]] CircuitHandle get_result(const Cid &cid) const;

    /// Waits for a terminal state; false on timeout.
    bool wait(const Cid &cid, std::chrono::steady_clock::duration timeout) const;

    /// Runs every member `repetitions` times and merges the histograms.
    /// Repetition r of a seeded member uses seed + r.
    ExecutionResult run_ensemble(const EnsembleSpec &spec);

    [[nodiscard]] std::vector<BackendDescriptor> list_backends() const { return registry_.list(); }
    [[nodiscard]] std::map<CircuitState, std::size_t> state_counts() const;
    [[nodiscard]] std::size_t procs_for(const Cid &cid) const;

  private:
    struct Record {
        TaskInfo info;
        Circuit circuit;
        std::shared_ptr<Backend> backend;
        SessionId session{};
        CircuitState state = CircuitState::created;
        std::optional<ExecutionResult> result;
        std::optional<std::string> error;
        RunStatus failure = RunStatus::ok;
    };
    struct EnsembleRun;

    Record &record_locked(const Cid &cid);
    const Record &record_locked(const Cid &cid) const;
    bool start(const Cid &cid);
    ExecutionResult execute(const Record &snapshot, std::optional<std::uint64_t> seed,
                            const Placement &placement, std::stop_token stop);
    void finish(const Cid &cid, std::optional<ExecutionResult> result, const std::string &error,
                RunStatus failure);
    void job_done();

    BackendRegistry &registry_;
    TaskManager &tasks_;
    SizingFunction sizing_;

    mutable std::mutex mu_;
    mutable std::condition_variable cv_;
    std::map<Cid, Record> records_;
    std::uint64_t next_cid_ = 1;
    std::size_t outstanding_jobs_ = 0;
};

} // namespace qfw
