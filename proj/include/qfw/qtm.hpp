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

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

#include "qfw/error.hpp"
#include "qfw/resource_manager.hpp"
#include "qfw/simulator.hpp"

namespace qfw {

enum class SessionId : std::uint64_t {};
inline constexpr SessionId kDefaultSession{0};

enum class IntegrationMode { many_job, per_job };

/// many_job: every session shares one queue and the whole pool.
/// per_job: each session is bound to a dedicated slice of the pool holding
/// `per_job_partition` of its slots, with its own queue.
struct SchedulerMode {
    IntegrationMode mode = IntegrationMode::many_job;
    std::optional<double> per_job_partition;

    static SchedulerMode many_job() { return {}; }
    static SchedulerMode per_job(double fraction) { return {IntegrationMode::per_job, fraction}; }
};

/// Splits `nodes` into per-session partitions. Partition i gets
/// floor(total * fraction) slots (the remainder goes to partition 0); nodes are
/// consumed in declaration order, whole where the sizes line up.
[[nodiscard]] std::vector<std::vector<NodeSpec>> partition_pool(const std::vector<NodeSpec> &nodes,
                                                                double fraction);

/// One unit of schedulable work.
struct Job {
    std::string id;
    std::size_t procs = 1;
    SessionId session = kDefaultSession;
    /// Runs on an executor thread once `procs` slots are granted. The slots
    /// are released when it returns.
    std::function<void(const Placement &, std::stop_token)> execute;
    /// Called instead of `execute` when a queued job is cancelled.
    std::function<void(const Error &)> reject;
};

struct EnsembleSpec {
    std::vector<std::string> cids;
    std::size_t repetitions = 1;
};

/// Adds `from` into `into` bitstring by bitstring.
void merge_counts(Counts &into, const Counts &from);

/// Quantum task manager: FIFO queues in front of the resource manager and
/// the executor that runs granted jobs.
///
/// Scheduling is event driven. Every enqueue and every completion runs one
/// scheduling step, which walks each queue from the head and stops at the
/// first job that does not fit. Construct with `auto_schedule = false` to
/// drive steps by hand.
class TaskManager {
  public:
    explicit TaskManager(std::vector<NodeSpec> nodes, SchedulerMode mode = {},
                         bool auto_schedule = true);
    ~TaskManager();

    TaskManager(const TaskManager &) = delete;
    TaskManager &operator=(const TaskManager &) = delete;

    /// Throws Error(invalid_state) while any job is queued or running.
    void set_mode(SchedulerMode mode);
    [[nodiscard]] SchedulerMode mode() const;

    /// Throws Error(resource) if `procs` can never fit the session's
    /// partition (or no partition is free for a new per-job session).
    void check_admissible(SessionId session, std::size_t procs);

    void enqueue(Job job);

    /// One pass over every queue. Returns the ids of the jobs dispatched.
    std::vector<std::string> schedule_loop_step();

    /// Slots visible to `session` (the whole pool in many-job mode).
    [[nodiscard]] std::size_t session_capacity(SessionId session);
    [[nodiscard]] Utilization session_utilization(SessionId session);

    /// Unbinds a per-job session; its partition is reused once idle.
    void close_session(SessionId session);

    /// Per-node totals across all partitions; queue_length counts every
    /// queued job.
    [[nodiscard]] Utilization utilization() const;
    [[nodiscard]] std::size_t queued() const;
    [[nodiscard]] std::size_t running() const;

    /// Blocks until nothing is queued or running, or the timeout expires.
    bool wait_idle(std::chrono::steady_clock::duration timeout);

    /// Stops accepting jobs, waits up to `grace` for queued and running jobs,
    /// then rejects what is still queued and requests stop on running jobs.
    void shutdown(std::chrono::steady_clock::duration grace);

  private:
    struct Partition {
        std::unique_ptr<ResourceManager> pool;
        std::deque<Job> queue;
        std::optional<SessionId> owner;
        bool owner_closed = false;
        std::size_t running = 0;
    };

    struct Dispatch {
        Job job;
        Placement placement;
        std::size_t partition;
    };

    void build_partitions_locked();
    std::size_t partition_for_locked(SessionId session);
    std::vector<std::string> step_locked();
    void maybe_unbind_locked(Partition &p);
    void worker_loop(std::stop_token stop);
    std::size_t queued_locked() const;
    std::size_t running_locked() const;

    std::vector<NodeSpec> nodes_;
    SchedulerMode mode_;
    bool auto_schedule_;

    mutable std::mutex mu_;
    std::condition_variable_any work_cv_;
    std::condition_variable idle_cv_;
    std::vector<Partition> partitions_;
    std::map<SessionId, std::size_t> bindings_;
    std::deque<Dispatch> ready_;
    bool accepting_ = true;
    std::stop_source cancel_;
    std::vector<std::jthread> workers_;
};

} // namespace qfw
