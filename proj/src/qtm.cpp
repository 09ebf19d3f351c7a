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

#include "qfw/qtm.hpp"

#include <algorithm>
#include <cmath>

namespace qfw {

namespace {

constexpr std::size_t kMaxExecutorThreads = 256;

std::size_t total_slots(const std::vector<NodeSpec> &nodes) {
    std::size_t total = 0;
    for (const auto &n : nodes) {
        total += n.slots;
    }
    return total;
}

} // namespace

std::vector<std::vector<NodeSpec>> partition_pool(const std::vector<NodeSpec> &nodes,
                                                  double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw Error(ErrorCode::validation, "per-job partition must be in (0, 1]");
    }
    const std::size_t total = total_slots(nodes);
    const auto count = static_cast<std::size_t>(std::floor(1.0 / fraction + 1e-9));
    const auto size = static_cast<std::size_t>(std::floor(static_cast<double>(total) * fraction + 1e-9));
    if (size == 0) {
        throw Error(ErrorCode::validation, "per-job partition is smaller than one slot");
    }
    std::vector<std::size_t> sizes(count, size);
    sizes[0] += total - size * count;

    std::vector<std::vector<NodeSpec>> out(count);
    std::size_t node = 0;
    std::size_t left_on_node = nodes.empty() ? 0 : nodes[0].slots;
    for (std::size_t p = 0; p < count; ++p) {
        std::size_t need = sizes[p];
        while (need > 0) {
            if (left_on_node == 0) {
                ++node;
                left_on_node = nodes[node].slots;
            }
            const std::size_t take = std::min(need, left_on_node);
            out[p].push_back({nodes[node].node_id, take});
            need -= take;
            left_on_node -= take;
        }
    }
    return out;
}

void merge_counts(Counts &into, const Counts &from) {
    for (const auto &[key, n] : from) {
        into[key] += n;
    }
}

TaskManager::TaskManager(std::vector<NodeSpec> nodes, SchedulerMode mode, bool auto_schedule)
    : nodes_(std::move(nodes)), mode_(mode), auto_schedule_(auto_schedule) {
    // Validates the topology.
    ResourceManager probe(nodes_);
    {
        std::lock_guard lock(mu_);
        build_partitions_locked();
    }
    const std::size_t threads = std::min(probe.capacity(), kMaxExecutorThreads);
    workers_.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) {
        workers_.emplace_back([this](std::stop_token stop) { worker_loop(stop); });
    }
}

TaskManager::~TaskManager() {
    shutdown(std::chrono::seconds(0));
    for (auto &w : workers_) {
        w.request_stop();
    }
    work_cv_.notify_all();
    workers_.clear();
}

void TaskManager::build_partitions_locked() {
    partitions_.clear();
    bindings_.clear();
    if (mode_.mode == IntegrationMode::many_job) {
        if (mode_.per_job_partition) {
            throw Error(ErrorCode::validation, "per_job_partition is only valid in per-job mode");
        }
        partitions_.push_back({std::make_unique<ResourceManager>(nodes_), {}, {}, false, 0});
        return;
    }
    if (!mode_.per_job_partition) {
        throw Error(ErrorCode::validation, "per-job mode requires a partition fraction");
    }
    for (auto &slice : partition_pool(nodes_, *mode_.per_job_partition)) {
        partitions_.push_back({std::make_unique<ResourceManager>(std::move(slice)), {}, {}, false, 0});
    }
}

void TaskManager::set_mode(SchedulerMode mode) {
    std::lock_guard lock(mu_);
    if (queued_locked() > 0 || running_locked() > 0 || !ready_.empty()) {
        throw Error(ErrorCode::invalid_state, "cannot change scheduler mode while tasks are active");
    }
    const SchedulerMode previous = mode_;
    mode_ = mode;
    try {
        build_partitions_locked();
    } catch (...) {
        mode_ = previous;
        build_partitions_locked();
        throw;
    }
}

SchedulerMode TaskManager::mode() const {
    std::lock_guard lock(mu_);
    return mode_;
}

std::size_t TaskManager::partition_for_locked(SessionId session) {
    if (mode_.mode == IntegrationMode::many_job) {
        return 0;
    }
    if (const auto it = bindings_.find(session); it != bindings_.end()) {
        return it->second;
    }
    for (std::size_t i = 0; i < partitions_.size(); ++i) {
        if (!partitions_[i].owner) {
            partitions_[i].owner = session;
            partitions_[i].owner_closed = false;
            bindings_[session] = i;
            return i;
        }
    }
    throw Error(ErrorCode::resource, "no free pool partition for a new per-job session");
}

void TaskManager::check_admissible(SessionId session, std::size_t procs) {
    std::lock_guard lock(mu_);
    if (!accepting_) {
        throw Error(ErrorCode::invalid_state, "task manager is shutting down");
    }
    const Partition &p = partitions_[partition_for_locked(session)];
    if (procs < 1 || procs > p.pool->capacity()) {
        throw Error(ErrorCode::resource, "task needs " + std::to_string(procs) +
                                             " processes but its pool holds " +
                                             std::to_string(p.pool->capacity()) + " slots");
    }
}

void TaskManager::enqueue(Job job) {
    std::lock_guard lock(mu_);
    if (!accepting_) {
        throw Error(ErrorCode::invalid_state, "task manager is shutting down");
    }
    Partition &p = partitions_[partition_for_locked(job.session)];
    if (job.procs < 1 || job.procs > p.pool->capacity()) {
        throw Error(ErrorCode::resource, "task needs " + std::to_string(job.procs) +
                                             " processes but its pool holds " +
                                             std::to_string(p.pool->capacity()) + " slots");
    }
    p.queue.push_back(std::move(job));
    if (auto_schedule_) {
        step_locked();
    }
}

std::vector<std::string> TaskManager::schedule_loop_step() {
    std::lock_guard lock(mu_);
    return step_locked();
}

std::vector<std::string> TaskManager::step_locked() {
    std::vector<std::string> dispatched;
    for (std::size_t i = 0; i < partitions_.size(); ++i) {
        Partition &p = partitions_[i];
        while (!p.queue.empty()) {
            auto placement = p.pool->try_request(p.queue.front().procs);
            if (!placement) {
                break;
            }
            dispatched.push_back(p.queue.front().id);
            ready_.push_back({std::move(p.queue.front()), std::move(*placement), i});
            p.queue.pop_front();
            ++p.running;
        }
    }
    if (!dispatched.empty()) {
        work_cv_.notify_all();
    }
    return dispatched;
}

void TaskManager::worker_loop(std::stop_token stop) {
    std::unique_lock lock(mu_);
    for (;;) {
        work_cv_.wait(lock, stop, [this] { return !ready_.empty(); });
        if (ready_.empty()) {
            return;
        }
        Dispatch d = std::move(ready_.front());
        ready_.pop_front();
        lock.unlock();
        try {
            d.job.execute(d.placement, cancel_.get_token());
        } catch (...) {
            // Job bodies own their error reporting.
        }
        lock.lock();
        Partition &p = partitions_[d.partition];
        p.pool->release(d.placement.instance_id);
        --p.running;
        maybe_unbind_locked(p);
        if (auto_schedule_) {
            step_locked();
        }
        idle_cv_.notify_all();
    }
}

void TaskManager::maybe_unbind_locked(Partition &p) {
    if (p.owner && p.owner_closed && p.queue.empty() && p.running == 0) {
        bindings_.erase(*p.owner);
        p.owner.reset();
        p.owner_closed = false;
    }
}

void TaskManager::close_session(SessionId session) {
    std::lock_guard lock(mu_);
    const auto it = bindings_.find(session);
    if (it == bindings_.end()) {
        return;
    }
    Partition &p = partitions_[it->second];
    p.owner_closed = true;
    maybe_unbind_locked(p);
}

std::size_t TaskManager::session_capacity(SessionId session) {
    std::lock_guard lock(mu_);
    return partitions_[partition_for_locked(session)].pool->capacity();
}

Utilization TaskManager::session_utilization(SessionId session) {
    std::lock_guard lock(mu_);
    const Partition &p = partitions_[partition_for_locked(session)];
    Utilization u = p.pool->utilization();
    u.queue_length = p.queue.size();
    return u;
}

Utilization TaskManager::utilization() const {
    std::lock_guard lock(mu_);
    Utilization out;
    for (const auto &n : nodes_) {
        out.nodes.push_back({n.node_id, 0, 0});
    }
    for (const auto &p : partitions_) {
        for (const auto &usage : p.pool->utilization().nodes) {
            auto it = std::find_if(out.nodes.begin(), out.nodes.end(),
                                   [&](const NodeUsage &u) { return u.node_id == usage.node_id; });
            it->allocated += usage.allocated;
            it->capacity += usage.capacity;
        }
        out.queue_length += p.queue.size();
    }
    return out;
}

std::size_t TaskManager::queued_locked() const {
    std::size_t n = 0;
    for (const auto &p : partitions_) {
        n += p.queue.size();
    }
    return n;
}

std::size_t TaskManager::running_locked() const {
    std::size_t n = 0;
    for (const auto &p : partitions_) {
        n += p.running;
    }
    return n;
}

std::size_t TaskManager::queued() const {
    std::lock_guard lock(mu_);
    return queued_locked();
}

std::size_t TaskManager::running() const {
    std::lock_guard lock(mu_);
    return running_locked();
}

bool TaskManager::wait_idle(std::chrono::steady_clock::duration timeout) {
    std::unique_lock lock(mu_);
    return idle_cv_.wait_for(lock, timeout,
                             [this] { return queued_locked() == 0 && running_locked() == 0; });
}

void TaskManager::shutdown(std::chrono::steady_clock::duration grace) {
    {
        std::lock_guard lock(mu_);
        accepting_ = false;
    }
    if (wait_idle(grace)) {
        return;
    }
    std::vector<Job> dropped;
    {
        std::lock_guard lock(mu_);
        for (auto &p : partitions_) {
            while (!p.queue.empty()) {
                dropped.push_back(std::move(p.queue.front()));
                p.queue.pop_front();
            }
        }
    }
    cancel_.request_stop();
    const Error cancelled(ErrorCode::backend, "task cancelled by shutdown");
    for (auto &job : dropped) {
        if (job.reject) {
            job.reject(cancelled);
        }
    }
    std::unique_lock lock(mu_);
    idle_cv_.wait(lock, [this] { return running_locked() == 0; });
}

} // namespace qfw
