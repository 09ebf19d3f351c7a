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

#include "qfw/qpm.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "qfw/qasm.hpp"

namespace qfw {

std::string_view to_string(CircuitState state) {
    switch (state) {
    case CircuitState::created: return "created";
    case CircuitState::queued: return "queued";
    case CircuitState::running: return "running";
    case CircuitState::done: return "done";
    case CircuitState::failed: return "failed";
    }
    return "unknown";
}

std::size_t procs_for_circuit(std::size_t num_qubits) { return (num_qubits + 9) / 10; }

SizingFunction default_sizing() {
    return [](const Circuit &c) { return std::max<std::size_t>(1, procs_for_circuit(c.num_qubits)); };
}

namespace {

bool terminal(CircuitState s) { return s == CircuitState::done || s == CircuitState::failed; }

} // namespace

struct PlatformManager::EnsembleRun {
    struct Member {
        Counts counts;
        std::uint64_t shots = 0;
        std::size_t remaining = 0;
        ExecutionStats stats;
    };

    std::mutex mu;
    std::condition_variable cv;
    std::size_t remaining = 0;
    bool failed = false;
    std::string error;
    Counts merged;
    std::uint64_t shots = 0;
    std::map<Cid, Member> members;
};

PlatformManager::PlatformManager(BackendRegistry &registry, TaskManager &tasks,
                                 SizingFunction sizing)
    : registry_(registry), tasks_(tasks), sizing_(std::move(sizing)) {}

PlatformManager::~PlatformManager() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [this] { return outstanding_jobs_ == 0; });
}

PlatformManager::Record &PlatformManager::record_locked(const Cid &cid) {
    const auto it = records_.find(cid);
    if (it == records_.end()) {
        throw Error(ErrorCode::validation, "unknown circuit id '" + cid + "'");
    }
    return it->second;
}

const PlatformManager::Record &PlatformManager::record_locked(const Cid &cid) const {
    const auto it = records_.find(cid);
    if (it == records_.end()) {
        throw Error(ErrorCode::validation, "unknown circuit id '" + cid + "'");
    }
    return it->second;
}

Cid PlatformManager::create_circuit(const TaskInfo &info, SessionId session) {
    if (info.num_shots < 1) {
        throw Error(ErrorCode::validation, "num_shots must be >= 1");
    }
    Circuit circuit = qasm::parse(info.qasm);
    if (circuit.num_qubits != info.num_qubits) {
        throw Error(ErrorCode::validation,
                    "num_qubits is " + std::to_string(info.num_qubits) + " but the program declares " +
                        std::to_string(circuit.num_qubits) + " qubits");
    }
    auto backend = info.backend ? registry_.find(*info.backend) : registry_.default_backend();
    if (circuit.num_qubits > backend->max_qubits()) {
        throw Error(ErrorCode::resource, "circuit needs " + std::to_string(circuit.num_qubits) +
                                             " qubits; backend '" + backend->name() +
                                             "' supports " + std::to_string(backend->max_qubits()));
    }
    std::lock_guard lock(mu_);
    Cid cid = "c" + std::to_string(next_cid_++);
    Record record;
    record.info = info;
    record.circuit = std::move(circuit);
    record.backend = std::move(backend);
    record.session = session;
    records_.emplace(cid, std::move(record));
    return cid;
}

ExecutionResult PlatformManager::execute(const Record &snapshot, std::optional<std::uint64_t> seed,
                                         const Placement &placement, std::stop_token stop) {
    SimConfig config;
    config.max_qubits = snapshot.backend->max_qubits();
    config.workers = placement.total_slots();
    config.seed = seed;
    const auto start = std::chrono::steady_clock::now();
    ExecutionResult result =
        snapshot.backend->execute(snapshot.circuit, snapshot.info.num_shots, config, std::move(stop));
    result.stats.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.stats.workers = config.workers;
    result.stats.placement = placement.summary();
    return result;
}

void PlatformManager::finish(const Cid &cid, std::optional<ExecutionResult> result,
                             const std::string &error, RunStatus failure) {
    std::lock_guard lock(mu_);
    Record &r = record_locked(cid);
    if (terminal(r.state)) {
        return;
    }
    if (result) {
        r.state = CircuitState::done;
        r.result = std::move(result);
    } else {
        r.state = CircuitState::failed;
        r.error = error;
        r.failure = failure;
    }
    cv_.notify_all();
}

void PlatformManager::job_done() {
    std::lock_guard lock(mu_);
    --outstanding_jobs_;
    cv_.notify_all();
}

// Claims a created handle and hands it to the task manager. Returns false when
// it can never be placed; the handle is then failed.
bool PlatformManager::start(const Cid &cid) {
    std::size_t procs = 0;
    SessionId session{};
    {
        std::lock_guard lock(mu_);
        Record &r = record_locked(cid);
        if (r.state != CircuitState::created) {
            throw Error(ErrorCode::invalid_state, "circuit '" + cid + "' is " +
                                                      std::string(to_string(r.state)) +
                                                      ", expected created");
        }
        procs = sizing_(r.circuit);
        session = r.session;
        r.state = CircuitState::queued;
        ++outstanding_jobs_;
    }

    Job job;
    job.id = cid;
    job.procs = procs;
    job.session = session;
    job.execute = [this, cid](const Placement &placement, std::stop_token stop) {
        Record snapshot;
        {
            std::lock_guard lock(mu_);
            Record &r = record_locked(cid);
            r.state = CircuitState::running;
            snapshot = r;
        }
        try {
            finish(cid, execute(snapshot, snapshot.info.seed, placement, std::move(stop)), {},
                   RunStatus::ok);
        } catch (const std::exception &e) {
            finish(cid, std::nullopt, e.what(), RunStatus::backend_failure);
        }
        job_done();
    };
    job.reject = [this, cid](const Error &e) {
        finish(cid, std::nullopt, e.what(), RunStatus::backend_failure);
        job_done();
    };

    try {
        tasks_.check_admissible(session, procs);
        tasks_.enqueue(std::move(job));
    } catch (const Error &e) {
        {
            std::lock_guard lock(mu_);
            Record &r = record_locked(cid);
            r.state = CircuitState::failed;
            r.error = e.what();
            r.failure = RunStatus::invalid_request;
            --outstanding_jobs_;
        }
        cv_.notify_all();
        return false;
    }
    return true;
}

RunOutcome PlatformManager::sync_run(const Cid &cid) {
    start(cid);
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return terminal(record_locked(cid).state); });
    const Record &r = record_locked(cid);
    RunOutcome out;
    if (r.state == CircuitState::done) {
        out.result = *r.result;
        out.stats = r.result->stats;
    } else {
        out.rc = r.failure;
        out.error = r.error.value_or("unknown failure");
        out.stats.backend = r.backend->name();
        out.stats.num_qubits = r.circuit.num_qubits;
    }
    return out;
}

void PlatformManager::async_run(const Cid &cid) {
    if (!start(cid)) {
        std::lock_guard lock(mu_);
        throw Error(ErrorCode::resource, record_locked(cid).error.value_or("dispatch failed"));
    }
}

CircuitHandle PlatformManager::get_result(const Cid &cid) const {
    std::lock_guard lock(mu_);
    const Record &r = record_locked(cid);
    return {cid, r.state, r.result, r.error};
}

bool PlatformManager::wait(const Cid &cid, std::chrono::steady_clock::duration timeout) const {
    std::unique_lock lock(mu_);
    record_locked(cid);
    return cv_.wait_for(lock, timeout, [&] { return terminal(record_locked(cid).state); });
}

std::map<CircuitState, std::size_t> PlatformManager::state_counts() const {
    std::lock_guard lock(mu_);
    std::map<CircuitState, std::size_t> out;
    for (const auto &[cid, r] : records_) {
        ++out[r.state];
    }
    return out;
}

std::size_t PlatformManager::procs_for(const Cid &cid) const {
    std::lock_guard lock(mu_);
    return sizing_(record_locked(cid).circuit);
}

ExecutionResult PlatformManager::run_ensemble(const EnsembleSpec &spec) {
    if (spec.cids.empty()) {
        throw Error(ErrorCode::validation, "ensemble needs at least one circuit");
    }
    if (spec.repetitions < 1) {
        throw Error(ErrorCode::validation, "ensemble repetitions must be >= 1");
    }
    const std::set<Cid> unique(spec.cids.begin(), spec.cids.end());
    if (unique.size() != spec.cids.size()) {
        throw Error(ErrorCode::validation, "ensemble lists a circuit more than once");
    }

    const auto started = std::chrono::steady_clock::now();
    auto run = std::make_shared<EnsembleRun>();
    std::vector<std::pair<Cid, std::size_t>> sizes;
    ExecutionStats stats;
    {
        std::lock_guard lock(mu_);
        std::optional<std::size_t> width;
        for (const auto &cid : spec.cids) {
            const Record &r = record_locked(cid);
            if (r.state != CircuitState::created) {
                throw Error(ErrorCode::invalid_state, "circuit '" + cid + "' is " +
                                                          std::string(to_string(r.state)) +
                                                          ", expected created");
            }
            if (width && *width != r.circuit.num_clbits) {
                throw Error(ErrorCode::validation,
                            "ensemble clbit width mismatch: '" + cid + "' has " +
                                std::to_string(r.circuit.num_clbits) + " clbits, expected " +
                                std::to_string(*width));
            }
            width = r.circuit.num_clbits;
            sizes.emplace_back(cid, sizing_(r.circuit));
            stats.backend = stats.backend.empty() ? r.backend->name() : stats.backend;
            stats.num_qubits = std::max(stats.num_qubits, r.circuit.num_qubits);
        }
    }
    for (const auto &[cid, procs] : sizes) {
        std::lock_guard lock(mu_);
        tasks_.check_admissible(record_locked(cid).session, procs);
        stats.workers = std::max(stats.workers, procs);
    }
    {
        std::lock_guard lock(mu_);
        for (const auto &cid : spec.cids) {
            if (record_locked(cid).state != CircuitState::created) {
                throw Error(ErrorCode::invalid_state, "circuit '" + cid + "' was started concurrently");
            }
        }
        for (const auto &cid : spec.cids) {
            record_locked(cid).state = CircuitState::queued;
            run->members[cid].remaining = spec.repetitions;
        }
        run->remaining = spec.cids.size() * spec.repetitions;
    }

    auto fail = [run](const std::string &message) {
        std::lock_guard lock(run->mu);
        if (!run->failed) {
            run->failed = true;
            run->error = message;
        }
        run->cv.notify_all();
    };

    for (const auto &[cid, procs] : sizes) {
        for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
            Job job;
            job.id = cid + "/" + std::to_string(rep);
            job.procs = procs;
            {
                std::lock_guard lock(mu_);
                job.session = record_locked(cid).session;
                ++outstanding_jobs_;
            }
            job.execute = [this, run, fail, cid = cid, rep](const Placement &placement,
                                                            std::stop_token stop) {
                Record snapshot;
                {
                    std::lock_guard lock(mu_);
                    Record &r = record_locked(cid);
                    if (r.state == CircuitState::queued) {
                        r.state = CircuitState::running;
                    }
                    snapshot = r;
                }
                const auto seed = snapshot.info.seed
                                      ? std::optional<std::uint64_t>(*snapshot.info.seed + rep)
                                      : std::nullopt;
                try {
                    ExecutionResult result = execute(snapshot, seed, placement, std::move(stop));
                    std::optional<ExecutionResult> member_done;
                    {
                        std::lock_guard lock(run->mu);
                        auto &m = run->members[cid];
                        merge_counts(m.counts, result.counts);
                        m.shots += result.shots;
                        m.stats = result.stats;
                        if (!run->failed) {
                            merge_counts(run->merged, result.counts);
                            run->shots += result.shots;
                        }
                        if (--m.remaining == 0) {
                            member_done = ExecutionResult{m.counts, m.shots, m.stats};
                        }
                        --run->remaining;
                        run->cv.notify_all();
                    }
                    if (member_done) {
                        finish(cid, std::move(member_done), {}, RunStatus::ok);
                    }
                } catch (const std::exception &e) {
                    finish(cid, std::nullopt, e.what(), RunStatus::backend_failure);
                    fail("ensemble member '" + cid + "' failed: " + e.what());
                }
                job_done();
            };
            job.reject = [this, fail, cid = cid](const Error &e) {
                finish(cid, std::nullopt, e.what(), RunStatus::backend_failure);
                fail("ensemble member '" + cid + "' failed: " + e.what());
                job_done();
            };
            try {
                tasks_.enqueue(std::move(job));
            } catch (const Error &e) {
                job_done();
                finish(cid, std::nullopt, e.what(), RunStatus::invalid_request);
                fail("ensemble member '" + cid + "' could not be queued: " + e.what());
            }
        }
    }

    std::unique_lock lock(run->mu);
    run->cv.wait(lock, [&] { return run->failed || run->remaining == 0; });
    stats.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    ExecutionResult merged{run->merged, run->shots, stats};
    if (run->failed) {
        throw EnsembleError(run->error, std::move(merged));
    }
    return merged;
}

} // namespace qfw
