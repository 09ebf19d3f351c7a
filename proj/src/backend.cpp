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

#include "qfw/backend.hpp"

#include <chrono>
#include <condition_variable>

#include "qfw/error.hpp"
#include "qfw/qasm.hpp"

namespace qfw {

std::string_view to_string(BackendKind kind) {
    switch (kind) {
    case BackendKind::statevector: return "statevector";
    case BackendKind::mock: return "mock";
    }
    return "unknown";
}

StatevectorBackend::StatevectorBackend(std::string name, std::size_t max_qubits)
    : name_(std::move(name)), max_qubits_(max_qubits) {}

ExecutionResult StatevectorBackend::execute(const Circuit &circuit, std::uint64_t shots,
                                            const SimConfig &config, std::stop_token stop) {
    SimConfig cfg = config;
    cfg.max_qubits = max_qubits_;
    ExecutionResult result = sim::run(circuit, shots, cfg, std::move(stop));
    result.stats.backend = name_;
    return result;
}

MockBackend::MockBackend(std::string name, MockOptions options)
    : name_(std::move(name)), options_(options) {}

ExecutionResult MockBackend::execute(const Circuit &circuit, std::uint64_t shots,
                                     const SimConfig &config, std::stop_token stop) {
    const auto start = std::chrono::steady_clock::now();
    if (options_.latency_seconds > 0) {
        std::mutex mu;
        std::condition_variable_any cv;
        std::unique_lock lock(mu);
        const auto deadline =
            start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(options_.latency_seconds));
        cv.wait_until(lock, stop, deadline, [] { return false; });
    }
    if (stop.stop_requested()) {
        throw Error(ErrorCode::backend, "execution cancelled");
    }
    if (options_.fail) {
        throw Error(ErrorCode::backend, "mock backend '" + name_ + "' configured to fail");
    }
    const auto violations = qasm::validate(circuit);
    if (!violations.empty()) {
        throw Error(ErrorCode::validation, "invalid circuit: " + violations.front());
    }
    ExecutionResult result;
    result.shots = shots;
    result.counts[std::string(circuit.num_clbits, '0')] = shots;
    result.stats.backend = name_;
    result.stats.workers = config.workers;
    result.stats.num_qubits = circuit.num_qubits;
    result.stats.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

void BackendRegistry::add(std::shared_ptr<Backend> backend, bool make_default) {
    std::lock_guard lock(mu_);
    for (const auto &b : backends_) {
        if (b->name() == backend->name()) {
            throw Error(ErrorCode::validation,
                        "backend '" + backend->name() + "' is already registered");
        }
    }
    if (make_default || backends_.empty()) {
        default_name_ = backend->name();
    }
    backends_.push_back(std::move(backend));
}

std::shared_ptr<Backend> BackendRegistry::find(const std::string &name) const {
    std::lock_guard lock(mu_);
    for (const auto &b : backends_) {
        if (b->name() == name) {
            return b;
        }
    }
    throw Error(ErrorCode::validation, "unknown backend '" + name + "'");
}

std::shared_ptr<Backend> BackendRegistry::default_backend() const {
    std::lock_guard lock(mu_);
    if (backends_.empty()) {
        throw Error(ErrorCode::validation, "no backends registered");
    }
    for (const auto &b : backends_) {
        if (b->name() == default_name_) {
            return b;
        }
    }
    return backends_.front();
}

std::vector<BackendDescriptor> BackendRegistry::list() const {
    std::lock_guard lock(mu_);
    std::vector<BackendDescriptor> out;
    for (const auto &b : backends_) {
        out.push_back({b->name(), b->kind(), b->max_qubits(), b->name() == default_name_});
    }
    return out;
}

std::unique_ptr<BackendRegistry> make_default_registry(double mock_latency_seconds) {
    auto registry = std::make_unique<BackendRegistry>();
    registry->add(std::make_shared<StatevectorBackend>(), true);
    registry->add(std::make_shared<MockBackend>("mock", MockOptions{mock_latency_seconds, false, 64}));
    return registry;
}

} // namespace qfw
