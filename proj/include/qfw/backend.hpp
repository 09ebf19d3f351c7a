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
#include <memory>
#include <mutex>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include "qfw/circuit.hpp"
#include "qfw/simulator.hpp"

namespace qfw {

enum class BackendKind { statevector, mock };

[[nodiscard]] std::string_view to_string(BackendKind kind);

struct BackendDescriptor {
    std::string name;
    BackendKind kind = BackendKind::statevector;
    std::size_t max_qubits = 0;
    bool is_default = false;
};

/// A quantum platform the platform manager can execute circuits on.
class Backend {
  public:
    virtual ~Backend() = default;

    [[nodiscard]] virtual const std::string &name() const = 0;
    [[nodiscard]] virtual BackendKind kind() const = 0;
    [[nodiscard]] virtual std::size_t max_qubits() const = 0;

    /// `config.workers` is the number of processes granted to this run.
    /// Failures are reported as qfw::Error.
    virtual ExecutionResult execute(const Circuit &circuit, std::uint64_t shots,
                                    const SimConfig &config, std::stop_token stop) = 0;
};

class StatevectorBackend final : public Backend {
  public:
    explicit StatevectorBackend(std::string name = "statevector", std::size_t max_qubits = 24);

    const std::string &name() const override { return name_; }
    BackendKind kind() const override { return BackendKind::statevector; }
    std::size_t max_qubits() const override { return max_qubits_; }
    ExecutionResult execute(const Circuit &circuit, std::uint64_t shots, const SimConfig &config,
                            std::stop_token stop) override;

  private:
    std::string name_;
    std::size_t max_qubits_;
};

struct MockOptions {
    double latency_seconds = 0.0;
    bool fail = false;
    std::size_t max_qubits = 64;
};

/// Sleeps for the configured latency (interruptible by stop) and reports
/// every shot as the all-zero bitstring, or fails when `fail` is set.
class MockBackend final : public Backend {
  public:
    explicit MockBackend(std::string name = "mock", MockOptions options = {});

    const std::string &name() const override { return name_; }
    BackendKind kind() const override { return BackendKind::mock; }
    std::size_t max_qubits() const override { return options_.max_qubits; }
    ExecutionResult execute(const Circuit &circuit, std::uint64_t shots, const SimConfig &config,
                            std::stop_token stop) override;

  private:
    std::string name_;
    MockOptions options_;
};

class BackendRegistry {
  public:
    /// Throws Error(validation) on a duplicate name. The first backend added
    /// becomes the default unless another is added with `make_default`.
    void add(std::shared_ptr<Backend> backend, bool make_default = false);

    /// Throws Error(validation) for unknown names.
    [[nodiscard]] std::shared_ptr<Backend> find(const std::string &name) const;
    [[nodiscard]] std::shared_ptr<Backend> default_backend() const;
    [[nodiscard]] std::vector<BackendDescriptor> list() const;

  private:
    mutable std::mutex mu_;
    std::vector<std::shared_ptr<Backend>> backends_;
    std::string default_name_;
};

/// "statevector" (default) plus "mock" with the given latency.
[[nodiscard]] std::unique_ptr<BackendRegistry> make_default_registry(double mock_latency_seconds = 0.0);

} // namespace qfw
