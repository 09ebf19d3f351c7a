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

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "qfw/backend.hpp"
#include "qfw/error.hpp"
#include "qfw/qpm.hpp"
#include "qfw/qtm.hpp"
#include "qfw/resource_manager.hpp"

namespace qfw {

/// Wire methods, exactly as spelled on the wire.
inline constexpr std::string_view kWireMethods[] = {
    "create_circuit", "sync_run",    "async_run",   "get_result",
    "run_ensemble",   "list_backends", "utilization", "server_stats",
};

/// A frame that cannot be interpreted as a request. The connection that sent
/// it is closed after the error response.
class ProtocolError : public Error {
  public:
    explicit ProtocolError(const std::string &message)
        : Error(ErrorCode::validation, "malformed frame: " + message) {}
};

struct WireRequest {
    nlohmann::json id;
    std::string method;
    nlohmann::json params = nlohmann::json::object();
};

struct WireError {
    int code = 0;
    std::string message;
    nlohmann::json data;
};

struct WireResponse {
    nlohmann::json id;
    bool ok = false;
    nlohmann::json result;
    std::optional<WireError> error;

    [[nodiscard]] nlohmann::json to_json() const;
    static WireResponse success(nlohmann::json id, nlohmann::json result);
    static WireResponse failure(nlohmann::json id, ErrorCode code, std::string message,
                                nlohmann::json data = nullptr);
};

/// Decodes one newline-free frame. Throws ProtocolError.
[[nodiscard]] WireRequest parse_frame(std::string_view line);
/// One compact JSON object followed by '\n'.
[[nodiscard]] std::string encode_frame(const nlohmann::json &message);

nlohmann::json to_json(const ExecutionResult &result);
nlohmann::json to_json(const ExecutionStats &stats);
nlohmann::json to_json(const Utilization &utilization);
nlohmann::json to_json(const BackendDescriptor &backend);

struct ServiceConfig {
    std::string host = "127.0.0.1";
    /// 0 picks an ephemeral port.
    std::uint16_t port = 0;
    std::size_t nodes = 2;
    std::size_t slots_per_node = 8;
    SchedulerMode mode;
    /// Backend kinds to register ("statevector", "mock"); the first is the
    /// default. Empty means both with statevector as default.
    std::vector<std::string> backends;
    double mock_latency_seconds = 0.0;
    std::chrono::milliseconds shutdown_grace{30000};
};

/// The registry, task manager and platform manager wired together.
class Framework {
  public:
    explicit Framework(const ServiceConfig &config);
    ~Framework();

    Framework(const Framework &) = delete;
    Framework &operator=(const Framework &) = delete;

    BackendRegistry &registry() { return *registry_; }
    TaskManager &tasks() { return *tasks_; }
    PlatformManager &platform() { return *platform_; }
    const ServiceConfig &config() const { return config_; }

    void shutdown();

  private:
    ServiceConfig config_;
    std::unique_ptr<BackendRegistry> registry_;
    std::unique_ptr<TaskManager> tasks_;
    std::unique_ptr<PlatformManager> platform_;
};

struct ServerCounters {
    std::atomic<std::uint64_t> connections_total{0};
    std::atomic<std::uint64_t> connections_open{0};
    std::atomic<std::uint64_t> requests_total{0};
};

/// Routes wire requests to the framework. Method failures become error
/// responses; nothing here throws.
class Dispatcher {
  public:
    Dispatcher(Framework &framework, const ServerCounters *counters = nullptr);

    [[nodiscard]] WireResponse dispatch(const WireRequest &request,
                                        SessionId session = kDefaultSession);

  private:
    nlohmann::json route(const std::string &method, const nlohmann::json &params,
                         SessionId session);

    Framework &framework_;
    const ServerCounters *counters_;
    std::chrono::steady_clock::time_point started_;
};

/// TCP front door speaking newline-delimited JSON. One session per
/// connection; requests on a connection are handled concurrently and
/// responses may come back in any order.
class Server {
  public:
    /// Binds and starts listening. Throws Error(validation) for a bad
    /// topology and Error(resource) when the address cannot be bound.
    explicit Server(ServiceConfig config);
    ~Server();

    Server(const Server &) = delete;
    Server &operator=(const Server &) = delete;

    [[nodiscard]] std::uint16_t port() const noexcept { return port_; }
    Framework &framework() { return *framework_; }

    /// Drains tasks for up to the configured grace period, then closes all
    /// connections. Idempotent.
    void stop();
    /// Blocks until stop() has completed.
    void wait();

  private:
    struct Connection;

    void accept_loop(std::stop_token stop);
    void serve_connection(Connection *conn, const std::weak_ptr<Connection> &weak);
    void reap_connections();

    ServiceConfig config_;
    std::unique_ptr<Framework> framework_;
    ServerCounters counters_;
    std::unique_ptr<Dispatcher> dispatcher_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::atomic<std::uint64_t> next_session_{1};

    std::mutex mu_;
    std::condition_variable stopped_cv_;
    bool stopped_ = false;
    bool stopping_ = false;
    std::vector<std::shared_ptr<Connection>> connections_;
    std::jthread acceptor_;
};

/// Starts a server; equivalent to constructing one.
[[nodiscard]] std::unique_ptr<Server> serve(ServiceConfig config);

/// Error response received from the server.
class RemoteError : public Error {
  public:
    RemoteError(int code, const std::string &message, nlohmann::json data = nullptr)
        : Error(static_cast<ErrorCode>(code), message), wire_code_(code), data_(std::move(data)) {}

    [[nodiscard]] int wire_code() const noexcept { return wire_code_; }
    [[nodiscard]] const nlohmann::json &data() const noexcept { return data_; }

  private:
    int wire_code_;
    nlohmann::json data_;
};

/// Transport failure on the client side (connect, read, write, bad frame).
class ConnectionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Blocking client: one request in flight at a time.
class WireClient {
  public:
    WireClient(const std::string &host, std::uint16_t port);
    ~WireClient();

    WireClient(const WireClient &) = delete;
    WireClient &operator=(const WireClient &) = delete;

    /// Sends a request and returns its `result`. Throws RemoteError for
    /// error responses and ConnectionError for transport failures.
    nlohmann::json call(const std::string &method, nlohmann::json params = nlohmann::json::object());

    void send_line(std::string_view line);
    /// Reads one frame; nullopt on orderly EOF.
    std::optional<std::string> read_line();

    void close();

  private:
    int fd_ = -1;
    std::string buffer_;
    std::uint64_t next_id_ = 1;
};

/// "host:port" from QFW_ADDR, else `fallback`.
[[nodiscard]] std::pair<std::string, std::uint16_t> resolve_address(std::string_view fallback);
[[nodiscard]] std::pair<std::string, std::uint16_t> parse_address(std::string_view address);

} // namespace qfw
