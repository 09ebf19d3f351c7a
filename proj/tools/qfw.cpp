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

// qfw: server and client entry points.
//
// Exit codes: 0 success, 1 usage error, 2 server/protocol error, 3 task failed.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <pthread.h>

#include "qfw/bench.hpp"
#include "qfw/qasm.hpp"
#include "qfw/service.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitServer = 2;
constexpr int kExitTaskFailed = 3;
constexpr const char *kDefaultAddress = "127.0.0.1:7878";

/// A task ran but did not succeed.
struct TaskFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ServeArgs {
    std::string host = "127.0.0.1";
    std::uint16_t port = 7878;
    std::size_t nodes = 2;
    std::size_t slots_per_node = 8;
    std::string mode = "many-job";
    double partition = 0.5;
    std::vector<std::string> backends;
    double mock_latency = 0.0;
    double grace = 30.0;
};

struct ClientArgs {
    std::string address;
    bool json_output = false;
};

struct SubmitArgs {
    std::string file;
    std::uint64_t shots = 1024;
    std::optional<std::string> backend;
    std::optional<std::uint64_t> seed;
    bool async = false;
};

struct BenchArgs {
    std::size_t qubits = 20;
    std::size_t count = 8;
    bool concurrent = false;
    std::uint64_t shots = 1;
    std::optional<std::string> backend;
    std::optional<std::uint64_t> seed;
    std::string output;
};

std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw qfw::Error(qfw::ErrorCode::validation, "cannot read '" + path + "'");
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::unique_ptr<qfw::WireClient> connect(const ClientArgs &args) {
    const auto [host, port] =
        args.address.empty() ? qfw::resolve_address(kDefaultAddress) : qfw::parse_address(args.address);
    return std::make_unique<qfw::WireClient>(host, port);
}

void print(const json &value) { std::cout << value.dump(2) << '\n'; }

int run_serve(const ServeArgs &args) {
    qfw::ServiceConfig config;
    config.host = args.host;
    config.port = args.port;
    config.nodes = args.nodes;
    config.slots_per_node = args.slots_per_node;
    config.mode = args.mode == "per-job" ? qfw::SchedulerMode::per_job(args.partition)
                                         : qfw::SchedulerMode::many_job();
    config.backends = args.backends;
    config.mock_latency_seconds = args.mock_latency;
    config.shutdown_grace = std::chrono::milliseconds(static_cast<long long>(args.grace * 1000));

    // Block the shutdown signals before any server thread exists so that only
    // the sigwait below receives them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    auto server = qfw::serve(config);
    std::cout << "listening on " << args.host << ':' << server->port() << std::endl;
    int received = 0;
    sigwait(&signals, &received);
    std::cerr << "shutting down (grace " << args.grace << " s)" << std::endl;
    server->stop();
    return kExitOk;
}

int run_submit(const ClientArgs &client_args, const SubmitArgs &args) {
    const std::string source = read_text(args.file);
    const qfw::Circuit circuit = qfw::qasm::parse(source);
    json params = {{"qasm", source},
                   {"num_qubits", circuit.num_qubits},
                   {"num_shots", args.shots},
                   {"compiler", "staq"}};
    if (args.backend) {
        params["backend"] = *args.backend;
    }
    if (args.seed) {
        params["seed"] = *args.seed;
    }
    auto client = connect(client_args);
    const std::string cid = client->call("create_circuit", params).at("cid");
    if (args.async) {
        print(client->call("async_run", {{"cid", cid}}));
        return kExitOk;
    }
    json out = client->call("sync_run", {{"cid", cid}});
    out["cid"] = cid;
    print(out);
    if (out.at("rc") != 0) {
        throw TaskFailed(out.value("error", std::string("task failed")));
    }
    return kExitOk;
}

int run_status(const ClientArgs &client_args, const std::string &cid) {
    auto client = connect(client_args);
    const json handle = client->call("get_result", {{"cid", cid}});
    print(handle);
    if (handle.at("state") == "failed") {
        throw TaskFailed(handle.value("error", std::string("task failed")));
    }
    return kExitOk;
}

int run_backends(const ClientArgs &client_args) {
    auto client = connect(client_args);
    const json list = client->call("list_backends");
    if (client_args.json_output) {
        print(list);
        return kExitOk;
    }
    std::printf("%-16s %-12s %10s  %s\n", "name", "kind", "max_qubits", "default");
    for (const auto &b : list.at("backends")) {
        std::printf("%-16s %-12s %10llu  %s\n", b.at("name").get<std::string>().c_str(),
                    b.at("kind").get<std::string>().c_str(),
                    static_cast<unsigned long long>(b.at("max_qubits").get<std::uint64_t>()),
                    b.at("default").get<bool>() ? "yes" : "");
    }
    return kExitOk;
}

int run_util(const ClientArgs &client_args) {
    auto client = connect(client_args);
    const json util = client->call("utilization");
    if (client_args.json_output) {
        print(util);
        return kExitOk;
    }
    std::printf("%-12s %9s %8s\n", "node", "allocated", "capacity");
    for (const auto &n : util.at("nodes")) {
        std::printf("%-12s %9llu %8llu\n", n.at("node_id").get<std::string>().c_str(),
                    static_cast<unsigned long long>(n.at("allocated").get<std::uint64_t>()),
                    static_cast<unsigned long long>(n.at("capacity").get<std::uint64_t>()));
    }
    std::printf("free %llu, queued %llu\n",
                static_cast<unsigned long long>(util.at("free").get<std::uint64_t>()),
                static_cast<unsigned long long>(util.at("queue_length").get<std::uint64_t>()));
    return kExitOk;
}

int run_bench(const ClientArgs &client_args, const BenchArgs &args) {
    qfw::bench::CampaignOptions options;
    options.count = args.count;
    options.mode = args.concurrent ? qfw::bench::CampaignMode::concurrent
                                   : qfw::bench::CampaignMode::sequential;
    options.backend = args.backend;
    options.shots = args.shots;
    options.seed = args.seed;
    options.workload = "ghz_" + std::to_string(args.qubits);
    const qfw::Circuit circuit = qfw::bench::ghz(args.qubits);
    auto client = connect(client_args);

    auto emit = [&](const qfw::bench::BenchReport &report) {
        const json j = qfw::bench::to_json(report);
        if (client_args.json_output) {
            print(j);
        } else {
            std::cout << qfw::bench::format_table(report);
        }
        if (!args.output.empty()) {
            std::ofstream(args.output) << j.dump(2) << '\n';
        }
    };
    try {
        emit(qfw::bench::run_campaign(*client, circuit, options));
    } catch (const qfw::bench::CampaignError &e) {
        emit(e.partial());
        throw TaskFailed(e.what());
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qfw: quantum task framework server and client"};
    app.require_subcommand(1);

    ClientArgs client_args;
    auto add_client_options = [&client_args](CLI::App *sub) {
        sub->add_option("--addr", client_args.address, "Server host:port (default $QFW_ADDR or " +
                                                           std::string(kDefaultAddress) + ")");
        sub->add_flag("--json", client_args.json_output, "Print raw JSON");
    };

    ServeArgs serve_args;
    auto *serve = app.add_subcommand("serve", "Run the framework server");
    serve->add_option("--host", serve_args.host, "Listen address")->capture_default_str();
    serve->add_option("--port", serve_args.port, "Listen port (0 picks one)")->capture_default_str();
    serve->add_option("--nodes", serve_args.nodes, "Number of nodes")->capture_default_str();
    serve->add_option("--slots-per-node", serve_args.slots_per_node, "Process slots per node")
        ->capture_default_str();
    serve->add_option("--mode", serve_args.mode, "Integration mode")
        ->check(CLI::IsMember({"many-job", "per-job"}))
        ->capture_default_str();
    serve->add_option("--partition", serve_args.partition, "Per-job pool fraction per session")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    serve->add_option("--backend", serve_args.backends, "Backends to enable; the first is the default")
        ->check(CLI::IsMember({"statevector", "mock"}));
    serve->add_option("--mock-latency", serve_args.mock_latency, "Mock backend latency in seconds")
        ->check(CLI::NonNegativeNumber);
    serve->add_option("--grace", serve_args.grace, "Shutdown drain period in seconds")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    SubmitArgs submit_args;
    auto *submit = app.add_subcommand("submit", "Submit a QASM file");
    submit->add_option("file", submit_args.file, "OpenQASM 2.0 program")->required();
    submit->add_option("--shots", submit_args.shots, "Number of shots")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    submit->add_option("--backend", submit_args.backend, "Backend name");
    submit->add_option("--seed", submit_args.seed, "Sampling seed");
    submit->add_flag("--async", submit_args.async, "Return after queueing");
    add_client_options(submit);

    std::string status_cid;
    auto *status = app.add_subcommand("status", "Show a circuit's state and result");
    status->add_option("cid", status_cid, "Circuit id")->required();
    add_client_options(status);

    auto *backends = app.add_subcommand("backends", "List backends");
    add_client_options(backends);
    auto *util = app.add_subcommand("util", "Show pool utilization");
    add_client_options(util);

    BenchArgs bench_args;
    auto *bench = app.add_subcommand("bench", "Run a benchmark campaign");
    bench->require_subcommand(1);
    auto *ghz = bench->add_subcommand("ghz", "GHZ time-to-solution campaign");
    ghz->add_option("--qubits", bench_args.qubits, "Circuit width")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    ghz->add_option("--count", bench_args.count, "Number of tasks")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    ghz->add_flag("--concurrent", bench_args.concurrent, "Submit all tasks asynchronously");
    ghz->add_option("--shots", bench_args.shots, "Shots per task")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    ghz->add_option("--backend", bench_args.backend, "Backend name");
    ghz->add_option("--seed", bench_args.seed, "Sampling seed");
    ghz->add_option("--output", bench_args.output, "Also write the JSON report to this file");
    add_client_options(ghz);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*serve) return run_serve(serve_args);
        if (*submit) return run_submit(client_args, submit_args);
        if (*status) return run_status(client_args, status_cid);
        if (*backends) return run_backends(client_args);
        if (*util) return run_util(client_args);
        if (*ghz) return run_bench(client_args, bench_args);
    } catch (const TaskFailed &e) {
        std::cerr << "task failed: " << e.what() << '\n';
        return kExitTaskFailed;
    } catch (const qfw::RemoteError &e) {
        std::cerr << "server error " << e.wire_code() << ": " << e.what() << '\n';
        return kExitServer;
    } catch (const qfw::ConnectionError &e) {
        std::cerr << "connection error: " << e.what() << '\n';
        return kExitServer;
    } catch (const qfw::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == qfw::ErrorCode::resource ? kExitServer : kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitServer;
    }
    return kExitUsage;
}
