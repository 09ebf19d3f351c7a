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

#include "qfw/service.hpp"

namespace qfw {

using nlohmann::json;

Framework::Framework(const ServiceConfig &config) : config_(config) {
    if (config_.nodes < 1) {
        throw Error(ErrorCode::validation, "server needs at least one node");
    }
    if (config_.slots_per_node < 1) {
        throw Error(ErrorCode::validation, "slots per node must be >= 1");
    }
    registry_ = std::make_unique<BackendRegistry>();
    std::vector<std::string> kinds = config_.backends;
    if (kinds.empty()) {
        kinds = {"statevector", "mock"};
    }
    for (const auto &kind : kinds) {
        if (kind == "statevector") {
            registry_->add(std::make_shared<StatevectorBackend>());
        } else if (kind == "mock") {
            registry_->add(std::make_shared<MockBackend>(
                "mock", MockOptions{config_.mock_latency_seconds, false, 64}));
        } else {
            throw Error(ErrorCode::validation,
                        "unknown backend '" + kind + "' (expected statevector or mock)");
        }
    }
    tasks_ = std::make_unique<TaskManager>(uniform_pool(config_.nodes, config_.slots_per_node),
                                           config_.mode);
    platform_ = std::make_unique<PlatformManager>(*registry_, *tasks_);
}

Framework::~Framework() { shutdown(); }

void Framework::shutdown() { tasks_->shutdown(config_.shutdown_grace); }

Dispatcher::Dispatcher(Framework &framework, const ServerCounters *counters)
    : framework_(framework), counters_(counters), started_(std::chrono::steady_clock::now()) {}

namespace {

const json &require(const json &params, const char *key) {
    const auto it = params.find(key);
    if (it == params.end() || it->is_null()) {
        throw Error(ErrorCode::validation, std::string("missing parameter '") + key + "'");
    }
    return *it;
}

std::string require_string(const json &params, const char *key) {
    const json &v = require(params, key);
    if (!v.is_string()) {
        throw Error(ErrorCode::validation, std::string("parameter '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

std::uint64_t require_count(const json &params, const char *key) {
    const json &v = require(params, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw Error(ErrorCode::validation,
                    std::string("parameter '") + key + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

TaskInfo task_info(const json &params) {
    TaskInfo info;
    info.qasm = require_string(params, "qasm");
    info.num_qubits = require_count(params, "num_qubits");
    info.num_shots = require_count(params, "num_shots");
    if (params.contains("compiler") && !params["compiler"].is_null()) {
        info.compiler = require_string(params, "compiler");
    }
    if (params.contains("backend") && !params["backend"].is_null()) {
        info.backend = require_string(params, "backend");
    }
    if (params.contains("seed") && !params["seed"].is_null()) {
        info.seed = require_count(params, "seed");
    }
    return info;
}

json handle_json(const CircuitHandle &h) {
    json out = {{"cid", h.cid}, {"state", to_string(h.state)}};
    if (h.result) {
        out["result"] = to_json(*h.result);
        out["stats"] = to_json(h.result->stats);
    }
    if (h.error) {
        out["error"] = *h.error;
    }
    return out;
}

} // namespace

WireResponse Dispatcher::dispatch(const WireRequest &request, SessionId session) {
    try {
        return WireResponse::success(request.id, route(request.method, request.params, session));
    } catch (const EnsembleError &e) {
        return WireResponse::failure(request.id, e.code(), e.what(), to_json(e.partial()));
    } catch (const Error &e) {
        return WireResponse::failure(request.id, e.code(), e.what());
    } catch (const json::exception &e) {
        return WireResponse::failure(request.id, ErrorCode::validation,
                                     std::string("bad parameter: ") + e.what());
    } catch (const std::exception &e) {
        return WireResponse::failure(request.id, ErrorCode::backend, e.what());
    }
}

json Dispatcher::route(const std::string &method, const json &params, SessionId session) {
    PlatformManager &qpm = framework_.platform();
    if (method == "create_circuit") {
        // Throwing calls stay outside braced json lists; g++ 11 leaks the
        // already-built elements when an initializer list is unwound.
        const std::string cid = qpm.create_circuit(task_info(params), session);
        return {{"cid", cid}};
    }
    if (method == "sync_run") {
        const RunOutcome out = qpm.sync_run(require_string(params, "cid"));
        json r = {{"rc", static_cast<int>(out.rc)},
                  {"result", to_json(out.result)},
                  {"stats", to_json(out.stats)}};
        if (out.rc != RunStatus::ok) {
            r["error"] = out.error;
        }
        return r;
    }
    if (method == "async_run") {
        const std::string cid = require_string(params, "cid");
        qpm.async_run(cid);
        const auto state = to_string(qpm.get_result(cid).state);
        return {{"cid", cid}, {"state", state}};
    }
    if (method == "get_result") {
        return handle_json(qpm.get_result(require_string(params, "cid")));
    }
    if (method == "run_ensemble") {
        const json &cids = require(params, "cids");
        if (!cids.is_array()) {
            throw Error(ErrorCode::validation, "parameter 'cids' must be an array");
        }
        EnsembleSpec spec;
        for (const auto &c : cids) {
            if (!c.is_string()) {
                throw Error(ErrorCode::validation, "parameter 'cids' must hold strings");
            }
            spec.cids.push_back(c.get<std::string>());
        }
        spec.repetitions = params.contains("repetitions") ? require_count(params, "repetitions") : 1;
        const ExecutionResult merged = qpm.run_ensemble(spec);
        json r = to_json(merged);
        r["stats"] = to_json(merged.stats);
        return r;
    }
    if (method == "list_backends") {
        json list = json::array();
        for (const auto &b : qpm.list_backends()) {
            list.push_back(to_json(b));
        }
        return {{"backends", list}};
    }
    if (method == "utilization") {
        return to_json(framework_.tasks().utilization());
    }
    if (method == "server_stats") {
        json tasks = json::object();
        for (const auto &[state, n] : qpm.state_counts()) {
            tasks[std::string(to_string(state))] = n;
        }
        const SchedulerMode mode = framework_.tasks().mode();
        json r = {{"uptime_seconds", std::chrono::duration<double>(
                                         std::chrono::steady_clock::now() - started_)
                                         .count()},
                  {"mode", mode.mode == IntegrationMode::many_job ? "many-job" : "per-job"},
                  {"tasks", tasks},
                  {"queued", framework_.tasks().queued()},
                  {"running", framework_.tasks().running()}};
        if (counters_ != nullptr) {
            r["connections_total"] = counters_->connections_total.load();
            r["connections_open"] = counters_->connections_open.load();
            r["requests_total"] = counters_->requests_total.load();
        }
        return r;
    }
    throw Error(ErrorCode::unknown_method, "unknown method '" + method + "'");
}

} // namespace qfw
