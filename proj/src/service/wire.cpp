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

#include "qfw/service.hpp"

namespace qfw {

using nlohmann::json;

json WireResponse::to_json() const {
    json out = {{"id", id}, {"ok", ok}};
    if (ok) {
        out["result"] = result;
    } else if (error) {
        out["error"] = {{"code", error->code}, {"message", error->message}};
        if (!error->data.is_null()) {
            out["error"]["data"] = error->data;
        }
    }
    return out;
}

WireResponse WireResponse::success(json id, json result) {
    WireResponse r;
    r.id = std::move(id);
    r.ok = true;
    r.result = std::move(result);
    return r;
}

WireResponse WireResponse::failure(json id, ErrorCode code, std::string message, json data) {
    WireResponse r;
    r.id = std::move(id);
    r.ok = false;
    r.error = WireError{static_cast<int>(code), std::move(message), std::move(data)};
    return r;
}

WireRequest parse_frame(std::string_view line) {
    json frame;
    try {
        frame = json::parse(line);
    } catch (const json::parse_error &e) {
        throw ProtocolError(std::string("invalid JSON (") + e.what() + ")");
    }
    if (!frame.is_object()) {
        throw ProtocolError("frame must be a JSON object");
    }
    const auto id = frame.find("id");
    if (id == frame.end() || !(id->is_string() || id->is_number_integer() ||
                               id->is_number_unsigned())) {
        throw ProtocolError("'id' must be a string or integer");
    }
    const auto method = frame.find("method");
    if (method == frame.end() || !method->is_string() || method->get<std::string>().empty()) {
        throw ProtocolError("'method' must be a non-empty string");
    }
    WireRequest req;
    req.id = *id;
    req.method = method->get<std::string>();
    if (const auto params = frame.find("params"); params != frame.end() && !params->is_null()) {
        if (!params->is_object()) {
            throw ProtocolError("'params' must be an object");
        }
        req.params = *params;
    }
    return req;
}

std::string encode_frame(const json &message) {
    // dump() escapes control characters, so the frame never contains '\n'.
    std::string out = message.dump(-1, ' ', false, json::error_handler_t::replace);
    out.push_back('\n');
    return out;
}

json to_json(const ExecutionStats &stats) {
    json out = {{"wall_time_seconds", stats.wall_time_seconds},
                {"backend", stats.backend},
                {"workers", stats.workers},
                {"num_qubits", stats.num_qubits}};
    if (!stats.placement.empty()) {
        out["placement"] = stats.placement;
    }
    return out;
}

json to_json(const ExecutionResult &result) {
    json counts = json::object();
    for (const auto &[key, n] : result.counts) {
        counts[key] = n;
    }
    return {{"counts", counts}, {"shots", result.shots}};
}

json to_json(const Utilization &utilization) {
    json nodes = json::array();
    for (const auto &n : utilization.nodes) {
        nodes.push_back({{"node_id", n.node_id}, {"allocated", n.allocated}, {"capacity", n.capacity}});
    }
    return {{"nodes", nodes},
            {"queue_length", utilization.queue_length},
            {"free", utilization.capacity() - utilization.allocated()}};
}

json to_json(const BackendDescriptor &backend) {
    return {{"name", backend.name},
            {"kind", to_string(backend.kind)},
            {"max_qubits", backend.max_qubits},
            {"default", backend.is_default}};
}

} // namespace qfw
