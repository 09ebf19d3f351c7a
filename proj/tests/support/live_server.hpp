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

#include <memory>
#include <string>

#include "qfw/service.hpp"

namespace qfw::testing {

/// Server on an ephemeral loopback port with a client already connected.
struct LiveServer {
    std::unique_ptr<Server> server;

    explicit LiveServer(ServiceConfig config = {}) {
        config.host = "127.0.0.1";
        config.port = 0;
        server = serve(std::move(config));
    }
    ~LiveServer() {
        if (server) {
            server->stop();
        }
    }

    [[nodiscard]] std::unique_ptr<WireClient> connect() const {
        return std::make_unique<WireClient>("127.0.0.1", server->port());
    }
};

inline ServiceConfig mock_config(double latency_seconds) {
    ServiceConfig config;
    config.mock_latency_seconds = latency_seconds;
    config.shutdown_grace = std::chrono::milliseconds(2000);
    return config;
}

} // namespace qfw::testing
