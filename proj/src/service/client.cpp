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

#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <cstring>

#include "qfw/service.hpp"

namespace qfw {

using nlohmann::json;

std::pair<std::string, std::uint16_t> parse_address(std::string_view address) {
    const auto colon = address.rfind(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == address.size()) {
        throw Error(ErrorCode::validation,
                    "address must look like host:port, got '" + std::string(address) + "'");
    }
    const std::string_view port_text = address.substr(colon + 1);
    unsigned port = 0;
    const auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port == 0 || port > 65535) {
        throw Error(ErrorCode::validation, "invalid port in address '" + std::string(address) + "'");
    }
    return {std::string(address.substr(0, colon)), static_cast<std::uint16_t>(port)};
}

std::pair<std::string, std::uint16_t> resolve_address(std::string_view fallback) {
    if (const char *env = std::getenv("QFW_ADDR"); env != nullptr && *env != '\0') {
        return parse_address(env);
    }
    return parse_address(fallback);
}

WireClient::WireClient(const std::string &host, std::uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo *res = nullptr;
    const std::string service = std::to_string(port);
    if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
        throw ConnectionError("cannot resolve " + host + ": " + ::gai_strerror(rc));
    }
    std::string last_error = "no addresses";
    for (addrinfo *ai = res; ai != nullptr; ai = ai->ai_next) {
        const int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
        if (fd < 0) {
            last_error = std::strerror(errno);
            continue;
        }
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
            fd_ = fd;
            break;
        }
        last_error = std::strerror(errno);
        ::close(fd);
    }
    ::freeaddrinfo(res);
    if (fd_ < 0) {
        throw ConnectionError("cannot connect to " + host + ":" + service + ": " + last_error);
    }
}

WireClient::~WireClient() { close(); }

void WireClient::close() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

void WireClient::send_line(std::string_view line) {
    if (fd_ < 0) {
        throw ConnectionError("connection is closed");
    }
    std::string frame(line);
    if (frame.empty() || frame.back() != '\n') {
        frame.push_back('\n');
    }
    std::string_view rest = frame;
    while (!rest.empty()) {
        const ssize_t n = ::send(fd_, rest.data(), rest.size(), MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw ConnectionError(std::string("send failed: ") + std::strerror(errno));
        }
        rest.remove_prefix(static_cast<std::size_t>(n));
    }
}

std::optional<std::string> WireClient::read_line() {
    if (fd_ < 0) {
        throw ConnectionError("connection is closed");
    }
    for (;;) {
        if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }
        char chunk[64 * 1024];
        const ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
        if (n < 0 && errno == EINTR) {
            continue;
        }
        if (n < 0) {
            throw ConnectionError(std::string("recv failed: ") + std::strerror(errno));
        }
        if (n == 0) {
            return std::nullopt;
        }
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

json WireClient::call(const std::string &method, json params) {
    const std::uint64_t id = next_id_++;
    send_line(encode_frame({{"id", id}, {"method", method}, {"params", std::move(params)}}));
    for (;;) {
        const auto line = read_line();
        if (!line) {
            throw ConnectionError("server closed the connection");
        }
        json frame;
        try {
            frame = json::parse(*line);
        } catch (const json::parse_error &e) {
            throw ConnectionError(std::string("bad response frame: ") + e.what());
        }
        if (frame.value("id", json()) != json(id)) {
            if (frame.value("id", json()).is_null() && !frame.value("ok", true)) {
                const json &err = frame["error"];
                throw RemoteError(err.value("code", 1), err.value("message", std::string()));
            }
            continue;
        }
        if (frame.value("ok", false)) {
            return frame.value("result", json());
        }
        const json &err = frame.at("error");
        throw RemoteError(err.value("code", 0), err.value("message", std::string()),
                          err.value("data", json()));
    }
}

} // namespace qfw
