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

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "qfw/service.hpp"

namespace qfw {

namespace {

constexpr std::size_t kMaxFrameBytes = 16 * 1024 * 1024;

bool send_all(int fd, std::string_view data) {
    while (!data.empty()) {
        const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            return false;
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
    return true;
}

} // namespace

struct Server::Connection {
    int fd = -1;
    SessionId session{};
    std::mutex write_mu; // guards fd and writes
    std::mutex mu;
    std::condition_variable cv;
    std::size_t inflight = 0;
    std::atomic<bool> finished{false};
    std::jthread reader;

    void write(const nlohmann::json &message) {
        const std::string frame = encode_frame(message);
        std::lock_guard lock(write_mu);
        if (fd >= 0) {
            send_all(fd, frame);
        }
    }
};

Server::Server(ServiceConfig config) : config_(std::move(config)) {
    framework_ = std::make_unique<Framework>(config_);
    dispatcher_ = std::make_unique<Dispatcher>(*framework_, &counters_);

    listen_fd_ = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
    if (listen_fd_ < 0) {
        throw Error(ErrorCode::resource, std::string("socket: ") + std::strerror(errno));
    }
    const int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(config_.port);
    if (::inet_pton(AF_INET, config_.host.c_str(), &addr.sin_addr) != 1) {
        ::close(listen_fd_);
        throw Error(ErrorCode::validation, "invalid listen address '" + config_.host + "'");
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) != 0 ||
        ::listen(listen_fd_, 128) != 0) {
        const std::string reason = std::strerror(errno);
        ::close(listen_fd_);
        throw Error(ErrorCode::resource, "cannot listen on " + config_.host + ":" +
                                             std::to_string(config_.port) + ": " + reason);
    }
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr *>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    acceptor_ = std::jthread([this](std::stop_token stop) { accept_loop(stop); });
}

Server::~Server() { stop(); }

std::unique_ptr<Server> serve(ServiceConfig config) {
    return std::make_unique<Server>(std::move(config));
}

void Server::accept_loop(std::stop_token stop) {
    while (!stop.stop_requested()) {
        pollfd pfd{listen_fd_, POLLIN, 0};
        const int ready = ::poll(&pfd, 1, 50);
        reap_connections();
        if (ready <= 0) {
            continue;
        }
        const int fd = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
        if (fd < 0) {
            continue;
        }
        auto conn = std::make_shared<Connection>();
        conn->fd = fd;
        conn->session = SessionId{next_session_++};
        ++counters_.connections_total;
        ++counters_.connections_open;
        std::lock_guard lock(mu_);
        connections_.push_back(conn);
        // The reader must not own the connection (the list does), or its
        // jthread could end up joining itself.
        conn->reader = std::jthread(
            [this, raw = conn.get(), weak = std::weak_ptr<Connection>(conn)] {
                serve_connection(raw, weak);
            });
    }
}

void Server::reap_connections() {
    std::vector<std::shared_ptr<Connection>> done;
    {
        std::lock_guard lock(mu_);
        auto it = std::partition(connections_.begin(), connections_.end(),
                                 [](const auto &c) { return !c->finished.load(); });
        done.assign(std::make_move_iterator(it), std::make_move_iterator(connections_.end()));
        connections_.erase(it, connections_.end());
    }
    for (auto &c : done) {
        if (c->reader.joinable()) {
            c->reader.join();
        }
    }
}

void Server::serve_connection(Connection *conn, const std::weak_ptr<Connection> &weak) {
    std::string buffer;
    char chunk[64 * 1024];
    bool open = true;
    while (open) {
        const ssize_t n = ::recv(conn->fd, chunk, sizeof(chunk), 0);
        if (n < 0 && errno == EINTR) {
            continue;
        }
        if (n <= 0) {
            break;
        }
        buffer.append(chunk, static_cast<std::size_t>(n));
        std::size_t start = 0;
        for (std::size_t nl; open && (nl = buffer.find('\n', start)) != std::string::npos;
             start = nl + 1) {
            std::string_view line(buffer.data() + start, nl - start);
            if (!line.empty() && line.back() == '\r') {
                line.remove_suffix(1);
            }
            if (line.find_first_not_of(" \t") == std::string_view::npos) {
                continue;
            }
            ++counters_.requests_total;
            WireRequest request;
            try {
                request = parse_frame(line);
            } catch (const ProtocolError &e) {
                conn->write(WireResponse::failure(nullptr, e.code(), e.what()).to_json());
                open = false;
                break;
            }
            {
                std::lock_guard lock(conn->mu);
                ++conn->inflight;
            }
            std::thread([this, c = weak.lock(), request = std::move(request)] {
                const WireResponse response = dispatcher_->dispatch(request, c->session);
                c->write(response.to_json());
                std::lock_guard lock(c->mu);
                --c->inflight;
                c->cv.notify_all();
            }).detach();
        }
        buffer.erase(0, std::min(start, buffer.size()));
        if (open && buffer.size() > kMaxFrameBytes) {
            conn->write(WireResponse::failure(nullptr, ErrorCode::validation,
                                              "malformed frame: frame exceeds size limit")
                            .to_json());
            open = false;
        }
    }

    {
        std::unique_lock lock(conn->mu);
        conn->cv.wait(lock, [conn] { return conn->inflight == 0; });
    }
    {
        std::lock_guard lock(conn->write_mu);
        ::close(conn->fd);
        conn->fd = -1;
    }
    framework_->tasks().close_session(conn->session);
    --counters_.connections_open;
    conn->finished = true;
}

void Server::stop() {
    {
        std::unique_lock lock(mu_);
        if (stopping_) {
            stopped_cv_.wait(lock, [this] { return stopped_; });
            return;
        }
        stopping_ = true;
    }
    acceptor_.request_stop();
    if (acceptor_.joinable()) {
        acceptor_.join();
    }
    ::close(listen_fd_);
    framework_->shutdown();

    std::vector<std::shared_ptr<Connection>> conns;
    {
        std::lock_guard lock(mu_);
        conns = connections_;
    }
    for (auto &c : conns) {
        std::lock_guard lock(c->write_mu);
        if (c->fd >= 0) {
            ::shutdown(c->fd, SHUT_RDWR);
        }
    }
    for (auto &c : conns) {
        if (c->reader.joinable()) {
            c->reader.join();
        }
    }
    {
        std::lock_guard lock(mu_);
        connections_.clear();
        stopped_ = true;
    }
    stopped_cv_.notify_all();
}

void Server::wait() {
    std::unique_lock lock(mu_);
    stopped_cv_.wait(lock, [this] { return stopped_; });
}

} // namespace qfw
