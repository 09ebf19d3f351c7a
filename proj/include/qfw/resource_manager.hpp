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
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qfw {

struct NodeSpec {
    std::string node_id;
    std::size_t slots = 8;
};

/// Builds `count` nodes named node1..nodeN with `slots` slots each.
[[nodiscard]] std::vector<NodeSpec> uniform_pool(std::size_t count, std::size_t slots = 8);

enum class InstanceId : std::uint64_t {};

struct Placement {
    InstanceId instance_id{};
    std::vector<std::pair<std::string, std::size_t>> assignment;

    [[nodiscard]] std::size_t total_slots() const;
    /// "node1:4,node2:4"
    [[nodiscard]] std::string summary() const;

    friend bool operator==(const Placement &, const Placement &) = default;
};

/// The request could not be satisfied yet. When it is granted later (on some
/// release) the placement carries `ticket` as its instance id.
struct Queued {
    std::size_t position = 0;
    InstanceId ticket{};
};

using RequestOutcome = std::variant<Placement, Queued>;

struct ReleaseSummary {
    InstanceId instance_id{};
    std::vector<std::pair<std::string, std::size_t>> freed;
    std::size_t total_freed = 0;
    /// Queued requests granted as a consequence of this release, FIFO order.
    std::vector<Placement> granted;
};

struct NodeUsage {
    std::string node_id;
    std::size_t allocated = 0;
    std::size_t capacity = 0;

    friend bool operator==(const NodeUsage &, const NodeUsage &) = default;
};

struct Utilization {
    std::vector<NodeUsage> nodes;
    std::size_t queue_length = 0;

    [[nodiscard]] std::size_t allocated() const;
    [[nodiscard]] std::size_t capacity() const;
};

/// Slot accounting for a fixed set of nodes.
///
/// Placement is first-fit in node declaration order and may span nodes.
/// Unsatisfiable requests wait in a strict FIFO queue (no backfill): a later
/// request is never granted while an earlier one is still waiting. Requests
/// larger than the whole pool are rejected with Error(resource). All
/// operations are serialized on an internal mutex.
class ResourceManager {
  public:
    explicit ResourceManager(std::vector<NodeSpec> nodes);

    ResourceManager(const ResourceManager &) = delete;
    ResourceManager &operator=(const ResourceManager &) = delete;

    RequestOutcome request(std::size_t procs);

    /// Grants immediately or returns nullopt; never enqueues. Also returns
    /// nullopt while the FIFO queue is non-empty, so it cannot overtake.
    std::optional<Placement> try_request(std::size_t procs);

    ReleaseSummary release(InstanceId id);

    [[nodiscard]] Utilization utilization() const;
    [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
    [[nodiscard]] const std::vector<NodeSpec> &nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::vector<Placement> active() const;

  private:
    struct Pending {
        InstanceId ticket;
        std::size_t procs;
    };

    void check_request(std::size_t procs) const;
    std::size_t free_slots_locked() const;
    Placement place_locked(InstanceId id, std::size_t procs);
    InstanceId next_id_locked();

    std::vector<NodeSpec> nodes_;
    std::size_t capacity_ = 0;
    mutable std::mutex mu_;
    std::vector<std::size_t> allocated_;
    std::map<InstanceId, Placement> active_;
    std::deque<Pending> pending_;
    std::uint64_t next_id_ = 1;
};

} // namespace qfw
