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

#include "qfw/resource_manager.hpp"

#include <algorithm>
#include <set>

#include "qfw/error.hpp"

namespace qfw {

std::vector<NodeSpec> uniform_pool(std::size_t count, std::size_t slots) {
    std::vector<NodeSpec> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back({"node" + std::to_string(i + 1), slots});
    }
    return out;
}

std::size_t Placement::total_slots() const {
    std::size_t total = 0;
    for (const auto &[node, n] : assignment) {
        total += n;
    }
    return total;
}

std::string Placement::summary() const {
    std::string out;
    for (const auto &[node, n] : assignment) {
        if (!out.empty()) {
            out += ',';
        }
        out += node + ":" + std::to_string(n);
    }
    return out;
}

std::size_t Utilization::allocated() const {
    std::size_t total = 0;
    for (const auto &n : nodes) {
        total += n.allocated;
    }
    return total;
}

std::size_t Utilization::capacity() const {
    std::size_t total = 0;
    for (const auto &n : nodes) {
        total += n.capacity;
    }
    return total;
}

ResourceManager::ResourceManager(std::vector<NodeSpec> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) {
        throw Error(ErrorCode::validation, "node pool must contain at least one node");
    }
    std::set<std::string> ids;
    for (const auto &n : nodes_) {
        if (n.slots < 1) {
            throw Error(ErrorCode::validation, "node '" + n.node_id + "' must have >= 1 slot");
        }
        if (!ids.insert(n.node_id).second) {
            throw Error(ErrorCode::validation, "duplicate node id '" + n.node_id + "'");
        }
        capacity_ += n.slots;
    }
    allocated_.assign(nodes_.size(), 0);
}

void ResourceManager::check_request(std::size_t procs) const {
    if (procs < 1) {
        throw Error(ErrorCode::validation, "process count must be >= 1");
    }
    if (procs > capacity_) {
        throw Error(ErrorCode::resource, "request for " + std::to_string(procs) +
                                             " processes exceeds pool capacity of " +
                                             std::to_string(capacity_));
    }
}

std::size_t ResourceManager::free_slots_locked() const {
    std::size_t used = 0;
    for (std::size_t a : allocated_) {
        used += a;
    }
    return capacity_ - used;
}

InstanceId ResourceManager::next_id_locked() { return InstanceId{next_id_++}; }

Placement ResourceManager::place_locked(InstanceId id, std::size_t procs) {
    Placement placement{id, {}};
    std::size_t remaining = procs;
    for (std::size_t i = 0; i < nodes_.size() && remaining > 0; ++i) {
        const std::size_t free = nodes_[i].slots - allocated_[i];
        const std::size_t take = std::min(free, remaining);
        if (take == 0) {
            continue;
        }
        allocated_[i] += take;
        remaining -= take;
        placement.assignment.emplace_back(nodes_[i].node_id, take);
    }
    active_.emplace(id, placement);
    return placement;
}

RequestOutcome ResourceManager::request(std::size_t procs) {
    check_request(procs);
    std::lock_guard lock(mu_);
    if (pending_.empty() && free_slots_locked() >= procs) {
        return place_locked(next_id_locked(), procs);
    }
    const InstanceId ticket = next_id_locked();
    pending_.push_back({ticket, procs});
    return Queued{pending_.size() - 1, ticket};
}

std::optional<Placement> ResourceManager::try_request(std::size_t procs) {
    check_request(procs);
    std::lock_guard lock(mu_);
    if (!pending_.empty() || free_slots_locked() < procs) {
        return std::nullopt;
    }
    return place_locked(next_id_locked(), procs);
}

ReleaseSummary ResourceManager::release(InstanceId id) {
    std::lock_guard lock(mu_);
    const auto it = active_.find(id);
    if (it == active_.end()) {
        throw Error(ErrorCode::invalid_state,
                    "unknown instance " + std::to_string(static_cast<std::uint64_t>(id)));
    }
    ReleaseSummary summary{id, it->second.assignment, it->second.total_slots(), {}};
    for (const auto &[node, n] : it->second.assignment) {
        const auto pos = std::find_if(nodes_.begin(), nodes_.end(),
                                      [&](const NodeSpec &s) { return s.node_id == node; });
        allocated_[static_cast<std::size_t>(pos - nodes_.begin())] -= n;
    }
    active_.erase(it);

    while (!pending_.empty() && free_slots_locked() >= pending_.front().procs) {
        const Pending head = pending_.front();
        pending_.pop_front();
        summary.granted.push_back(place_locked(head.ticket, head.procs));
    }
    return summary;
}

Utilization ResourceManager::utilization() const {
    std::lock_guard lock(mu_);
    Utilization out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        out.nodes.push_back({nodes_[i].node_id, allocated_[i], nodes_[i].slots});
    }
    out.queue_length = pending_.size();
    return out;
}

std::vector<Placement> ResourceManager::active() const {
    std::lock_guard lock(mu_);
    std::vector<Placement> out;
    for (const auto &[id, p] : active_) {
        out.push_back(p);
    }
    return out;
}

} // namespace qfw
