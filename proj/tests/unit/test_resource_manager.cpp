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

#include <doctest.h>

#include <map>
#include <random>
#include <thread>

#include "qfw/error.hpp"
#include "qfw/resource_manager.hpp"

using qfw::InstanceId;
using qfw::Placement;
using qfw::Queued;
using qfw::ResourceManager;
using Assignment = std::vector<std::pair<std::string, std::size_t>>;

namespace {

Placement placed(const qfw::RequestOutcome &outcome) {
    REQUIRE(std::holds_alternative<Placement>(outcome));
    return std::get<Placement>(outcome);
}

// Checks the capacity and conservation invariants against `active`.
void check_invariants(const ResourceManager &rm) {
    const auto util = rm.utilization();
    std::map<std::string, std::size_t> from_placements;
    for (const auto &p : rm.active()) {
        std::map<std::string, int> seen;
        for (const auto &[node, slots] : p.assignment) {
            REQUIRE(++seen[node] == 1);
            REQUIRE(slots > 0);
            from_placements[node] += slots;
        }
    }
    for (const auto &usage : util.nodes) {
        REQUIRE(usage.allocated <= usage.capacity);
        REQUIRE(from_placements[usage.node_id] == usage.allocated);
    }
}

} // namespace

TEST_CASE("placement replay on a 2x8 pool") {
    ResourceManager rm(qfw::uniform_pool(2, 8));
    const Placement a = placed(rm.request(4));
    const Placement b = placed(rm.request(8));
    const Placement c = placed(rm.request(4));
    CHECK(a.assignment == Assignment{{"node1", 4}});
    CHECK(b.assignment == Assignment{{"node1", 4}, {"node2", 4}});
    CHECK(c.assignment == Assignment{{"node2", 4}});
    CHECK(b.summary() == "node1:4,node2:4");
    CHECK(b.total_slots() == 8);

    const auto d = rm.request(4);
    REQUIRE(std::holds_alternative<Queued>(d));
    CHECK(std::get<Queued>(d).position == 0);

    const auto util = rm.utilization();
    CHECK(util.nodes == std::vector<qfw::NodeUsage>{{"node1", 8, 8}, {"node2", 8, 8}});
    CHECK(util.queue_length == 1);
}

TEST_CASE("utilization snapshots") {
    ResourceManager rm(qfw::uniform_pool(2));
    auto util = rm.utilization();
    CHECK(util.nodes == std::vector<qfw::NodeUsage>{{"node1", 0, 8}, {"node2", 0, 8}});
    CHECK(util.queue_length == 0);
    CHECK(util.capacity() == 16);
    (void)rm.request(4);
    (void)rm.request(8);
    (void)rm.request(4);
    util = rm.utilization();
    CHECK(util.allocated() == 16);
    CHECK(util.queue_length == 0);
}

TEST_CASE("requests larger than the pool are rejected") {
    ResourceManager rm(qfw::uniform_pool(2, 8));
    try {
        (void)rm.request(17);
        FAIL("expected rejection");
    } catch (const qfw::Error &e) {
        CHECK(e.code() == qfw::ErrorCode::resource);
    }
    CHECK(rm.utilization().queue_length == 0);
    CHECK_THROWS_AS((void)rm.request(0), qfw::Error);
    CHECK_THROWS_AS((void)rm.try_request(17), qfw::Error);
}

TEST_CASE("release regrants queued requests") {
    ResourceManager rm(qfw::uniform_pool(2, 8));
    (void)rm.request(4);
    const Placement eight = placed(rm.request(8));
    (void)rm.request(4);
    const auto queued = rm.request(8);
    REQUIRE(std::holds_alternative<Queued>(queued));

    const auto summary = rm.release(eight.instance_id);
    CHECK(summary.freed == Assignment{{"node1", 4}, {"node2", 4}});
    CHECK(summary.total_freed == 8);
    REQUIRE(summary.granted.size() == 1);
    CHECK(summary.granted[0].assignment == Assignment{{"node1", 4}, {"node2", 4}});
    CHECK(summary.granted[0].instance_id == std::get<Queued>(queued).ticket);
    CHECK(rm.utilization().queue_length == 0);
    check_invariants(rm);
}

TEST_CASE("release of an unknown instance") {
    ResourceManager rm(qfw::uniform_pool(2));
    try {
        (void)rm.release(InstanceId{42});
        FAIL("expected an error");
    } catch (const qfw::Error &e) {
        CHECK(e.code() == qfw::ErrorCode::invalid_state);
    }
    const Placement p = placed(rm.request(3));
    (void)rm.release(p.instance_id);
    CHECK_THROWS_AS((void)rm.release(p.instance_id), qfw::Error);
}

TEST_CASE("release lowers allocation by the placement total") {
    ResourceManager rm(qfw::uniform_pool(3, 4));
    const Placement a = placed(rm.request(6));
    const Placement b = placed(rm.request(3));
    const std::size_t before = rm.utilization().allocated();
    (void)rm.release(a.instance_id);
    CHECK(before - rm.utilization().allocated() == a.total_slots());
    (void)rm.release(b.instance_id);
    CHECK(rm.utilization().allocated() == 0);
}

TEST_CASE("head-of-line blocking without backfill") {
    ResourceManager rm(qfw::uniform_pool(2, 8));
    const Placement big = placed(rm.request(12));
    const auto blocked = rm.request(8);
    REQUIRE(std::holds_alternative<Queued>(blocked));
    // 4 slots are free but the small request must wait behind the head.
    const auto small = rm.request(2);
    REQUIRE(std::holds_alternative<Queued>(small));
    CHECK(std::get<Queued>(small).position == 1);
    CHECK_FALSE(rm.try_request(1).has_value());

    const auto summary = rm.release(big.instance_id);
    REQUIRE(summary.granted.size() == 2);
    CHECK(summary.granted[0].instance_id == std::get<Queued>(blocked).ticket);
    CHECK(summary.granted[1].instance_id == std::get<Queued>(small).ticket);
    check_invariants(rm);
}

TEST_CASE("try_request grants or declines without queueing") {
    ResourceManager rm(qfw::uniform_pool(1, 4));
    const auto a = rm.try_request(3);
    REQUIRE(a.has_value());
    CHECK_FALSE(rm.try_request(2).has_value());
    CHECK(rm.utilization().queue_length == 0);
    CHECK(rm.try_request(1).has_value());
}

TEST_CASE("heterogeneous nodes") {
    ResourceManager rm({{"big", 6}, {"tiny", 1}, {"mid", 3}});
    CHECK(rm.capacity() == 10);
    CHECK(placed(rm.request(7)).assignment == Assignment{{"big", 6}, {"tiny", 1}});
    CHECK(placed(rm.request(2)).assignment == Assignment{{"mid", 2}});
    CHECK(std::holds_alternative<Queued>(rm.request(2)));
}

TEST_CASE("pool topology is validated") {
    CHECK_THROWS_AS(ResourceManager({}), qfw::Error);
    CHECK_THROWS_AS(ResourceManager({{"a", 0}}), qfw::Error);
    CHECK_THROWS_AS(ResourceManager({{"a", 2}, {"a", 2}}), qfw::Error);
}

TEST_CASE("randomized churn keeps every invariant") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::mt19937_64 rng(seed);
        ResourceManager rm({{"n1", 8}, {"n2", 5}, {"n3", 8}, {"n4", 3}});
        std::vector<InstanceId> live;
        std::map<InstanceId, std::size_t> pending;
        std::vector<InstanceId> grant_order;
        std::vector<InstanceId> queue_order;
        for (int op = 0; op < 400; ++op) {
            if (live.empty() || rng() % 2 == 0) {
                const std::size_t procs = 1 + rng() % 10;
                const auto outcome = rm.request(procs);
                if (const auto *p = std::get_if<Placement>(&outcome)) {
                    REQUIRE(p->total_slots() == procs);
                    REQUIRE(pending.empty());
                    live.push_back(p->instance_id);
                } else {
                    const auto &q = std::get<Queued>(outcome);
                    REQUIRE(q.position == pending.size());
                    pending[q.ticket] = procs;
                    queue_order.push_back(q.ticket);
                }
            } else {
                const std::size_t idx = rng() % live.size();
                const auto summary = rm.release(live[idx]);
                live.erase(live.begin() + static_cast<std::ptrdiff_t>(idx));
                for (const auto &g : summary.granted) {
                    REQUIRE(pending.count(g.instance_id) == 1);
                    REQUIRE(g.total_slots() == pending[g.instance_id]);
                    pending.erase(g.instance_id);
                    grant_order.push_back(g.instance_id);
                    live.push_back(g.instance_id);
                }
            }
            check_invariants(rm);
            REQUIRE(rm.utilization().queue_length == pending.size());
        }
        while (!live.empty()) {
            const auto summary = rm.release(live.back());
            live.pop_back();
            for (const auto &g : summary.granted) {
                pending.erase(g.instance_id);
                grant_order.push_back(g.instance_id);
                live.push_back(g.instance_id);
            }
        }
        CHECK(pending.empty());
        CHECK(grant_order == queue_order);
        CHECK(rm.utilization().allocated() == 0);
        CHECK(rm.active().empty());
    }
}

TEST_CASE("concurrent callers see linearizable accounting") {
    ResourceManager rm(qfw::uniform_pool(2, 8));
    std::vector<std::jthread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&rm, t] {
            std::mt19937_64 rng(static_cast<std::uint64_t>(t));
            for (int i = 0; i < 500; ++i) {
                if (auto p = rm.try_request(1 + rng() % 4)) {
                    const auto util = rm.utilization();
                    CHECK(util.allocated() <= util.capacity());
                    (void)rm.release(p->instance_id);
                }
            }
        });
    }
    threads.clear();
    CHECK(rm.utilization().allocated() == 0);
}
