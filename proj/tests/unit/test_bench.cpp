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

#include <algorithm>
#include <numeric>
#include <set>

#include "qfw/bench.hpp"
#include "qfw/qasm.hpp"
#include "qfw/service.hpp"
#include "qfw/simulator.hpp"
#include "support/dense_oracle.hpp"
#include "support/live_server.hpp"

using qfw::GateKind;
using qfw::Instruction;
using qfw::bench::CampaignMode;
using qfw::bench::CampaignOptions;
using qfw::testing::LiveServer;

TEST_CASE("ghz construction") {
    const auto one = qfw::bench::ghz(1);
    CHECK(one.instructions ==
          std::vector<Instruction>{{GateKind::h, {0}, {}, {}}, {GateKind::measure, {0}, {0}, {}}});
    CHECK(qfw::bench::ghz(20).instructions.size() == 40);
    for (std::size_t n = 1; n <= 30; ++n) {
        const auto c = qfw::bench::ghz(n);
        CHECK(c.instructions.size() == 2 * n);
        CHECK(c.num_qubits == n);
        CHECK(c.num_clbits == n);
        CHECK(qfw::qasm::validate(c).empty());
        for (std::size_t k = 1; k < n; ++k) {
            CHECK(c.instructions[k] == Instruction{GateKind::cx, {k - 1, k}, {}, {}});
        }
    }
    CHECK_THROWS_AS((void)qfw::bench::ghz(0), qfw::Error);
}

TEST_CASE("simulated ghz(4) only yields the two extremes") {
    qfw::SimConfig config;
    config.seed = 8;
    const auto result = qfw::sim::run(qfw::bench::ghz(4), 2048, config);
    for (const auto &[key, n] : result.counts) {
        CHECK((key == "0000" || key == "1111"));
    }
}

TEST_CASE("random circuits") {
    CHECK(qfw::bench::random_circuit(2, 0, 5).instructions.empty());
    CHECK(qfw::bench::random_circuit(4, 6, 77) == qfw::bench::random_circuit(4, 6, 77));
    CHECK_FALSE(qfw::bench::random_circuit(4, 6, 77) == qfw::bench::random_circuit(4, 6, 78));

    const auto c = qfw::bench::random_circuit(3, 5, 123);
    CHECK(qfw::qasm::validate(c).empty());
    const auto s = qfw::sim::final_amplitudes(c);
    const auto expected = qfw::testing::oracle_state(c);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(std::abs(s[i] - expected[i]) < 1e-10);
    }

    std::set<GateKind> kinds;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (const auto &instr : qfw::bench::random_circuit(5, 4, seed).instructions) {
            kinds.insert(instr.kind);
            CHECK(qfw::is_unitary(instr.kind));
        }
    }
    CHECK(kinds.size() >= 15);
}

TEST_CASE("report formats") {
    qfw::bench::BenchReport r{"ghz_3", 2, CampaignMode::concurrent, 0.5, {0.25, 0.3}};
    const auto j = qfw::bench::to_json(r);
    CHECK(j["workload"] == "ghz_3");
    CHECK(j["tasks"] == 2);
    CHECK(j["mode"] == "concurrent");
    CHECK(j["wall_time_seconds"] == 0.5);
    CHECK(j["per_task_seconds"].size() == 2);
    const std::string table = qfw::bench::format_table(r);
    CHECK(table.find("concurrent") != std::string::npos);
    CHECK(table.find("0.3000") != std::string::npos);
}

TEST_CASE("campaign timing on the mock backend") {
    LiveServer live(qfw::testing::mock_config(0.2));
    auto client = live.connect();
    const auto circuit = qfw::bench::ghz(20);

    CampaignOptions options;
    options.count = 8;
    options.backend = "mock";
    options.workload = "ghz_20";

    options.mode = CampaignMode::concurrent;
    const auto concurrent = qfw::bench::run_campaign(*client, circuit, options);
    options.mode = CampaignMode::sequential;
    const auto sequential = qfw::bench::run_campaign(*client, circuit, options);

    CHECK(concurrent.tasks == 8);
    CHECK(concurrent.per_task_seconds.size() == 8);
    CHECK(sequential.per_task_seconds.size() == 8);
    CHECK(concurrent.wall_time_seconds < 0.5);
    CHECK(sequential.wall_time_seconds >= 1.6);
    CHECK(concurrent.wall_time_seconds <= sequential.wall_time_seconds);

    const double longest = *std::max_element(concurrent.per_task_seconds.begin(),
                                             concurrent.per_task_seconds.end());
    CHECK(concurrent.wall_time_seconds >= longest);
    const double sum = std::accumulate(sequential.per_task_seconds.begin(),
                                       sequential.per_task_seconds.end(), 0.0);
    CHECK(sequential.wall_time_seconds >= sum);
}

TEST_CASE("single-task campaigns agree across modes") {
    LiveServer live(qfw::testing::mock_config(0.1));
    auto client = live.connect();
    CampaignOptions options;
    options.backend = "mock";
    options.mode = CampaignMode::sequential;
    const auto seq = qfw::bench::run_campaign(*client, qfw::bench::ghz(3), options);
    options.mode = CampaignMode::concurrent;
    const auto con = qfw::bench::run_campaign(*client, qfw::bench::ghz(3), options);
    CHECK(std::abs(seq.wall_time_seconds - con.wall_time_seconds) < 0.05);
    CHECK(std::abs(seq.per_task_seconds[0] - con.per_task_seconds[0]) < 0.05);
}

TEST_CASE("campaign errors") {
    LiveServer live;
    auto client = live.connect();
    CampaignOptions options;
    options.count = 0;
    try {
        (void)qfw::bench::run_campaign(*client, qfw::bench::ghz(2), options);
        FAIL("expected a usage error");
    } catch (const qfw::Error &e) {
        CHECK(e.code() == qfw::ErrorCode::validation);
    }
    options.count = 2;
    options.backend = "no-such-backend";
    CHECK_THROWS_AS((void)qfw::bench::run_campaign(*client, qfw::bench::ghz(2), options),
                    qfw::bench::CampaignError);
}
