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

#include "qfw/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "qfw/qasm.hpp"
#include "qfw/service.hpp"

namespace qfw::bench {

using nlohmann::json;

Circuit ghz(std::size_t num_qubits) {
    if (num_qubits < 1) {
        throw Error(ErrorCode::validation, "GHZ circuit needs at least one qubit");
    }
    Circuit c;
    c.name = "ghz_" + std::to_string(num_qubits);
    c.num_qubits = num_qubits;
    c.num_clbits = num_qubits;
    c.instructions.push_back({GateKind::h, {0}, {}, {}});
    for (std::size_t k = 1; k < num_qubits; ++k) {
        c.instructions.push_back({GateKind::cx, {k - 1, k}, {}, {}});
    }
    for (std::size_t k = 0; k < num_qubits; ++k) {
        c.instructions.push_back({GateKind::measure, {k}, {k}, {}});
    }
    return c;
}

namespace {

constexpr GateKind kOneQubit[] = {
    GateKind::h,  GateKind::x,  GateKind::y,  GateKind::z,  GateKind::s,
    GateKind::sdg, GateKind::t, GateKind::tdg, GateKind::rx, GateKind::ry,
    GateKind::rz, GateKind::u1, GateKind::u2, GateKind::u3, GateKind::id,
};
constexpr GateKind kTwoQubit[] = {GateKind::cx, GateKind::cz, GateKind::swap};

class Draw {
  public:
    explicit Draw(std::uint64_t seed) : engine_(seed) {}

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
    double angle() {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return (2.0 * u - 1.0) * 2.0 * std::numbers::pi;
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace

Circuit random_circuit(std::size_t num_qubits, std::size_t depth, std::uint64_t seed) {
    Circuit c;
    c.name = "random_" + std::to_string(num_qubits) + "x" + std::to_string(depth) + "_" +
             std::to_string(seed);
    c.num_qubits = num_qubits;
    Draw draw(seed);
    std::vector<std::size_t> order(num_qubits);
    for (std::size_t layer = 0; layer < depth; ++layer) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = order.size(); i > 1; --i) {
            std::swap(order[i - 1], order[draw.below(i)]);
        }
        std::size_t pos = 0;
        while (pos < order.size()) {
            const std::size_t left = order.size() - pos;
            // 1q 60%, 2q 30%, 3q 10% where the layer still has room.
            const std::size_t roll = draw.below(10);
            std::size_t arity = roll < 6 ? 1 : (roll < 9 ? 2 : 3);
            arity = std::min(arity, left);
            Instruction instr;
            if (arity == 1) {
                instr.kind = kOneQubit[draw.below(std::size(kOneQubit))];
            } else if (arity == 2) {
                instr.kind = kTwoQubit[draw.below(std::size(kTwoQubit))];
            } else {
                instr.kind = GateKind::ccx;
            }
            instr.qubits.assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                                order.begin() + static_cast<std::ptrdiff_t>(pos + arity));
            for (std::size_t p = 0; p < gate_info(instr.kind).num_params; ++p) {
                instr.params.push_back(draw.angle());
            }
            c.instructions.push_back(std::move(instr));
            pos += arity;
        }
    }
    return c;
}

json to_json(const BenchReport &report) {
    return {{"workload", report.workload},
            {"tasks", report.tasks},
            {"mode", report.mode == CampaignMode::sequential ? "sequential" : "concurrent"},
            {"wall_time_seconds", report.wall_time_seconds},
            {"per_task_seconds", report.per_task_seconds}};
}

std::string format_table(const BenchReport &report) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    out << "workload  " << report.workload << '\n';
    out << "mode      " << (report.mode == CampaignMode::sequential ? "sequential" : "concurrent")
        << '\n';
    out << "tasks     " << report.tasks << '\n';
    out << "wall (s)  " << report.wall_time_seconds << '\n';
    out << "task  seconds\n";
    for (std::size_t i = 0; i < report.per_task_seconds.size(); ++i) {
        out << std::setw(4) << i << "  " << report.per_task_seconds[i] << '\n';
    }
    return out.str();
}

namespace {

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

BenchReport run_campaign(WireClient &client, const Circuit &circuit, const CampaignOptions &options) {
    if (options.count < 1) {
        throw Error(ErrorCode::validation, "campaign needs at least one task");
    }
    BenchReport report;
    report.workload = options.workload;
    report.mode = options.mode;

    const std::string qasm_text = qasm::emit(circuit);
    json info = {{"qasm", qasm_text},
                 {"num_qubits", circuit.num_qubits},
                 {"num_shots", options.shots},
                 {"compiler", "staq"}};
    if (options.backend) {
        info["backend"] = *options.backend;
    }
    if (options.seed) {
        info["seed"] = *options.seed;
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto fail = [&](const std::string &message) {
        report.tasks = report.per_task_seconds.size();
        report.wall_time_seconds = elapsed_since(t0);
        throw CampaignError(message, report);
    };

    try {
        if (options.mode == CampaignMode::sequential) {
            for (std::size_t i = 0; i < options.count; ++i) {
                const std::string cid = client.call("create_circuit", info).at("cid");
                const json out = client.call("sync_run", {{"cid", cid}});
                if (out.at("rc").get<int>() != 0) {
                    fail("task " + cid + " failed: " + out.value("error", std::string("unknown error")));
                }
                report.per_task_seconds.push_back(out.at("stats").at("wall_time_seconds").get<double>());
            }
        } else {
            std::vector<std::string> cids;
            for (std::size_t i = 0; i < options.count; ++i) {
                cids.push_back(client.call("create_circuit", info).at("cid"));
            }
            for (const auto &cid : cids) {
                client.call("async_run", {{"cid", cid}});
            }
            std::vector<std::optional<double>> seconds(cids.size());
            std::size_t pending = cids.size();
            while (pending > 0) {
                for (std::size_t i = 0; i < cids.size(); ++i) {
                    if (seconds[i]) {
                        continue;
                    }
                    const json h = client.call("get_result", {{"cid", cids[i]}});
                    const std::string state = h.at("state");
                    if (state == "done") {
                        seconds[i] = h.at("stats").at("wall_time_seconds").get<double>();
                        --pending;
                    } else if (state == "failed") {
                        for (const auto &s : seconds) {
                            if (s) {
                                report.per_task_seconds.push_back(*s);
                            }
                        }
                        fail("task " + cids[i] + " failed: " +
                             h.value("error", std::string("unknown error")));
                    }
                }
                if (pending > 0) {
                    std::this_thread::sleep_for(std::chrono::milliseconds(2));
                }
            }
            for (const auto &s : seconds) {
                report.per_task_seconds.push_back(*s);
            }
        }
    } catch (const RemoteError &e) {
        fail(std::string("campaign aborted: ") + e.what());
    }
    report.tasks = report.per_task_seconds.size();
    report.wall_time_seconds = elapsed_since(t0);
    return report;
}

} // namespace qfw::bench
