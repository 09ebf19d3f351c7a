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

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfw/bench.hpp"
#include "qfw/qasm.hpp"
#include "qfw/qpm.hpp"
#include "qfw/resource_manager.hpp"
#include "qfw/service.hpp"
#include "qfw/simulator.hpp"

namespace py = pybind11;

namespace {

py::object to_python(const nlohmann::json &value) {
    return py::module_::import("json").attr("loads")(value.dump());
}

nlohmann::json from_python(const py::handle &value) {
    const std::string text = py::str(py::module_::import("json").attr("dumps")(value));
    return nlohmann::json::parse(text);
}

py::dict result_dict(const qfw::ExecutionResult &r) {
    return to_python({{"counts", qfw::to_json(r).at("counts")},
                      {"shots", r.shots},
                      {"stats", qfw::to_json(r.stats)}});
}

py::dict placement_dict(const qfw::Placement &p) {
    py::list assignment;
    for (const auto &[node, slots] : p.assignment) {
        assignment.append(py::make_tuple(node, slots));
    }
    py::dict d;
    d["instance_id"] = static_cast<std::uint64_t>(p.instance_id);
    d["assignment"] = assignment;
    return d;
}

py::dict utilization_dict(const qfw::Utilization &u) { return to_python(qfw::to_json(u)); }

qfw::SimConfig sim_config(std::optional<std::uint64_t> seed, std::size_t workers, std::size_t max_qubits) {
    qfw::SimConfig config;
    config.seed = seed;
    config.workers = workers;
    config.max_qubits = max_qubits;
    return config;
}

/// Server handle with an explicit lifetime for use as a context manager.
class PyServer {
  public:
    explicit PyServer(qfw::ServiceConfig config) {
        py::gil_scoped_release release;
        server_ = qfw::serve(std::move(config));
    }
    std::uint16_t port() const { return server_->port(); }
    void stop() {
        py::gil_scoped_release release;
        server_->stop();
    }

  private:
    std::unique_ptr<qfw::Server> server_;
};

} // namespace

PYBIND11_MODULE(_qfw, m) {
    m.doc() = "Bindings for the qfw C++ core";

    // Exception types live for the life of the interpreter; the references
    // are intentionally never dropped.
    static PyObject *qfw_error =
        py::exception<qfw::Error>(m, "QfwError", PyExc_RuntimeError).release().ptr();
    static PyObject *parse_error =
        py::exception<qfw::qasm::ParseError>(m, "QasmParseError", qfw_error).release().ptr();
    static PyObject *remote_error =
        py::exception<qfw::RemoteError>(m, "RemoteError", qfw_error).release().ptr();
    static PyObject *connection_error =
        py::exception<qfw::ConnectionError>(m, "ConnectionError", PyExc_ConnectionError).release().ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        auto make = [](PyObject *type, const qfw::Error &e) {
            py::object instance = py::reinterpret_borrow<py::object>(type)(e.what());
            instance.attr("code") = static_cast<int>(e.code());
            return instance;
        };
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const qfw::qasm::ParseError &e) {
            py::object instance = make(parse_error, e);
            instance.attr("line") = e.line();
            instance.attr("column") = e.column();
            instance.attr("category") = std::string(qfw::qasm::to_string(e.category()));
            PyErr_SetObject(parse_error, instance.ptr());
        } catch (const qfw::RemoteError &e) {
            py::object instance = make(remote_error, e);
            instance.attr("data") = to_python(e.data());
            PyErr_SetObject(remote_error, instance.ptr());
        } catch (const qfw::Error &e) {
            PyErr_SetObject(qfw_error, make(qfw_error, e).ptr());
        } catch (const qfw::ConnectionError &e) {
            PyErr_SetString(connection_error, e.what());
        }
    });

    py::enum_<qfw::GateKind> gate_kind(m, "GateKind");
    for (const auto &info : qfw::all_gates()) {
        gate_kind.value(std::string(info.name).c_str(), info.kind);
    }

    py::class_<qfw::Instruction>(m, "Instruction")
        .def(py::init<>())
        .def(py::init([](qfw::GateKind kind, std::vector<std::size_t> qubits,
                         std::vector<std::size_t> clbits, std::vector<double> params) {
                 return qfw::Instruction{kind, std::move(qubits), std::move(clbits), std::move(params)};
             }),
             py::arg("kind"), py::arg("qubits"), py::arg("clbits") = std::vector<std::size_t>{},
             py::arg("params") = std::vector<double>{})
        .def_readwrite("kind", &qfw::Instruction::kind)
        .def_readwrite("qubits", &qfw::Instruction::qubits)
        .def_readwrite("clbits", &qfw::Instruction::clbits)
        .def_readwrite("params", &qfw::Instruction::params)
        .def(py::self == py::self)
        .def("__repr__", [](const qfw::Instruction &i) {
            std::string out = std::string(qfw::gate_info(i.kind).name) + "(";
            for (std::size_t k = 0; k < i.qubits.size(); ++k) {
                out += (k ? "," : "") + std::to_string(i.qubits[k]);
            }
            return out + ")";
        });

    py::class_<qfw::Circuit>(m, "Circuit")
        .def(py::init<>())
        .def_readwrite("name", &qfw::Circuit::name)
        .def_readwrite("num_qubits", &qfw::Circuit::num_qubits)
        .def_readwrite("num_clbits", &qfw::Circuit::num_clbits)
        .def_readwrite("instructions", &qfw::Circuit::instructions)
        .def(py::self == py::self)
        .def("__len__", [](const qfw::Circuit &c) { return c.instructions.size(); });

    m.def("parse", &qfw::qasm::parse, py::arg("source"), "Parse OpenQASM 2.0 text into a Circuit.");
    m.def("emit", &qfw::qasm::emit, py::arg("circuit"), "Emit a Circuit as OpenQASM 2.0 text.");
    m.def("validate", &qfw::qasm::validate, py::arg("circuit"));

    m.def(
        "run",
        [](const qfw::Circuit &circuit, std::uint64_t shots, std::optional<std::uint64_t> seed,
           std::size_t workers, std::size_t max_qubits) {
            qfw::ExecutionResult r;
            {
                py::gil_scoped_release release;
                r = qfw::sim::run(circuit, shots, sim_config(seed, workers, max_qubits));
            }
            return result_dict(r);
        },
        py::arg("circuit"), py::arg("shots"), py::arg("seed") = py::none(), py::arg("workers") = 1,
        py::arg("max_qubits") = 24);

    m.def(
        "final_amplitudes",
        [](const qfw::Circuit &circuit, std::size_t workers, std::size_t max_qubits) {
            std::optional<qfw::StateVector> state;
            {
                py::gil_scoped_release release;
                state = qfw::sim::final_amplitudes(circuit, sim_config(std::nullopt, workers, max_qubits));
            }
            const auto amps = state->amplitudes();
            py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(amps.size()));
            std::copy(amps.begin(), amps.end(), out.mutable_data());
            return out;
        },
        py::arg("circuit"), py::arg("workers") = 1, py::arg("max_qubits") = 24);

    m.def("ghz", &qfw::bench::ghz, py::arg("num_qubits"));
    m.def("random_circuit", &qfw::bench::random_circuit, py::arg("num_qubits"), py::arg("depth"),
          py::arg("seed"));
    m.def("procs_for_circuit", &qfw::procs_for_circuit, py::arg("num_qubits"));

    py::class_<qfw::ResourceManager>(m, "ResourceManager")
        .def(py::init([](std::size_t nodes, std::size_t slots) {
                 return std::make_unique<qfw::ResourceManager>(qfw::uniform_pool(nodes, slots));
             }),
             py::arg("nodes") = 2, py::arg("slots_per_node") = 8)
        .def(py::init([](const std::vector<std::pair<std::string, std::size_t>> &nodes) {
                 std::vector<qfw::NodeSpec> specs;
                 for (const auto &[id, slots] : nodes) {
                     specs.push_back({id, slots});
                 }
                 return std::make_unique<qfw::ResourceManager>(std::move(specs));
             }),
             py::arg("nodes"))
        .def("request",
             [](qfw::ResourceManager &rm, std::size_t procs) -> py::dict {
                 const auto outcome = rm.request(procs);
                 if (const auto *p = std::get_if<qfw::Placement>(&outcome)) {
                     return placement_dict(*p);
                 }
                 const auto &q = std::get<qfw::Queued>(outcome);
                 py::dict d;
                 d["queued"] = q.position;
                 d["ticket"] = static_cast<std::uint64_t>(q.ticket);
                 return d;
             },
             py::arg("procs"), "Placement dict, or {'queued': position, 'ticket': id}.")
        .def("release",
             [](qfw::ResourceManager &rm, std::uint64_t id) {
                 const auto summary = rm.release(static_cast<qfw::InstanceId>(id));
                 py::list granted;
                 for (const auto &g : summary.granted) {
                     granted.append(placement_dict(g));
                 }
                 py::dict d;
                 d["total_freed"] = summary.total_freed;
                 d["granted"] = granted;
                 return d;
             },
             py::arg("instance_id"))
        .def("utilization", [](const qfw::ResourceManager &rm) { return utilization_dict(rm.utilization()); })
        .def_property_readonly("capacity", &qfw::ResourceManager::capacity);

    py::class_<PyServer>(m, "Server")
        .def(py::init([](std::size_t nodes, std::size_t slots_per_node, const std::string &mode,
                         double partition, std::vector<std::string> backends, double mock_latency,
                         std::uint16_t port, const std::string &host, double grace) {
                 qfw::ServiceConfig config;
                 config.nodes = nodes;
                 config.slots_per_node = slots_per_node;
                 if (mode == "per-job") {
                     config.mode = qfw::SchedulerMode::per_job(partition);
                 } else if (mode != "many-job") {
                     throw qfw::Error(qfw::ErrorCode::validation, "mode must be many-job or per-job");
                 }
                 config.backends = std::move(backends);
                 config.mock_latency_seconds = mock_latency;
                 config.port = port;
                 config.host = host;
                 config.shutdown_grace = std::chrono::milliseconds(static_cast<long long>(grace * 1000));
                 return std::make_unique<PyServer>(std::move(config));
             }),
             py::arg("nodes") = 2, py::arg("slots_per_node") = 8, py::arg("mode") = "many-job",
             py::arg("partition") = 0.5, py::arg("backends") = std::vector<std::string>{},
             py::arg("mock_latency") = 0.0, py::arg("port") = 0, py::arg("host") = "127.0.0.1",
             py::arg("grace") = 30.0)
        .def_property_readonly("port", &PyServer::port)
        .def("stop", &PyServer::stop)
        .def("__enter__", [](PyServer &s) -> PyServer & { return s; }, py::return_value_policy::reference)
        .def("__exit__", [](PyServer &s, const py::args &) { s.stop(); });

    py::class_<qfw::WireClient>(m, "WireClient")
        .def(py::init<const std::string &, std::uint16_t>(), py::arg("host"), py::arg("port"))
        .def(
            "call",
            [](qfw::WireClient &c, const std::string &method, const py::object &params) {
                const nlohmann::json p =
                    params.is_none() ? nlohmann::json::object() : from_python(params);
                nlohmann::json out;
                {
                    py::gil_scoped_release release;
                    out = c.call(method, p);
                }
                return to_python(out);
            },
            py::arg("method"), py::arg("params") = py::none())
        .def("close", &qfw::WireClient::close);

    m.def(
        "run_campaign",
        [](qfw::WireClient &client, const qfw::Circuit &circuit, std::size_t count, bool concurrent,
           std::optional<std::string> backend, std::uint64_t shots, std::optional<std::uint64_t> seed) {
            qfw::bench::CampaignOptions options;
            options.count = count;
            options.mode = concurrent ? qfw::bench::CampaignMode::concurrent
                                      : qfw::bench::CampaignMode::sequential;
            options.backend = std::move(backend);
            options.shots = shots;
            options.seed = seed;
            options.workload = circuit.name.empty() ? "custom" : circuit.name;
            qfw::bench::BenchReport report;
            {
                py::gil_scoped_release release;
                report = qfw::bench::run_campaign(client, circuit, options);
            }
            return to_python(qfw::bench::to_json(report));
        },
        py::arg("client"), py::arg("circuit"), py::arg("count"), py::arg("concurrent") = false,
        py::arg("backend") = py::none(), py::arg("shots") = 1, py::arg("seed") = py::none());
}
