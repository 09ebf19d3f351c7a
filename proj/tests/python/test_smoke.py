# Copyright 2026 The QFw Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math
import time

import numpy as np
import pytest

import qfw

BELL = """OPENQASM 2.0;
include "qelib1.inc";
qreg q[2];
creg c[2];
h q[0];
cx q[0],q[1];
measure q -> c;
"""


def test_parse_and_emit_round_trip():
    circuit = qfw.parse(BELL)
    assert circuit.num_qubits == 2
    assert circuit.num_clbits == 2
    assert [i.kind for i in circuit.instructions] == [
        qfw.GateKind.h,
        qfw.GateKind.cx,
        qfw.GateKind.measure,
        qfw.GateKind.measure,
    ]
    assert qfw.parse(qfw.emit(circuit)) == circuit
    assert qfw.validate(circuit) == []


def test_parse_error_carries_position():
    with pytest.raises(qfw.QasmParseError) as info:
        qfw.parse("OPENQASM 2.0;\nqreg q[1]\nh q[0];")
    assert info.value.line == 3
    assert info.value.column == 1
    assert info.value.category == "syntax"
    assert info.value.code == 1
    assert isinstance(info.value, qfw.QfwError)


def test_validate_reports_duplicates():
    c = qfw.Circuit()
    c.num_qubits = 2
    c.instructions = [qfw.Instruction(qfw.GateKind.cx, [0, 0])]
    assert qfw.validate(c) == ["duplicate qubit operand in instruction 0"]


def test_bell_amplitudes():
    state = qfw.final_amplitudes(qfw.parse("OPENQASM 2.0; qreg q[2]; h q[0]; CX q[0],q[1];"))
    assert state.dtype == np.complex128
    np.testing.assert_allclose(state, [1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)], atol=1e-15)


def test_amplitudes_match_numpy_matrices():
    # Independent check with numpy kron products for a two-qubit circuit.
    h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    theta = 0.37
    rx = np.array(
        [[math.cos(theta / 2), -1j * math.sin(theta / 2)], [-1j * math.sin(theta / 2), math.cos(theta / 2)]]
    )
    cx = np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]])  # control q0 (LSB)
    psi = np.zeros(4, dtype=complex)
    psi[0] = 1
    psi = np.kron(np.eye(2), h) @ psi  # h on q0
    psi = np.kron(rx, np.eye(2)) @ psi  # rx on q1
    psi = cx @ psi
    circuit = qfw.parse("OPENQASM 2.0; qreg q[2]; h q[0]; rx(0.37) q[1]; CX q[0],q[1];")
    np.testing.assert_allclose(qfw.final_amplitudes(circuit), psi, atol=1e-12)


def test_run_ghz():
    result = qfw.run(qfw.ghz(4), 2048, seed=3)
    assert result["shots"] == 2048
    assert set(result["counts"]) <= {"0000", "1111"}
    assert sum(result["counts"].values()) == 2048
    assert result["counts"] == qfw.run(qfw.ghz(4), 2048, seed=3, workers=3)["counts"]


def test_run_budget_error():
    with pytest.raises(qfw.QfwError) as info:
        qfw.run(qfw.ghz(5), 1, max_qubits=4)
    assert info.value.code == 2


def test_generators_and_heuristic():
    assert len(qfw.ghz(20)) == 40
    assert qfw.random_circuit(3, 5, 9) == qfw.random_circuit(3, 5, 9)
    assert len(qfw.random_circuit(2, 0, 1)) == 0
    assert [qfw.procs_for_circuit(n) for n in (1, 10, 11, 20)] == [1, 1, 2, 2]


def test_resource_manager_replay():
    rm = qfw.ResourceManager(2, 8)
    assert rm.request(4)["assignment"] == [("node1", 4)]
    eight = rm.request(8)
    assert eight["assignment"] == [("node1", 4), ("node2", 4)]
    assert rm.request(4)["assignment"] == [("node2", 4)]
    assert rm.request(4)["queued"] == 0
    released = rm.release(eight["instance_id"])
    assert released["total_freed"] == 8
    assert released["granted"][0]["assignment"] == [("node1", 4)]
    with pytest.raises(qfw.QfwError):
        rm.request(17)


def test_wire_protocol_end_to_end():
    with qfw.Server(nodes=2, slots_per_node=8, mock_latency=0.05, grace=2.0) as server:
        client = qfw.connect(server)
        assert client.call("utilization")["free"] == 16
        names = [b["name"] for b in client.call("list_backends")["backends"]]
        assert names == ["statevector", "mock"]
        cid = client.call(
            "create_circuit",
            {"qasm": qfw.emit(qfw.ghz(5)), "num_qubits": 5, "num_shots": 100, "compiler": "staq"},
        )["cid"]
        out = client.call("sync_run", {"cid": cid})
        assert out["rc"] == 0
        assert set(out["result"]["counts"]) <= {"00000", "11111"}
        with pytest.raises(qfw.RemoteError) as info:
            client.call("nope")
        assert info.value.code == 3
        client.close()


def test_campaign_speedup():
    with qfw.Server(mock_latency=0.1, grace=2.0) as server:
        client = qfw.connect(server)
        circuit = qfw.ghz(20)
        seq = qfw.run_campaign(client, circuit, 4, concurrent=False, backend="mock")
        con = qfw.run_campaign(client, circuit, 4, concurrent=True, backend="mock")
        assert seq["tasks"] == con["tasks"] == 4
        assert con["wall_time_seconds"] < 0.5 * seq["wall_time_seconds"]


def test_connection_refused():
    with qfw.Server() as server:
        port = server.port
    time.sleep(0.05)
    with pytest.raises(ConnectionError):
        qfw.WireClient("127.0.0.1", port)
