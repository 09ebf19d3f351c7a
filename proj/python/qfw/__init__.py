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

"""Python bindings for the qfw quantum task framework core."""

from ._qfw import (
    Circuit,
    ConnectionError,
    GateKind,
    Instruction,
    QasmParseError,
    QfwError,
    RemoteError,
    ResourceManager,
    Server,
    WireClient,
    emit,
    final_amplitudes,
    ghz,
    parse,
    procs_for_circuit,
    random_circuit,
    run,
    run_campaign,
    validate,
)

__all__ = [
    "Circuit",
    "ConnectionError",
    "GateKind",
    "Instruction",
    "QasmParseError",
    "QfwError",
    "RemoteError",
    "ResourceManager",
    "Server",
    "WireClient",
    "connect",
    "emit",
    "final_amplitudes",
    "ghz",
    "parse",
    "procs_for_circuit",
    "random_circuit",
    "run",
    "run_campaign",
    "validate",
]


def connect(server_or_port, host="127.0.0.1"):
    """Opens a WireClient to a Server object or a port number."""
    port = getattr(server_or_port, "port", server_or_port)
    return WireClient(host, int(port))
