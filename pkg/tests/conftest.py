"""Shared fixtures. Puts src/ and the project root on sys.path the way the scripts do."""

import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT / "src"))
sys.path.insert(0, str(PROJECT_ROOT))

from circuit_core import Circuit, GateKind, QubitRole, RoleKind, make_gate
from compile_cliffordt import (
    PERES_5CNOT,
    PERES_6CNOT,
    TOFFOLI,
    TOFFOLI_MIRROR,
    TOFFOLI_OPEN_TAIL,
    TR_5CNOT,
    TR_6CNOT,
    Template,
    TemplateRegistry,
)


@pytest.fixture
def single_cnot():
    return Circuit(n_qubits=2, gates=(make_gate(GateKind.CNOT, 0, 1),))


@pytest.fixture
def toffoli_circuit():
    return Circuit(n_qubits=3, gates=(make_gate(GateKind.TOFFOLI, 0, 1, 2),))


@pytest.fixture
def one_bit_register():
    """a0 on wire 0, b0 on wire 1, z on wire 2."""
    return (
        QubitRole(wire=0, role=RoleKind.A, index=0),
        QubitRole(wire=1, role=RoleKind.B, index=0),
        QubitRole(wire=2, role=RoleKind.Z),
    )


@pytest.fixture
def broken_toffoli():
    """Toffoli template with its first T-dagger flipped to T."""
    gates = list(TOFFOLI.gates)
    gates[3] = make_gate(GateKind.T, *gates[3].qubits)
    return Template(name=TOFFOLI.name, replaces=GateKind.TOFFOLI, gates=tuple(gates), provenance="corrupted")


@pytest.fixture
def corrupted_registry(broken_toffoli):
    """Default templates with a wrong Toffoli, registered without validation."""
    templates = [broken_toffoli, TOFFOLI_OPEN_TAIL, TOFFOLI_MIRROR, PERES_5CNOT, PERES_6CNOT, TR_5CNOT, TR_6CNOT]
    return TemplateRegistry(templates, validate=False)


@pytest.fixture
def circuit_dir(tmp_path):
    path = tmp_path / "circuits"
    path.mkdir()
    return path


ONE_QUBIT_KINDS = (GateKind.X, GateKind.H, GateKind.T, GateKind.TDAG)


def random_clifford_t(rng, n_qubits, size, echo=0.3):
    """Random Clifford+T circuit; with probability ``echo`` a gate repeats the inverse of the previous one."""
    gates = []
    for _ in range(size):
        if gates and rng.random() < echo:
            previous = gates[-1]
            kind = {GateKind.T: GateKind.TDAG, GateKind.TDAG: GateKind.T}.get(previous.kind, previous.kind)
            gates.append(make_gate(kind, *previous.qubits))
        elif n_qubits > 1 and rng.random() < 0.4:
            control, target = rng.choice(n_qubits, size=2, replace=False)
            gates.append(make_gate(GateKind.CNOT, int(control), int(target)))
        else:
            kind = ONE_QUBIT_KINDS[rng.integers(len(ONE_QUBIT_KINDS))]
            gates.append(make_gate(kind, int(rng.integers(n_qubits))))
    return Circuit(n_qubits=n_qubits, gates=tuple(gates))


@pytest.fixture
def random_circuit():
    return random_clifford_t
