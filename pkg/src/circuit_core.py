#!/usr/bin/env python3
"""
Circuit intermediate representation, dependency DAG and cost metrics.

A circuit is an immutable pydantic model: a qubit count, optional role
labels (which wire holds which register bit), an ordered gate list and
optional segment annotations describing the V shape of ripple-carry
circuits (PRE, LEFT_CASCADE(layer=k), APEX, RIGHT_CASCADE(layer=k), POST).

Depths are longest DAG paths counting only the gates of the measured kind.
"""

import json
import re
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator

from circuit_errors import (
    CompositeGatePresent,
    InvalidCircuit,
    NonInvertibleComposite,
    RegisterMismatch,
)


class GateKind(str, Enum):
    """Gate alphabet. Values are the JSON document names."""
    X = "x"
    H = "h"
    T = "t"
    TDAG = "tdg"
    CNOT = "cnot"
    TOFFOLI = "toffoli"
    PERES = "peres"
    TR = "tr"


ARITY: Dict[GateKind, int] = {
    GateKind.X: 1,
    GateKind.H: 1,
    GateKind.T: 1,
    GateKind.TDAG: 1,
    GateKind.CNOT: 2,
    GateKind.TOFFOLI: 3,
    GateKind.PERES: 3,
    GateKind.TR: 3,
}

COMPOSITE_KINDS = frozenset({GateKind.TOFFOLI, GateKind.PERES, GateKind.TR})
CLASSICAL_KINDS = frozenset({GateKind.X, GateKind.CNOT}) | COMPOSITE_KINDS
T_KINDS = frozenset({GateKind.T, GateKind.TDAG})

# Column order of the published complexity tables
QUANTITIES: Tuple[str, ...] = ("cnot_depth", "cnot_count", "t_depth", "t_count")


class Gate(BaseModel):
    """One gate instance. CNOT operands are (control, target); composites are (q1, q2, q3)."""
    model_config = ConfigDict(frozen=True)

    kind: GateKind
    qubits: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_operands(self) -> "Gate":
        expected = ARITY[self.kind]
        if len(self.qubits) != expected:
            raise ValueError(
                f"{self.kind.value} takes {expected} qubit(s), got {len(self.qubits)}"
            )
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.kind.value} {list(self.qubits)}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"repeated qubit in {self.kind.value} {list(self.qubits)}")
        return self

    @property
    def is_composite(self) -> bool:
        return self.kind in COMPOSITE_KINDS

    def __str__(self) -> str:
        return f"{self.kind.value}({','.join(str(q) for q in self.qubits)})"


def make_gate(kind: GateKind, *qubits: int) -> Gate:
    return Gate(kind=kind, qubits=tuple(qubits))


class RoleKind(str, Enum):
    A = "A"
    B = "B"
    ANCILLA = "ANCILLA"
    Z = "Z"


class QubitRole(BaseModel):
    """Register role of one wire. A and B carry a bit index, ANCILLA and Z do not."""
    model_config = ConfigDict(frozen=True)

    wire: int = Field(ge=0)
    role: RoleKind
    index: Optional[int] = None

    @model_validator(mode="after")
    def _check_index(self) -> "QubitRole":
        indexed = self.role in (RoleKind.A, RoleKind.B)
        if indexed and (self.index is None or self.index < 0):
            raise ValueError(f"role {self.role.value} on wire {self.wire} needs a bit index")
        if not indexed and self.index is not None:
            raise ValueError(f"role {self.role.value} on wire {self.wire} takes no index")
        return self


# Segment tags
PRE = "PRE"
APEX = "APEX"
POST = "POST"
LEFT_CASCADE = "LEFT_CASCADE"
RIGHT_CASCADE = "RIGHT_CASCADE"

_TAG_RE = re.compile(r"^(PRE|APEX|POST)$|^(LEFT_CASCADE|RIGHT_CASCADE)\(layer=(\d+)\)$")


def left_tag(layer: int) -> str:
    return f"{LEFT_CASCADE}(layer={layer})"


def right_tag(layer: int) -> str:
    return f"{RIGHT_CASCADE}(layer={layer})"


def parse_tag(tag: str) -> Tuple[str, Optional[int]]:
    """Split a segment tag into (name, layer). Layer is None for PRE/APEX/POST."""
    match = _TAG_RE.match(tag)
    if match is None:
        raise ValueError(f"unknown segment tag {tag!r}")
    if match.group(1):
        return match.group(1), None
    return match.group(2), int(match.group(3))


def mirror_tag(tag: str) -> str:
    name, layer = parse_tag(tag)
    if name == PRE:
        return POST
    if name == POST:
        return PRE
    if name == LEFT_CASCADE:
        return right_tag(layer)
    if name == RIGHT_CASCADE:
        return left_tag(layer)
    return tag


class Segment(BaseModel):
    """A tagged half-open gate index range [from, to)."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    tag: str
    start: int = Field(alias="from", ge=0)
    stop: int = Field(alias="to", ge=0)

    @model_validator(mode="after")
    def _check_range(self) -> "Segment":
        parse_tag(self.tag)
        if self.stop < self.start:
            raise ValueError(f"segment {self.tag} ends before it starts ({self.start}..{self.stop})")
        return self


class Circuit(BaseModel):
    """Immutable gate sequence over a fixed register."""
    model_config = ConfigDict(frozen=True)

    n_qubits: int = Field(ge=0)
    roles: Tuple[QubitRole, ...] = ()
    gates: Tuple[Gate, ...] = ()
    segments: Tuple[Segment, ...] = ()
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_invariants(self) -> "Circuit":
        for position, gate in enumerate(self.gates):
            if max(gate.qubits) >= self.n_qubits:
                raise ValueError(
                    f"gate {position} ({gate}) addresses a wire outside {self.n_qubits} qubits"
                )

        if self.roles:
            wires = sorted(r.wire for r in self.roles)
            if wires != list(range(self.n_qubits)):
                raise ValueError("roles must label every wire exactly once")
            labels = [(r.role, r.index) for r in self.roles]
            if len(set(labels)) != len(labels):
                raise ValueError("duplicate role label")

        cursor = 0
        for seg in self.segments:
            if seg.start < cursor:
                raise ValueError(f"segment {seg.tag} overlaps or precedes its predecessor")
            if seg.stop > len(self.gates):
                raise ValueError(f"segment {seg.tag} runs past the last gate")
            cursor = seg.stop
        return self

    @property
    def has_composites(self) -> bool:
        return any(g.is_composite for g in self.gates)

    @property
    def is_classical(self) -> bool:
        return all(g.kind in CLASSICAL_KINDS for g in self.gates)

    def wire_of(self, role: RoleKind, index: Optional[int] = None) -> int:
        for r in self.roles:
            if r.role == role and r.index == index:
                return r.wire
        raise KeyError(f"no wire with role {role.value}{'' if index is None else index}")

    def register_width(self, role: RoleKind) -> int:
        return sum(1 for r in self.roles if r.role == role)

    def segment_gates(self, segment: Segment) -> Tuple[Gate, ...]:
        return self.gates[segment.start:segment.stop]

    def find_segment(self, tag: str) -> Optional[Segment]:
        for seg in self.segments:
            if seg.tag == tag:
                return seg
        return None

    def kind_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for gate in self.gates:
            counts[gate.kind.value] = counts.get(gate.kind.value, 0) + 1
        return counts


class MetricReport(BaseModel):
    """The four cost quantities, plus totals when they were measured."""
    model_config = ConfigDict(frozen=True)

    t_count: int = Field(ge=0)
    t_depth: int = Field(ge=0)
    cnot_count: int = Field(ge=0)
    cnot_depth: int = Field(ge=0)
    total_gate_count: Optional[int] = Field(default=None, ge=0)
    total_depth: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _check_bounds(self) -> "MetricReport":
        if self.t_depth > self.t_count:
            raise ValueError("t_depth exceeds t_count")
        if self.cnot_depth > self.cnot_count:
            raise ValueError("cnot_depth exceeds cnot_count")
        if (
            self.total_depth is not None
            and self.total_gate_count is not None
            and self.total_depth > self.total_gate_count
        ):
            raise ValueError("total_depth exceeds total_gate_count")
        return self

    def quantity(self, name: str) -> int:
        return getattr(self, name)

    def table_columns(self) -> Tuple[int, int, int, int]:
        return tuple(self.quantity(q) for q in QUANTITIES)


_ROOT = -1


def build_dag(circuit: Circuit) -> nx.DiGraph:
    """Per-wire dependency edges: each gate depends on the last earlier gate on each of its wires.

    Nodes are gate indices carrying the gate's ``kind`` and ``qubits``.
    """
    dag = nx.DiGraph()
    last_on_wire: Dict[int, int] = {}
    for v, gate in enumerate(circuit.gates):
        dag.add_node(v, kind=gate.kind, qubits=gate.qubits)
        for q in gate.qubits:
            if q in last_on_wire:
                dag.add_edge(last_on_wire[q], v)
            last_on_wire[q] = v
    return dag


def kind_depth(dag: nx.DiGraph, weight: Callable[[GateKind], int]) -> int:
    """Maximum over DAG paths of the summed per-gate weights.

    Node weights move onto incoming edges, with a root feeding every gate,
    so networkx's edge-weighted longest path measures them.
    """
    if dag.number_of_nodes() == 0:
        return 0
    rooted = nx.DiGraph()
    rooted.add_weighted_edges_from((_ROOT, v, weight(kind)) for v, kind in dag.nodes(data="kind"))
    rooted.add_weighted_edges_from((u, v, weight(dag.nodes[v]["kind"])) for u, v in dag.edges)
    return int(nx.dag_longest_path_length(rooted, weight="weight", default_weight=0))


def metrics(circuit: Circuit) -> MetricReport:
    """Measure T/CNOT counts and DAG depths of a Clifford+T circuit.

    Raises:
        CompositeGatePresent: if a TOFFOLI/PERES/TR gate is still present
    """
    for position, gate in enumerate(circuit.gates):
        if gate.is_composite:
            raise CompositeGatePresent(
                f"gate {position} is {gate}; compile the circuit to Clifford+T first"
            )

    gates = circuit.gates
    dag = build_dag(circuit)

    def is_t(kind: GateKind) -> int:
        return 1 if kind in T_KINDS else 0

    def is_cnot(kind: GateKind) -> int:
        return 1 if kind == GateKind.CNOT else 0

    return MetricReport(
        t_count=sum(is_t(g.kind) for g in gates),
        t_depth=kind_depth(dag, is_t),
        cnot_count=sum(is_cnot(g.kind) for g in gates),
        cnot_depth=kind_depth(dag, is_cnot),
        total_gate_count=len(gates),
        total_depth=kind_depth(dag, lambda kind: 1),
    )


def segment_metrics(circuit: Circuit) -> Dict[str, MetricReport]:
    """Metrics of each annotated segment measured in isolation."""
    return {
        seg.tag: metrics(circuit.model_copy(update={"gates": circuit.segment_gates(seg), "segments": ()}))
        for seg in circuit.segments
    }


def asap_layers(circuit: Circuit) -> List[List[int]]:
    """Greedy as-soon-as-possible layering into gates with disjoint supports."""
    return [sorted(layer) for layer in nx.topological_generations(build_dag(circuit))]


def concat(c1: Circuit, c2: Circuit) -> Circuit:
    """c1 followed by c2. Segment ranges of c2 are shifted past c1's gates.

    Raises:
        RegisterMismatch: if qubit counts differ or both carry different role maps
    """
    if c1.n_qubits != c2.n_qubits:
        raise RegisterMismatch(f"cannot concatenate {c1.n_qubits}-qubit and {c2.n_qubits}-qubit circuits")
    if c1.roles and c2.roles and set(c1.roles) != set(c2.roles):
        raise RegisterMismatch("role maps differ")

    offset = len(c1.gates)
    shifted = tuple(
        Segment(tag=s.tag, start=s.start + offset, stop=s.stop + offset) for s in c2.segments
    )
    return Circuit(
        n_qubits=c1.n_qubits,
        roles=c1.roles or c2.roles,
        gates=c1.gates + c2.gates,
        segments=c1.segments + shifted,
    )


_SELF_INVERSE = frozenset({GateKind.X, GateKind.H, GateKind.CNOT, GateKind.TOFFOLI})
_ADJOINT_KIND = {GateKind.T: GateKind.TDAG, GateKind.TDAG: GateKind.T}
_COMPOSITE_INVERSE_CANDIDATES = {GateKind.PERES: GateKind.TR, GateKind.TR: GateKind.PERES}
_verified_inverses: Optional[Dict[GateKind, GateKind]] = None


def _composite_inverses() -> Dict[GateKind, GateKind]:
    # PERES/TR inverses are only trusted after their permutations compose to identity
    global _verified_inverses
    if _verified_inverses is None:
        from gate_semantics import permutations_are_inverse

        _verified_inverses = {
            kind: inverse
            for kind, inverse in _COMPOSITE_INVERSE_CANDIDATES.items()
            if permutations_are_inverse(kind, inverse)
        }
    return _verified_inverses


def inverse_gate(gate: Gate) -> Gate:
    if gate.kind in _SELF_INVERSE:
        return gate
    if gate.kind in _ADJOINT_KIND:
        return Gate(kind=_ADJOINT_KIND[gate.kind], qubits=gate.qubits)
    inverses = _composite_inverses()
    if gate.kind not in inverses:
        raise NonInvertibleComposite(f"no verified inverse registered for {gate.kind.value}")
    return Gate(kind=inverses[gate.kind], qubits=gate.qubits)


def reverse(circuit: Circuit) -> Circuit:
    """Adjoint circuit: reversed order, each gate inverted, V-shape tags mirrored."""
    total = len(circuit.gates)
    gates = tuple(inverse_gate(g) for g in reversed(circuit.gates))
    segments = tuple(
        Segment(tag=mirror_tag(s.tag), start=total - s.stop, stop=total - s.start)
        for s in reversed(circuit.segments)
    )
    return Circuit(
        n_qubits=circuit.n_qubits,
        roles=circuit.roles,
        gates=gates,
        segments=segments,
    )


def circuit_to_document(circuit: Circuit) -> Dict[str, Any]:
    """JSON document form with the bit-exact field names (segments use from/to)."""
    document = circuit.model_dump(mode="json", by_alias=True)
    if not document["metadata"]:
        del document["metadata"]
    return document


def circuit_from_document(document: Dict[str, Any]) -> Circuit:
    return Circuit.model_validate(document)


def save_circuit(circuit: Circuit, path: Union[str, Path]) -> Path:
    output_path = Path(path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, 'w') as f:
        json.dump(circuit_to_document(circuit), f, indent=2)
        f.write("\n")
    return output_path


def load_circuit(path: Union[str, Path]) -> Circuit:
    """Load and validate a circuit document.

    Raises:
        pydantic.ValidationError: on any schema violation
        json.JSONDecodeError: if the file is not JSON
    """
    with open(path, 'r') as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise InvalidCircuit(f"{path}: circuit document must be a JSON object")
    return circuit_from_document(data)
