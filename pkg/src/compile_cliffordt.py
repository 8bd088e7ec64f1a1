#!/usr/bin/env python3
"""
Compilation of high-level circuits to Clifford+T.

NAIVE replaces every composite on its own. OPTIMIZED reads the V-shape
segments: a left-branch Toffoli whose right-branch partner is a Peres on
the same operands gets the open-tail Toffoli (its final T-dagger on q1 then
meets the Peres's leading T), a Toffoli partner gets the mirrored Toffoli
(four T and four CNOT per layer meet their inverses), and cancel_pairs
removes whatever became adjacent.
"""

from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from circuit_core import (
    Circuit,
    Gate,
    GateKind,
    LEFT_CASCADE,
    MetricReport,
    RIGHT_CASCADE,
    Segment,
    make_gate,
    parse_tag,
)
from circuit_errors import CompositeGatePresent, TemplateMismatch, UnsupportedComposite
from config.defaults import UNITARY_TOLERANCE
from gate_semantics import full_unitary, permutation_matrix
from synthesize_circuits import CascadeShape

# Placeholder wires inside templates
A, B, C = 0, 1, 2


class Template(BaseModel):
    """Clifford+T gate list over placeholder wires (a, b, c) = (0, 1, 2)."""
    model_config = ConfigDict(frozen=True)

    name: str
    replaces: GateKind
    gates: Tuple[Gate, ...]
    provenance: str

    def local_circuit(self) -> Circuit:
        return Circuit(n_qubits=3, gates=self.gates)

    def instantiate(self, operands: Sequence[int]) -> List[Gate]:
        return [Gate(kind=g.kind, qubits=tuple(operands[q] for q in g.qubits)) for g in self.gates]

    def reversed_adjoint(self, name: str, replaces: GateKind) -> "Template":
        flipped = {GateKind.T: GateKind.TDAG, GateKind.TDAG: GateKind.T}
        gates = tuple(
            Gate(kind=flipped.get(g.kind, g.kind), qubits=g.qubits) for g in reversed(self.gates)
        )
        return Template(name=name, replaces=replaces, gates=gates, provenance=f"reversed adjoint of {self.name}")


def _seq(*ops: Tuple) -> Tuple[Gate, ...]:
    return tuple(make_gate(kind, *qubits) for kind, *qubits in ops)


H, T, TDG, CX = GateKind.H, GateKind.T, GateKind.TDAG, GateKind.CNOT

_TOFFOLI_HEAD = (
    (H, C), (CX, B, C), (CX, C, A), (TDG, A), (TDG, B), (T, C),
    (CX, B, A), (CX, B, C), (T, A), (TDG, C), (CX, C, A), (H, C),
)

TOFFOLI = Template(
    name="toffoli",
    replaces=GateKind.TOFFOLI,
    gates=_seq(*_TOFFOLI_HEAD, (CX, A, B), (TDG, A), (T, B), (CX, A, B)),
    provenance="T-depth 3, 7 CNOT Toffoli",
)

TOFFOLI_OPEN_TAIL = Template(
    name="toffoli_open_tail",
    replaces=GateKind.TOFFOLI,
    gates=_seq(*_TOFFOLI_HEAD, (CX, A, B), (T, B), (CX, A, B), (TDG, A)),
    provenance="toffoli with its last T-dagger on q1 moved past the commuting CNOT",
)

TOFFOLI_MIRROR = TOFFOLI.reversed_adjoint("toffoli_mirror", GateKind.TOFFOLI)

PERES_5CNOT = Template(
    name="peres_5cnot",
    replaces=GateKind.PERES,
    gates=_seq(
        (T, A), (T, B), (H, C), (CX, C, B), (CX, A, C), (TDG, B), (TDG, C),
        (CX, A, B), (CX, A, C), (T, B), (T, C), (CX, C, B), (TDG, B), (H, C),
    ),
    provenance="5 CNOT Peres",
)

PERES_6CNOT = Template(
    name="peres_6cnot",
    replaces=GateKind.PERES,
    gates=_seq(*_TOFFOLI_HEAD, (CX, A, B), (TDG, A), (T, B)),
    provenance="toffoli followed by CNOT(q1, q2), the trailing CNOT pair absorbed",
)

TR_5CNOT = PERES_5CNOT.reversed_adjoint("tr_5cnot", GateKind.TR)
TR_6CNOT = PERES_6CNOT.reversed_adjoint("tr_6cnot", GateKind.TR)


class TemplateRegistry:
    """Named templates, each checked against its gate's unitary when registered."""

    def __init__(self, templates: Iterable[Template] = (), validate: bool = True):
        self._templates: Dict[str, Template] = {}
        for template in templates:
            self.register(template, validate=validate)

    def register(self, template: Template, validate: bool = True):
        if validate:
            deviation = template_deviation(template)
            if deviation > UNITARY_TOLERANCE:
                raise TemplateMismatch(
                    f"template {template.name} deviates from {template.replaces.value} by {deviation:.3e}"
                )
        self._templates[template.name] = template

    def get(self, name: str) -> Template:
        if name not in self._templates:
            raise UnsupportedComposite(f"no template named {name!r} is registered")
        return self._templates[name]

    def names(self) -> List[str]:
        return sorted(self._templates)

    def __contains__(self, name: str) -> bool:
        return name in self._templates


def template_deviation(template: Template) -> float:
    """Largest entry-wise distance between a template's unitary and its gate's permutation matrix."""
    target = permutation_matrix(Circuit(n_qubits=3, gates=(make_gate(template.replaces, A, B, C),)))
    return float(np.max(np.abs(full_unitary(template.local_circuit()) - target)))


DEFAULT_REGISTRY = TemplateRegistry(
    [TOFFOLI, TOFFOLI_OPEN_TAIL, TOFFOLI_MIRROR, PERES_5CNOT, PERES_6CNOT, TR_5CNOT, TR_6CNOT]
)


class CompileMode(str, Enum):
    NAIVE = "naive"
    OPTIMIZED = "optimized"


NAIVE_TEMPLATES = {
    GateKind.TOFFOLI: TOFFOLI.name,
    GateKind.PERES: PERES_6CNOT.name,
    GateKind.TR: TR_6CNOT.name,
}

UNPAIRED_TEMPLATES = {
    GateKind.TOFFOLI: TOFFOLI.name,
    GateKind.PERES: PERES_5CNOT.name,
    GateKind.TR: TR_5CNOT.name,
}

MISSING_SEGMENTS_WARNING = "optimized compilation needs segment annotations; fell back to naive"


def _composite_indices(circuit: Circuit, segment: Segment) -> List[int]:
    return [i for i in range(segment.start, segment.stop) if circuit.gates[i].is_composite]


def _plan_optimized(circuit: Circuit) -> Dict[int, str]:
    """Template choice per composite gate index."""
    plan = {i: UNPAIRED_TEMPLATES[g.kind] for i, g in enumerate(circuit.gates) if g.is_composite}

    left: Dict[int, Segment] = {}
    right: Dict[int, Segment] = {}
    for seg in circuit.segments:
        name, layer = parse_tag(seg.tag)
        if name == LEFT_CASCADE:
            left[layer] = seg
        elif name == RIGHT_CASCADE:
            right[layer] = seg

    for layer, left_seg in left.items():
        if layer not in right:
            continue
        left_idx = _composite_indices(circuit, left_seg)
        right_idx = _composite_indices(circuit, right[layer])
        if len(left_idx) != 1 or len(right_idx) != 1:
            continue
        lg, rg = circuit.gates[left_idx[0]], circuit.gates[right_idx[0]]
        if lg.kind != GateKind.TOFFOLI or lg.qubits != rg.qubits:
            continue
        if rg.kind == GateKind.PERES:
            plan[left_idx[0]] = TOFFOLI_OPEN_TAIL.name
        elif rg.kind == GateKind.TOFFOLI:
            plan[right_idx[0]] = TOFFOLI_MIRROR.name
    return plan


def compile(
    circuit: Circuit,
    mode: CompileMode,
    registry: Optional[TemplateRegistry] = None,
) -> Circuit:
    """Replace every composite with Clifford+T templates.

    Args:
        circuit: high-level circuit
        mode: NAIVE or OPTIMIZED
        registry: template source, the validated default registry if None

    Returns:
        Circuit over {X, H, T, TDAG, CNOT}. metadata records the mode and any
        fallback warning; segment ranges follow their gates.
    """
    mode = CompileMode(mode)
    registry = registry or DEFAULT_REGISTRY
    warnings: List[str] = []

    if mode == CompileMode.OPTIMIZED and circuit.segments:
        plan = _plan_optimized(circuit)
    else:
        if mode == CompileMode.OPTIMIZED and circuit.has_composites:
            warnings.append(MISSING_SEGMENTS_WARNING)
        plan = {i: NAIVE_TEMPLATES[g.kind] for i, g in enumerate(circuit.gates) if g.is_composite}

    gates: List[Gate] = []
    new_start: List[int] = []
    for i, gate in enumerate(circuit.gates):
        new_start.append(len(gates))
        if i in plan:
            gates.extend(registry.get(plan[i]).instantiate(gate.qubits))
        else:
            gates.append(gate)
    new_start.append(len(gates))

    segments = tuple(
        Segment(tag=s.tag, start=new_start[s.start], stop=new_start[s.stop]) for s in circuit.segments
    )
    metadata = dict(circuit.metadata)
    metadata["mode"] = mode.value
    metadata["warnings"] = warnings

    compiled = Circuit(
        n_qubits=circuit.n_qubits,
        roles=circuit.roles,
        gates=tuple(gates),
        segments=segments,
        metadata=metadata,
    )
    if mode == CompileMode.OPTIMIZED and not warnings:
        compiled = cancel_pairs(compiled)
    return compiled


_INVERSE_KIND = {
    GateKind.T: GateKind.TDAG,
    GateKind.TDAG: GateKind.T,
    GateKind.H: GateKind.H,
    GateKind.X: GateKind.X,
    GateKind.CNOT: GateKind.CNOT,
}


def _is_inverse_pair(g1: Gate, g2: Gate) -> bool:
    return _INVERSE_KIND.get(g1.kind) == g2.kind and g1.qubits == g2.qubits


def _cancel_pass(gates: Sequence[Gate], alive: List[bool]) -> int:
    """One sweep removing pairs that are adjacent on every wire they touch."""
    next_on_wire: Dict[Tuple[int, int], int] = {}
    last_on_wire: Dict[int, int] = {}
    for i, gate in enumerate(gates):
        if not alive[i]:
            continue
        for q in gate.qubits:
            if q in last_on_wire:
                next_on_wire[(last_on_wire[q], q)] = i
            last_on_wire[q] = i

    removed = 0
    for i, gate in enumerate(gates):
        if not alive[i] or gate.kind not in _INVERSE_KIND:
            continue
        partners = {next_on_wire.get((i, q)) for q in gate.qubits}
        if len(partners) != 1:
            continue
        j = partners.pop()
        if j is None or not alive[j] or not _is_inverse_pair(gate, gates[j]):
            continue
        alive[i] = alive[j] = False
        removed += 1
    return removed


def cancel_pairs(circuit: Circuit) -> Circuit:
    """Remove DAG-adjacent inverse pairs until none remain. Composites are left alone."""
    gates = circuit.gates
    alive = [True] * len(gates)
    total = 0
    while True:
        removed = _cancel_pass(gates, alive)
        if removed == 0:
            break
        total += removed

    # kept_before[x] = number of surviving gates with index < x
    kept_before = [0]
    for flag in alive:
        kept_before.append(kept_before[-1] + (1 if flag else 0))

    metadata = dict(circuit.metadata)
    if total:
        metadata["cancelled_pairs"] = metadata.get("cancelled_pairs", 0) + total
    return Circuit(
        n_qubits=circuit.n_qubits,
        roles=circuit.roles,
        gates=tuple(g for g, keep in zip(gates, alive) if keep),
        segments=tuple(
            Segment(tag=s.tag, start=kept_before[s.start], stop=kept_before[s.stop])
            for s in circuit.segments
        ),
        metadata=metadata,
    )


def require_clifford_t(circuit: Circuit):
    for position, gate in enumerate(circuit.gates):
        if gate.is_composite:
            raise CompositeGatePresent(f"gate {position} is {gate}")


def cascade_metrics_formula(shape: CascadeShape, layers: int, reduced: bool = True) -> MetricReport:
    """Closed-form metrics of a k-layer cascade shape.

    Args:
        shape: cascade shape
        layers: k >= 1
        reduced: after cancellation (True) or before it (False); the two
            single-branch shapes have nothing to cancel

    Returns:
        Predicted counts (exact) and depths (upper bounds).
    """
    k = layers
    shape = CascadeShape(shape)
    if shape == CascadeShape.TOFFOLI_LEFT:
        t_depth, t_count, cnot_depth, cnot_count = 2 * k + 1, 7 * k, 4 * k + 3, 7 * k
    elif shape == CascadeShape.PERES_RIGHT:
        t_depth, t_count, cnot_depth, cnot_count = k + 3, 7 * k, 4 * k + 1, 5 * k
    elif shape == CascadeShape.V_TOFF_PERES:
        t_depth, t_count, cnot_depth, cnot_count = 3 * k + 4, 14 * k, 8 * k + 4, 12 * k
        if reduced:
            t_count -= 2 * k
    else:
        t_depth, t_count, cnot_depth, cnot_count = 4 * k + 2, 14 * k, 8 * k + 6, 14 * k
        if reduced:
            t_depth, t_count, cnot_depth, cnot_count = t_depth - 2, t_count - 4 * k, cnot_depth - 4, cnot_count - 4 * k
    return MetricReport(t_count=t_count, t_depth=t_depth, cnot_count=cnot_count, cnot_depth=cnot_depth)
