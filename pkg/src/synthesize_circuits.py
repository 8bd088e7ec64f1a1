#!/usr/bin/env python3
"""
Ripple-carry adder and comparator builders.

Each builder emits a high-level circuit over X/CNOT/TOFFOLI/PERES/TR with
V-shape segment annotations:

    PRE, LEFT_CASCADE(layer=0..n-2), APEX, RIGHT_CASCADE(layer=n-2..0), POST

Layer i computes (left) or uncomputes (right) the carry out of bit i. The
compiler pairs LEFT_CASCADE(i) with RIGHT_CASCADE(i) to pick stitched
Clifford+T templates.

Wire layouts:
    CDKM families (2n+2 wires): b0, a0, ancilla, b1, a1, ..., b_{n-1}, a_{n-1}, z
    TTK families  (2n+1 wires): a0, b0, a1, b1, ..., a_{n-1}, b_{n-1}, z

Carry wires w_i: ancilla for i = 0 and a_i above it. Left layer i leaves
w_i holding a_{i+1} xor c_{i+1}.
"""

from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from circuit_core import (
    APEX,
    POST,
    PRE,
    Circuit,
    Gate,
    GateKind,
    QubitRole,
    RoleKind,
    Segment,
    left_tag,
    make_gate,
    right_tag,
)
from circuit_errors import NTooSmall


class FamilyName(str, Enum):
    CDKM_SHALLOW = "cdkm-shallow"
    CDKM_COMPACT = "cdkm-compact"
    TTK_ADDER = "ttk-adder"
    CDKM_COMPARATOR = "cdkm-comparator"
    TTK_COMPARATOR = "ttk-comparator"


_ANCILLA_FAMILIES = {FamilyName.CDKM_SHALLOW, FamilyName.CDKM_COMPACT, FamilyName.CDKM_COMPARATOR}
_COMPARATOR_FAMILIES = {FamilyName.CDKM_COMPARATOR, FamilyName.TTK_COMPARATOR}


class CircuitFamily(BaseModel):
    """Which construction to build, at which operand width."""
    model_config = ConfigDict(frozen=True)

    family: FamilyName
    n: int = Field(ge=1)

    @property
    def has_ancilla(self) -> bool:
        return self.family in _ANCILLA_FAMILIES

    @property
    def is_comparator(self) -> bool:
        return self.family in _COMPARATOR_FAMILIES

    @property
    def n_qubits(self) -> int:
        return 2 * self.n + (2 if self.has_ancilla else 1)

    def build(self) -> Circuit:
        return BUILDERS[self.family](self.n)


class _Emitter:
    """Accumulates gates and closes segments over contiguous gate ranges."""

    def __init__(self):
        self.gates: List[Gate] = []
        self.segments: List[Segment] = []
        self._open: Optional[Tuple[str, int]] = None

    def begin(self, tag: str):
        self.end()
        self._open = (tag, len(self.gates))

    def end(self):
        if self._open is not None:
            tag, start = self._open
            self.segments.append(Segment(tag=tag, start=start, stop=len(self.gates)))
            self._open = None

    def x(self, q: int):
        self.gates.append(make_gate(GateKind.X, q))

    def cnot(self, control: int, target: int):
        self.gates.append(make_gate(GateKind.CNOT, control, target))

    def toffoli(self, a: int, b: int, c: int):
        self.gates.append(make_gate(GateKind.TOFFOLI, a, b, c))

    def peres(self, a: int, b: int, c: int):
        self.gates.append(make_gate(GateKind.PERES, a, b, c))

    def tr(self, a: int, b: int, c: int):
        self.gates.append(make_gate(GateKind.TR, a, b, c))

    def finish(self, n_qubits: int, roles: List[QubitRole], family: FamilyName, n: int) -> Circuit:
        self.end()
        return Circuit(
            n_qubits=n_qubits,
            roles=tuple(roles),
            gates=tuple(self.gates),
            segments=tuple(self.segments),
            metadata={"family": family.value, "n": n},
        )


class _CdkmWires:
    def __init__(self, n: int):
        self.n = n
        self.anc = 2
        self.z = 2 * n + 1

    def a(self, i: int) -> int:
        return 1 if i == 0 else 2 * i + 2

    def b(self, i: int) -> int:
        return 0 if i == 0 else 2 * i + 1

    def w(self, i: int) -> int:
        return self.anc if i == 0 else self.a(i)

    def q1(self, i: int) -> int:
        # first control of carry layer i
        return self.a(0) if i == 0 else self.w(i - 1)

    def roles(self) -> List[QubitRole]:
        roles = [QubitRole(wire=self.anc, role=RoleKind.ANCILLA), QubitRole(wire=self.z, role=RoleKind.Z)]
        for i in range(self.n):
            roles.append(QubitRole(wire=self.a(i), role=RoleKind.A, index=i))
            roles.append(QubitRole(wire=self.b(i), role=RoleKind.B, index=i))
        return sorted(roles, key=lambda r: r.wire)


class _TtkWires:
    def __init__(self, n: int):
        self.n = n
        self.z = 2 * n

    def a(self, i: int) -> int:
        return 2 * i

    def b(self, i: int) -> int:
        return 2 * i + 1

    def roles(self) -> List[QubitRole]:
        roles = [QubitRole(wire=self.z, role=RoleKind.Z)]
        for i in range(self.n):
            roles.append(QubitRole(wire=self.a(i), role=RoleKind.A, index=i))
            roles.append(QubitRole(wire=self.b(i), role=RoleKind.B, index=i))
        return sorted(roles, key=lambda r: r.wire)


def _check_n(n: int):
    if n < 1:
        raise NTooSmall(f"operand width must be at least 1, got {n}")


def _cdkm_fan(em: _Emitter, w: _CdkmWires):
    for i in range(1, w.n):
        em.cnot(w.a(i), w.b(i))


def _cdkm_left_branch(em: _Emitter, w: _CdkmWires):
    """Carry computation shared by the CDKM families. Each layer first shifts a_{i+2} into a_{i+1}."""
    n = w.n
    for i in range(n - 1):
        em.begin(left_tag(i))
        if i + 2 <= n - 1:
            em.cnot(w.a(i + 2), w.a(i + 1))
        em.toffoli(w.q1(i), w.b(i), w.w(i))


def _cdkm_apex_shift(em: _Emitter, w: _CdkmWires):
    # cancels the a_{n-1} term the top carry wire still holds
    em.cnot(w.a(w.n - 1), w.z)


def build_cdkm_shallow(n: int) -> Circuit:
    """CDKM adder with a Toffoli left branch and a Peres right branch."""
    _check_n(n)
    w = _CdkmWires(n)
    em = _Emitter()

    if n == 1:
        em.begin(APEX)
        em.peres(w.a(0), w.b(0), w.z)
        return em.finish(2 * n + 2, w.roles(), FamilyName.CDKM_SHALLOW, n)

    em.begin(PRE)
    _cdkm_fan(em, w)
    em.cnot(w.a(1), w.anc)

    _cdkm_left_branch(em, w)

    em.begin(APEX)
    _cdkm_apex_shift(em, w)
    em.peres(w.w(n - 2), w.b(n - 1), w.z)

    for i in range(n - 2, -1, -1):
        em.begin(right_tag(i))
        em.peres(w.q1(i), w.b(i), w.w(i))
        if i >= 1:
            em.cnot(w.a(i + 1), w.a(i))

    em.begin(POST)
    em.cnot(w.a(1), w.anc)
    _cdkm_fan(em, w)
    return em.finish(2 * n + 2, w.roles(), FamilyName.CDKM_SHALLOW, n)


def build_cdkm_compact(n: int) -> Circuit:
    """CDKM adder whose right branch is Toffolis interspersed with CNOT pairs.

    Right layer i >= 1 uncomputes carry wire w_i, then folds it into
    w_{i-1} (leaving c_i there) and writes the sum bit into b_i.
    """
    _check_n(n)
    w = _CdkmWires(n)
    em = _Emitter()

    if n == 1:
        em.begin(APEX)
        em.peres(w.a(0), w.b(0), w.z)
        return em.finish(2 * n + 2, w.roles(), FamilyName.CDKM_COMPACT, n)

    em.begin(PRE)
    _cdkm_fan(em, w)
    em.cnot(w.a(1), w.anc)

    _cdkm_left_branch(em, w)

    em.begin(APEX)
    _cdkm_apex_shift(em, w)
    em.peres(w.w(n - 2), w.b(n - 1), w.z)

    for i in range(n - 2, -1, -1):
        em.begin(right_tag(i))
        em.toffoli(w.q1(i), w.b(i), w.w(i))
        if i == n - 2:
            # top carry wire still holds a_{n-1}
            em.cnot(w.a(n - 1), w.w(i))
        if i >= 1:
            em.cnot(w.w(i), w.w(i - 1))
            em.cnot(w.w(i - 1), w.b(i))
        else:
            em.cnot(w.a(0), w.b(0))

    em.begin(POST)
    em.cnot(w.a(n - 1), w.b(n - 1))
    return em.finish(2 * n + 2, w.roles(), FamilyName.CDKM_COMPACT, n)


def build_ttk_adder(n: int) -> Circuit:
    """Ancilla-free adder: Toffoli left branch, Peres apex and Peres right branch."""
    _check_n(n)
    w = _TtkWires(n)
    em = _Emitter()

    if n == 1:
        em.begin(APEX)
        em.peres(w.a(0), w.b(0), w.z)
        return em.finish(2 * n + 1, w.roles(), FamilyName.TTK_ADDER, n)

    em.begin(PRE)
    for i in range(1, n):
        em.cnot(w.a(i), w.b(i))
    em.cnot(w.a(n - 1), w.z)
    for i in range(n - 2, 0, -1):
        em.cnot(w.a(i), w.a(i + 1))

    for i in range(n - 1):
        em.begin(left_tag(i))
        em.toffoli(w.a(i), w.b(i), w.a(i + 1))

    em.begin(APEX)
    em.peres(w.a(n - 1), w.b(n - 1), w.z)

    for i in range(n - 2, -1, -1):
        em.begin(right_tag(i))
        em.peres(w.a(i), w.b(i), w.a(i + 1))

    em.begin(POST)
    for i in range(1, n - 1):
        em.cnot(w.a(i), w.a(i + 1))
    for i in range(1, n):
        em.cnot(w.a(i), w.b(i))
    return em.finish(2 * n + 1, w.roles(), FamilyName.TTK_ADDER, n)


def build_cdkm_comparator(n: int) -> Circuit:
    """z ^= (a <= b) as the carry of a + not(b), negated, with a, b and ancilla restored.

    Every b bit is X-conjugated, the left branch computes carries, an apex
    Toffoli writes the top carry onto z and the right branch uncomputes.
    """
    _check_n(n)
    w = _CdkmWires(n)
    em = _Emitter()

    if n == 1:
        em.begin(APEX)
        em.x(w.b(0))
        em.toffoli(w.a(0), w.b(0), w.z)
        em.x(w.b(0))
        em.x(w.z)
        return em.finish(2 * n + 2, w.roles(), FamilyName.CDKM_COMPARATOR, n)

    em.begin(PRE)
    _cdkm_fan(em, w)
    for i in range(n):
        em.x(w.b(i))
    em.cnot(w.a(1), w.anc)

    _cdkm_left_branch(em, w)

    em.begin(APEX)
    _cdkm_apex_shift(em, w)
    em.toffoli(w.w(n - 2), w.b(n - 1), w.z)
    em.x(w.z)

    for i in range(n - 2, -1, -1):
        em.begin(right_tag(i))
        em.toffoli(w.q1(i), w.b(i), w.w(i))
        if i >= 1:
            em.cnot(w.a(i + 1), w.a(i))

    em.begin(POST)
    em.cnot(w.a(1), w.anc)
    for i in range(n):
        em.x(w.b(i))
    _cdkm_fan(em, w)
    return em.finish(2 * n + 2, w.roles(), FamilyName.CDKM_COMPARATOR, n)


def build_ttk_comparator(n: int) -> Circuit:
    """Ancilla-free comparator with a TR apex.

    b_{n-1} is not X-conjugated: the TR apex supplies the negation, and the
    CNOT after it undoes the a xor b the TR leaves on b_{n-1}.
    """
    _check_n(n)
    w = _TtkWires(n)
    em = _Emitter()

    if n == 1:
        em.begin(APEX)
        em.tr(w.a(0), w.b(0), w.z)
        em.cnot(w.a(0), w.b(0))
        em.x(w.z)
        return em.finish(2 * n + 1, w.roles(), FamilyName.TTK_COMPARATOR, n)

    em.begin(PRE)
    for i in range(1, n):
        em.cnot(w.a(i), w.b(i))
    em.cnot(w.a(n - 1), w.z)
    for i in range(n - 2, 0, -1):
        em.cnot(w.a(i), w.a(i + 1))
    for i in range(n - 1):
        em.x(w.b(i))

    for i in range(n - 1):
        em.begin(left_tag(i))
        em.toffoli(w.a(i), w.b(i), w.a(i + 1))

    em.begin(APEX)
    em.tr(w.a(n - 1), w.b(n - 1), w.z)
    em.cnot(w.a(n - 1), w.b(n - 1))
    em.x(w.z)

    for i in range(n - 2, -1, -1):
        em.begin(right_tag(i))
        em.toffoli(w.a(i), w.b(i), w.a(i + 1))

    em.begin(POST)
    for i in range(n - 1):
        em.x(w.b(i))
    for i in range(1, n - 1):
        em.cnot(w.a(i), w.a(i + 1))
    for i in range(1, n):
        em.cnot(w.a(i), w.b(i))
    return em.finish(2 * n + 1, w.roles(), FamilyName.TTK_COMPARATOR, n)


BUILDERS: Dict[FamilyName, Callable[[int], Circuit]] = {
    FamilyName.CDKM_SHALLOW: build_cdkm_shallow,
    FamilyName.CDKM_COMPACT: build_cdkm_compact,
    FamilyName.TTK_ADDER: build_ttk_adder,
    FamilyName.CDKM_COMPARATOR: build_cdkm_comparator,
    FamilyName.TTK_COMPARATOR: build_ttk_comparator,
}


def build_family(family: FamilyName, n: int) -> Circuit:
    _check_n(n)
    return BUILDERS[FamilyName(family)](n)


# Cascade shapes

class CascadeShape(str, Enum):
    TOFFOLI_LEFT = "TOFFOLI_LEFT"
    PERES_RIGHT = "PERES_RIGHT"
    V_TOFF_PERES = "V_TOFF_PERES"
    V_TOFF_TOFF = "V_TOFF_TOFF"


def build_cascade(shape: CascadeShape, k: int) -> Circuit:
    """k-layer carry chain on wires c_0, y_1, c_1, ..., y_k, c_k.

    Layer j acts on (c_{j-1}, y_j, c_j). The V shapes put an X on c_k between
    the left chain and the mirrored right chain.
    """
    if k < 1:
        raise NTooSmall(f"a cascade needs at least one layer, got {k}")
    shape = CascadeShape(shape)

    def layer(j: int) -> Tuple[int, int, int]:
        return 2 * (j - 1), 2 * j - 1, 2 * j

    em = _Emitter()
    if shape in (CascadeShape.TOFFOLI_LEFT, CascadeShape.V_TOFF_PERES, CascadeShape.V_TOFF_TOFF):
        for j in range(1, k + 1):
            em.begin(left_tag(j - 1))
            em.toffoli(*layer(j))
    if shape in (CascadeShape.V_TOFF_PERES, CascadeShape.V_TOFF_TOFF):
        em.begin(APEX)
        em.x(2 * k)
    if shape != CascadeShape.TOFFOLI_LEFT:
        for j in range(k, 0, -1):
            em.begin(right_tag(j - 1))
            if shape == CascadeShape.V_TOFF_TOFF:
                em.toffoli(*layer(j))
            else:
                em.peres(*layer(j))
    em.end()
    return Circuit(
        n_qubits=2 * k + 1,
        gates=tuple(em.gates),
        segments=tuple(em.segments),
        metadata={"shape": shape.value, "layers": k},
    )
