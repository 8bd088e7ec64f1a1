#!/usr/bin/env python3
"""
Executable meaning of gates and circuits.

Two backends:
- permutation semantics for reversible-classical gates (X, CNOT, TOFFOLI, PERES, TR)
- statevector semantics for everything, composites applied as permutation unitaries

Basis index bit k is wire k. In the tensor form a state is reshaped to
[2]*n (plus a trailing batch axis), so wire k lives on axis n-1-k.

Also holds the classical ripple-carry oracle, register encoding by role,
and the checker for claimed gate truth tables.
"""

from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from circuit_core import ARITY, CLASSICAL_KINDS, Circuit, Gate, GateKind, RoleKind, make_gate
from circuit_errors import (
    ArityMismatch,
    CircuitError,
    DimensionMismatch,
    NotClassical,
    OutOfRange,
    TooLarge,
)
from config.defaults import FULL_UNITARY_QUBIT_CAP, NORM_TOLERANCE


class PermutationTable(BaseModel):
    """Basis-state bijection on k bits; local bit j is operand j."""
    model_config = ConfigDict(frozen=True)

    arity: int
    mapping: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_bijection(self) -> "PermutationTable":
        size = 1 << self.arity
        if len(self.mapping) != size or sorted(self.mapping) != list(range(size)):
            raise ValueError(f"mapping is not a bijection on [0, {size})")
        return self

    def apply(self, x: int) -> int:
        return self.mapping[x]

    def then(self, other: "PermutationTable") -> "PermutationTable":
        """Apply self first, then other."""
        if other.arity != self.arity:
            raise ArityMismatch(f"cannot compose arity {self.arity} with arity {other.arity}")
        return PermutationTable(arity=self.arity, mapping=tuple(other.mapping[y] for y in self.mapping))

    @property
    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.mapping))


# Local actions on operand bits (q1, q2, q3) = (a, b, c)
_LOCAL_ACTIONS: Dict[GateKind, Callable[[Tuple[int, ...]], Tuple[int, ...]]] = {
    GateKind.X: lambda q: (q[0] ^ 1,),
    GateKind.CNOT: lambda q: (q[0], q[1] ^ q[0]),
    GateKind.TOFFOLI: lambda q: (q[0], q[1], q[2] ^ (q[0] & q[1])),
    GateKind.PERES: lambda q: (q[0], q[0] ^ q[1], q[2] ^ (q[0] & q[1])),
    GateKind.TR: lambda q: (q[0], q[0] ^ q[1], q[2] ^ (q[0] & (q[1] ^ 1))),
}


def _require_classical(kind: GateKind):
    if kind not in CLASSICAL_KINDS:
        raise NotClassical(f"{kind.value} has no permutation semantics")


def _raw_permutation(kind: GateKind) -> PermutationTable:
    _require_classical(kind)
    arity = ARITY[kind]
    action = _LOCAL_ACTIONS[kind]
    mapping = []
    for x in range(1 << arity):
        bits = tuple((x >> j) & 1 for j in range(arity))
        out = action(bits)
        mapping.append(sum(bit << j for j, bit in enumerate(out)))
    return PermutationTable(arity=arity, mapping=tuple(mapping))


def _sequence_table(gates: Sequence[Gate], arity: int) -> PermutationTable:
    def run(x: int) -> int:
        for gate in gates:
            x = apply_classical_gate(gate, x)
        return x
    return PermutationTable(arity=arity, mapping=tuple(run(x) for x in range(1 << arity)))


def relation_checks() -> Dict[str, bool]:
    """Defining relations of PERES and TR against TOFFOLI, on all 8 basis states."""
    toffoli = _raw_permutation(GateKind.TOFFOLI)
    peres_cnot = _sequence_table(
        [make_gate(GateKind.PERES, 0, 1, 2), make_gate(GateKind.CNOT, 0, 1)], 3
    )
    cnot_tr = _sequence_table(
        [make_gate(GateKind.CNOT, 0, 1), make_gate(GateKind.TR, 0, 1, 2)], 3
    )
    return {
        "peres_then_cnot_is_toffoli": peres_cnot == toffoli,
        "cnot_then_tr_is_toffoli": cnot_tr == toffoli,
        "peres_tr_inverse": _raw_permutation(GateKind.PERES).then(_raw_permutation(GateKind.TR)).is_identity,
    }


@lru_cache(maxsize=None)
def _composite_definitions_verified() -> bool:
    failed = [name for name, ok in relation_checks().items() if not ok]
    if failed:
        raise CircuitError(f"PERES/TR definitions fail relation checks: {', '.join(failed)}")
    return True


def gate_permutation(kind: GateKind) -> PermutationTable:
    """Basis mapping of a reversible-classical gate.

    Raises:
        NotClassical: for H, T and TDAG
    """
    _require_classical(kind)
    if kind in (GateKind.PERES, GateKind.TR):
        _composite_definitions_verified()
    return _raw_permutation(kind)


def permutations_are_inverse(first: GateKind, second: GateKind) -> bool:
    """True if applying first then second on the same wires is the identity."""
    p1, p2 = gate_permutation(first), gate_permutation(second)
    return p1.arity == p2.arity and p1.then(p2).is_identity


def apply_classical_gate(gate: Gate, state: int) -> int:
    _require_classical(gate.kind)
    bits = tuple((state >> q) & 1 for q in gate.qubits)
    out = _LOCAL_ACTIONS[gate.kind](bits)
    for q, before, after in zip(gate.qubits, bits, out):
        if before != after:
            state ^= 1 << q
    return state


def simulate_permutation(circuit: Circuit, input_basis_state: int) -> int:
    """Output basis state of a reversible-classical circuit.

    Raises:
        NotClassical: if H/T/TDAG is present
    """
    for gate in circuit.gates:
        _require_classical(gate.kind)
    if circuit.has_composites:
        _composite_definitions_verified()
    state = input_basis_state
    for gate in circuit.gates:
        state = apply_classical_gate(gate, state)
    return state


# Statevector backend

_SQRT2_INV = 1 / np.sqrt(2)
_T_PHASE = np.exp(1j * np.pi / 4)


class Statevector:
    """2^n complex amplitudes in double precision."""

    def __init__(self, amplitudes: np.ndarray, check_norm: bool = True):
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        size = amplitudes.size
        if size == 0 or size & (size - 1):
            raise DimensionMismatch(f"amplitude count {size} is not a power of two")
        if check_norm and abs(np.linalg.norm(amplitudes) - 1.0) > NORM_TOLERANCE:
            raise ValueError("statevector is not normalized")
        self.amplitudes = amplitudes
        self.n_qubits = size.bit_length() - 1

    @classmethod
    def basis(cls, n_qubits: int, index: int) -> "Statevector":
        amplitudes = np.zeros(1 << n_qubits, dtype=complex)
        amplitudes[index] = 1.0
        return cls(amplitudes)

    def probability(self, index: int) -> float:
        return float(abs(self.amplitudes[index]) ** 2)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def allclose(self, other: "Statevector", atol: float = 1e-9) -> bool:
        return self.n_qubits == other.n_qubits and np.allclose(self.amplitudes, other.amplitudes, atol=atol)


def _slices(n: int, fixed: Dict[int, int]) -> tuple:
    index = [slice(None)] * (n + 1)
    for wire, value in fixed.items():
        index[n - 1 - wire] = value
    return tuple(index)


def _apply_in_place(psi: np.ndarray, gate: Gate, n: int):
    """Apply one gate to a [2]*n + [batch] tensor, in place."""
    kind, q = gate.kind, gate.qubits

    if kind == GateKind.X:
        i0, i1 = _slices(n, {q[0]: 0}), _slices(n, {q[0]: 1})
        psi[i0], psi[i1] = psi[i1].copy(), psi[i0].copy()
    elif kind == GateKind.H:
        i0, i1 = _slices(n, {q[0]: 0}), _slices(n, {q[0]: 1})
        a0, a1 = psi[i0].copy(), psi[i1].copy()
        psi[i0] = (a0 + a1) * _SQRT2_INV
        psi[i1] = (a0 - a1) * _SQRT2_INV
    elif kind == GateKind.T:
        psi[_slices(n, {q[0]: 1})] *= _T_PHASE
    elif kind == GateKind.TDAG:
        psi[_slices(n, {q[0]: 1})] *= np.conj(_T_PHASE)
    elif kind == GateKind.CNOT:
        i10, i11 = _slices(n, {q[0]: 1, q[1]: 0}), _slices(n, {q[0]: 1, q[1]: 1})
        psi[i10], psi[i11] = psi[i11].copy(), psi[i10].copy()
    else:
        # composite: move the amplitude of local input j to local output perm(j)
        table = gate_permutation(kind)
        source = psi.copy()
        for j, out in enumerate(table.mapping):
            if j == out:
                continue
            src = {wire: (j >> k) & 1 for k, wire in enumerate(q)}
            dst = {wire: (out >> k) & 1 for k, wire in enumerate(q)}
            psi[_slices(n, dst)] = source[_slices(n, src)]


def _run_tensor(circuit: Circuit, columns: np.ndarray) -> np.ndarray:
    """Apply the circuit to each column of a (2^n, batch) array."""
    n = circuit.n_qubits
    batch = columns.shape[1]
    psi = np.array(columns, dtype=complex).reshape([2] * n + [batch])
    for gate in circuit.gates:
        _apply_in_place(psi, gate, n)
    return psi.reshape(1 << n, batch)


def simulate_statevector(circuit: Circuit, input: Statevector) -> Statevector:
    """Apply every gate's unitary in order.

    Raises:
        DimensionMismatch: if the state and circuit sizes differ
    """
    if input.n_qubits != circuit.n_qubits:
        raise DimensionMismatch(
            f"{input.n_qubits}-qubit state given to a {circuit.n_qubits}-qubit circuit"
        )
    out = _run_tensor(circuit, input.amplitudes.reshape(-1, 1))
    return Statevector(out[:, 0])


def simulate_basis_batch(circuit: Circuit, inputs: Sequence[int]) -> np.ndarray:
    """Output amplitudes for several basis inputs; column j belongs to inputs[j]."""
    columns = np.zeros((1 << circuit.n_qubits, len(inputs)), dtype=complex)
    columns[list(inputs), np.arange(len(inputs))] = 1.0
    return _run_tensor(circuit, columns)


def full_unitary(circuit: Circuit) -> np.ndarray:
    """Dense 2^n x 2^n unitary. Column j is the image of basis state j.

    Raises:
        TooLarge: above the qubit cap
    """
    if circuit.n_qubits > FULL_UNITARY_QUBIT_CAP:
        raise TooLarge(f"full_unitary is capped at {FULL_UNITARY_QUBIT_CAP} qubits, got {circuit.n_qubits}")
    return _run_tensor(circuit, np.eye(1 << circuit.n_qubits, dtype=complex))


def permutation_matrix(circuit: Circuit) -> np.ndarray:
    """0/1 unitary of a reversible-classical circuit, built from simulate_permutation."""
    if circuit.n_qubits > FULL_UNITARY_QUBIT_CAP:
        raise TooLarge(f"permutation_matrix is capped at {FULL_UNITARY_QUBIT_CAP} qubits")
    size = 1 << circuit.n_qubits
    matrix = np.zeros((size, size), dtype=complex)
    for j in range(size):
        matrix[simulate_permutation(circuit, j), j] = 1.0
    return matrix


# Classical arithmetic oracle

class CarryString(BaseModel):
    """Carries c_0..c_n and sum bits s_0..s_n, least significant first."""
    model_config = ConfigDict(frozen=True)

    c: Tuple[int, ...]
    s: Tuple[int, ...]

    @model_validator(mode="after")
    def _check(self) -> "CarryString":
        if len(self.c) != len(self.s) or not self.c:
            raise ValueError("carry and sum strings must both have length n+1")
        if self.c[0] != 0:
            raise ValueError("c_0 must be 0")
        return self

    @property
    def value(self) -> int:
        return sum(bit << i for i, bit in enumerate(self.s))

    @property
    def carry_out(self) -> int:
        return self.c[-1]


def classical_ripple_add(a: int, b: int, n: int) -> CarryString:
    """Bitwise ripple-carry addition with majority carries."""
    if n < 1:
        raise OutOfRange(f"bit-width must be positive, got {n}")
    if not (0 <= a < (1 << n) and 0 <= b < (1 << n)):
        raise OutOfRange(f"operands ({a}, {b}) do not fit in {n} bits")

    a_bits = [(a >> i) & 1 for i in range(n)]
    b_bits = [(b >> i) & 1 for i in range(n)]
    c = [0]
    for i in range(1, n + 1):
        x, y, w = a_bits[i - 1], b_bits[i - 1], c[i - 1]
        c.append((x & y) ^ (y & w) ^ (w & x))
    s = [a_bits[i] ^ b_bits[i] ^ c[i] for i in range(n)] + [c[n]]
    return CarryString(c=tuple(c), s=tuple(s))


def compare_le(a: int, b: int) -> int:
    return 1 if a <= b else 0


# Register encoding by role

REGISTER_KEYS = {RoleKind.A: "a", RoleKind.B: "b", RoleKind.Z: "z", RoleKind.ANCILLA: "ancilla"}


def encode_registers(circuit: Circuit, values: Dict[str, int]) -> int:
    """Basis index holding the given register integers. Missing registers are 0."""
    state = 0
    for role in circuit.roles:
        value = values.get(REGISTER_KEYS[role.role], 0)
        bit = (value >> (role.index or 0)) & 1
        state |= bit << role.wire
    return state


def decode_registers(circuit: Circuit, state: int) -> Dict[str, int]:
    values = {REGISTER_KEYS[r.role]: 0 for r in circuit.roles}
    for role in circuit.roles:
        bit = (state >> role.wire) & 1
        values[REGISTER_KEYS[role.role]] |= bit << (role.index or 0)
    return values


# Claimed truth tables

def check_claimed_mapping(
    kind: GateKind,
    claimed: PermutationTable,
    wires: Optional[Sequence[int]] = None,
) -> List[int]:
    """Basis inputs on which a claimed table disagrees with the actual gate.

    Args:
        kind: reversible-classical gate kind
        claimed: the claimed table, over its own local bits
        wires: which local bits hold operands (q1, q2, ...); defaults to 0, 1, ...

    Returns:
        Sorted mismatching inputs; empty if the claim is correct.
    """
    _require_classical(kind)
    if wires is None:
        if claimed.arity != ARITY[kind]:
            raise ArityMismatch(f"{kind.value} has arity {ARITY[kind]}, claim has arity {claimed.arity}")
        wires = range(ARITY[kind])
    wires = tuple(wires)
    if len(wires) != ARITY[kind] or any(w >= claimed.arity for w in wires):
        raise ArityMismatch(f"operand placement {wires} does not fit a {claimed.arity}-bit claim")

    gate = Gate(kind=kind, qubits=wires)
    return [x for x in range(1 << claimed.arity) if apply_classical_gate(gate, x) != claimed.mapping[x]]


# Local bits A=0, B=1, C=2. The gate behind the claim is TR with B as its first operand.
TR2_ACTUAL_WIRES = (1, 0, 2)


def tr2_claimed_table() -> PermutationTable:
    """Published claim |C,B,A> -> |A.not(B) xor C, B, A xor B> (known to be wrong)."""
    mapping = []
    for x in range(8):
        a, b, c = x & 1, (x >> 1) & 1, (x >> 2) & 1
        out = (a ^ b) | (b << 1) | ((c ^ (a & (b ^ 1))) << 2)
        mapping.append(out)
    return PermutationTable(arity=3, mapping=tuple(mapping))


def format_truth_table(table: PermutationTable, labels: Optional[Iterable[str]] = None) -> str:
    """2^k rows of input bits and output bits, operand 0 first."""
    names = list(labels) if labels is not None else [f"q{j}" for j in range(table.arity)]
    header = " ".join(names)
    lines = [f"{header} | {header}", "-" * (2 * len(header) + 3)]
    for x, y in enumerate(table.mapping):
        ins = " ".join(str((x >> j) & 1).rjust(len(names[j])) for j in range(table.arity))
        outs = " ".join(str((y >> j) & 1).rjust(len(names[j])) for j in range(table.arity))
        lines.append(f"{ins} | {outs}")
    return "\n".join(lines)
