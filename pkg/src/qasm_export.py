#!/usr/bin/env python3
"""
OpenQASM 2.0 export for Clifford+T circuits, plus a syntax checker for the
emitted subset (header, qelib1 include, one qreg, x/h/t/tdg/cx, // comments).
"""

from typing import List, Tuple

from lark import Lark, Transformer
from lark.exceptions import LarkError

from circuit_core import Circuit, GateKind
from circuit_errors import QasmSyntaxError
from compile_cliffordt import require_clifford_t

HEADER = "OPENQASM 2.0;"
INCLUDE = 'include "qelib1.inc";'
REGISTER = "q"

_QASM_NAMES = {
    GateKind.X: "x",
    GateKind.H: "h",
    GateKind.T: "t",
    GateKind.TDAG: "tdg",
    GateKind.CNOT: "cx",
}

QASM2_GRAMMAR = r"""
prog: header include qreg statement*

header: "OPENQASM" VERSION ";"
include: "include" ESCAPED_STRING ";"
qreg: "qreg" NAME "[" INT "]" ";"

?statement: "x" qubit ";"             -> x
          | "h" qubit ";"             -> h
          | "t" qubit ";"             -> t
          | "tdg" qubit ";"           -> tdg
          | "cx" qubit "," qubit ";"  -> cx

qubit: NAME "[" INT "]"

VERSION: /\d+\.\d+/
NAME: /[a-z][A-Za-z0-9_]*/
COMMENT: "//" /[^\n]*/

%import common.INT
%import common.ESCAPED_STRING
%import common.WS
%ignore WS
%ignore COMMENT
"""


def to_qasm2(circuit: Circuit) -> str:
    """Render a Clifford+T circuit as OpenQASM 2.0, one gate per line in execution order.

    Raises:
        CompositeGatePresent: if the circuit still has TOFFOLI/PERES/TR gates
    """
    require_clifford_t(circuit)
    lines = [HEADER, INCLUDE, f"qreg {REGISTER}[{circuit.n_qubits}];"]
    for gate in circuit.gates:
        operands = ",".join(f"{REGISTER}[{q}]" for q in gate.qubits)
        lines.append(f"{_QASM_NAMES[gate.kind]} {operands};")
    return "\n".join(lines) + "\n"


def _statement(name: str):
    def collect(self, items):
        return (name, items)
    return collect


class _ProgramCollector(Transformer):
    """Flattens a parse tree into header, include and qreg tuples followed by statements."""

    def header(self, items):
        return ("header", str(items[0]))

    def include(self, items):
        return ("include", str(items[0])[1:-1])

    def qreg(self, items):
        return ("qreg", str(items[0]), int(items[1]))

    def qubit(self, items):
        name, index = items
        return (str(name), int(index), name.line)

    x = _statement("x")
    h = _statement("h")
    t = _statement("t")
    tdg = _statement("tdg")
    cx = _statement("cx")

    def prog(self, items):
        return items


_parser = None


def _get_parser() -> Lark:
    global _parser
    if _parser is None:
        _parser = Lark(QASM2_GRAMMAR, start="prog", parser="lalr")
    return _parser


def check_qasm2(text: str) -> List[Tuple[str, Tuple[int, ...]]]:
    """Parse emitted OpenQASM 2.0 and check register use.

    Returns:
        The gate statements as (name, qubit indices), in order.

    Raises:
        QasmSyntaxError: on a grammar error, a wrong version or include,
            an unknown register, an index out of range, or equal cx operands
    """
    try:
        tree = _get_parser().parse(text)
    except LarkError as e:
        raise QasmSyntaxError(f"not valid OpenQASM 2.0: {e}") from e

    items = _ProgramCollector().transform(tree)
    (_, version), (_, include), (_, register, size) = items[:3]
    if version != "2.0":
        raise QasmSyntaxError(f"expected OPENQASM 2.0, got {version}")
    if include != "qelib1.inc":
        raise QasmSyntaxError(f"expected qelib1.inc include, got {include!r}")

    ops = []
    for name, operands in items[3:]:
        indices = []
        for reg, index, line in operands:
            if reg != register:
                raise QasmSyntaxError(f"line {line}: unknown register {reg!r}")
            if index >= size:
                raise QasmSyntaxError(f"line {line}: {reg}[{index}] outside qreg {register}[{size}]")
            indices.append(index)
        if name == "cx" and indices[0] == indices[1]:
            raise QasmSyntaxError(f"line {operands[0][2]}: cx control and target are both {register}[{indices[0]}]")
        ops.append((name, tuple(indices)))
    return ops
