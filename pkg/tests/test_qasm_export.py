"""OpenQASM 2.0 export and the subset checker."""

import pytest

from circuit_core import Circuit, GateKind, make_gate
from circuit_errors import CompositeGatePresent, QasmSyntaxError
from compile_cliffordt import TOFFOLI, CompileMode, compile
from qasm_export import HEADER, INCLUDE, check_qasm2, to_qasm2
from synthesize_circuits import FamilyName, build_family


def _program(*body, qreg="qreg q[2];"):
    return "\n".join([HEADER, INCLUDE, qreg, *body]) + "\n"


class TestExport:
    def test_single_cnot(self, single_cnot):
        assert to_qasm2(single_cnot) == _program("cx q[0],q[1];")

    def test_every_kind_has_a_name(self):
        gates = (
            make_gate(GateKind.X, 0),
            make_gate(GateKind.H, 1),
            make_gate(GateKind.T, 0),
            make_gate(GateKind.TDAG, 1),
            make_gate(GateKind.CNOT, 1, 0),
        )
        text = to_qasm2(Circuit(n_qubits=2, gates=gates))
        assert text.splitlines()[3:] == ["x q[0];", "h q[1];", "t q[0];", "tdg q[1];", "cx q[1],q[0];"]

    def test_toffoli_template(self):
        lines = to_qasm2(TOFFOLI.local_circuit()).splitlines()
        assert lines[2] == "qreg q[3];"
        assert len(lines) == 3 + 16
        assert sum(1 for line in lines if line.startswith("cx ")) == 7

    def test_composites_are_refused(self, toffoli_circuit):
        with pytest.raises(CompositeGatePresent):
            to_qasm2(toffoli_circuit)

    def test_empty_register(self):
        assert to_qasm2(Circuit(n_qubits=0)) == _program(qreg="qreg q[0];")

    @pytest.mark.parametrize("family", list(FamilyName))
    @pytest.mark.parametrize("mode", list(CompileMode))
    def test_compiled_families_parse_back(self, family, mode):
        compiled = compile(build_family(family, 3), mode)
        ops = check_qasm2(to_qasm2(compiled))
        assert ops == [(g.kind.value if g.kind != GateKind.CNOT else "cx", g.qubits) for g in compiled.gates]


class TestChecker:
    def test_comments_and_blank_lines(self):
        text = _program("// first gate", "", "h q[0];  // trailing", "cx q[0], q[1];")
        assert check_qasm2(text) == [("h", (0,)), ("cx", (0, 1))]

    def test_wrong_version(self):
        with pytest.raises(QasmSyntaxError, match="OPENQASM 2.0"):
            check_qasm2(_program().replace("2.0", "3.0"))

    def test_wrong_include(self):
        with pytest.raises(QasmSyntaxError, match="qelib1.inc"):
            check_qasm2(_program().replace("qelib1.inc", "stdgates.inc"))

    def test_unknown_register(self):
        with pytest.raises(QasmSyntaxError, match="unknown register 'r'"):
            check_qasm2(_program("h r[0];"))

    def test_index_out_of_range(self):
        with pytest.raises(QasmSyntaxError, match=r"q\[2\] outside"):
            check_qasm2(_program("t q[2];"))

    def test_cx_on_one_wire(self):
        with pytest.raises(QasmSyntaxError, match="cx control and target"):
            check_qasm2(_program("cx q[1],q[1];"))

    @pytest.mark.parametrize("body", ["ccx q[0],q[1],q[0];", "h q[0]", "measure q[0];", "cx q[0];"])
    def test_outside_the_subset(self, body):
        with pytest.raises(QasmSyntaxError, match="not valid"):
            check_qasm2(_program(body))

    def test_missing_header(self):
        with pytest.raises(QasmSyntaxError):
            check_qasm2("qreg q[1];\nh q[0];\n")
