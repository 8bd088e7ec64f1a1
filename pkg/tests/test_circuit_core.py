"""Circuit model, DAG metrics, concat/reverse and JSON documents."""

import json

import numpy as np
import pytest
from pydantic import ValidationError

from circuit_core import (
    APEX,
    POST,
    PRE,
    Circuit,
    Gate,
    GateKind,
    MetricReport,
    Segment,
    asap_layers,
    build_dag,
    circuit_from_document,
    circuit_to_document,
    concat,
    inverse_gate,
    left_tag,
    load_circuit,
    make_gate,
    metrics,
    mirror_tag,
    parse_tag,
    reverse,
    right_tag,
    save_circuit,
    segment_metrics,
)
from circuit_errors import CompositeGatePresent, InvalidCircuit, RegisterMismatch
from compile_cliffordt import TOFFOLI, CompileMode, compile
from synthesize_circuits import FamilyName, build_family


class TestGateValidation:
    def test_arity_is_enforced(self):
        with pytest.raises(ValidationError, match="takes 2 qubit"):
            Gate(kind=GateKind.CNOT, qubits=(0, 1, 2))

    def test_repeated_operand_rejected(self):
        with pytest.raises(ValidationError, match="repeated qubit"):
            make_gate(GateKind.TOFFOLI, 0, 0, 1)

    def test_wire_outside_register_rejected(self):
        with pytest.raises(ValidationError, match="outside 2 qubits"):
            Circuit(n_qubits=2, gates=(make_gate(GateKind.CNOT, 0, 2),))

    def test_overlapping_segments_rejected(self):
        gates = tuple(make_gate(GateKind.X, 0) for _ in range(4))
        with pytest.raises(ValidationError):
            Circuit(
                n_qubits=1,
                gates=gates,
                segments=(Segment(tag=PRE, start=0, stop=3), Segment(tag=APEX, start=2, stop=4)),
            )

    def test_segment_past_end_rejected(self):
        with pytest.raises(ValidationError):
            Circuit(n_qubits=1, gates=(make_gate(GateKind.X, 0),), segments=(Segment(tag=PRE, start=0, stop=2),))


class TestTags:
    def test_parse_layer_tags(self):
        assert parse_tag(left_tag(3)) == ("LEFT_CASCADE", 3)
        assert parse_tag(right_tag(0)) == ("RIGHT_CASCADE", 0)
        assert parse_tag(APEX) == ("APEX", None)

    def test_unknown_tag(self):
        with pytest.raises(ValueError):
            parse_tag("MIDDLE")

    def test_mirror(self):
        assert mirror_tag(PRE) == POST
        assert mirror_tag(left_tag(2)) == right_tag(2)
        assert mirror_tag(APEX) == APEX


class TestMetrics:
    def test_empty_circuit_is_all_zero(self):
        report = metrics(Circuit(n_qubits=0))
        assert report.table_columns() == (0, 0, 0, 0)
        assert report.total_depth == 0

    def test_single_cnot(self, single_cnot):
        report = metrics(single_cnot)
        assert report.cnot_count == 1
        assert report.cnot_depth == 1
        assert report.t_count == 0

    def test_toffoli_template_costs(self):
        report = metrics(TOFFOLI.local_circuit())
        assert report.t_count == 7
        assert report.t_depth == 3
        assert report.cnot_count == 7
        assert report.cnot_depth == 7
        assert report.total_gate_count == 16

    def test_parallel_t_gates_have_depth_one(self):
        circuit = Circuit(n_qubits=3, gates=tuple(make_gate(GateKind.T, q) for q in range(3)))
        report = metrics(circuit)
        assert (report.t_count, report.t_depth) == (3, 1)

    def test_depth_counts_only_measured_kind(self):
        # T, H, T on one wire: the H between them adds no T-depth
        gates = (make_gate(GateKind.T, 0), make_gate(GateKind.H, 0), make_gate(GateKind.T, 0))
        report = metrics(Circuit(n_qubits=1, gates=gates))
        assert report.t_depth == 2
        assert report.total_depth == 3

    def test_composites_rejected(self, toffoli_circuit):
        with pytest.raises(CompositeGatePresent, match="compile"):
            metrics(toffoli_circuit)

    def test_asap_layers_match_total_depth(self):
        circuit = TOFFOLI.local_circuit()
        layers = asap_layers(circuit)
        assert len(layers) == metrics(circuit).total_depth
        assert sorted(v for layer in layers for v in layer) == list(range(len(circuit.gates)))
        for layer in layers:
            wires = [q for v in layer for q in circuit.gates[v].qubits]
            assert len(wires) == len(set(wires))

    def test_dag_uses_last_gate_per_wire(self):
        gates = (make_gate(GateKind.X, 0), make_gate(GateKind.X, 0), make_gate(GateKind.CNOT, 0, 1))
        dag = build_dag(Circuit(n_qubits=2, gates=gates))
        assert list(dag.predecessors(2)) == [1]
        assert dag.number_of_edges() == 2
        assert dag.nodes[2]["kind"] == GateKind.CNOT

    def test_segment_metrics(self):
        gates = (make_gate(GateKind.T, 0), make_gate(GateKind.CNOT, 0, 1), make_gate(GateKind.CNOT, 1, 0))
        circuit = Circuit(
            n_qubits=2,
            gates=gates,
            segments=(Segment(tag=PRE, start=0, stop=1), Segment(tag=POST, start=1, stop=3)),
        )
        per_segment = segment_metrics(circuit)
        assert per_segment[PRE].t_count == 1
        assert per_segment[POST].cnot_depth == 2

    def test_report_bounds(self):
        with pytest.raises(ValidationError):
            MetricReport(t_count=1, t_depth=2, cnot_count=0, cnot_depth=0)


class TestConcatReverse:
    def test_concat_shifts_segments(self):
        first = Circuit(n_qubits=1, gates=(make_gate(GateKind.X, 0),) * 2, segments=(Segment(tag=PRE, start=0, stop=2),))
        second = Circuit(n_qubits=1, gates=(make_gate(GateKind.H, 0),), segments=(Segment(tag=POST, start=0, stop=1),))
        joined = concat(first, second)
        assert len(joined.gates) == 3
        assert joined.find_segment(POST).start == 2

    def test_concat_register_mismatch(self):
        with pytest.raises(RegisterMismatch):
            concat(Circuit(n_qubits=1), Circuit(n_qubits=2))

    def test_reverse_inverts_t_and_swaps_peres(self):
        gates = (make_gate(GateKind.T, 0), make_gate(GateKind.PERES, 0, 1, 2))
        rev = reverse(Circuit(n_qubits=3, gates=gates))
        assert [g.kind for g in rev.gates] == [GateKind.TR, GateKind.TDAG]

    def test_reverse_mirrors_tags(self):
        gates = (make_gate(GateKind.X, 0),) * 3
        circuit = Circuit(
            n_qubits=1,
            gates=gates,
            segments=(Segment(tag=PRE, start=0, stop=1), Segment(tag=left_tag(0), start=1, stop=3)),
        )
        rev = reverse(circuit)
        assert [(s.tag, s.start, s.stop) for s in rev.segments] == [(right_tag(0), 0, 2), (POST, 2, 3)]

    def test_toffoli_is_self_inverse(self):
        gate = make_gate(GateKind.TOFFOLI, 2, 0, 1)
        assert inverse_gate(gate) == gate

    @pytest.mark.parametrize("family", list(FamilyName))
    def test_reverse_is_an_involution(self, family):
        # reverse carries no metadata
        high_level = build_family(family, 3).model_copy(update={"metadata": {}})
        assert reverse(reverse(high_level)) == high_level
        compiled = compile(high_level, CompileMode.OPTIMIZED).model_copy(update={"metadata": {}})
        assert reverse(reverse(compiled)) == compiled
        assert metrics(reverse(compiled)) == metrics(compiled)

    def test_reverse_random_circuits(self, random_circuit):
        rng = np.random.default_rng(13)
        for _ in range(100):
            circuit = random_circuit(rng, int(rng.integers(1, 7)), int(rng.integers(0, 41)))
            assert reverse(reverse(circuit)) == circuit
            assert metrics(reverse(circuit)) == metrics(circuit)

    def test_concat_bounds(self, random_circuit):
        rng = np.random.default_rng(11)
        for _ in range(50):
            first, second = random_circuit(rng, 4, 25), random_circuit(rng, 4, 25)
            m1, m2, joined = metrics(first), metrics(second), metrics(concat(first, second))
            assert joined.t_count == m1.t_count + m2.t_count
            assert joined.cnot_count == m1.cnot_count + m2.cnot_count
            for quantity in ("t_depth", "cnot_depth", "total_depth"):
                d1, d2, d = m1.quantity(quantity), m2.quantity(quantity), joined.quantity(quantity)
                assert max(d1, d2) <= d <= d1 + d2


def _random_topological_order(circuit, rng):
    """A gate order respecting every per-wire dependency, picked uniformly among ready gates."""
    dag = build_dag(circuit)
    waiting = {v: dag.in_degree(v) for v in dag.nodes}
    ready = [v for v, count in waiting.items() if count == 0]
    order = []
    while ready:
        v = ready.pop(int(rng.integers(len(ready))))
        order.append(v)
        for w in dag.successors(v):
            waiting[w] -= 1
            if waiting[w] == 0:
                ready.append(w)
    return order


class TestDependencyShuffles:
    def test_reordering_keeps_depths(self, random_circuit):
        rng = np.random.default_rng(5)
        for _ in range(50):
            circuit = random_circuit(rng, 5, 40, echo=0.0)
            order = _random_topological_order(circuit, rng)
            shuffled = Circuit(n_qubits=circuit.n_qubits, gates=tuple(circuit.gates[v] for v in order))
            assert metrics(shuffled) == metrics(circuit)

    def test_compiled_adder_reordering(self):
        circuit = compile(build_family(FamilyName.TTK_ADDER, 4), CompileMode.OPTIMIZED)
        rng = np.random.default_rng(2)
        order = _random_topological_order(circuit, rng)
        shuffled = Circuit(n_qubits=circuit.n_qubits, gates=tuple(circuit.gates[v] for v in order))
        assert metrics(shuffled) == metrics(circuit)


class TestDocuments:
    def test_segments_use_from_to(self):
        circuit = Circuit(n_qubits=1, gates=(make_gate(GateKind.X, 0),), segments=(Segment(tag=APEX, start=0, stop=1),))
        document = circuit_to_document(circuit)
        assert document["segments"] == [{"tag": "APEX", "from": 0, "to": 1}]
        assert document["gates"] == [{"kind": "x", "qubits": [0]}]
        assert "metadata" not in document
        assert circuit_from_document(document) == circuit

    def test_save_and_load(self, circuit_dir, single_cnot):
        path = save_circuit(single_cnot, circuit_dir / "cx.json")
        assert path.read_text().endswith("\n")
        assert load_circuit(path) == single_cnot

    def test_load_rejects_non_object(self, circuit_dir):
        path = circuit_dir / "list.json"
        path.write_text(json.dumps([1, 2]))
        with pytest.raises(InvalidCircuit):
            load_circuit(path)

    def test_load_names_bad_gate(self, circuit_dir):
        path = circuit_dir / "bad.json"
        path.write_text(json.dumps({"n_qubits": 4, "gates": [{"kind": "toffoli", "qubits": [0, 1, 2, 3]}]}))
        with pytest.raises(ValidationError, match="gates.0"):
            load_circuit(path)
