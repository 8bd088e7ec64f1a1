#!/usr/bin/env python3
"""
Command-line surface: synth, compile, metrics, verify, table, export.

Reports go to stdout as JSON (or text tables); notices and errors go to stderr.

Exit codes:
    0  pass
    1  input or data error (schema violation, composites where Clifford+T is required)
    2  usage error or size cap
    3  verification or table regression failure
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, List, Optional

from pydantic import ValidationError

sys.path.insert(0, str(Path(__file__).parent.parent))

from circuit_core import QUANTITIES, Circuit, circuit_to_document, load_circuit, metrics, save_circuit, segment_metrics
from circuit_errors import CircuitError, NTooSmall, OutOfRange, TooLarge, TooLargeForExhaustive
from compile_cliffordt import CompileMode, compile as compile_circuit
from config.defaults import DEFAULT_RANDOM_SAMPLES, DEFAULT_SEED, DEFAULT_TABLE_N_VALUES, MAX_WORKERS
from qasm_export import to_qasm2
from run_monitor import RunMonitor
from synthesize_circuits import CircuitFamily, FamilyName
from verify_bench import (
    TABLE_ROWS,
    Strategy,
    TableKind,
    VerifyMode,
    render_table,
    reproduce_table,
    verify_functional,
    verify_unitary,
)

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2
EXIT_FAILED = 3

MIN_CLI_N = 2
_USAGE_ERRORS = (TooLargeForExhaustive, TooLarge, OutOfRange, NTooSmall)
_HEADERS = {"cnot_depth": "CNOT-depth", "cnot_count": "CNOT-count", "t_depth": "T-depth", "t_count": "T-count"}


class UsageError(Exception):
    """Flag combination argparse cannot reject on its own."""


def _note(message: str):
    print(message, file=sys.stderr)


def _dump(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: Optional[str]):
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        _note(f"✓ Wrote {path}")
    else:
        sys.stdout.write(text)


def _check_cli_n(n: int):
    if n < MIN_CLI_N:
        raise UsageError(f"--n must be at least {MIN_CLI_N}, got {n}")


def _warn_compile(circuit: Circuit):
    for warning in circuit.metadata.get("warnings", []):
        _note(f"⚠️  {warning}")


# Subcommands

def cmd_synth(args, monitor: Optional[RunMonitor]) -> int:
    _check_cli_n(args.n)
    circuit = CircuitFamily(family=args.family, n=args.n).build()
    if args.out:
        save_circuit(circuit, args.out)
        _note(f"✓ Wrote {args.out} ({circuit.n_qubits} qubits, {len(circuit.gates)} gates)")
    else:
        sys.stdout.write(_dump(circuit_to_document(circuit)))
    return EXIT_OK


def cmd_compile(args, monitor: Optional[RunMonitor]) -> int:
    circuit = load_circuit(args.input)
    compiled = compile_circuit(circuit, CompileMode(args.mode))
    _warn_compile(compiled)
    if args.out:
        save_circuit(compiled, args.out)
        _note(f"✓ Wrote {args.out} ({len(compiled.gates)} gates, mode {args.mode})")
    else:
        sys.stdout.write(_dump(circuit_to_document(compiled)))
    return EXIT_OK


def _metrics_table(rows: List[tuple]) -> str:
    header = ["", *(_HEADERS[q] for q in QUANTITIES)]
    body = [[name, *(str(report.quantity(q)) for q in QUANTITIES)] for name, report in rows]
    widths = [max(len(line[i]) for line in [header] + body) for i in range(len(header))]
    lines = [" | ".join(cell.rjust(w) if i else cell.ljust(w) for i, (cell, w) in enumerate(zip(line, widths)))
             for line in [header] + body]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def cmd_metrics(args, monitor: Optional[RunMonitor]) -> int:
    circuit = load_circuit(args.input)
    report = metrics(circuit)
    segments = segment_metrics(circuit) if args.segments else {}
    if args.format == "table":
        _emit(_metrics_table([("total", report)] + list(segments.items())), args.out)
    else:
        data = report.model_dump()
        if args.segments:
            data["segments"] = {tag: seg.model_dump(exclude_none=True) for tag, seg in segments.items()}
        _emit(_dump(data), args.out)
    return EXIT_OK


def cmd_verify(args, monitor: Optional[RunMonitor]) -> int:
    circuit = None
    if args.input:
        if args.level == "unitary":
            raise UsageError("--level unitary compares the three builds of a family; use --family and --n")
        circuit = load_circuit(args.input)
        family, n = circuit.metadata.get("family"), circuit.metadata.get("n")
        if family is None or n is None:
            raise CircuitError(f"{args.input} has no family/n metadata; verify it with --family and --n")
        mode = VerifyMode(circuit.metadata.get("mode", VerifyMode.HIGH_LEVEL.value))
    else:
        if args.family is None or args.n is None:
            raise UsageError("verify needs either an input file or --family and --n")
        family, n, mode = args.family, args.n, VerifyMode(args.mode)
    _check_cli_n(n)

    if args.level == "unitary":
        report = verify_unitary(family, n, monitor=monitor)
    else:
        report = verify_functional(
            family,
            n,
            mode=mode,
            strategy=Strategy.EXHAUSTIVE if args.level == "exhaustive" else Strategy.RANDOM,
            samples=args.samples,
            seed=args.seed,
            circuit=circuit,
            show_progress=args.progress,
            monitor=monitor,
        )
    _emit(_dump(report.model_dump(mode="json")), args.out)
    if not report.passed:
        _note(f"❌ {report.check} verification failed for {report.family} n={report.n}")
        return EXIT_FAILED
    return EXIT_OK


def cmd_table(args, monitor: Optional[RunMonitor]) -> int:
    which = TableKind(args.which)
    reports = reproduce_table(
        which, args.n, max_workers=args.workers, show_progress=args.progress, monitor=monitor
    )
    if args.format == "json":
        _emit(_dump([report.table_row() for report in reports]), args.out)
    else:
        _emit(render_table(reports, TABLE_ROWS[which]) + "\n", args.out)

    failed = [r for r in reports if not r.passed]
    for report in failed:
        _note(f"❌ {report.label} n={report.n} does not meet its formula")
    return EXIT_FAILED if failed else EXIT_OK


def cmd_export(args, monitor: Optional[RunMonitor]) -> int:
    circuit = load_circuit(args.input)
    if circuit.has_composites:
        _note("⚠️  input has composite gates; compiling in naive mode before export")
        circuit = compile_circuit(circuit, CompileMode.NAIVE)
    _emit(to_qasm2(circuit), args.out)
    return EXIT_OK


# Parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ripple",
        description="Synthesize, compile, measure, verify and export ripple-carry adders and comparators",
    )
    parser.add_argument("--metrics-log", action="store_true", help="Save run metrics (time, CPU, memory) to data/output/run_metrics/")
    parser.add_argument("--progress", action="store_true", help="Show progress bars on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    families = [f.value for f in FamilyName]

    p = sub.add_parser("synth", help="Build a high-level circuit")
    p.add_argument("--family", required=True, choices=families)
    p.add_argument("--n", type=int, required=True, help="Operand width (>= 2)")
    p.add_argument("--out", help="Output JSON path (stdout if omitted)")
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("compile", help="Compile composites to Clifford+T")
    p.add_argument("input", help="Circuit JSON file")
    p.add_argument("--mode", choices=[m.value for m in CompileMode], default=CompileMode.OPTIMIZED.value)
    p.add_argument("--out", help="Output JSON path (stdout if omitted)")
    p.set_defaults(handler=cmd_compile)

    p = sub.add_parser("metrics", help="T/CNOT counts and depths of a Clifford+T circuit")
    p.add_argument("input", help="Circuit JSON file")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--segments", action="store_true", help="Also report each annotated segment")
    p.add_argument("--out", help="Output path (stdout if omitted)")
    p.set_defaults(handler=cmd_metrics)

    p = sub.add_parser("verify", help="Functional or unitary verification")
    p.add_argument("input", nargs="?", help="Circuit JSON file with family/n metadata")
    p.add_argument("--family", choices=families)
    p.add_argument("--n", type=int)
    p.add_argument("--level", choices=["exhaustive", "random", "unitary"], default="exhaustive")
    p.add_argument("--mode", choices=[m.value for m in VerifyMode], default=VerifyMode.HIGH_LEVEL.value)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=DEFAULT_RANDOM_SAMPLES)
    p.add_argument("--out", help="Output JSON path (stdout if omitted)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("table", help="Reproduce a published complexity table")
    p.add_argument("--which", choices=[k.value for k in TableKind], required=True)
    p.add_argument("--n", type=int, nargs="+", default=DEFAULT_TABLE_N_VALUES)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--workers", type=int, default=MAX_WORKERS)
    p.add_argument("--out", help="Output path (stdout if omitted)")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("export", help="Export OpenQASM 2.0")
    p.add_argument("input", help="Circuit JSON file")
    p.add_argument("--format", choices=["qasm2"], default="qasm2")
    p.add_argument("--out", help="Output .qasm path (stdout if omitted)")
    p.set_defaults(handler=cmd_export)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_OK

    monitor = RunMonitor() if args.metrics_log else None
    try:
        code = args.handler(args, monitor)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        _note(f"❌ {e}")
        return EXIT_USAGE
    except _USAGE_ERRORS as e:
        _note(f"❌ {e}")
        return EXIT_USAGE
    except ValidationError as e:
        _note(f"❌ Invalid circuit document:\n{e}")
        return EXIT_DATA
    except (CircuitError, json.JSONDecodeError, OSError) as e:
        _note(f"❌ {e}")
        return EXIT_DATA

    if monitor is not None and monitor.metrics:
        monitor.print_summary(file=sys.stderr)
        _note(f"📊 Run metrics saved to {monitor.save_metrics()}")
    return code


if __name__ == "__main__":
    sys.exit(main())
