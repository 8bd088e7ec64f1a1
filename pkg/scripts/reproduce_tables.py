#!/usr/bin/env python3
"""
Reproduce both published complexity tables and write a JSON report.

Every (row, n) cell is built, compiled and measured in a thread pool and
compared against its published formula. Cells for which the source gives a
second value also report that variant.

Usage:
    python scripts/reproduce_tables.py
    python scripts/reproduce_tables.py --n 2 4 8 16 32 --verify-n 2 3 --metrics-log
"""

import argparse
import json
import sys
from datetime import datetime
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT / "src"))
sys.path.insert(0, str(PROJECT_ROOT))

from config.defaults import DEFAULT_TABLE_N_VALUES, MAX_WORKERS
from config.paths import REPORTS_DIR
from run_monitor import RunMonitor
from synthesize_circuits import FamilyName
from verify_bench import TABLE_ROWS, TableKind, VerifyMode, render_table, reproduce_table, verify_functional


def run_functional_sweep(n_values, monitor):
    """Exhaustive functional checks of every family in every mode."""
    results = []
    for family in FamilyName:
        for n in n_values:
            for mode in VerifyMode:
                try:
                    report = verify_functional(family, n, mode=mode, monitor=monitor)
                    results.append(report)
                    marker = "✓" if report.passed else "❌"
                    print(f"  {marker} {family.value:16} n={n} {mode.value:10} {report.checks_run} cases, "
                          f"{report.failure_count} failures")
                except Exception as e:
                    print(f"  ❌ {family.value} n={n} {mode.value}: {e}")
    return results


def main(n_values, verify_n, max_workers, output_path, metrics_log):
    print(f"{'='*80}")
    print("RIPPLE-CARRY COMPLEXITY TABLES")
    print(f"{'='*80}\n")
    print(f"n values: {n_values}")
    print(f"Workers:  {max_workers}\n")

    monitor = RunMonitor() if metrics_log else None
    report = {"timestamp": datetime.now().isoformat(), "n_values": n_values, "tables": {}, "functional": []}
    passed = total = 0

    for which in TableKind:
        print(f"\n📊 {which.value.upper()}")
        print("-" * 80)
        try:
            reports = reproduce_table(which, n_values, max_workers=max_workers, show_progress=True, monitor=monitor)
        except Exception as e:
            print(f"❌ {which.value}: {e}")
            continue
        print(render_table(reports, TABLE_ROWS[which]))
        report["tables"][which.value] = [r.table_row() for r in reports]
        total += len(reports)
        passed += sum(1 for r in reports if r.passed)

    if verify_n:
        print(f"\n📊 FUNCTIONAL SWEEP (exhaustive, n = {verify_n})")
        print("-" * 80)
        sweep = run_functional_sweep(verify_n, monitor)
        report["functional"] = [r.model_dump(mode="json") for r in sweep]
        total += len(sweep)
        passed += sum(1 for r in sweep if r.passed)

    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, 'w') as f:
        json.dump(report, f, indent=2, ensure_ascii=False)

    print(f"\n{'='*80}")
    print("REPRODUCTION COMPLETE")
    print(f"{'='*80}")
    print(f"\n✅ Passing cells: {passed}/{total}")
    if passed != total:
        print(f"⚠️  {total - passed} cell(s) failed, see {output_path.name}")
    print(f"\nReport saved to: {output_path}")

    if monitor is not None:
        monitor.print_summary(file=sys.stdout)
        print(f"Run metrics saved to: {monitor.save_metrics()}")

    return 0 if passed == total else 3


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Reproduce the adder and comparator complexity tables")
    parser.add_argument("--n", type=int, nargs="+", default=DEFAULT_TABLE_N_VALUES, help="Operand widths for the tables")
    parser.add_argument("--verify-n", type=int, nargs="*", default=[], help="Also run exhaustive functional checks at these widths")
    parser.add_argument("--workers", type=int, default=MAX_WORKERS, help="Thread pool size")
    parser.add_argument("--output", type=Path, default=None, help="Report path (default: data/output/reports/tables_<timestamp>.json)")
    parser.add_argument("--metrics-log", action="store_true", help="Record time and memory per cell")

    args = parser.parse_args()
    output = args.output or REPORTS_DIR / f"tables_{datetime.now().strftime('%Y%m%d_%H%M%S')}.json"

    sys.exit(main(args.n, args.verify_n, args.workers, output, args.metrics_log))
