#!/usr/bin/env python3
"""
Run Monitoring System
Tracks CPU, memory, and timing for synthesis, compilation and verification cells.
"""

import json
import sys
import time
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO

import psutil

from config.paths import RUN_METRICS_DIR


class RunMonitor:
    """Monitors resource usage of (family, operation, n) cells."""

    def __init__(self, log_dir: Optional[Path] = None):
        """Initialize the monitor.

        Args:
            log_dir: Directory to save run logs. Defaults to data/output/run_metrics/
        """
        if log_dir is None:
            log_dir = RUN_METRICS_DIR

        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)

        self.metrics: List[Dict[str, Any]] = []
        self.process = psutil.Process()

    def _get_system_metrics(self) -> Dict[str, float]:
        """Get current process resource usage."""
        mem_info = self.process.memory_info()
        return {
            'process_cpu_seconds': sum(self.process.cpu_times()[:2]),
            'process_memory_mb': mem_info.rss / 1024 / 1024,
            'process_memory_percent': self.process.memory_percent(),
            'system_memory_percent': psutil.virtual_memory().percent,
        }

    @contextmanager
    def track_operation(
        self,
        family: str,
        operation: str,
        n: int,
        metadata: Optional[Dict[str, Any]] = None
    ):
        """Context manager to track a single cell.

        Args:
            family: Circuit family (e.g., 'cdkm-shallow') or table row label
            operation: Type of operation (e.g., 'verify_functional', 'table_row')
            n: Operand width
            metadata: Additional metadata to log

        Usage:
            with monitor.track_operation('ttk-adder', 'verify_unitary', 2):
                report = verify_unitary('ttk-adder', 2)
        """
        start_time = time.time()
        start_metrics = self._get_system_metrics()

        try:
            yield
        finally:
            duration = time.time() - start_time
            end_metrics = self._get_system_metrics()

            metric_entry = {
                'timestamp': datetime.now().isoformat(),
                'family': family,
                'operation': operation,
                'n': n,
                'duration_seconds': duration,
                'cpu_seconds': end_metrics['process_cpu_seconds'] - start_metrics['process_cpu_seconds'],
                'memory_delta_mb': end_metrics['process_memory_mb'] - start_metrics['process_memory_mb'],
                'peak_memory_mb': end_metrics['process_memory_mb'],
                'system_memory_percent': end_metrics['system_memory_percent'],
            }

            if metadata:
                metric_entry['metadata'] = metadata

            self.metrics.append(metric_entry)

    def get_summary_stats(self, family: Optional[str] = None) -> Dict[str, Any]:
        """Get summary statistics for a family or all families.

        Args:
            family: Filter by family. If None, returns stats over everything.

        Returns:
            Dictionary with summary statistics
        """
        filtered = self.metrics
        if family:
            filtered = [m for m in self.metrics if m['family'] == family]

        if not filtered:
            return {}

        durations = [m['duration_seconds'] for m in filtered]
        memory_peaks = [m['peak_memory_mb'] for m in filtered]
        cpu = [m['cpu_seconds'] for m in filtered]

        return {
            'family': family or 'all',
            'total_operations': len(filtered),
            'total_duration_seconds': sum(durations),
            'avg_duration_seconds': sum(durations) / len(durations),
            'max_duration_seconds': max(durations),
            'max_memory_mb': max(memory_peaks),
            'total_cpu_seconds': sum(cpu),
            'largest_n': max(m['n'] for m in filtered),
        }

    def get_family_comparison(self) -> Dict[str, Dict[str, Any]]:
        """Get summary statistics per family."""
        families = sorted(set(m['family'] for m in self.metrics))
        return {family: self.get_summary_stats(family) for family in families}

    def save_metrics(self, filename: Optional[str] = None) -> Path:
        """Save all metrics to JSON file.

        Args:
            filename: Output filename. If None, uses timestamp.
        """
        if filename is None:
            filename = f"run_metrics_{datetime.now().strftime('%Y%m%d_%H%M%S')}.json"

        output_path = self.log_dir / filename

        data = {
            'timestamp': datetime.now().isoformat(),
            'total_operations': len(self.metrics),
            'metrics': self.metrics,
            'summary': self.get_family_comparison(),
        }

        with open(output_path, 'w') as f:
            json.dump(data, f, indent=2)

        return output_path

    def print_summary(self, file: TextIO = sys.stderr):
        """Print a formatted summary of all metrics."""
        comparison = self.get_family_comparison()

        print("\n" + "=" * 80, file=file)
        print("RUN SUMMARY", file=file)
        print("=" * 80, file=file)

        for family, stats in comparison.items():
            print(f"\n📊 {family}", file=file)
            print(f"   Operations:      {stats['total_operations']}", file=file)
            print(f"   Total Duration:  {stats['total_duration_seconds']:.3f}s", file=file)
            print(f"   Max Duration:    {stats['max_duration_seconds']:.3f}s", file=file)
            print(f"   Peak Memory:     {stats['max_memory_mb']:.1f} MB", file=file)
            print(f"   CPU Time:        {stats['total_cpu_seconds']:.2f}s", file=file)
            print(f"   Largest n:       {stats['largest_n']}", file=file)

        print("\n" + "=" * 80, file=file)
        print(f"Total operations tracked: {len(self.metrics)}", file=file)
        print("=" * 80 + "\n", file=file)

