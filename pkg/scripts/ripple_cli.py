#!/usr/bin/env python3
"""
Entry point for the ripple-carry circuit toolkit.

Usage:
    python scripts/ripple_cli.py synth --family ttk-adder --n 4 --out data/output/circuits/ttk4.json
    python scripts/ripple_cli.py compile data/output/circuits/ttk4.json --mode optimized --out ttk4_opt.json
    python scripts/ripple_cli.py metrics ttk4_opt.json --format table
    python scripts/ripple_cli.py verify --family cdkm-comparator --n 3 --level exhaustive --mode optimized
    python scripts/ripple_cli.py table --which adders --n 4 8 16
    python scripts/ripple_cli.py export ttk4_opt.json --format qasm2
"""

import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT / "src"))
sys.path.insert(0, str(PROJECT_ROOT))

from cli import main

if __name__ == "__main__":
    sys.exit(main())
