"""
Configuration file for RippleCarry project paths
"""
from pathlib import Path

# Project root directory
PROJECT_ROOT = Path(__file__).parent.parent

# Data directories
DATA_DIR = PROJECT_ROOT / 'data'
OUTPUT_DIR = DATA_DIR / 'output'

# Generated artifacts
REPORTS_DIR = OUTPUT_DIR / 'reports'
RUN_METRICS_DIR = OUTPUT_DIR / 'run_metrics'

# Create directories if they don't exist
for directory in [REPORTS_DIR, RUN_METRICS_DIR]:
    directory.mkdir(parents=True, exist_ok=True)
