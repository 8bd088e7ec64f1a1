"""
Default constants for synthesis, compilation and verification runs.

Everything here can be overridden per call or per CLI flag; nothing is read
from the environment.
"""

# Equivalence tolerances
FUNCTIONAL_TOLERANCE = 1e-9      # basis-state probability slack for compiled circuits
UNITARY_TOLERANCE = 1e-9         # entry-wise, no global phase quotient
CANCELLATION_TOLERANCE = 1e-10    # unitary slack after pair cancellation
NORM_TOLERANCE = 1e-9

# Size caps
EXHAUSTIVE_WIRE_CAP = 13         # every wire of the swept circuit, ancilla included
UNITARY_WIRE_CAP = 8
FULL_UNITARY_QUBIT_CAP = 12

# Random verification
DEFAULT_SEED = 20240917
DEFAULT_RANDOM_SAMPLES = 500

# Table reproduction
MIN_TABLE_N = 2
MAX_TABLE_N = 64
DEFAULT_TABLE_N_VALUES = [4, 6, 8, 16]

# Simulation and concurrency
STATEVECTOR_BATCH_SIZE = 256
MAX_WORKERS = 4
