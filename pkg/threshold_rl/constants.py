# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

DEFAULT_ARTIFACT_DIR = "artifacts"
DEFAULT_SWEEP_DIR = "sweeps"

DEFAULT_SEED = 0
DEFAULT_INIT_HALF_WIDTH = 0.5
XOR_INIT_HALF_WIDTH = 1.5
DEFAULT_NODE_THRESHOLD = 0.5

DEFAULT_LRATE = 1.0
DEFAULT_GAMMA = 0.95
DEFAULT_REWARD_THRESHOLD = 0.8
NARROW_PUNISH_RANGE = (0.45, 0.55)
WIDE_PUNISH_RANGE = (0.0, 1.0)
MATURE_HI = 0.9
MATURE_LO = 0.1

# Grid tasks probe less often than XOR; a probe costs one rollout per start cell.
DEFAULT_GRID_PROBE_INTERVAL = 100
DEFAULT_XOR_PROBE_INTERVAL = 4

# Presentation counts reported for the reference runs. Caps default to 10x.
REFERENCE_PRESENTATIONS = {
    ("tracking", "tap"): 116816,
    ("tracking", "tar"): 110324,
    ("tracking", "tac"): 110324,
    ("maze", "tar"): 80184,
    ("maze", "tac"): 18212,
    ("xor", "supervised"): 2182,
    ("xor", "tap"): 7550,
    ("xor", "tar"): 7550,
    ("xor", "tac"): 311,
}
CAP_FACTOR = 10
# Lower bounds on the default cap per preset.
MIN_MAX_PRESENTATIONS = {
    ("tracking", "tap"): 1200000,
    ("maze", "tac"): 200000,
    ("xor", "supervised"): 50000,
    ("xor", "tap"): 200000,
    ("xor", "tar"): 200000,
    ("xor", "tac"): 200000,
}

SUMMARY_SCHEMA_VERSION = 1
TRACE_SCHEMA_VERSION = 1

EXIT_CONVERGED = 0
EXIT_ERROR = 1
EXIT_CONFIGURATION_ERROR = 2
EXIT_NOT_CONVERGED = 3

# Used when no reference count exists (e.g. supervised training on a grid task).
FALLBACK_MAX_PRESENTATIONS = 200000
