"""
Configuration module holding constants, file paths and solver defaults.

Module contents:
    - PACKAGE_DIR / REPO_ROOT / DATASETS_PATH / FIXTURES_PATH: path objects.
    - ORACLE_VERTEX_LIMIT, NAIVE_DET_LIMIT, EXPLICIT_COLORING_LIMIT,
      TRUTH_TABLE_VARIABLE_LIMIT: size limits for exhaustive routines.
    - DEFAULT_EPSILON, DEFAULT_SEED, DEFAULT_EXTRACTION_ROUNDS: randomized solver defaults.
    - PIT_STREAM / EXTRACTION_STREAM / CORPUS_STREAM: random stream identifiers.
    - EXIT_OK / EXIT_USAGE / EXIT_LIMIT: command-line exit statuses.
    - RED, BLUE: the two colors of the reductions.
"""

from pathlib import Path

PACKAGE_DIR = Path(__file__).resolve().parent
REPO_ROOT = PACKAGE_DIR.parent
DATASETS_PATH = REPO_ROOT / "datasets"
FIXTURES_PATH = DATASETS_PATH / "fixtures"

# ============================================================================
# SIZE LIMITS
# ============================================================================

ORACLE_VERTEX_LIMIT = 14
NAIVE_DET_LIMIT = 8
EXPLICIT_COLORING_LIMIT = 4096
TRUTH_TABLE_VARIABLE_LIMIT = 20

# ============================================================================
# RANDOMIZED SOLVER DEFAULTS
# ============================================================================

DEFAULT_EPSILON = 2.0**-20
DEFAULT_SEED = 0
DEFAULT_EXTRACTION_ROUNDS = 20
MIN_SAMPLE_BOUND = 2

# Random draws are seeded with [seed, stream, counter]
PIT_STREAM = 0
EXTRACTION_STREAM = 1
CORPUS_STREAM = 2

# Bareiss stage assertions (every stage-k entry is 0 or homogeneous of degree 2k)
DEBUG_HOMOGENEITY = False

# ============================================================================
# COMMAND LINE
# ============================================================================

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_LIMIT = 3

# ============================================================================
# COLORS
# ============================================================================

RED = 1
BLUE = 2
