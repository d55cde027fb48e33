"""Configuration constants for mhclab."""

from typing import Final

# Order bounds
MAX_ORDER: Final[int] = 64
DP_MAX_ORDER: Final[int] = 24
CANONICAL_MAX_ORDER: Final[int] = 12
CONNECTIVITY_MAX_ORDER: Final[int] = 16
# Above CONNECTIVITY_MAX_ORDER, vertex_connectivity only looks for cuts this small
SMALL_CUT_MAX: Final[int] = 3
NATIVE_SEARCH_MIN_ORDER: Final[int] = 4
NATIVE_SEARCH_MAX_ORDER: Final[int] = 8
FORMULA_SWEEP_MAX_ORDER: Final[int] = 14

# Ellipsis expansion search: node budget per (pair, pass)
FORMULA_SEARCH_BUDGET: Final[int] = 250_000

# Search
DEFAULT_WORKERS: Final[int] = 1
DEFAULT_SPILL_BOUND: Final[int] = 500_000
WORKER_CHUNK_SIZE: Final[int] = 64
CHUNKS_IN_FLIGHT_PER_WORKER: Final[int] = 2

# Environment variables
WORKERS_ENV: Final[str] = "MHCLAB_WORKERS"
SPILL_BOUND_ENV: Final[str] = "MHCLAB_SPILL_BOUND"
CONFIG_DIR_ENV: Final[str] = "MHCLAB_CONFIG_DIR"

# Display Constants
BAR_WIDTH: Final[int] = 30
GRAPH6_HEADER: Final[str] = ">>graph6<<"
