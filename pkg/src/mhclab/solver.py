"""Exact Hamilton path decisions by subset dynamic programming."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

from mhclab.config import DP_MAX_ORDER
from mhclab.graph import CapabilityError, Edge, Graph, GraphError, is_k_connected, iter_bits
from mhclab.path_formulas import HamiltonPath, verify_path

logger = logging.getLogger(__name__)


class PruneReason(enum.Enum):
    MIN_DEGREE = "MinDegree"
    CONNECTIVITY = "Connectivity"


@dataclass(frozen=True)
class HcResult:
    is_hc: bool
    witness_pairs_checked: int
    failing_pair: Edge | None = None
    pruned_by: PruneReason | None = None


def _check_bound(operation: str, graph: Graph) -> None:
    if graph.n > DP_MAX_ORDER:
        raise CapabilityError(operation, DP_MAX_ORDER, graph.n)


def _check_pair(graph: Graph, u: int, v: int) -> None:
    if u == v:
        raise GraphError(f"endpoints must differ, got {u} twice")
    if not (0 <= u < graph.n and 0 <= v < graph.n):
        raise GraphError(f"endpoints ({u}, {v}) outside 0..{graph.n - 1}")


def _sweep(graph: Graph, source: int) -> list[int]:
    """reach[mask]: bit v set iff some path from ``source`` covers exactly ``mask`` and ends at v."""
    adj = graph.adj
    reach = [0] * (1 << graph.n)
    start = 1 << source
    reach[start] = start
    for mask in range(start, 1 << graph.n):
        ends = reach[mask]
        if not ends:
            continue
        grow = 0
        for v in iter_bits(ends):
            grow |= adj[v]
        for w in iter_bits(grow & ~mask):
            bit = 1 << w
            reach[mask | bit] |= bit
    return reach


def hamilton_path_exists(graph: Graph, u: int, v: int) -> bool:
    _check_bound("hamilton_path_exists", graph)
    _check_pair(graph, u, v)
    return bool(_sweep(graph, u)[graph.full_mask] >> v & 1)


def find_hamilton_path(graph: Graph, u: int, v: int) -> HamiltonPath | None:
    """A Hamilton (u, v)-path read back from the DP table, or None.

    At each step back the lowest-numbered admissible predecessor is taken,
    so the certificate is deterministic.
    """
    _check_bound("find_hamilton_path", graph)
    _check_pair(graph, u, v)
    reach = _sweep(graph, u)
    mask = graph.full_mask
    if not reach[mask] >> v & 1:
        return None
    vertices = [v]
    current = v
    while mask != 1 << u:
        mask ^= 1 << current
        options = reach[mask] & graph.adj[current]
        current = (options & -options).bit_length() - 1
        vertices.append(current)
    path = HamiltonPath(tuple(reversed(vertices)), (u, v))
    verified = verify_path(graph, path)
    if not verified:
        raise AssertionError(f"DP certificate {path.vertices} is not a Hamilton path")
    return HamiltonPath(path.vertices, (u, v), verified=True)


def is_hamiltonian_connected(graph: Graph, *, prune: bool = True) -> HcResult:
    """Decide hamiltonian-connectivity; one DP sweep per source decides all its targets.

    Args:
        graph: Graph with 2 <= n <= DP_MAX_ORDER.
        prune: Reject graphs of order >= 4 with a vertex of degree < 3 or a
            vertex cut of size < 3 before running any DP.

    Returns:
        HcResult; failing_pair is the lexicographically first pair without a
        Hamilton path (absent when a prune fired).
    """
    _check_bound("is_hamiltonian_connected", graph)
    n = graph.n
    if n < 2:
        raise GraphError("hamiltonian-connectivity needs at least 2 vertices")
    if prune and n >= 4:
        if min(graph.degree(v) for v in range(n)) < 3:
            return HcResult(False, 0, pruned_by=PruneReason.MIN_DEGREE)
        if not is_k_connected(graph, 3):
            return HcResult(False, 0, pruned_by=PruneReason.CONNECTIVITY)

    checked = 0
    for u in range(n - 1):
        ends = _sweep(graph, u)[graph.full_mask]
        for v in range(u + 1, n):
            checked += 1
            if not ends >> v & 1:
                logger.debug("no Hamilton path between %d and %d", u, v)
                return HcResult(False, checked, failing_pair=(u, v))
    return HcResult(True, checked)
