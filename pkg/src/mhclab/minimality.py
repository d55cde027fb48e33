"""Minimal hamiltonian-connectivity: per-edge evidence and the fast arguments."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

from mhclab.config import DP_MAX_ORDER
from mhclab.constructions import Family, LabeledGraph
from mhclab.graph import CapabilityError, Edge, Graph, GraphError, is_k_connected
from mhclab.path_formulas import verify_all_pairs
from mhclab.solver import HcResult, PruneReason, is_hamiltonian_connected

logger = logging.getLogger(__name__)


class MinimalityError(ValueError):
    """Raised when a minimal HC subgraph is requested from a non-HC graph."""


class EdgeReason(enum.Enum):
    DEGREE_DROP = "DegreeDrop"
    CONNECTIVITY_DROP = "ConnectivityDrop"
    DP_REFUTED = "DpRefuted"


@dataclass(frozen=True)
class EdgeEvidence:
    edge: Edge
    reason: EdgeReason
    still_hc: bool
    refuting_pair: Edge | None = None


@dataclass(frozen=True)
class MhcVerdict:
    is_hc: bool
    is_minimal: bool
    edge_evidence: tuple[EdgeEvidence, ...]
    fast_path_used: bool
    failing_pair: Edge | None = None


def _fast_reason(graph: Graph, edge: Edge) -> EdgeReason | None:
    """A proof that graph - edge is not HC without running the DP, if one applies."""
    u, v = edge
    if graph.degree(u) == 3 or graph.degree(v) == 3:
        return EdgeReason.DEGREE_DROP
    if not is_k_connected(graph.remove_edge(u, v), 3):
        return EdgeReason.CONNECTIVITY_DROP
    return None


def _reason_for(result: HcResult) -> EdgeReason:
    if result.pruned_by is PruneReason.MIN_DEGREE:
        return EdgeReason.DEGREE_DROP
    if result.pruned_by is PruneReason.CONNECTIVITY:
        return EdgeReason.CONNECTIVITY_DROP
    return EdgeReason.DP_REFUTED


def is_minimally_hc(graph: Graph, *, fast: bool = True, whole: HcResult | None = None) -> MhcVerdict:
    """Decide minimality with one evidence record per edge, in lexicographic edge order.

    With ``fast`` the degree-3 endpoint and connectivity-drop arguments settle
    an edge without the DP; otherwise every G - e is swept by the solver with
    its prunes switched off. ``whole`` reuses an HC decision already made for
    ``graph``.
    """
    n = graph.n
    if n > DP_MAX_ORDER:
        raise CapabilityError("is_minimally_hc", DP_MAX_ORDER, n)
    if n < 4:
        raise GraphError(f"minimality verdicts need n >= 4, got n = {n}")

    if whole is None:
        whole = is_hamiltonian_connected(graph, prune=fast)
    evidence = []
    for edge in graph.edges():
        reason = _fast_reason(graph, edge) if fast else None
        if reason is not None:
            evidence.append(EdgeEvidence(edge, reason, still_hc=False))
            continue
        if not whole.is_hc:
            # Deleting an edge never creates a Hamilton path.
            evidence.append(EdgeEvidence(edge, _reason_for(whole), False, whole.failing_pair))
            continue
        result = is_hamiltonian_connected(graph.remove_edge(*edge), prune=fast)
        evidence.append(EdgeEvidence(edge, _reason_for(result), result.is_hc, result.failing_pair))

    is_minimal = whole.is_hc and not any(record.still_hc for record in evidence)
    fast_used = any(record.reason is not EdgeReason.DP_REFUTED for record in evidence)
    return MhcVerdict(whole.is_hc, is_minimal, tuple(evidence), fast_used, whole.failing_pair)


def fast_minimality_argument(graph: LabeledGraph | Graph) -> bool | None:
    """True when every edge has a degree-3 endpoint or its deletion drops connectivity below 3.

    Hamiltonian-connectivity of a case construction comes from its certified
    path formulas; any other graph goes to the solver. Returns None when the
    graph is not HC or some edge has neither property.
    """
    if isinstance(graph, LabeledGraph) and graph.family is not Family.WHEEL:
        report = verify_all_pairs(graph)
        is_hc = report.verified == report.pairs
        plain = graph.graph
    else:
        plain = graph.graph if isinstance(graph, LabeledGraph) else graph
        if plain.n < 4:
            return None
        is_hc = is_hamiltonian_connected(plain).is_hc
    if not is_hc:
        return None
    for edge in plain.edges():
        if _fast_reason(plain, edge) is None:
            logger.debug("edge %s defeats the fast minimality argument", edge)
            return None
    return True


def minimal_spanning_subgraph(graph: Graph) -> Graph:
    """Delete edges in lexicographic order while the graph stays HC.

    A single pass suffices: an edge kept once stays necessary in every
    spanning subgraph of the graph it was tested against.
    """
    if not is_hamiltonian_connected(graph).is_hc:
        raise MinimalityError("graph is not hamiltonian-connected")
    current = graph
    for edge in graph.edges():
        candidate = current.remove_edge(*edge)
        if is_hamiltonian_connected(candidate).is_hc:
            current = candidate
    if current.n >= 4 and not is_minimally_hc(current).is_minimal:
        raise AssertionError("greedy edge deletion left a non-minimal graph")
    return current
