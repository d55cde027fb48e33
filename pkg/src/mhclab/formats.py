"""Interchange formats: graph6, plain edge lists, and DOT."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Mapping

import networkx as nx

from mhclab.config import GRAPH6_HEADER, MAX_ORDER
from mhclab.graph import Graph, GraphError

if TYPE_CHECKING:
    from mhclab.constructions import LabeledGraph

logger = logging.getLogger(__name__)


class Graph6Error(GraphError):
    """Raised for a malformed graph6 line."""


class EdgeListError(GraphError):
    """Raised for a malformed edge-list document."""


def emit_graph6(graph: Graph) -> str:
    """graph6 text for ``graph`` (no header, no newline)."""
    plain = nx.Graph()
    plain.add_nodes_from(range(graph.n))
    plain.add_edges_from(graph.edges())
    return nx.to_graph6_bytes(plain, header=False).rstrip(b"\n").decode("ascii")


def _order_prefix(values: list[int]) -> tuple[int, int]:
    """(n, characters taken by the order field) from decoded graph6 values."""
    if values[0] != 63:
        return values[0], 1
    if len(values) >= 2 and values[1] == 63:
        raise Graph6Error(f"order exceeds {MAX_ORDER}")
    if len(values) < 4:
        raise Graph6Error("truncated order header")
    return values[1] << 12 | values[2] << 6 | values[3], 4


def parse_graph6(line: str) -> Graph:
    """Parse one graph6 line; a leading ``>>graph6<<`` header is stripped.

    Lines whose unused trailing bits are set are rejected, so every accepted
    line is the one ``emit_graph6`` writes back.
    """
    text = line.strip()
    if text.startswith(GRAPH6_HEADER):
        text = text[len(GRAPH6_HEADER) :]
    if not text:
        raise Graph6Error("empty graph6 line")
    values = [ord(char) - 63 for char in text]
    for char, code in zip(text, values):
        if not 0 <= code <= 63:
            raise Graph6Error(f"character {char!r} outside the graph6 range")

    n, width = _order_prefix(values)
    if not 1 <= n <= MAX_ORDER:
        raise Graph6Error(f"order {n} outside [1, {MAX_ORDER}]")
    try:
        parsed = nx.from_graph6_bytes(text.encode("ascii"))
    except (nx.NetworkXError, ValueError) as exc:
        raise Graph6Error(f"malformed graph6 line {text!r}: {exc}") from exc
    body = values[width:]
    padding = -(n * (n - 1) // 2) % 6
    if body and body[-1] & ((1 << padding) - 1):
        raise Graph6Error(f"padding bits set in the last character of {text!r}")
    return Graph.from_edges(n, parsed.edges())


def emit_edge_list(graph: Graph) -> str:
    """First line ``n m``, then one ``u v`` line per edge (0-based)."""
    edges = graph.edges()
    lines = [f"{graph.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows:
        raise EdgeListError("empty edge list")
    try:
        n, m = (int(token) for token in rows[0])
        edges = [(int(u), int(v)) for u, v in rows[1:]]
    except ValueError as exc:
        raise EdgeListError(f"malformed edge list: {exc}") from exc
    if len(edges) != m:
        raise EdgeListError(f"header announces {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def _dot_lines(name: str, graph: Graph, labels: Mapping[int, str]) -> list[str]:
    lines = [f'graph "{name}" {{']
    lines.extend(f'  "{labels[v]}";' for v in range(graph.n))
    lines.extend(f'  "{labels[u]}" -- "{labels[v]}";' for u, v in graph.edges())
    lines.append("}")
    return lines


def emit_dot(labeled: LabeledGraph) -> str:
    """DOT text with construction role labels as vertex names."""
    labels = {v: role.label for v, role in labeled.roles.items()}
    return "\n".join(_dot_lines(labeled.name, labeled.graph, labels)) + "\n"
