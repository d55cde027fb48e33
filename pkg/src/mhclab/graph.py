"""Immutable simple graphs on vertices 0..n-1 with bit-mask adjacency."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from mhclab.config import CANONICAL_MAX_ORDER, CONNECTIVITY_MAX_ORDER, MAX_ORDER, SMALL_CUT_MAX

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for invalid vertices, loops, or edge operations."""


class CapabilityError(RuntimeError):
    """Raised when an operation is asked to exceed its documented order bound."""

    def __init__(self, operation: str, bound: int, n: int) -> None:
        super().__init__(f"{operation} supports n <= {bound}, got n = {n}")
        self.operation = operation
        self.bound = bound
        self.n = n


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_ORDER:
        raise GraphError(f"vertex count must be in [1, {MAX_ORDER}], got {n}")


def _normalize_edge(n: int, u: int, v: int) -> Edge:
    if u == v:
        raise GraphError(f"loop edge at vertex {u}")
    if not (0 <= u < n and 0 <= v < n):
        raise GraphError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
    return (u, v) if u < v else (v, u)


class Graph:
    """An immutable simple graph; adjacency rows are per-vertex bit masks."""

    __slots__ = ("_n", "_adj")

    def __init__(self, n: int, adj: Sequence[int]) -> None:
        _check_order(n)
        if len(adj) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(adj)}")
        full = (1 << n) - 1
        for u, row in enumerate(adj):
            if row & ~full:
                raise GraphError(f"row {u} references a vertex >= {n}")
            if row >> u & 1:
                raise GraphError(f"loop edge at vertex {u}")
            for v in iter_bits(row):
                if not adj[v] >> u & 1:
                    raise GraphError(f"adjacency is not symmetric at ({u}, {v})")
        self._n = n
        self._adj = tuple(adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> Graph:
        """Build a graph from unordered pairs; duplicates collapse."""
        _check_order(n)
        adj = [0] * n
        for u, v in edges:
            u, v = _normalize_edge(n, u, v)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @property
    def n(self) -> int:
        return self._n

    @property
    def adj(self) -> tuple[int, ...]:
        return self._adj

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    @property
    def size(self) -> int:
        return sum(row.bit_count() for row in self._adj) // 2

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self._n and 0 <= v < self._n and bool(self._adj[u] >> v & 1)

    def edges(self) -> list[Edge]:
        """All edges (u, v) with u < v in lexicographic order."""
        return [(u, v) for u in range(self._n) for v in iter_bits(self._adj[u] >> (u + 1) << (u + 1))]

    def remove_edge(self, u: int, v: int) -> Graph:
        u, v = _normalize_edge(self._n, u, v)
        if not self.has_edge(u, v):
            raise GraphError(f"edge ({u}, {v}) is not in the graph")
        adj = list(self._adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self._n, adj)

    def add_edge(self, u: int, v: int) -> Graph:
        u, v = _normalize_edge(self._n, u, v)
        adj = list(self._adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self._n, adj)

    def add_vertex(self, neighbors: int) -> Graph:
        """Append vertex n joined to the vertices in the ``neighbors`` mask."""
        if neighbors & ~self.full_mask:
            raise GraphError("neighbor mask references a vertex outside the graph")
        new = self._n
        adj = [row | (1 << new) if neighbors >> u & 1 else row for u, row in enumerate(self._adj)]
        adj.append(neighbors)
        return Graph(new + 1, adj)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Vertex v of this graph becomes vertex perm[v] of the result."""
        if sorted(perm) != list(range(self._n)):
            raise GraphError("relabeling must be a permutation of 0..n-1")
        adj = [0] * self._n
        for u, row in enumerate(self._adj):
            adj[perm[u]] = bits_to_mask(perm[v] for v in iter_bits(row))
        return Graph(self._n, adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.edges()})"


@dataclass(frozen=True)
class DegreeProfile:
    """Degree multiset (descending) with its extremes."""

    degrees: tuple[int, ...]
    min_degree: int
    max_degree: int

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def count(self, degree: int) -> int:
        return self.degrees.count(degree)


def from_edges(n: int, edges: Iterable[Edge]) -> Graph:
    return Graph.from_edges(n, edges)


def remove_edge(graph: Graph, edge: Edge) -> Graph:
    return graph.remove_edge(*edge)


def degree_profile(graph: Graph) -> DegreeProfile:
    degrees = tuple(sorted((graph.degree(v) for v in range(graph.n)), reverse=True))
    return DegreeProfile(degrees=degrees, min_degree=degrees[-1], max_degree=degrees[0])


def _component(adj: Sequence[int], alive: int, start: int) -> int:
    seen = frontier = 1 << start
    while frontier:
        reached = 0
        for v in iter_bits(frontier):
            reached |= adj[v]
        frontier = reached & alive & ~seen
        seen |= frontier
    return seen


def _splits(graph: Graph, removed: int) -> bool:
    """True if deleting ``removed`` disconnects the graph or leaves <= 1 vertex."""
    alive = graph.full_mask & ~removed
    if alive.bit_count() <= 1:
        return True
    start = (alive & -alive).bit_length() - 1
    return _component(graph.adj, alive, start) != alive


def is_connected(graph: Graph) -> bool:
    if graph.n == 1:
        return True
    return _component(graph.adj, graph.full_mask, 0) == graph.full_mask


def _has_cut_of_size(graph: Graph, size: int) -> bool:
    for removed in itertools.combinations(range(graph.n), size):
        if _splits(graph, bits_to_mask(removed)):
            return True
    return False


def vertex_connectivity(graph: Graph) -> int:
    """Smallest vertex cut, by enumerating cuts of increasing size.

    Cost is O(2^n * n^2) in the worst case. Above CONNECTIVITY_MAX_ORDER only
    cuts of at most SMALL_CUT_MAX vertices are tried; a graph without one is
    rejected rather than searched.
    """
    n = graph.n
    if n == 1:
        return 0
    largest = n - 2 if n <= CONNECTIVITY_MAX_ORDER else min(n - 2, SMALL_CUT_MAX)
    for size in range(largest + 1):
        if _has_cut_of_size(graph, size):
            return size
    if n > CONNECTIVITY_MAX_ORDER:
        raise CapabilityError("vertex_connectivity", CONNECTIVITY_MAX_ORDER, n)
    return n - 1


def is_k_connected(graph: Graph, k: int) -> bool:
    """kappa(G) >= k, checking only cuts smaller than k (no order bound)."""
    if k <= 0:
        return True
    if graph.n <= k:
        return False
    return not any(_has_cut_of_size(graph, size) for size in range(k))


# ------------------------------------------------------------------
# Canonical forms
# ------------------------------------------------------------------


def _order_code(adj: Sequence[int], order: Sequence[int]) -> int:
    """Upper-triangle bits (graph6 column order) of the graph relabeled by ``order``."""
    code = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            code = code << 1 | (row >> order[i] & 1)
    return code


def _code_to_graph(n: int, code: int) -> Graph:
    edges = []
    shift = n * (n - 1) // 2
    for j in range(1, n):
        for i in range(j):
            shift -= 1
            if code >> shift & 1:
                edges.append((i, j))
    return Graph.from_edges(n, edges)


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbor counts into every cell until the partition is equitable."""
    while True:
        masks = [bits_to_mask(cell) for cell in cells]
        refined: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                signature = tuple((adj[v] & mask).bit_count() for mask in masks)
                groups.setdefault(signature, []).append(v)
            refined.extend(groups[signature] for signature in sorted(groups))
        if len(refined) == len(cells):
            return refined
        cells = refined


def _are_twins(adj: Sequence[int], cell: Sequence[int]) -> bool:
    first = cell[0]
    for v in cell[1:]:
        if adj[first] & ~(1 << v) != adj[v] & ~(1 << first):
            return False
    return True


def _best_code(adj: Sequence[int], cells: list[list[int]]) -> int:
    target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
    if target is None:
        return _order_code(adj, [cell[0] for cell in cells])
    cell = cells[target]
    if _are_twins(adj, cell):
        # Any order of mutual twins gives the same code.
        split = cells[:target] + [[v] for v in cell] + cells[target + 1 :]
        return _best_code(adj, _refine(adj, split))
    best = -1
    for v in cell:
        rest = [w for w in cell if w != v]
        split = cells[:target] + [[v], rest] + cells[target + 1 :]
        code = _best_code(adj, _refine(adj, split))
        if best < 0 or code < best:
            best = code
    return best


def canonical_form(graph: Graph) -> bytes:
    """graph6 bytes of the minimum-code relabeling over the refinement search tree."""
    if graph.n > CANONICAL_MAX_ORDER:
        raise CapabilityError("canonical_form", CANONICAL_MAX_ORDER, graph.n)
    cells = _refine(graph.adj, [list(range(graph.n))])
    code = _best_code(graph.adj, cells)
    return _encode_canonical(graph.n, code)


def canonical_form_bruteforce(graph: Graph) -> bytes:
    """Minimum code over every permutation that keeps vertices sorted by a local invariant.

    The invariant is a vertex degree together with the sorted degrees of its
    neighbors. Independent of the refinement search; used to cross-check it.
    """
    if graph.n > CANONICAL_MAX_ORDER:
        raise CapabilityError("canonical_form_bruteforce", CANONICAL_MAX_ORDER, graph.n)
    by_key: dict[tuple[int, tuple[int, ...]], list[int]] = {}
    for v in range(graph.n):
        key = (graph.degree(v), tuple(sorted(graph.degree(w) for w in graph.neighbors(v))))
        by_key.setdefault(key, []).append(v)
    blocks = [by_key[key] for key in sorted(by_key)]
    best = -1
    for arrangement in itertools.product(*(itertools.permutations(block) for block in blocks)):
        order = [v for block in arrangement for v in block]
        code = _order_code(graph.adj, order)
        if best < 0 or code < best:
            best = code
    return _encode_canonical(graph.n, best)


def _encode_canonical(n: int, code: int) -> bytes:
    # Imported lazily: formats depends on this module.
    from mhclab.formats import emit_graph6

    return emit_graph6(_code_to_graph(n, code)).encode("ascii")


def are_isomorphic(first: Graph, second: Graph) -> bool:
    if first.n != second.n or first.size != second.size:
        return False
    return canonical_form(first) == canonical_form(second)
