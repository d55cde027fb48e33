"""Explicit Hamilton-path templates for G(n, delta) and H(n, delta).

Each case is one table row: the role families of its two endpoints, an index
guard, and a template. A template is a list of tokens:

* ``at(f, i)``: a named vertex; dropped when the role does not exist;
* ``up(f, a, b)`` / ``down(f, a, b)``: a written range such as
  ``x_i, x_{i+1}, ..., x_{j-1}``; empty when it runs the wrong way,
  otherwise its two ends are named and its interior is an ellipsis;
* ``GAP``: an ellipsis between differently named vertices.

Named vertices are anchors and must appear in template order. Vertices the
template does not name are filled into the ellipses by a deterministic
search that only uses graph edges; consecutive anchors without an ellipsis
must be adjacent. If that strict reading has no completion, a relaxed pass
treats every junction as an ellipsis. Every emitted path is re-verified.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

from mhclab.config import FORMULA_SEARCH_BUDGET
from mhclab.constructions import Family, LabeledGraph, Role
from mhclab.graph import Graph, iter_bits

logger = logging.getLogger(__name__)


class FormulaError(RuntimeError):
    """A case guard failed, or a template expansion is not a Hamilton path."""


@dataclass(frozen=True, order=True)
class CaseId:
    family: Family = field(compare=False)
    number: str

    def __str__(self) -> str:
        return self.number


@dataclass(frozen=True)
class HamiltonPath:
    """A vertex sequence claimed to be a Hamilton (u, v)-path."""

    vertices: tuple[int, ...]
    endpoints: tuple[int, int]
    case: CaseId | None = None
    verified: bool = False
    anchors: tuple[int, ...] = ()
    relaxed: bool = False


# ------------------------------------------------------------------
# Template tokens
# ------------------------------------------------------------------


@dataclass(frozen=True)
class _At:
    family: str
    index: int | None = None


@dataclass(frozen=True)
class _Run:
    family: str
    start: int
    stop: int
    step: int


class _Gap:
    def __repr__(self) -> str:
        return "GAP"


GAP = _Gap()
Token = _At | _Run | _Gap


def at(family: str, index: int | None = None) -> _At:
    return _At(family, index)


def up(family: str, start: int, stop: int) -> _Run:
    return _Run(family, start, stop, 1)


def down(family: str, start: int, stop: int) -> _Run:
    return _Run(family, start, stop, -1)


Guard = Callable[[int | None, int | None, int, int], bool]
Template = Callable[[int | None, int | None, int, int], list[Token]]


@dataclass(frozen=True)
class CaseSpec:
    number: str
    first: str
    second: str
    guard: Guard
    template: Template


def _cut_z1(j: int) -> list[Token]:
    # "w_1,...,w_{j-1},z_{j-1},...,z_1" means z_1 when j = 1.
    if j == 1:
        return [at("z", 1)]
    return [up("w", 1, j - 1), down("z", j - 1, 1)]


CASES_ODD: tuple[CaseSpec, ...] = (
    CaseSpec("1.1", "x", "x", lambda i, j, k, s: i < j,
             lambda i, j, k, s: [up("x", i, j - 1), at("y", 1), down("x", i - 1, 1), at("z", 1), at("z", 2),
                                 at("y", 2), GAP, at("z", s + 1), down("x", k, j)]),
    CaseSpec("1.2", "x", "y", lambda i, j, k, s: True,
             lambda i, j, k, s: [up("x", i, k), at("z", s + 1), GAP, at("y", j + 1), at("z", j + 1),
                                 down("z", j, 1), up("x", 1, i - 1), up("y", 1, j)]),
    CaseSpec("1.3", "x", "z", lambda i, j, k, s: j <= s,
             lambda i, j, k, s: [up("x", i, k), at("z", s + 1), GAP, at("z", j + 1), at("y", j + 1),
                                 down("y", j, 1), down("x", i - 1, 1), up("z", 1, j)]),
    CaseSpec("1.4", "x", "z", lambda i, j, k, s: j == s + 1,
             lambda i, j, k, s: [up("x", i, k), at("y", 1), down("x", i - 1, 1), at("z", 1), at("z", 2),
                                 GAP, at("z", s + 1)]),
    CaseSpec("1.5", "y", "y", lambda i, j, k, s: i < j,
             lambda i, j, k, s: [up("y", i, j - 1), down("z", j - 1, i), at("z", i - 1), GAP, up("x", 1, k),
                                 at("z", s + 1), GAP, at("z", j), at("y", j)]),
    CaseSpec("1.6", "y", "z", lambda i, j, k, s: i < j,
             lambda i, j, k, s: [up("y", i, j - 1), down("z", j - 1, i), at("z", i - 1), GAP, up("x", 1, k),
                                 at("z", s + 1), GAP, at("y", j), at("z", j)]),
    CaseSpec("1.7", "y", "z", lambda i, j, k, s: j <= i,
             lambda i, j, k, s: [down("y", i, j), at("y", j - 1), at("z", j - 1), GAP, up("x", 1, k),
                                 at("z", s + 1), GAP, at("y", i + 1), at("z", i + 1), down("z", i, j)]),
    CaseSpec("1.8", "z", "z", lambda i, j, k, s: i < j,
             lambda i, j, k, s: [up("z", i, j - 1), down("y", j - 1, i), at("y", i - 1), at("z", i - 1), GAP,
                                 up("x", 1, k), at("z", s + 1), GAP, at("z", j)]),
)

CASES_EVEN: tuple[CaseSpec, ...] = (
    CaseSpec("2.1", "y", "y", lambda i, j, k, s: i == 1 < j,
             lambda i, j, k, s: [up("y", 1, j - 1), at("x"), at("z", 1), at("z", 0), at("w", 1), GAP,
                                 at("w", s + 1), down("y", k, j)]),
    CaseSpec("2.2", "y", "y", lambda i, j, k, s: 2 <= i < j,
             lambda i, j, k, s: [up("y", i, j - 1), at("x"), down("y", i - 1, 1), at("z", 0), GAP,
                                 at("w", s + 1), down("y", k, j)]),
    CaseSpec("2.3", "y", "x", lambda i, j, k, s: i == 1,
             lambda i, j, k, s: [at("y", 1), at("z", 0), GAP, at("w", s + 1), down("y", k, 2), at("x")]),
    CaseSpec("2.4", "y", "x", lambda i, j, k, s: i >= 2,
             lambda i, j, k, s: [up("y", i, k), at("w", s + 1), GAP, at("z", 0), up("y", 1, i - 1), at("x")]),
    CaseSpec("2.5", "y", "z", lambda i, j, k, s: i <= k - 1,
             lambda i, j, k, s: [down("y", i, 1), at("x"), up("y", i + 1, k), at("w", s + 1), GAP,
                                 at("z", j + 1), at("w", j + 1), down("w", j, 1), at("z", 0), GAP, at("z", j)]),
    CaseSpec("2.6", "y", "z", lambda i, j, k, s: i == k and j == 0,
             lambda i, j, k, s: [down("y", k, 1), at("x"), at("z", 1), GAP, at("z", s), at("w", s + 1), GAP,
                                 at("w", 1), at("z", 0)]),
    CaseSpec("2.7", "y", "z", lambda i, j, k, s: i == k and j >= 1,
             lambda i, j, k, s: [down("y", k, 2), at("x"), at("y", 1), at("z", 0), GAP, at("z", j - 1),
                                 at("w", j - 1), up("w", j, s + 1), at("z", s), GAP, at("z", j)]),
    CaseSpec("2.8", "y", "w", lambda i, j, k, s: i == 1,
             lambda i, j, k, s: [at("y", 1), at("z", 0), *_cut_z1(j), at("x"), up("y", 2, k), at("w", s + 1),
                                 GAP, at("w", j)]),
    CaseSpec("2.9", "y", "w", lambda i, j, k, s: i >= 2,
             lambda i, j, k, s: [up("y", i, k), at("x"), down("y", i - 1, 1), at("z", 0), GAP, at("w", j - 1),
                                 up("z", j - 1, s), at("w", s + 1), GAP, at("w", j)]),
    CaseSpec("2.10", "x", "z", lambda i, j, k, s: True,
             lambda i, j, k, s: [at("x"), up("y", 1, k), at("w", s + 1), GAP, at("z", j + 1), at("w", j + 1),
                                 down("w", j, 1), at("z", 0), GAP, at("z", j)]),
    CaseSpec("2.11", "x", "w", lambda i, j, k, s: True,
             lambda i, j, k, s: [at("x"), down("y", k, 1), at("z", 0), GAP, at("w", j - 1), up("z", j - 1, s),
                                 at("w", s + 1), GAP, at("w", j)]),
    CaseSpec("2.12", "z", "z", lambda i, j, k, s: i < j,
             lambda i, j, k, s: [at("z", i), at("w", i), at("w", i - 1), GAP, at("z", 0), at("y", 1), at("x"),
                                 up("y", 2, k), at("w", s + 1), GAP, at("z", j + 1), at("w", j + 1),
                                 down("w", j, i + 1), at("z", i + 1), GAP, at("z", j)]),
    CaseSpec("2.13", "z", "w", lambda i, j, k, s: i == 0,
             lambda i, j, k, s: [at("z", 0), *_cut_z1(j), at("x"), up("y", 1, k), at("w", s + 1), GAP,
                                 at("w", j)]),
    CaseSpec("2.14", "z", "w", lambda i, j, k, s: 1 <= i < j,
             lambda i, j, k, s: [up("z", i, j - 1), down("w", j - 1, i), at("w", i - 1), GAP, at("z", 0),
                                 at("y", 1), at("x"), up("y", 2, k), at("w", s + 1), GAP, at("z", j), at("w", j)]),
    CaseSpec("2.15", "z", "w", lambda i, j, k, s: 1 <= j <= i,
             lambda i, j, k, s: [down("z", i, j), at("z", j - 1), at("w", j - 1), GAP, at("z", 0), at("y", 1),
                                 at("x"), up("y", 2, k), at("w", s + 1), GAP, at("z", i + 1),
                                 down("w", i + 1, j)]),
    CaseSpec("2.16", "w", "w", lambda i, j, k, s: i < j,
             lambda i, j, k, s: [up("w", i, j - 1), down("z", j - 1, i), at("z", i - 1), at("w", i - 1), GAP,
                                 at("z", 0), at("y", 1), at("x"), up("y", 2, k), at("w", s + 1), GAP, at("z", j),
                                 at("w", j)]),
)

CASE_TABLES: dict[Family, tuple[CaseSpec, ...]] = {
    Family.CASE_ODD: CASES_ODD,
    Family.CASE_EVEN: CASES_EVEN,
}


# ------------------------------------------------------------------
# Dispatch
# ------------------------------------------------------------------


def _resolve(labeled: LabeledGraph, u: int, v: int) -> tuple[CaseSpec, int, int]:
    """The unique case matching {u, v}, with the pair oriented as the case needs."""
    if labeled.family not in CASE_TABLES:
        raise FormulaError(f"no path formulas for family {labeled.family.value}")
    if u == v:
        raise FormulaError("endpoints must be distinct")
    matches = []
    for first, second in ((u, v), (v, u)):
        a, b = labeled.role(first), labeled.role(second)
        for spec in CASE_TABLES[labeled.family]:
            if spec.first == a.family and spec.second == b.family:
                if spec.guard(a.index, b.index, labeled.k, labeled.s):
                    matches.append((spec, first, second))
    if len(matches) != 1:
        names = [spec.number for spec, _, _ in matches]
        raise FormulaError(f"{labeled.name}: pair ({labeled.role(u)}, {labeled.role(v)}) matches cases {names}")
    return matches[0]


def dispatch(labeled: LabeledGraph, u: int, v: int) -> CaseId:
    spec, _, _ = _resolve(labeled, u, v)
    return CaseId(labeled.family, spec.number)


# ------------------------------------------------------------------
# Expansion
# ------------------------------------------------------------------


def _lookup(labeled: LabeledGraph, family: str, index: int | None) -> int | None:
    try:
        return labeled.vertex(family, index)
    except KeyError:
        return None


def flatten(labeled: LabeledGraph, tokens: Sequence[Token]) -> tuple[list[int], list[bool]]:
    """Anchors in template order, and for each anchor after the first whether an
    ellipsis separates it from its predecessor."""
    anchors: list[int] = []
    gaps: list[bool] = []
    pending = False

    def place(v: int | None) -> None:
        nonlocal pending
        if v is None:
            return
        if anchors and anchors[-1] == v:
            pending = False
            return
        if anchors:
            gaps.append(pending)
        anchors.append(v)
        pending = False

    for token in tokens:
        if isinstance(token, _Gap):
            pending = True
        elif isinstance(token, _At):
            place(_lookup(labeled, token.family, token.index))
        else:
            if (token.stop - token.start) * token.step < 0:
                continue
            present = [
                vertex
                for index in range(token.start, token.stop + token.step, token.step)
                if (vertex := _lookup(labeled, token.family, index)) is not None
            ]
            if not present:
                continue
            place(present[0])
            if len(present) > 1:
                pending = True
                place(present[-1])

    if len(set(anchors)) != len(anchors):
        raise FormulaError(f"{labeled.name}: template names a vertex twice: {anchors}")
    return anchors, gaps


class _BudgetExceeded(Exception):
    pass


class _Expansion:
    """Fills ellipses with the unnamed vertices, keeping anchor order."""

    def __init__(self, graph: Graph, families: Sequence[str], anchors: Sequence[int], gaps: Sequence[bool]) -> None:
        self.adj = graph.adj
        self.families = families
        self.anchors = list(anchors)
        self.gaps = [False, *gaps]
        self.budget = FORMULA_SEARCH_BUDGET
        self.nodes = 0
        m = len(anchors)
        # ends[t]: anchors that can still receive a filler while junction t is open,
        # not counting the current vertex.
        self.ends = [0] * (m + 1)
        self.gaps_left = [False] * (m + 1)
        for t in range(m - 1, 0, -1):
            ends = self.ends[t + 1]
            if self.gaps[t + 1] if t + 1 < m else False:
                ends |= 1 << anchors[t]
            if self.gaps[t]:
                ends |= 1 << anchors[t]
            self.ends[t] = ends
            self.gaps_left[t] = self.gaps[t] or self.gaps_left[t + 1]

    def run(self, free: int) -> list[int] | None:
        path = [self.anchors[0]]
        try:
            found = self._step(1, self.anchors[0], free, path)
        except _BudgetExceeded:
            logger.debug("expansion search budget exhausted")
            return None
        return path if found else None

    def _feasible(self, t: int, cur: int, unused: int) -> bool:
        if not unused:
            return True
        if not self.gaps_left[t]:
            return False
        ends = self.ends[t] | (1 << cur if self.gaps[t] else 0)
        adj = self.adj
        for f in iter_bits(unused):
            if (adj[f] & (unused | ends)).bit_count() < 2:
                return False
        seen = 0
        frontier = ends
        while frontier:
            reached = 0
            for v in iter_bits(frontier):
                reached |= adj[v]
            frontier = reached & unused & ~seen
            seen |= frontier
        return unused & ~seen == 0

    def _order(self, candidates: int, target: int, unused: int) -> list[int]:
        family = self.families[target]
        return sorted(
            iter_bits(candidates),
            key=lambda f: (self.families[f] != family, (self.adj[f] & unused).bit_count(), f),
        )

    def _step(self, t: int, cur: int, unused: int, path: list[int]) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExceeded
        if t == len(self.anchors):
            return unused == 0
        if not self._feasible(t, cur, unused):
            return False
        target = self.anchors[t]
        adjacent = bool(self.adj[cur] >> target & 1)
        if self.gaps[t]:
            for f in self._order(self.adj[cur] & unused, target, unused & ~(1 << cur)):
                path.append(f)
                if self._step(t, f, unused & ~(1 << f), path):
                    return True
                path.pop()
        if adjacent:
            path.append(target)
            if self._step(t + 1, target, unused, path):
                return True
            path.pop()
        return False


def _expand(labeled: LabeledGraph, anchors: list[int], gaps: list[bool]) -> tuple[list[int], bool] | None:
    graph = labeled.graph
    families = [labeled.role(v).family for v in range(graph.n)]
    free = graph.full_mask
    for v in anchors:
        free &= ~(1 << v)
    path = _Expansion(graph, families, anchors, gaps).run(free)
    if path is not None:
        return path, False
    logger.debug("%s: strict expansion failed for anchors %s; relaxing", labeled.name, anchors)
    path = _Expansion(graph, families, anchors, [True] * len(gaps)).run(free)
    if path is not None:
        return path, True
    return None


def anchor_labels(labeled: LabeledGraph, case: CaseId, u: int, v: int) -> list[str]:
    """Printed labels of the named vertices of the case template for this pair."""
    spec, a, b = _resolve(labeled, u, v)
    if spec.number != case.number:
        raise FormulaError(f"pair dispatches to case {spec.number}, not {case.number}")
    tokens = spec.template(labeled.role(a).index, labeled.role(b).index, labeled.k, labeled.s)
    anchors, _ = flatten(labeled, tokens)
    return [labeled.role(x).label for x in anchors]


def emit_path(labeled: LabeledGraph, case: CaseId, u: int, v: int) -> HamiltonPath:
    """Expand the case template for the pair and certify the result."""
    spec, a, b = _resolve(labeled, u, v)
    if spec.number != case.number:
        raise FormulaError(f"pair dispatches to case {spec.number}, not {case.number}")
    tokens = spec.template(labeled.role(a).index, labeled.role(b).index, labeled.k, labeled.s)
    anchors, gaps = flatten(labeled, tokens)
    if not anchors or anchors[0] != a or anchors[-1] != b:
        raise FormulaError(f"{labeled.name} case {case}: template does not run from {labeled.role(a)} to {labeled.role(b)}")
    expanded = _expand(labeled, anchors, gaps)
    if expanded is None:
        raise FormulaError(f"{labeled.name} case {case}: no Hamilton path realizes the template for "
                           f"({labeled.role(a)}, {labeled.role(b)})")
    vertices, relaxed = expanded
    if relaxed:
        logger.debug("%s case %s (%s, %s) needed the relaxed reading", labeled.name, case,
                     labeled.role(a), labeled.role(b))
    path = HamiltonPath(tuple(vertices), (a, b), case, False, tuple(anchors), relaxed)
    if not verify_path(labeled.graph, path):
        raise FormulaError(f"{labeled.name} case {case}: expansion {vertices} is not a Hamilton path")
    return HamiltonPath(path.vertices, path.endpoints, case, True, path.anchors, relaxed)


def verify_path(graph: Graph, path: HamiltonPath) -> bool:
    vertices = path.vertices
    if len(vertices) != graph.n or sorted(vertices) != list(range(graph.n)):
        return False
    if (vertices[0], vertices[-1]) != tuple(path.endpoints):
        return False
    return all(graph.has_edge(p, q) for p, q in zip(vertices, vertices[1:]))


def anchors_in_order(path: HamiltonPath) -> bool:
    position = {v: i for i, v in enumerate(path.vertices)}
    places = [position[v] for v in path.anchors]
    return places == sorted(places)


# ------------------------------------------------------------------
# Sweeps
# ------------------------------------------------------------------


@dataclass(frozen=True)
class PairRecord:
    u: Role
    v: Role
    case: str | None
    verified: bool
    relaxed: bool = False
    error: str | None = None


@dataclass(frozen=True)
class FormulaReport:
    name: str
    family: Family
    n: int
    delta: int
    records: tuple[PairRecord, ...]

    @property
    def pairs(self) -> int:
        return len(self.records)

    @property
    def verified(self) -> int:
        return sum(record.verified for record in self.records)

    @property
    def failures(self) -> list[PairRecord]:
        return [record for record in self.records if not record.verified]

    def case_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for record in self.records:
            if record.case:
                counts[record.case] = counts.get(record.case, 0) + 1
        return dict(sorted(counts.items(), key=lambda item: [int(p) for p in item[0].split(".")]))


def verify_all_pairs(labeled: LabeledGraph) -> FormulaReport:
    """Dispatch, emit and verify every unordered pair; failures are recorded, not raised."""
    records = []
    n = labeled.graph.n
    for u in range(n):
        for v in range(u + 1, n):
            case_name = None
            try:
                case = dispatch(labeled, u, v)
                case_name = case.number
                path = emit_path(labeled, case, u, v)
            except FormulaError as exc:
                logger.warning("%s", exc)
                records.append(PairRecord(labeled.role(u), labeled.role(v), case_name, False, error=str(exc)))
                continue
            a, b = path.endpoints
            records.append(PairRecord(labeled.role(a), labeled.role(b), case_name, path.verified, path.relaxed))
    return FormulaReport(labeled.name, labeled.family, labeled.n, labeled.delta, tuple(records))
