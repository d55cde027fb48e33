"""Exhaustive surveys of minimally hamiltonian-connected graphs of small order."""

from __future__ import annotations

import collections
import contextlib
import enum
import heapq
import itertools
import logging
import tempfile
import time
from concurrent.futures import Executor, Future, ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Callable, Iterable, Iterator, TypeVar

from mhclab.config import (
    CANONICAL_MAX_ORDER,
    CHUNKS_IN_FLIGHT_PER_WORKER,
    DEFAULT_SPILL_BOUND,
    NATIVE_SEARCH_MAX_ORDER,
    NATIVE_SEARCH_MIN_ORDER,
    WORKER_CHUNK_SIZE,
)
from mhclab.constructions import build_wheel, minimum_size, validity
from mhclab.formats import Graph6Error, emit_graph6, parse_graph6
from mhclab.graph import (
    CapabilityError,
    Graph,
    GraphError,
    canonical_form,
    canonical_form_bruteforce,
    is_k_connected,
)
from mhclab.minimality import MhcVerdict, is_minimally_hc
from mhclab.solver import is_hamiltonian_connected

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class StreamError(GraphError):
    """A malformed line in a strict graph6 stream."""

    def __init__(self, line_number: int, message: str) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class Source(enum.Enum):
    NATIVE = "NativeEnumeration"
    STREAM = "ExternalStream"


# ------------------------------------------------------------------
# Enumeration
# ------------------------------------------------------------------


def enumerate_graphs(
    n: int,
    *,
    min_degree: int = 0,
    three_connected: bool = False,
    canonical: Callable[[Graph], bytes] = canonical_form,
) -> Iterator[Graph]:
    """One graph per isomorphism class on n vertices, in canonical-form order.

    Classes are grown a vertex at a time: every class on m - 1 vertices gets
    a new vertex joined to each subset of the old ones, and the results are
    deduplicated by canonical form. A vertex whose degree cannot reach
    ``min_degree`` with the remaining vertices cuts the branch.
    """
    if not NATIVE_SEARCH_MIN_ORDER <= n <= NATIVE_SEARCH_MAX_ORDER:
        raise CapabilityError("enumerate_graphs", NATIVE_SEARCH_MAX_ORDER, n)
    level = [Graph(1, [0])]
    for m in range(2, n + 1):
        floor = min_degree - (n - m)
        forms: set[bytes] = set()
        for parent in level:
            for neighbors in range(1 << (m - 1)):
                child = parent.add_vertex(neighbors)
                if floor > 0 and any(child.degree(v) < floor for v in range(m)):
                    continue
                forms.add(canonical(child))
        level = [parse_graph6(form.decode("ascii")) for form in sorted(forms)]
        logger.debug("enumeration level %d: %d classes", m, len(level))
    for graph in level:
        if three_connected and not is_k_connected(graph, 3):
            continue
        yield graph


def labeled_class_count(n: int, canonical: Callable[[Graph], bytes] = canonical_form_bruteforce) -> int:
    """Isomorphism classes among all 2^(n(n-1)/2) labeled graphs on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    forms = set()
    for chosen in range(1 << len(pairs)):
        edges = [pair for bit, pair in enumerate(pairs) if chosen >> bit & 1]
        forms.add(canonical(Graph.from_edges(n, edges)))
    return len(forms)


# ------------------------------------------------------------------
# Stream ingestion
# ------------------------------------------------------------------


@dataclass
class StreamStats:
    lines: int = 0
    graphs: int = 0
    malformed: list[int] = field(default_factory=list)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, Graph | None, str | None]]:
    """Yield (line_number, graph, error) for every non-blank line."""
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            yield number, parse_graph6(line), None
        except Graph6Error as exc:
            yield number, None, str(exc)


def stream_graph6(
    lines: Iterable[str], *, strict: bool = False, stats: StreamStats | None = None
) -> Iterator[Graph]:
    """Parsed graphs in input order; malformed lines abort (strict) or are logged and skipped."""
    stats = stats if stats is not None else StreamStats()
    for number, graph, error in read_graph6_lines(lines):
        stats.lines = number
        if error is not None:
            if strict:
                raise StreamError(number, error)
            logger.warning("Skipping malformed graph6 on line %d: %s", number, error)
            stats.malformed.append(number)
            continue
        stats.graphs += 1
        yield graph


# ------------------------------------------------------------------
# Canonical-form set with disk spill
# ------------------------------------------------------------------


def _run_lines(handle: BinaryIO) -> Iterator[bytes]:
    for line in handle:
        yield line.rstrip(b"\n")


class CanonicalSet:
    """Distinct canonical forms; sorted runs go to disk past ``bound`` entries."""

    def __init__(self, bound: int = DEFAULT_SPILL_BOUND) -> None:
        self.bound = bound
        self._memory: set[bytes] = set()
        self._runs: list[Path] = []
        self._tmp: tempfile.TemporaryDirectory | None = None

    def add(self, form: bytes) -> None:
        self._memory.add(form)
        if len(self._memory) > self.bound:
            self._spill()

    def _spill(self) -> None:
        if self._tmp is None:
            self._tmp = tempfile.TemporaryDirectory(prefix="mhclab-")
        path = Path(self._tmp.name) / f"run-{len(self._runs):05d}.g6"
        path.write_bytes(b"".join(form + b"\n" for form in sorted(self._memory)))
        logger.info("Spilled %d canonical forms to %s", len(self._memory), path)
        self._runs.append(path)
        self._memory.clear()

    @property
    def spilled(self) -> bool:
        return bool(self._runs)

    def __iter__(self) -> Iterator[bytes]:
        """Merged, sorted, duplicate-free forms."""
        with contextlib.ExitStack() as stack:
            runs = [_run_lines(stack.enter_context(path.open("rb"))) for path in self._runs]
            merged = heapq.merge(sorted(self._memory), *runs)
            for form, _ in itertools.groupby(merged):
                yield form

    def close(self) -> None:
        if self._tmp is not None:
            self._tmp.cleanup()
            self._tmp = None


# ------------------------------------------------------------------
# Survey
# ------------------------------------------------------------------


STAGES = ("degree", "connectivity", "hc", "minimality", "mhc")


@dataclass(frozen=True)
class Classified:
    stage: str
    form: bytes | None = None
    max_degree: int = 0
    min_degree: int = 0
    size: int = 0


def classify(graph: Graph) -> Classified:
    """Run one graph through the funnel: degree, connectivity, HC, minimality."""
    degrees = [graph.degree(v) for v in range(graph.n)]
    if min(degrees) < 3:
        return Classified("degree")
    if not is_k_connected(graph, 3):
        return Classified("connectivity")
    whole = is_hamiltonian_connected(graph, prune=False)
    if not whole.is_hc:
        return Classified("hc")
    if not is_minimally_hc(graph, whole=whole).is_minimal:
        return Classified("minimality")
    return Classified("mhc", canonical_form(graph), max(degrees), min(degrees), graph.size)


def _classify_chunk(chunk: list[str]) -> list[Classified]:
    return [classify(parse_graph6(line)) for line in chunk]


@dataclass(frozen=True)
class SurveyReport:
    n: int
    source: Source
    graphs_scanned: int
    mhc_graphs: tuple[str, ...]
    max_degree_spectrum: tuple[int, ...]
    min_degree_spectrum: tuple[int, ...]
    predicted_max_degrees: tuple[int, ...]
    wheel_unique_at_top: bool
    delta_n_minus_2_absent: bool
    upper_range_realized: bool
    size_profile: tuple[tuple[int, int, int], ...]
    prune_stats: dict[str, int]
    duration: float = 0.0

    @property
    def spectrum_matches_prediction(self) -> bool:
        return self.max_degree_spectrum == self.predicted_max_degrees


def predicted_max_degrees(n: int) -> tuple[int, ...]:
    return tuple(delta for delta in range(3, n) if validity(n, delta).valid)


def _chunks(graphs: Iterable[Graph], size: int) -> Iterator[list[str]]:
    batch: list[str] = []
    for graph in graphs:
        batch.append(emit_graph6(graph))
        if len(batch) == size:
            yield batch
            batch = []
    if batch:
        yield batch


def bounded_map(pool: Executor, fn: Callable[[T], R], items: Iterable[T], window: int) -> Iterator[R]:
    """Results of ``fn`` over ``items`` in input order.

    At most ``window`` submitted tasks wait to be consumed; ``items`` is pulled lazily.
    """
    pending: collections.deque[Future[R]] = collections.deque()
    for item in items:
        pending.append(pool.submit(fn, item))
        if len(pending) >= window:
            yield pending.popleft().result()
    while pending:
        yield pending.popleft().result()


def _wrong_order(n: int, graphs: Iterable[Graph], counter: dict[str, int]) -> Iterator[Graph]:
    for graph in graphs:
        if graph.n != n:
            logger.warning("Skipping graph of order %d in an order-%d survey", graph.n, n)
            counter["wrong_order"] += 1
            continue
        yield graph


def survey_mhc(
    n: int,
    graphs: Iterable[Graph] | None = None,
    *,
    workers: int = 1,
    spill_bound: int = DEFAULT_SPILL_BOUND,
) -> SurveyReport:
    """Survey every graph of order n (native enumeration when ``graphs`` is None).

    Args:
        n: Order to survey, 4 <= n <= CANONICAL_MAX_ORDER.
        graphs: External graphs, typically from stream_graph6.
        workers: Worker processes; 1 runs inline.
        spill_bound: In-memory canonical forms kept before spilling to disk.

    Returns:
        A SurveyReport whose contents do not depend on ``workers``.
    """
    if not NATIVE_SEARCH_MIN_ORDER <= n <= CANONICAL_MAX_ORDER:
        raise CapabilityError("survey_mhc", CANONICAL_MAX_ORDER, n)
    started = time.perf_counter()
    stats = {stage: 0 for stage in STAGES}
    stats["wrong_order"] = 0
    if graphs is None:
        source = Source.NATIVE
        # Degree filtering happens inside the enumeration.
        graphs = enumerate_graphs(n, min_degree=3)
    else:
        source = Source.STREAM
    graphs = _wrong_order(n, graphs, stats)

    found = CanonicalSet(spill_bound)
    try:
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                window = workers * CHUNKS_IN_FLIGHT_PER_WORKER
                batches = bounded_map(pool, _classify_chunk, _chunks(graphs, WORKER_CHUNK_SIZE), window)
                results: Iterable[Classified] = itertools.chain.from_iterable(batches)
                _collect(results, stats, found)
        else:
            _collect((classify(graph) for graph in graphs), stats, found)
        forms = list(found)
    finally:
        found.close()

    mhc = [_summarize(form) for form in forms]
    max_spectrum = tuple(sorted({item.max_degree for item in mhc}))
    min_spectrum = tuple(sorted({item.min_degree for item in mhc}))
    wheel_form = canonical_form(build_wheel(n).graph)
    top = [item.form for item in mhc if item.max_degree == n - 1]
    profile = []
    for delta in max_spectrum:
        smallest = min(item.size for item in mhc if item.max_degree == delta)
        profile.append((delta, smallest, minimum_size(n, delta)))
    upper = range((n + 1) // 2, n - 2)

    scanned = sum(stats[stage] for stage in STAGES)
    duration = time.perf_counter() - started
    logger.info(
        "Survey n=%d: scanned %d, rejected degree %d, connectivity %d, hc %d, minimality %d; %d MHC in %.1fs",
        n, scanned, stats["degree"], stats["connectivity"], stats["hc"], stats["minimality"], len(mhc), duration,
    )
    return SurveyReport(
        n=n,
        source=source,
        graphs_scanned=scanned,
        mhc_graphs=tuple(form.decode("ascii") for form in forms),
        max_degree_spectrum=max_spectrum,
        min_degree_spectrum=min_spectrum,
        predicted_max_degrees=predicted_max_degrees(n),
        wheel_unique_at_top=top == [wheel_form],
        delta_n_minus_2_absent=(n - 2) not in max_spectrum,
        upper_range_realized=all(delta in max_spectrum for delta in upper),
        size_profile=tuple(profile),
        prune_stats=stats,
        duration=duration,
    )


def _collect(results: Iterable[Classified], stats: dict[str, int], found: CanonicalSet) -> None:
    for item in results:
        stats[item.stage] += 1
        if item.form is not None:
            found.add(item.form)


def _summarize(form: bytes) -> Classified:
    graph = parse_graph6(form.decode("ascii"))
    degrees = [graph.degree(v) for v in range(graph.n)]
    return Classified("mhc", form, max(degrees), min(degrees), graph.size)


@dataclass(frozen=True)
class Counterexample:
    graph: Graph
    verdict: MhcVerdict


def hunt_min_degree_4(graphs: Iterable[Graph]) -> Counterexample | None:
    """The first minimally HC graph with minimum degree at least 4, if any."""
    for graph in graphs:
        if graph.n < 4 or min(graph.degree(v) for v in range(graph.n)) < 4:
            continue
        if not is_k_connected(graph, 3):
            continue
        verdict = is_minimally_hc(graph)
        if verdict.is_minimal:
            logger.warning("Found a minimally HC graph with minimum degree >= 4: %s", emit_graph6(graph))
            return Counterexample(graph, verdict)
    return None
