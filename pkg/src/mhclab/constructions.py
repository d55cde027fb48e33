"""The extremal families: wheels, G(n, delta) and H(n, delta), with role labels."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from functools import partial
from typing import Iterator, Mapping

from mhclab.graph import Edge, Graph

logger = logging.getLogger(__name__)


class Family(enum.Enum):
    WHEEL = "wheel"
    CASE_ODD = "odd"
    CASE_EVEN = "even"


class Reason(enum.Enum):
    OK = "OK"
    DELTA_TOO_SMALL = "DeltaTooSmall"
    DELTA_TOO_LARGE = "DeltaTooLarge"
    DELTA_EQUALS_N_MINUS_2 = "DeltaEqualsNMinus2"
    CUBIC_ODD_ORDER = "CubicOddOrder"


@dataclass(frozen=True)
class ValidityVerdict:
    valid: bool
    reason: Reason


class ConstructionError(ValueError):
    """Raised for parameters outside a construction's domain."""

    def __init__(self, message: str, verdict: ValidityVerdict | None = None) -> None:
        super().__init__(message)
        self.verdict = verdict


@dataclass(frozen=True, order=True)
class Role:
    """A construction label such as x3, z0, or the wheel hub."""

    family: str
    index: int | None = None

    @property
    def label(self) -> str:
        return self.family if self.index is None else f"{self.family}{self.index}"

    def __str__(self) -> str:
        return self.label


HUB = Role("hub")


@dataclass(frozen=True)
class LabeledGraph:
    """A graph whose vertices carry construction roles."""

    graph: Graph
    roles: Mapping[int, Role]
    family: Family
    n: int
    delta: int
    k: int | None = None
    s: int | None = None
    _by_role: dict[Role, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        by_role = {role: v for v, role in self.roles.items()}
        if sorted(self.roles) != list(range(self.graph.n)) or len(by_role) != self.graph.n:
            raise ConstructionError("roles must be a bijection onto the vertex set")
        object.__setattr__(self, "_by_role", by_role)

    @property
    def name(self) -> str:
        if self.family is Family.WHEEL:
            return f"W{self.n}"
        letter = "G" if self.family is Family.CASE_ODD else "H"
        return f"{letter}({self.n},{self.delta})"

    def vertex(self, family: str, index: int | None = None) -> int:
        """Vertex index of a role; KeyError if the role does not exist."""
        return self._by_role[Role(family, index)]

    def role(self, v: int) -> Role:
        return self.roles[v]

    def find(self, label: str) -> int:
        """Vertex index for a printed label such as ``z1`` or ``x``."""
        for role, v in self._by_role.items():
            if role.label == label:
                return v
        raise KeyError(label)


def validity(n: int, delta: int) -> ValidityVerdict:
    """Whether an MHC graph of order n with maximum degree delta exists."""
    if n < 4:
        raise ValueError(f"order must be at least 4, got {n}")
    if delta < 3:
        reason = Reason.DELTA_TOO_SMALL
    elif delta > n - 1:
        reason = Reason.DELTA_TOO_LARGE
    elif delta == n - 2:
        reason = Reason.DELTA_EQUALS_N_MINUS_2
    elif delta == 3 and n % 2:
        reason = Reason.CUBIC_ODD_ORDER
    else:
        reason = Reason.OK
    return ValidityVerdict(valid=reason is Reason.OK, reason=reason)


def valid_parameters(max_order: int, min_order: int = 4) -> Iterator[tuple[int, int]]:
    """Every valid (n, delta) with min_order <= n <= max_order, ordered."""
    for n in range(max(min_order, 4), max_order + 1):
        for delta in range(3, n):
            if validity(n, delta).valid:
                yield n, delta


def minimum_size(n: int, delta: int) -> int:
    """Least size of an order-n graph with maximum degree delta and minimum degree >= 3."""
    return (delta + 3 * (n - 1) + 1) // 2


def _require_valid(n: int, delta: int) -> None:
    verdict = validity(n, delta)
    if not verdict.valid:
        raise ConstructionError(f"no MHC graph of order {n} with maximum degree {delta}: {verdict.reason.value}", verdict)


class _Builder:
    """Collects labeled vertices and edges; out-of-range roles drop silently."""

    def __init__(self) -> None:
        self.roles: dict[int, Role] = {}
        self.index: dict[Role, int] = {}
        self.edges: list[Edge] = []

    def add(self, family: str, index: int | None = None) -> None:
        role = Role(family, index)
        v = len(self.roles)
        self.roles[v] = role
        self.index[role] = v

    def join(self, first: Role, second: Role) -> None:
        if first in self.index and second in self.index and first != second:
            self.edges.append((self.index[first], self.index[second]))

    def graph(self) -> Graph:
        return Graph.from_edges(len(self.roles), self.edges)


def build_wheel(n: int) -> LabeledGraph:
    """K1 joined with C_{n-1}: hub is vertex 0, rim vertices x1..x_{n-1}."""
    if n < 4:
        raise ConstructionError(f"wheel needs n >= 4, got {n}")
    builder = _Builder()
    builder.add("hub")
    for i in range(1, n):
        builder.add("x", i)
    for i in range(1, n):
        builder.join(HUB, Role("x", i))
        builder.join(Role("x", i), Role("x", i % (n - 1) + 1))
    return LabeledGraph(builder.graph(), builder.roles, Family.WHEEL, n, n - 1)


def build_g(n: int, delta: int, *, check: bool = True) -> LabeledGraph:
    """G(n, delta) for odd n - delta; vertices numbered x1..xk, y1..ys, z1..z_{s+1}."""
    if check:
        _require_valid(n, delta)
        if delta > n - 3:
            raise ConstructionError(f"G(n, delta) needs delta <= n - 3, got delta = {delta}, n = {n}")
    if (n - delta) % 2 == 0:
        raise ConstructionError(f"G(n, delta) needs n - delta odd, got n = {n}, delta = {delta}")
    k, s = delta - 2, (n - delta + 1) // 2
    if k < 1 or s < 1:
        raise ConstructionError(f"G({n},{delta}) has an empty vertex class (k = {k}, s = {s})")

    builder = _Builder()
    for i in range(1, k + 1):
        builder.add("x", i)
    for i in range(1, s + 1):
        builder.add("y", i)
    for i in range(1, s + 2):
        builder.add("z", i)

    x, y, z = partial(Role, "x"), partial(Role, "y"), partial(Role, "z")
    for i in range(1, k):
        builder.join(x(i), x(i + 1))
    for i in range(1, s):
        builder.join(y(i), y(i + 1))
    for i in range(1, s + 1):
        builder.join(z(i), z(i + 1))
    for i in range(1, k + 1):
        builder.join(y(1), x(i))
    for i in range(1, s + 1):
        builder.join(y(i), z(i))
    builder.join(x(1), z(1))
    builder.join(x(k), z(s + 1))
    builder.join(y(s), z(s + 1))
    return LabeledGraph(builder.graph(), builder.roles, Family.CASE_ODD, n, delta, k, s)


def build_h(n: int, delta: int, *, check: bool = True) -> LabeledGraph:
    """H(n, delta) for even n - delta; vertices numbered x, y1..yk, z0..zs, w1..w_{s+1}."""
    if check:
        _require_valid(n, delta)
        if delta > n - 3:
            raise ConstructionError(f"H(n, delta) needs delta <= n - 3, got delta = {delta}, n = {n}")
    if (n - delta) % 2:
        raise ConstructionError(f"H(n, delta) needs n - delta even, got n = {n}, delta = {delta}")
    k, s = delta - 1, (n - delta - 2) // 2
    if k < 1 or s < 0:
        raise ConstructionError(f"H({n},{delta}) has an empty vertex class (k = {k}, s = {s})")

    builder = _Builder()
    builder.add("x")
    for i in range(1, k + 1):
        builder.add("y", i)
    for i in range(0, s + 1):
        builder.add("z", i)
    for i in range(1, s + 2):
        builder.add("w", i)

    x = Role("x")
    y, z, w = partial(Role, "y"), partial(Role, "z"), partial(Role, "w")
    for i in range(1, k):
        builder.join(y(i), y(i + 1))
    for i in range(0, s):
        builder.join(z(i), z(i + 1))
    for i in range(1, s + 1):
        builder.join(w(i), w(i + 1))
    for i in range(1, k + 1):
        builder.join(x, y(i))
    for i in range(1, s + 1):
        builder.join(z(i), w(i))
    builder.join(x, z(1))
    builder.join(y(1), z(0))
    builder.join(z(0), w(1))
    builder.join(y(k), w(s + 1))
    builder.join(z(s), w(s + 1))
    return LabeledGraph(builder.graph(), builder.roles, Family.CASE_EVEN, n, delta, k, s)


def construct(n: int, delta: int) -> LabeledGraph:
    """Dispatch: delta = n - 1 gives the wheel, otherwise the parity of n - delta decides."""
    _require_valid(n, delta)
    if delta == n - 1:
        return build_wheel(n)
    if (n - delta) % 2:
        return build_g(n, delta)
    return build_h(n, delta)


def build_family(family: Family, n: int, delta: int) -> LabeledGraph:
    """Build a family directly, skipping the existence check (for inspection)."""
    if family is Family.WHEEL:
        return build_wheel(n)
    if family is Family.CASE_ODD:
        return build_g(n, delta, check=False)
    return build_h(n, delta, check=False)
