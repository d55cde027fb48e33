import itertools
import random

import pytest

from mhclab.constructions import build_g, build_h, build_wheel
from mhclab.graph import CapabilityError, Graph, GraphError
from mhclab.path_formulas import verify_path
from mhclab.solver import (
    PruneReason,
    find_hamilton_path,
    hamilton_path_exists,
    is_hamiltonian_connected,
)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def brute_force_path(graph: Graph, u: int, v: int) -> bool:
    middle = [w for w in range(graph.n) if w not in (u, v)]
    for order in itertools.permutations(middle):
        walk = (u, *order, v)
        if all(graph.has_edge(a, b) for a, b in zip(walk, walk[1:])):
            return True
    return False


def test_path_exists_examples():
    assert all(hamilton_path_exists(Graph.complete(4), u, v) for u, v in itertools.combinations(range(4), 2))
    c5 = Graph.cycle(5)
    assert hamilton_path_exists(c5, 0, 1)
    assert not hamilton_path_exists(c5, 0, 2)
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert not hamilton_path_exists(star, 1, 2)


def test_find_path_examples():
    path = find_hamilton_path(Graph.cycle(4), 0, 1)
    assert path.vertices == (0, 3, 2, 1)
    assert path.verified
    assert find_hamilton_path(Graph.path(4), 0, 3).vertices == (0, 1, 2, 3)
    assert find_hamilton_path(Graph.cycle(5), 0, 2) is None


def test_pair_validation():
    with pytest.raises(GraphError):
        hamilton_path_exists(Graph.complete(4), 2, 2)
    with pytest.raises(GraphError):
        hamilton_path_exists(Graph.complete(4), 0, 9)


def test_order_bound():
    big = Graph.cycle(25)
    with pytest.raises(CapabilityError):
        hamilton_path_exists(big, 0, 1)
    with pytest.raises(CapabilityError):
        find_hamilton_path(big, 0, 1)
    with pytest.raises(CapabilityError):
        is_hamiltonian_connected(big)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_matches_permutation_oracle(n):
    rng = random.Random(100 + n)
    for _ in range(1000):
        graph = random_graph(rng, n, rng.choice([0.4, 0.6, 0.8]))
        for u, v in itertools.combinations(range(n), 2):
            assert hamilton_path_exists(graph, u, v) == brute_force_path(graph, u, v)


def test_symmetry():
    rng = random.Random(9)
    for _ in range(200):
        graph = random_graph(rng, rng.randint(3, 8), 0.6)
        for u, v in itertools.combinations(range(graph.n), 2):
            assert hamilton_path_exists(graph, u, v) == hamilton_path_exists(graph, v, u)


def test_monotone_under_edge_addition():
    rng = random.Random(21)
    for _ in range(100):
        n = rng.randint(4, 8)
        graph = random_graph(rng, n, 0.5)
        missing = [(u, v) for u, v in itertools.combinations(range(n), 2) if not graph.has_edge(u, v)]
        if not missing:
            continue
        bigger = graph.add_edge(*rng.choice(missing))
        for u, v in itertools.combinations(range(n), 2):
            if hamilton_path_exists(graph, u, v):
                assert hamilton_path_exists(bigger, u, v)


def test_certificates_verify():
    rng = random.Random(4)
    for _ in range(100):
        graph = random_graph(rng, rng.randint(3, 8), 0.7)
        for u, v in itertools.combinations(range(graph.n), 2):
            path = find_hamilton_path(graph, u, v)
            assert (path is not None) == hamilton_path_exists(graph, u, v)
            if path is not None:
                assert verify_path(graph, path)


def test_hc_examples():
    result = is_hamiltonian_connected(Graph.complete(4))
    assert result.is_hc
    assert result.witness_pairs_checked == 6
    assert result.failing_pair is None

    cycle = is_hamiltonian_connected(Graph.cycle(6))
    assert not cycle.is_hc
    assert cycle.pruned_by is PruneReason.MIN_DEGREE


def test_hc_small_orders_without_pruning():
    assert is_hamiltonian_connected(Graph.complete(2)).is_hc
    assert is_hamiltonian_connected(Graph.complete(3)).is_hc
    path = is_hamiltonian_connected(Graph.path(3))
    assert not path.is_hc
    assert path.failing_pair == (0, 1)
    assert path.pruned_by is None


def test_hc_connectivity_prune():
    # Two K4s sharing two vertices: minimum degree 3, but a 2-vertex cut.
    edges = [(u, v) for u, v in itertools.combinations([0, 1, 2, 3], 2)]
    edges += [(u, v) for u, v in itertools.combinations([2, 3, 4, 5], 2)]
    result = is_hamiltonian_connected(Graph.from_edges(6, edges))
    assert not result.is_hc
    assert result.pruned_by is PruneReason.CONNECTIVITY


def test_failing_pair_is_lexicographically_first():
    # K_{3,3} is cubic and 3-connected, but same-side endpoints admit no Hamilton path.
    k33 = Graph.from_edges(6, [(u, v) for u in range(3) for v in range(3, 6)])
    result = is_hamiltonian_connected(k33)
    assert not result.is_hc
    assert result.pruned_by is None
    assert result.failing_pair == (0, 1)
    assert result.witness_pairs_checked == 1


def test_constructions_are_hc():
    assert is_hamiltonian_connected(build_g(12, 5).graph).is_hc
    assert is_hamiltonian_connected(build_h(12, 4).graph).is_hc
    assert is_hamiltonian_connected(build_wheel(9).graph).is_hc


@pytest.mark.slow
def test_odd_construction_sixteen_five_is_hc():
    assert is_hamiltonian_connected(build_g(16, 5).graph).is_hc


def test_pruning_is_sound():
    rng = random.Random(17)
    fired = 0
    for _ in range(300):
        graph = random_graph(rng, rng.randint(4, 10), rng.choice([0.4, 0.6, 0.8]))
        result = is_hamiltonian_connected(graph)
        if result.pruned_by is not None:
            fired += 1
            assert not is_hamiltonian_connected(graph, prune=False).is_hc
    assert fired > 0
