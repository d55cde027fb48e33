import random

import pytest

from mhclab import minimality, solver
from mhclab.constructions import build_g, build_h, build_wheel, construct, valid_parameters
from mhclab.graph import Graph, GraphError
from mhclab.minimality import (
    EdgeReason,
    MinimalityError,
    fast_minimality_argument,
    is_minimally_hc,
    minimal_spanning_subgraph,
)
from mhclab.solver import hamilton_path_exists, is_hamiltonian_connected


def test_wheel_is_minimal():
    verdict = is_minimally_hc(build_wheel(6).graph)
    assert verdict.is_hc
    assert verdict.is_minimal
    assert verdict.fast_path_used
    assert all(record.reason is EdgeReason.DEGREE_DROP for record in verdict.edge_evidence)


def test_complete_graph_is_not_minimal():
    verdict = is_minimally_hc(Graph.complete(5))
    assert verdict.is_hc
    assert not verdict.is_minimal
    assert any(record.still_hc for record in verdict.edge_evidence)


def test_non_hc_graph_is_not_minimal():
    verdict = is_minimally_hc(Graph.cycle(6))
    assert not verdict.is_hc
    assert not verdict.is_minimal
    assert not any(record.still_hc for record in verdict.edge_evidence)


def test_order_limits():
    with pytest.raises(GraphError):
        is_minimally_hc(Graph.complete(3))


def test_evidence_covers_every_edge_in_order():
    graph = construct(12, 5).graph
    verdict = is_minimally_hc(graph)
    assert verdict.is_minimal
    assert [record.edge for record in verdict.edge_evidence] == graph.edges()


def test_cubic_construction_is_all_degree_drop():
    verdict = is_minimally_hc(construct(8, 3).graph)
    assert verdict.is_minimal
    assert {record.reason for record in verdict.edge_evidence} == {EdgeReason.DEGREE_DROP}


def test_even_construction_needs_connectivity_argument():
    h = build_h(8, 4)
    verdict = is_minimally_hc(h.graph)
    assert verdict.is_minimal
    x, z1 = h.vertex("x"), h.vertex("z", 1)
    reasons = {record.edge: record.reason for record in verdict.edge_evidence}
    assert reasons[(min(x, z1), max(x, z1))] is EdgeReason.CONNECTIVITY_DROP


@pytest.mark.parametrize("n, delta", list(valid_parameters(10)))
def test_constructions_minimal_without_fast_path(n, delta):
    graph = construct(n, delta).graph
    slow = is_minimally_hc(graph, fast=False)
    assert slow.is_minimal
    assert not slow.fast_path_used
    assert all(record.reason is EdgeReason.DP_REFUTED for record in slow.edge_evidence)
    assert is_minimally_hc(graph).is_minimal == slow.is_minimal


def test_fast_reasons_are_sound():
    rng = random.Random(12)
    for n, delta in valid_parameters(10):
        graph = construct(n, delta).graph
        verdict = is_minimally_hc(graph)
        edges = [record for record in verdict.edge_evidence if record.reason is not EdgeReason.DP_REFUTED]
        for record in rng.sample(edges, min(5, len(edges))):
            assert not is_hamiltonian_connected(graph.remove_edge(*record.edge)).is_hc


def test_fast_minimality_argument():
    assert fast_minimality_argument(build_g(16, 5)) is True
    assert fast_minimality_argument(build_h(17, 5)) is True
    assert fast_minimality_argument(build_wheel(7)) is True
    assert fast_minimality_argument(Graph.complete(5)) is None
    assert fast_minimality_argument(Graph.cycle(6)) is None


def test_minimal_spanning_subgraph_of_complete_graphs():
    for n in (5, 6):
        sub = minimal_spanning_subgraph(Graph.complete(n))
        assert sub.n == n
        assert sub.size < Graph.complete(n).size
        assert is_minimally_hc(sub).is_minimal


def test_minimal_spanning_subgraph_keeps_minimal_input():
    wheel = build_wheel(6).graph
    assert minimal_spanning_subgraph(wheel) == wheel


def test_minimal_spanning_subgraph_rejects_non_hc():
    with pytest.raises(MinimalityError):
        minimal_spanning_subgraph(Graph.cycle(5))


def test_slow_path_sweeps_every_edge_deletion(monkeypatch):
    graph = construct(8, 3).graph
    swept = set()
    sweep = solver._sweep

    def counting_sweep(candidate, source):
        if candidate.size == graph.size - 1:
            swept.add(candidate)
        return sweep(candidate, source)

    monkeypatch.setattr(solver, "_sweep", counting_sweep)
    verdict = is_minimally_hc(graph, fast=False)
    assert verdict.is_minimal
    assert swept == {graph.remove_edge(*edge) for edge in graph.edges()}


def test_slow_path_refuting_pairs_have_no_hamilton_path():
    graph = build_h(8, 4).graph
    verdict = is_minimally_hc(graph, fast=False)
    for record in verdict.edge_evidence:
        assert record.reason is EdgeReason.DP_REFUTED
        assert record.refuting_pair is not None
        assert not hamilton_path_exists(graph.remove_edge(*record.edge), *record.refuting_pair)


def test_prunes_on_non_hc_graph_are_reported_as_such():
    verdict = is_minimally_hc(Graph.cycle(6), fast=False)
    assert {record.reason for record in verdict.edge_evidence} == {EdgeReason.DP_REFUTED}
    assert verdict.failing_pair is not None
    pruned = is_minimally_hc(Graph.cycle(6), fast=False, whole=is_hamiltonian_connected(Graph.cycle(6)))
    assert not pruned.is_hc
    assert {record.reason for record in pruned.edge_evidence} == {EdgeReason.DEGREE_DROP}


def test_precomputed_whole_result_is_reused(monkeypatch):
    graph = build_wheel(7).graph
    whole = is_hamiltonian_connected(graph, prune=False)
    calls = []

    def counting(candidate, **kwargs):
        calls.append(candidate)
        return is_hamiltonian_connected(candidate, **kwargs)

    monkeypatch.setattr(minimality, "is_hamiltonian_connected", counting)
    assert is_minimally_hc(graph, whole=whole).is_minimal
    assert graph not in calls


UP_TO_FOURTEEN = [
    pytest.param(n, delta, marks=pytest.mark.slow) if n > 10 else (n, delta) for n, delta in valid_parameters(14)
]


@pytest.mark.parametrize("n, delta", UP_TO_FOURTEEN)
def test_fast_argument_agrees_with_exhaustive_minimality(n, delta):
    labeled = construct(n, delta)
    exhaustive = is_minimally_hc(labeled.graph, fast=False)
    assert exhaustive.is_minimal
    if fast_minimality_argument(labeled):
        assert all(
            record.reason is EdgeReason.DP_REFUTED and not record.still_hc for record in exhaustive.edge_evidence
        )
