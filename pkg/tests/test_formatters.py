import json

from mhclab.constructions import build_wheel
from mhclab.formatters import fmt_edge, fmt_seconds, fmt_spectrum, hc_record, to_json_line
from mhclab.graph import Graph
from mhclab.solver import is_hamiltonian_connected


def test_fmt_edge():
    assert fmt_edge(None) is None
    assert fmt_edge(None, empty="") == ""
    assert fmt_edge((0, 4)) == "0-4"
    assert fmt_edge((0, 4), {0: "x", 4: "z1"}) == "x-z1"


def test_fmt_spectrum():
    assert fmt_spectrum([5, 3]) == "3,5"
    assert fmt_spectrum([]) == "-"


def test_fmt_seconds():
    assert fmt_seconds(None) == ""
    assert fmt_seconds(1.234) == "1.23s"


def test_to_json_line_keeps_key_order():
    assert to_json_line({"z": 1, "a": [1, 2]}) == '{"z":1,"a":[1,2]}'


def test_hc_record_with_labels():
    wheel = build_wheel(5)
    labels = {v: role.label for v, role in wheel.roles.items()}
    graph = wheel.graph.remove_edge(wheel.vertex("x", 1), wheel.vertex("x", 2))
    record = hc_record(0, graph, is_hamiltonian_connected(graph, prune=False), labels)
    assert record["is_hc"] is False
    assert record["pruned_by"] is None
    assert record["failing_pair"].count("-") == 1
    assert json.loads(to_json_line(record)) == record


def test_hc_record_complete_graph():
    record = hc_record(3, Graph.complete(4), is_hamiltonian_connected(Graph.complete(4)))
    assert record["index"] == 3
    assert record["witness_pairs_checked"] == 6
    assert record["failing_pair"] is None
