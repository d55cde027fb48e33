import io
import json

import pytest

from mhclab.constructions import build_wheel
from mhclab.formats import emit_edge_list, emit_graph6
from mhclab.graph import Graph
from mhclab.main import EXIT_ASSERT, EXIT_CAPABILITY, EXIT_INPUT, EXIT_OK, EXIT_USAGE, main


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    monkeypatch.setenv("MHCLAB_CONFIG_DIR", str(tmp_path / "config"))
    monkeypatch.delenv("MHCLAB_WORKERS", raising=False)
    monkeypatch.delenv("MHCLAB_SPILL_BOUND", raising=False)


def feed(monkeypatch, *lines):
    monkeypatch.setattr("sys.stdin", io.StringIO("".join(line + "\n" for line in lines)))


def records(capsys):
    return [json.loads(line) for line in capsys.readouterr().out.splitlines() if line]


def test_construct_invalid_parameters(capsys):
    assert main(["construct", "7", "5"]) == EXIT_USAGE
    assert "DeltaEqualsNMinus2" in capsys.readouterr().err


def test_construct_graph6(capsys):
    assert main(["construct", "4", "3", "--format", "graph6"]) == EXIT_OK
    assert capsys.readouterr().out == "C~\n"


def test_construct_dot(capsys):
    assert main(["construct", "16", "5", "--format", "dot"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith('graph "G(16,5)" {')
    assert out.count(" -- ") == 25


def test_construct_records(capsys):
    assert main(["construct", "8", "4", "--format", "records"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["kind"] == "construction"
    assert record["family"] == "even"
    assert record["roles"] == ["x", "y1", "y2", "y3", "z0", "z1", "w1", "w2"]
    assert record["size"] == 13


def test_construct_family_override(capsys):
    assert main(["construct", "7", "4", "--family", "odd", "--format", "graph6"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("F")


def test_construct_text_table(capsys):
    assert main(["construct", "6", "5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "W6" in out
    assert "hub" in out


def test_check_hc_prunes_cycle(monkeypatch, capsys):
    feed(monkeypatch, emit_graph6(Graph.cycle(6)))
    assert main(["check", "--mode", "hc"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["is_hc"] is False
    assert record["pruned_by"] == "MinDegree"
    assert list(record) == ["kind", "index", "n", "graph6", "is_hc", "witness_pairs_checked", "failing_pair", "pruned_by"]


def test_check_assert_exit_codes(monkeypatch):
    feed(monkeypatch, emit_graph6(Graph.cycle(6)))
    assert main(["check", "--assert"]) == EXIT_ASSERT
    feed(monkeypatch, emit_graph6(Graph.complete(5)))
    assert main(["check", "--assert"]) == EXIT_OK


def test_check_connectivity_after_edge_drop(capsys):
    argv = ["check", "--construct", "17", "5", "--drop-edge", "x-z1", "--mode", "connectivity"]
    assert main(argv) == EXIT_OK
    (record,) = records(capsys)
    assert record["connectivity"] == 2
    assert main([*argv, "--assert"]) == EXIT_ASSERT


def test_check_mhc_wheel(capsys):
    assert main(["check", "--construct", "8", "7", "--mode", "mhc", "--assert"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["is_minimal"] is True
    assert record["fast_path_used"] is True
    assert len(record["edges"]) == 14
    assert record["edges"][0]["edge"].startswith("hub-")


def test_check_mhc_certificate(monkeypatch, capsys):
    feed(monkeypatch, emit_graph6(Graph.complete(5)))
    assert main(["check", "--mode", "mhc", "--certificate", "--no-fast"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["is_minimal"] is False
    assert all("refuting_pair" in entry for entry in record["edges"])


def test_check_edge_list_file(tmp_path, capsys):
    path = tmp_path / "wheel.txt"
    path.write_text(emit_edge_list(build_wheel(5).graph))
    assert main(["check", "--input", str(path), "--input-format", "edgelist", "--mode", "mhc"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["is_minimal"] is True


def test_check_text_format(monkeypatch, capsys):
    feed(monkeypatch, emit_graph6(Graph.complete(4)))
    assert main(["check", "--format", "text"]) == EXIT_OK
    assert "HC" in capsys.readouterr().out


def test_check_strict_malformed_input(monkeypatch):
    feed(monkeypatch, "garbage")
    assert main(["check", "--strict"]) == EXIT_INPUT


def test_check_lenient_skips_malformed_input(monkeypatch, capsys):
    feed(monkeypatch, "garbage", emit_graph6(Graph.complete(4)))
    assert main(["check"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["is_hc"] is True


def test_check_bad_drop_edge():
    assert main(["check", "--construct", "8", "7", "--drop-edge", "x1-nope"]) == EXIT_USAGE
    assert main(["check", "--construct", "8", "7", "--drop-edge", "x1"]) == EXIT_USAGE


def test_check_above_solver_bound(monkeypatch):
    feed(monkeypatch, emit_graph6(build_wheel(25).graph))
    assert main(["check"]) == EXIT_CAPABILITY


def test_search_expected_spectrum(capsys):
    assert main(["search", "6", "--expect-max-degrees", "3,5"]) == EXIT_OK
    summary = records(capsys)[-1]
    assert summary["kind"] == "survey_summary"
    assert summary["max_degree_spectrum"] == [3, 5]
    assert summary["predicted_max_degrees"] == [3, 5]
    assert main(["search", "6", "--expect-max-degrees", "3"]) == EXIT_ASSERT


def test_search_csv(capsys):
    assert main(["search", "5", "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "order,delta,count"
    assert lines[1] == "5,4,1"


def test_search_out_of_native_range():
    assert main(["search", "9"]) == EXIT_USAGE


def test_search_streamed_graphs(monkeypatch, capsys):
    feed(monkeypatch, emit_graph6(build_wheel(9).graph), emit_graph6(Graph.complete(9)))
    assert main(["search", "9", "--stdin-graph6", "--workers", "1"]) == EXIT_OK
    summary = records(capsys)[-1]
    assert summary["source"] == "ExternalStream"
    assert summary["mhc_count"] == 1
    assert summary["max_degree_spectrum"] == [8]


def test_search_hunt(capsys):
    assert main(["search", "6", "--hunt"]) == EXIT_OK
    (record,) = records(capsys)
    assert record == {"kind": "hunt", "n": 6, "found": False, "graph6": None}


def test_verify_formulas_single(capsys):
    assert main(["verify-formulas", "8", "4"]) == EXIT_OK
    lines = records(capsys)
    assert lines[-1] == {"kind": "verify_summary", "graphs": 1, "pairs": 28, "failures": 0}
    assert all(line["verified"] for line in lines if line["kind"] == "pair")


def test_verify_formulas_sweep(capsys):
    assert main(["verify-formulas", "--max-order", "8", "--format", "text"]) == EXIT_OK
    assert "0 failures" in capsys.readouterr().out


def test_verify_formulas_rejects_wheel_and_odd_arguments():
    assert main(["verify-formulas", "6", "5"]) == EXIT_USAGE
    assert main(["verify-formulas", "6"]) == EXIT_USAGE


def test_stats_records(capsys):
    assert main(["stats", "--construct", "6", "5", "--format", "records"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["kind"] == "stats"
    assert record["degrees"] == [5, 3, 3, 3, 3, 3]
    assert record["connectivity"] == 3


def test_stats_text(monkeypatch, capsys):
    feed(monkeypatch, emit_graph6(build_wheel(6).graph))
    assert main(["stats"]) == EXIT_OK
    assert "kappa 3" in capsys.readouterr().out


def test_construct_format_shorthands(capsys):
    assert main(["construct", "4", "3", "--graph6"]) == EXIT_OK
    assert capsys.readouterr().out == "C~\n"
    assert main(["construct", "16", "5", "--dot"]) == EXIT_OK
    assert capsys.readouterr().out.startswith('graph "G(16,5)" {')
    assert main(["construct", "5", "4", "--edgelist"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "5 8"


def test_construct_shorthand_conflicts_with_format():
    with pytest.raises(SystemExit):
        main(["construct", "4", "3", "--dot", "--format", "graph6"])


def test_check_mode_shorthands(capsys):
    assert main(["check", "--construct", "8", "7", "--mhc"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["is_minimal"] is True
    assert main(["check", "--construct", "8", "7", "--hc"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["kind"] == "hc"
    assert main(["check", "--construct", "17", "5", "--drop-edge", "x-z1", "--connectivity"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["connectivity"] == 2


def test_config_set_show_clear(capsys):
    assert main(["config", "set", "workers", "3"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["kind"] == "config"
    assert record["stored"] == {"workers": 3}
    assert record["workers"] == 3
    assert main(["config", "show"]) == EXIT_OK
    assert records(capsys)[0]["workers"] == 3
    assert main(["config", "clear", "workers"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["stored"] == {}
    assert record["workers"] == 1


def test_config_environment_overrides_stored_value(monkeypatch, capsys):
    assert main(["config", "set", "spill_bound", "10"]) == EXIT_OK
    capsys.readouterr()
    monkeypatch.setenv("MHCLAB_SPILL_BOUND", "20")
    assert main(["config", "show"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["stored"] == {"spill_bound": 10}
    assert record["spill_bound"] == 20


def test_config_rejects_bad_values():
    assert main(["config", "set", "workers", "0"]) == EXIT_USAGE
    with pytest.raises(SystemExit):
        main(["config", "set", "colour", "3"])
