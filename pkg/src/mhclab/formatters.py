"""Record helpers: field formatting and newline-delimited JSON with fixed key order."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from mhclab.constructions import LabeledGraph
from mhclab.formats import emit_graph6, parse_graph6
from mhclab.graph import Edge, Graph, degree_profile
from mhclab.minimality import MhcVerdict
from mhclab.path_formulas import FormulaReport, PairRecord
from mhclab.search import SurveyReport
from mhclab.solver import HcResult


def fmt_edge(edge: Edge | None, labels: Mapping[int, str] | None = None, *, empty: str | None = None) -> str | None:
    """Format an edge or vertex pair as ``u-v`` (role labels when given)."""
    if edge is None:
        return empty
    u, v = edge
    if labels:
        return f"{labels[u]}-{labels[v]}"
    return f"{u}-{v}"


def fmt_spectrum(values: Iterable[int], *, empty: str = "-") -> str:
    """Comma-separated sorted values."""
    ordered = sorted(values)
    return ",".join(str(value) for value in ordered) if ordered else empty


def fmt_seconds(value: float | None, *, decimals: int = 2, empty: str = "") -> str:
    if value is None:
        return empty
    return f"{value:.{decimals}f}s"


def to_json_line(record: Mapping[str, Any]) -> str:
    """One NDJSON line; keys keep their insertion order."""
    return json.dumps(record, separators=(",", ":"), ensure_ascii=False)


def graph_record(graph: Graph, name: str | None = None) -> dict[str, Any]:
    profile = degree_profile(graph)
    return {
        "kind": "graph",
        "name": name,
        "n": graph.n,
        "size": graph.size,
        "max_degree": profile.max_degree,
        "min_degree": profile.min_degree,
        "graph6": emit_graph6(graph),
    }


def construct_record(labeled: LabeledGraph) -> dict[str, Any]:
    record = graph_record(labeled.graph, labeled.name)
    record["kind"] = "construction"
    record["family"] = labeled.family.value
    record["delta"] = labeled.delta
    record["k"] = labeled.k
    record["s"] = labeled.s
    record["roles"] = [labeled.role(v).label for v in range(labeled.graph.n)]
    record["edges"] = [fmt_edge(edge) for edge in labeled.graph.edges()]
    return record


def hc_record(index: int, graph: Graph, result: HcResult, labels: Mapping[int, str] | None = None) -> dict[str, Any]:
    return {
        "kind": "hc",
        "index": index,
        "n": graph.n,
        "graph6": emit_graph6(graph),
        "is_hc": result.is_hc,
        "witness_pairs_checked": result.witness_pairs_checked,
        "failing_pair": fmt_edge(result.failing_pair, labels),
        "pruned_by": result.pruned_by.value if result.pruned_by else None,
    }


def mhc_record(
    index: int,
    graph: Graph,
    verdict: MhcVerdict,
    *,
    certificate: bool = False,
    labels: Mapping[int, str] | None = None,
) -> dict[str, Any]:
    edges = []
    for evidence in verdict.edge_evidence:
        entry: dict[str, Any] = {
            "edge": fmt_edge(evidence.edge, labels),
            "reason": evidence.reason.value,
            "still_hc": evidence.still_hc,
        }
        if certificate:
            entry["refuting_pair"] = fmt_edge(evidence.refuting_pair, labels)
        edges.append(entry)
    return {
        "kind": "mhc",
        "index": index,
        "n": graph.n,
        "graph6": emit_graph6(graph),
        "is_hc": verdict.is_hc,
        "is_minimal": verdict.is_minimal,
        "fast_path_used": verdict.fast_path_used,
        "failing_pair": fmt_edge(verdict.failing_pair, labels),
        "edges": edges,
    }


def connectivity_record(index: int, graph: Graph, kappa: int) -> dict[str, Any]:
    profile = degree_profile(graph)
    return {
        "kind": "connectivity",
        "index": index,
        "n": graph.n,
        "graph6": emit_graph6(graph),
        "connectivity": kappa,
        "min_degree": profile.min_degree,
    }


def config_record(path: Path, stored: Mapping[str, Any], workers: int, spill_bound: int) -> dict[str, Any]:
    return {
        "kind": "config",
        "path": str(path),
        "stored": dict(stored),
        "workers": workers,
        "spill_bound": spill_bound,
    }


def pair_record(report: FormulaReport, pair: PairRecord) -> dict[str, Any]:
    return {
        "kind": "pair",
        "family": report.family.value,
        "n": report.n,
        "delta": report.delta,
        "case": pair.case,
        "u": pair.u.label,
        "v": pair.v.label,
        "verified": pair.verified,
        "relaxed": pair.relaxed,
        "error": pair.error,
    }


def formula_summary_record(report: FormulaReport) -> dict[str, Any]:
    return {
        "kind": "formula_summary",
        "name": report.name,
        "family": report.family.value,
        "n": report.n,
        "delta": report.delta,
        "pairs": report.pairs,
        "verified": report.verified,
        "cases": report.case_counts(),
    }


def survey_records(report: SurveyReport) -> list[dict[str, Any]]:
    """One record per MHC graph, then a summary record (no timing, so output is reproducible)."""
    records: list[dict[str, Any]] = []
    for form in report.mhc_graphs:
        record = graph_record(parse_graph6(form))
        record["kind"] = "mhc_graph"
        records.append(record)
    records.append(
        {
            "kind": "survey_summary",
            "n": report.n,
            "source": report.source.value,
            "graphs_scanned": report.graphs_scanned,
            "mhc_count": len(report.mhc_graphs),
            "max_degree_spectrum": list(report.max_degree_spectrum),
            "min_degree_spectrum": list(report.min_degree_spectrum),
            "predicted_max_degrees": list(report.predicted_max_degrees),
            "wheel_unique_at_top": report.wheel_unique_at_top,
            "delta_n_minus_2_absent": report.delta_n_minus_2_absent,
            "upper_range_realized": report.upper_range_realized,
            "size_profile": [
                {"delta": delta, "min_size": smallest, "lower_bound": bound}
                for delta, smallest, bound in report.size_profile
            ],
            "prune_stats": dict(report.prune_stats),
        }
    )
    return records


def spectrum_rows(report: SurveyReport) -> list[Sequence[Any]]:
    """CSV rows: header, then ``order,delta,count`` per realized maximum degree."""
    counts: dict[int, int] = {}
    for form in report.mhc_graphs:
        delta = degree_profile(parse_graph6(form)).max_degree
        counts[delta] = counts.get(delta, 0) + 1
    rows: list[Sequence[Any]] = [("order", "delta", "count")]
    rows.extend((report.n, delta, counts[delta]) for delta in sorted(counts))
    return rows


def min_degree_rows(report: SurveyReport) -> list[Sequence[Any]]:
    counts: dict[int, int] = {}
    for form in report.mhc_graphs:
        degree = degree_profile(parse_graph6(form)).min_degree
        counts[degree] = counts.get(degree, 0) + 1
    rows: list[Sequence[Any]] = [("order", "min_degree", "count")]
    rows.extend((report.n, degree, counts[degree]) for degree in sorted(counts))
    return rows
