"""Command-line entry point: construct, check, verify-formulas, search, stats, config."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from mhclab.config import FORMULA_SWEEP_MAX_ORDER, NATIVE_SEARCH_MAX_ORDER, NATIVE_SEARCH_MIN_ORDER
from mhclab.constructions import (
    ConstructionError,
    Family,
    LabeledGraph,
    build_family,
    construct,
    valid_parameters,
)
from mhclab.formats import EdgeListError, Graph6Error, emit_dot, emit_edge_list, emit_graph6, parse_edge_list
from mhclab.formatters import (
    config_record,
    connectivity_record,
    construct_record,
    fmt_edge,
    fmt_seconds,
    fmt_spectrum,
    formula_summary_record,
    graph_record,
    hc_record,
    mhc_record,
    min_degree_rows,
    pair_record,
    spectrum_rows,
    survey_records,
    to_json_line,
)
from mhclab.graph import CapabilityError, Graph, GraphError, degree_profile, vertex_connectivity
from mhclab.minimality import is_minimally_hc
from mhclab.path_formulas import FormulaReport, verify_all_pairs
from mhclab.search import (
    STAGES,
    StreamError,
    SurveyReport,
    enumerate_graphs,
    hunt_min_degree_4,
    stream_graph6,
    survey_mhc,
)
from mhclab.settings import (
    SETTING_KEYS,
    clear_setting,
    config_file,
    get_spill_bound,
    get_worker_count,
    set_setting,
    stored_settings,
)
from mhclab.solver import is_hamiltonian_connected
from mhclab.sparkline import block_sparkline, degree_histogram, funnel_bars
from mhclab.utils import format_duration, parse_int_list, safe_division, split_pair

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ASSERT = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CAPABILITY = 4


class UsageError(Exception):
    """Incompatible or out-of-range command-line arguments."""


@dataclass
class InputGraph:
    graph: Graph
    labels: Mapping[int, str] | None = None
    name: str | None = None


def setup_logging(verbose: int, quiet: bool) -> None:
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    handler = RichHandler(console=Console(stderr=True), show_time=False, show_path=False)
    logging.basicConfig(level=level, format="%(message)s", handlers=[handler], force=True)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return parse_int_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _add_choice(p: argparse.ArgumentParser, option: str, choices: Sequence[str], default: str) -> None:
    """``--option CHOICE`` plus one shorthand flag per choice, mutually exclusive."""
    dest = option.removeprefix("--")
    group = p.add_mutually_exclusive_group()
    group.add_argument(option, choices=choices, default=default)
    for choice in choices:
        group.add_argument(f"--{choice}", dest=dest, action="store_const", const=choice,
                           default=argparse.SUPPRESS, help=f"same as {option} {choice}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mhclab", description="Minimally hamiltonian-connected graph laboratory.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("-q", "--quiet", action="store_true", help="only log errors")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build W_n, G(n,D) or H(n,D)")
    p.add_argument("n", type=int)
    p.add_argument("delta", type=int)
    _add_choice(p, "--format", ("text", "records", "dot", "graph6", "edgelist"), "text")
    p.add_argument("--family", choices=[family.value for family in Family],
                   help="build this family without the existence check")

    def add_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", default="-", help="file to read, '-' for stdin (default)")
        p.add_argument("--input-format", choices=("graph6", "edgelist"), default="graph6")
        p.add_argument("--construct", nargs=2, type=int, metavar=("N", "DELTA"), help="use construct(N, DELTA)")
        p.add_argument("--drop-edge", action="append", default=[], metavar="U-V",
                       help="delete an edge first (role labels with --construct, else indices)")
        p.add_argument("--strict", action="store_true", help="abort on the first malformed line")

    p = sub.add_parser("check", help="decide HC, minimal HC or connectivity")
    add_input(p)
    _add_choice(p, "--mode", ("hc", "mhc", "connectivity"), "hc")
    p.add_argument("--assert", dest="assert_", action="store_true",
                   help="exit 1 unless every graph passes (HC, minimal HC, or 3-connected)")
    p.add_argument("--certificate", action="store_true", help="include refuting pairs per deleted edge")
    p.add_argument("--no-fast", action="store_true", help="send every G - e to the solver")
    p.add_argument("--format", choices=("records", "text"), default="records")

    p = sub.add_parser("verify-formulas", help="certify the explicit Hamilton paths of every pair")
    p.add_argument("params", nargs="*", type=int, metavar="N DELTA")
    p.add_argument("--max-order", type=int, default=FORMULA_SWEEP_MAX_ORDER)
    p.add_argument("--workers", type=int)
    p.add_argument("--format", choices=("records", "text"), default="records")

    p = sub.add_parser("search", help="survey every graph of order n")
    p.add_argument("n", type=int)
    source = p.add_mutually_exclusive_group()
    source.add_argument("--stdin-graph6", action="store_true", help="read graphs from stdin")
    source.add_argument("--input", help="read graphs from a graph6 file")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--workers", type=int)
    p.add_argument("--spill-bound", type=int)
    p.add_argument("--expect-max-degrees", type=_int_list)
    p.add_argument("--expect-min-degrees", type=_int_list)
    p.add_argument("--hunt", action="store_true", help="look for a minimally HC graph with minimum degree >= 4")
    p.add_argument("--format", choices=("records", "csv", "text"), default="records")

    p = sub.add_parser("stats", help="order, size, degrees and connectivity")
    add_input(p)
    p.add_argument("--format", choices=("text", "records"), default="text")

    p = sub.add_parser("config", help="show or change stored settings")
    actions = p.add_subparsers(dest="action", required=True)
    actions.add_parser("show", help="resolved values and the stored file")
    p = actions.add_parser("set", help="store a setting")
    p.add_argument("key", choices=SETTING_KEYS)
    p.add_argument("value", type=int)
    p = actions.add_parser("clear", help="remove a stored setting")
    p.add_argument("key", choices=SETTING_KEYS)
    return parser


# ------------------------------------------------------------------
# Input
# ------------------------------------------------------------------


def _read_lines(path: str) -> Iterator[str]:
    if path == "-":
        yield from sys.stdin
        return
    try:
        with open(path, encoding="ascii") as handle:
            yield from handle
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _resolve_vertex(token: str, labeled: LabeledGraph | None) -> int:
    if labeled is not None:
        try:
            return labeled.find(token)
        except KeyError:
            pass
    try:
        return int(token)
    except ValueError:
        raise UsageError(f"unknown vertex {token!r}") from None


def _drop_edges(graph: Graph, drops: Sequence[str], labeled: LabeledGraph | None) -> Graph:
    for text in drops:
        try:
            left, right = split_pair(text)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        u, v = _resolve_vertex(left, labeled), _resolve_vertex(right, labeled)
        try:
            graph = graph.remove_edge(u, v)
        except GraphError as exc:
            raise UsageError(f"--drop-edge {text}: {exc}") from exc
    return graph


def load_graphs(args: argparse.Namespace) -> Iterator[InputGraph]:
    if args.construct:
        if args.input != "-":
            raise UsageError("--construct and --input are mutually exclusive")
        labeled = construct(*args.construct)
        labels = {v: role.label for v, role in labeled.roles.items()}
        name = labeled.name + "".join(f" - {text}" for text in args.drop_edge)
        yield InputGraph(_drop_edges(labeled.graph, args.drop_edge, labeled), labels, name)
        return
    if args.input_format == "edgelist":
        graph = parse_edge_list("".join(_read_lines(args.input)))
        yield InputGraph(_drop_edges(graph, args.drop_edge, None))
        return
    for graph in stream_graph6(_read_lines(args.input), strict=args.strict):
        yield InputGraph(_drop_edges(graph, args.drop_edge, None))


def _emit(records: Sequence[Mapping] | Iterator[Mapping]) -> None:
    for record in records:
        sys.stdout.write(to_json_line(record) + "\n")


# ------------------------------------------------------------------
# Commands
# ------------------------------------------------------------------


def run_construct(args: argparse.Namespace, console: Console) -> int:
    if args.family:
        labeled = build_family(Family(args.family), args.n, args.delta)
    else:
        labeled = construct(args.n, args.delta)
    if args.format == "dot":
        sys.stdout.write(emit_dot(labeled))
    elif args.format == "graph6":
        sys.stdout.write(emit_graph6(labeled.graph) + "\n")
    elif args.format == "edgelist":
        sys.stdout.write(emit_edge_list(labeled.graph))
    elif args.format == "records":
        _emit([construct_record(labeled)])
    else:
        profile = degree_profile(labeled.graph)
        table = Table(title=labeled.name)
        table.add_column("role")
        table.add_column("vertex", justify="right")
        table.add_column("degree", justify="right")
        table.add_column("neighbors")
        for v in range(labeled.graph.n):
            neighbors = " ".join(labeled.role(w).label for w in labeled.graph.neighbors(v))
            table.add_row(labeled.role(v).label, str(v), str(labeled.graph.degree(v)), neighbors)
        console.print(table)
        console.print(f"order {labeled.graph.n}, size {labeled.graph.size}, "
                      f"max degree {profile.max_degree}, min degree {profile.min_degree}")
    return EXIT_OK


def run_check(args: argparse.Namespace, console: Console) -> int:
    passed = True
    table = Table("graph", "n", "verdict", "detail")
    for index, item in enumerate(load_graphs(args)):
        graph, labels = item.graph, item.labels
        label = item.name or emit_graph6(graph)
        if args.mode == "hc":
            result = is_hamiltonian_connected(graph)
            passed &= result.is_hc
            record = hc_record(index, graph, result, labels)
            detail = result.pruned_by.value if result.pruned_by else (fmt_edge(result.failing_pair, labels) or "")
            verdict = "HC" if result.is_hc else "not HC"
        elif args.mode == "mhc":
            mhc = is_minimally_hc(graph, fast=not args.no_fast)
            passed &= mhc.is_minimal
            record = mhc_record(index, graph, mhc, certificate=args.certificate, labels=labels)
            verdict = "minimal" if mhc.is_minimal else ("HC, not minimal" if mhc.is_hc else "not HC")
            detail = f"{len(mhc.edge_evidence)} edges" + (", fast path" if mhc.fast_path_used else "")
        else:
            kappa = vertex_connectivity(graph)
            passed &= kappa >= 3
            record = connectivity_record(index, graph, kappa)
            verdict, detail = f"kappa = {kappa}", ""
        if args.format == "records":
            _emit([record])
        else:
            table.add_row(escape(label), str(graph.n), verdict, escape(detail))
    if args.format == "text":
        console.print(table)
    if args.assert_ and not passed:
        return EXIT_ASSERT
    return EXIT_OK


def _formula_targets(args: argparse.Namespace) -> list[tuple[int, int]]:
    if args.params:
        if len(args.params) != 2:
            raise UsageError("verify-formulas takes either no parameters or N DELTA")
        return [(args.params[0], args.params[1])]
    return [(n, delta) for n, delta in valid_parameters(args.max_order) if delta <= n - 3]


def _verify(params: tuple[int, int]) -> FormulaReport:
    return verify_all_pairs(construct(*params))


def run_verify_formulas(args: argparse.Namespace, console: Console) -> int:
    targets = _formula_targets(args)
    for n, delta in targets:
        if delta == n - 1:
            raise UsageError(f"({n}, {delta}) is a wheel; path formulas cover G(n, D) and H(n, D) only")
    workers = get_worker_count(args.workers)
    if workers > 1 and len(targets) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_verify, targets))
    else:
        reports = [_verify(params) for params in targets]

    failures = 0
    table = Table("graph", "pairs", "verified", "relaxed", "cases")
    for report in reports:
        failures += len(report.failures)
        if args.format == "records":
            _emit(pair_record(report, pair) for pair in report.records)
            _emit([formula_summary_record(report)])
        else:
            relaxed = sum(pair.relaxed for pair in report.records)
            table.add_row(report.name, str(report.pairs), str(report.verified), str(relaxed),
                          " ".join(report.case_counts()))
    total = sum(report.pairs for report in reports)
    if args.format == "records":
        _emit([{"kind": "verify_summary", "graphs": len(reports), "pairs": total, "failures": failures}])
    else:
        console.print(table)
        console.print(f"{len(reports)} graphs, {total} pairs, {failures} failures")
    return EXIT_ASSERT if failures else EXIT_OK


def run_search(args: argparse.Namespace, console: Console) -> int:
    streamed = args.stdin_graph6 or args.input is not None
    graphs = None
    if streamed:
        graphs = stream_graph6(_read_lines("-" if args.stdin_graph6 else args.input), strict=args.strict)
    elif not NATIVE_SEARCH_MIN_ORDER <= args.n <= NATIVE_SEARCH_MAX_ORDER:
        raise UsageError(
            f"native enumeration covers {NATIVE_SEARCH_MIN_ORDER} <= n <= {NATIVE_SEARCH_MAX_ORDER}; "
            f"pipe graph6 with --stdin-graph6 for n = {args.n}"
        )

    if args.hunt:
        source = graphs if graphs is not None else enumerate_graphs(args.n, min_degree=4)
        found = hunt_min_degree_4(source)
        record = {"kind": "hunt", "n": args.n, "found": found is not None,
                  "graph6": emit_graph6(found.graph) if found else None}
        if found:
            _emit([record, mhc_record(0, found.graph, found.verdict, certificate=True)])
        else:
            _emit([record])
        return EXIT_OK

    report = survey_mhc(args.n, graphs, workers=get_worker_count(args.workers),
                        spill_bound=get_spill_bound(args.spill_bound))
    if args.format == "records":
        _emit(survey_records(report))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerows(spectrum_rows(report))
        writer.writerow(())
        writer.writerows(min_degree_rows(report))
    else:
        _print_survey(report, console)

    ok = True
    if args.expect_max_degrees is not None and report.max_degree_spectrum != args.expect_max_degrees:
        logger.error("max-degree spectrum %s, expected %s",
                     fmt_spectrum(report.max_degree_spectrum), fmt_spectrum(args.expect_max_degrees))
        ok = False
    if args.expect_min_degrees is not None and report.min_degree_spectrum != args.expect_min_degrees:
        logger.error("min-degree spectrum %s, expected %s",
                     fmt_spectrum(report.min_degree_spectrum), fmt_spectrum(args.expect_min_degrees))
        ok = False
    return EXIT_OK if ok else EXIT_ASSERT


def _print_survey(report: SurveyReport, console: Console) -> None:
    scanned = report.graphs_scanned
    console.print(f"n = {report.n} ({report.source.value}): {scanned} graphs, "
                  f"{len(report.mhc_graphs)} minimally HC, {format_duration(report.duration)}")
    for line in funnel_bars(report.prune_stats, STAGES):
        console.print(line, markup=False)
    console.print(f"MHC share {safe_division(len(report.mhc_graphs), scanned):.4f}")
    table = Table("max degree", "smallest size", "lower bound")
    for delta, smallest, bound in report.size_profile:
        table.add_row(str(delta), str(smallest), str(bound))
    console.print(table)
    console.print(f"max degrees {fmt_spectrum(report.max_degree_spectrum)} "
                  f"(predicted {fmt_spectrum(report.predicted_max_degrees)}), "
                  f"min degrees {fmt_spectrum(report.min_degree_spectrum)}")
    console.print(f"wheel unique at top: {report.wheel_unique_at_top}; "
                  f"no MHC graph with D = n - 2: {report.delta_n_minus_2_absent}; "
                  f"upper range realized: {report.upper_range_realized}")
    console.print(f"elapsed {fmt_seconds(report.duration)}")


def run_stats(args: argparse.Namespace, console: Console) -> int:
    for item in load_graphs(args):
        graph = item.graph
        profile = degree_profile(graph)
        kappa = vertex_connectivity(graph)
        if args.format == "records":
            record = graph_record(graph, item.name)
            record["kind"] = "stats"
            record["degrees"] = list(profile.degrees)
            record["connectivity"] = kappa
            _emit([record])
            continue
        console.print(f"{item.name or emit_graph6(graph)}: order {graph.n}, size {graph.size}, "
                      f"degrees {profile.max_degree}..{profile.min_degree}, kappa {kappa}")
        console.print(block_sparkline([graph.degree(v) for v in range(graph.n)]), markup=False)
        for line in degree_histogram(profile.degrees):
            console.print(line, markup=False)
    return EXIT_OK


def run_config(args: argparse.Namespace, console: Console) -> int:
    if args.action == "set":
        if args.value < 1:
            raise UsageError(f"{args.key} must be a positive integer, got {args.value}")
        set_setting(args.key, args.value)
        logger.info("Stored %s = %d", args.key, args.value)
    elif args.action == "clear":
        clear_setting(args.key)
        logger.info("Cleared %s", args.key)
    _emit([config_record(config_file(), stored_settings(), get_worker_count(), get_spill_bound())])
    return EXIT_OK


COMMANDS = {
    "construct": run_construct,
    "check": run_check,
    "verify-formulas": run_verify_formulas,
    "search": run_search,
    "stats": run_stats,
    "config": run_config,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose, args.quiet)
    console = Console()
    try:
        return COMMANDS[args.command](args, console)
    except ConstructionError as exc:
        reason = exc.verdict.reason.value if exc.verdict else "InvalidParameters"
        print(f"mhclab: {reason}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"mhclab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Graph6Error, EdgeListError, StreamError) as exc:
        print(f"mhclab: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapabilityError as exc:
        print(f"mhclab: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except GraphError as exc:
        print(f"mhclab: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"mhclab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
