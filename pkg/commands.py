"""
Command handlers behind the histlab CLI.

Every handler takes the parsed argparse namespace and returns the process
exit code. Machine-readable payloads go to stdout, one-line diagnostics to
stderr, and everything else to the log files set up by logger.py.
"""

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional, Union

import config
from core.catalog import catalog, is_catalog_name
from core.construct import (
    bipartite_inflate,
    contract_factor,
    cyclic_bipartite_witness,
    honeycomb_torus,
    inflate,
    insert_ring,
    random_regular,
)
from core.cyclic import check_inflation_theorem, cyclic_edge_connectivity
from core.dispatcher import JobDispatcher
from core.errors import GraphFormatError, HistlabError, InputError, NotCubic, PremiseNotMet
from core.formats import (
    decode_text,
    parse_edge_list,
    parse_embedded,
    parse_graph6,
    read_graph6_file,
    write_certificate,
    write_dot,
    write_embedded,
    write_graph6,
)
from core.graph import Graph, classify
from core.hist import certificate_stats, mod4_filter, solve
from core.topology import (
    euler_genus,
    facial_filter,
    is_fullerene,
    is_hexangulation,
    planar_hist_solve,
    trace_faces,
)
from core.types import (
    EmbeddedGraph,
    FilterVerdict,
    InflationResult,
    RunReport,
    SolveMode,
    SolveReport,
    Verdict,
)
from logger import RunLogger
from render import render_certificate
from utils import atomic_write_text, list_graph_files

_log = logging.getLogger("histlab.commands")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_HIST = 3
EXIT_BUDGET = 4
EXIT_VIOLATION = 5

VERDICT_EXIT: dict[Verdict, int] = {
    Verdict.HAS_HIST: EXIT_OK,
    Verdict.NO_HIST: EXIT_NO_HIST,
    Verdict.BUDGET_EXCEEDED: EXIT_BUDGET,
}

FORMAT_SUFFIXES = {
    ".g6": "graph6",
    ".graph6": "graph6",
    ".el": "edgelist",
    ".txt": "edgelist",
    ".emb": "embedded",
}


@dataclass
class LoadedInput:
    """A graph read from a file or the catalog, plus where it came from."""

    graph: Graph
    embedding: Optional[EmbeddedGraph] = None
    descriptor: dict[str, Any] = field(default_factory=dict)


def _stderr(message: str) -> None:
    print(message, file=sys.stderr)


def _print_json(data: Any) -> None:
    print(json.dumps(data, sort_keys=True))


def load_input(source: str, fmt: Optional[str] = None) -> LoadedInput:
    """Read SRC: an existing file, or a catalog name such as k4 or prism:5."""
    path = Path(source)
    if not path.exists() and is_catalog_name(source):
        entry = catalog(source)
        if isinstance(entry, EmbeddedGraph):
            return LoadedInput(entry.graph, entry, {"catalog": source})
        return LoadedInput(entry, None, {"catalog": source})

    fmt = fmt or FORMAT_SUFFIXES.get(path.suffix.lower())
    if fmt is None:
        raise GraphFormatError(f"cannot infer the format of {source}; pass --format", path=source)
    text = decode_text(path.read_bytes(), source)
    descriptor: dict[str, Any] = {"path": str(path), "format": fmt}
    if fmt == "graph6":
        graphs = read_graph6_file(path)
        if len(graphs) != 1:
            raise GraphFormatError(f"{source} holds {len(graphs)} graphs; use batch", path=source)
        return LoadedInput(graphs[0], None, descriptor)
    if fmt == "edgelist":
        return LoadedInput(parse_edge_list(text), None, descriptor)
    if fmt == "embedded":
        embedded = parse_embedded(text, {"path": str(path)})
        return LoadedInput(embedded.graph, embedded, descriptor)
    raise GraphFormatError(f"unknown format {fmt!r}", format=fmt)


def embedding_report(embedded: EmbeddedGraph) -> dict[str, Any]:
    graph, rotation = embedded.graph, embedded.rotation
    faces = trace_faces(graph, rotation)
    fullerene, fullerene_report = is_fullerene(graph, rotation)
    hexangulation, _ = is_hexangulation(graph, rotation)
    return {
        "genus": euler_genus(graph, rotation, faces) if graph.is_connected() else None,
        "faces": len(faces.faces),
        "face_lengths": {str(k): v for k, v in faces.histogram().items()},
        "is_fullerene": fullerene,
        "pentagons": fullerene_report["pentagons"],
        "is_hexangulation": hexangulation,
        "provenance": embedded.provenance,
    }


def _filters(loaded: LoadedInput) -> dict[str, str]:
    filters = {"mod4": mod4_filter(loaded.graph).value}
    if loaded.embedding is not None and loaded.graph.is_connected():
        genus = euler_genus(loaded.graph, loaded.embedding.rotation)
        if genus == 0:
            filters["facial"] = facial_filter(loaded.graph, loaded.embedding.rotation).value
    return filters


def _solve_payload(graph: Graph, report: SolveReport) -> dict[str, Any]:
    payload = report.to_dict(graph)
    payload["stats"] = [certificate_stats(graph, cert) for cert in report.certificates[:1]]
    return payload


# --- solve ---

def cmd_solve(args: argparse.Namespace) -> int:
    started = time.monotonic()
    loaded = load_input(args.input, args.format)
    graph = loaded.graph
    mode = SolveMode(args.mode)
    budget = args.budget if args.budget is not None else config.HISTLAB_BUDGET

    run_log = RunLogger("solve", args.input)
    try:
        run_log.log_graph_start(0, args.input, graph.n, graph.m)
        profile = classify(graph)
        filters = _filters(loaded)
        if args.use_embedding and loaded.embedding is not None:
            report = planar_hist_solve(graph, loaded.embedding.rotation, mode, budget)
        else:
            report = solve(graph, mode, budget, workers=config.HISTLAB_THREADS)
        elapsed = time.monotonic() - started
        run_log.log_graph_result(0, report.verdict.value, report.nodes_explored, elapsed)
    except HistlabError as exc:
        run_log.log_error("solve", exc)
        raise
    finally:
        run_log.log_run_end({"graphs": 1})
        run_log.close()

    first = report.certificates[0].tree_edges if report.certificates else None
    if args.cert_out and first is not None:
        atomic_write_text(Path(args.cert_out), write_certificate(graph, first))
    if args.dot:
        atomic_write_text(Path(args.dot), write_dot(graph, first))
    if args.png:
        rotation = loaded.embedding.rotation if loaded.embedding is not None else None
        render_certificate(graph, first, Path(args.png), rotation)

    run_report = RunReport(
        input=loaded.descriptor,
        profile=profile,
        filters=filters,
        solve=_solve_payload(graph, report),
        embedding=embedding_report(loaded.embedding) if loaded.embedding is not None else None,
        wall_time=elapsed,
        tool_version=config.TOOL_VERSION,
    )
    if args.json:
        _print_json(run_report.to_dict())
    count = f" count={report.count}" if report.count is not None else ""
    _stderr(f"{report.verdict.value} nodes={report.nodes_explored}{count} ({elapsed:.3f}s)")
    return VERDICT_EXIT[report.verdict]


# --- check ---

def cmd_check(args: argparse.Namespace) -> int:
    started = time.monotonic()
    loaded = load_input(args.input, args.format)
    if not loaded.graph.is_cubic():
        raise NotCubic("check needs a cubic graph")
    filters = _filters(loaded)
    run_report = RunReport(
        input=loaded.descriptor,
        profile=classify(loaded.graph),
        filters=filters,
        embedding=embedding_report(loaded.embedding) if loaded.embedding is not None else None,
        wall_time=time.monotonic() - started,
        tool_version=config.TOOL_VERSION,
    )
    if args.json:
        _print_json(run_report.to_dict())
    no_hist = any(value == FilterVerdict.NO_HIST.value for value in filters.values())
    _stderr("NoHist" if no_hist else "Inconclusive")
    return EXIT_NO_HIST if no_hist else EXIT_OK


# --- gen ---

def _parse_cycle(text: str) -> list[int]:
    try:
        return [int(part) for part in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"cycle must be a list of integers, got {text!r}") from None


def _generate(args: argparse.Namespace) -> tuple[Union[Graph, EmbeddedGraph], dict[str, Any]]:
    family = args.family
    if family == "catalog":
        entry = catalog(args.name)
        return entry, {"generator": "catalog", "params": {"name": args.name}}
    if family == "honeycomb":
        embedded = honeycomb_torus(args.m, args.n)
        return embedded, embedded.provenance
    if family == "inflate":
        base = load_input(args.base).graph
        if args.bipartite is not None:
            result = bipartite_inflate(base, args.bipartite)
        else:
            result = inflate(base, seed=args.seed)
        params = {"base": args.base, "bipartite": args.bipartite, "seed": args.seed}
        return result.inflated, {"generator": "inflate", "params": params}
    if family == "random-regular":
        graph = random_regular(args.n, args.d, args.seed)
        return graph, {"generator": "random_regular", "params": {"n": args.n, "d": args.d, "seed": args.seed}}
    if family == "insert-ring":
        loaded = load_input(args.graph)
        if loaded.embedding is None:
            raise InputError("insert-ring needs an embedded graph (.emb or an embedded catalog entry)")
        embedded = insert_ring(loaded.embedding, _parse_cycle(args.cycle))
        return embedded, embedded.provenance
    if family == "witness":
        result, report = cyclic_bipartite_witness(args.k, args.seed, max_len=args.max_len)
        return result.inflated, {"generator": "cyclic_bipartite_witness", "params": {"k": args.k, "seed": args.seed},
                                 "report": report.to_dict()}
    raise InputError(f"unknown family {family!r}")


def cmd_gen(args: argparse.Namespace) -> int:
    produced, provenance = _generate(args)
    if isinstance(produced, EmbeddedGraph):
        text = write_embedded(produced, comment=json.dumps(provenance, sort_keys=True))
    else:
        text = write_graph6(produced) + "\n"
    if args.out:
        atomic_write_text(Path(args.out), text)
    else:
        sys.stdout.write(text)
    if args.json:
        _stderr(json.dumps(provenance, sort_keys=True))
    return EXIT_OK


# --- cec ---

def _matching_inflation(base: Graph, graph: Graph) -> InflationResult:
    """The inflation of base that produced graph, among the deterministic ones."""
    candidates: list[Callable[[], InflationResult]] = [lambda: inflate(base)]
    degrees = set(base.degrees())
    if len(degrees) == 1:
        (degree,) = degrees
        if degree % 2 == 0 and degree >= 4:
            candidates.append(lambda: bipartite_inflate(base, degree // 2))
    for build in candidates:
        result = build()
        if result.inflated == graph and contract_factor(result) == base:
            return result
    raise InputError("input graph is not the default or bipartite inflation of the base graph")


def cmd_cec(args: argparse.Namespace) -> int:
    loaded = load_input(args.input, args.format)
    graph = loaded.graph
    if not graph.is_cubic():
        raise NotCubic("cec needs a cubic graph")

    payload: dict[str, Any] = {"input": loaded.descriptor}
    exit_code = EXIT_OK
    if args.verify_inflation:
        base = load_input(args.verify_inflation).graph
        result = _matching_inflation(base, graph)
        try:
            check = check_inflation_theorem(base, result, max_len=args.max_len)
        except PremiseNotMet as exc:
            payload["inflation_check"] = exc.to_dict()
            _stderr(f"premise not met: {exc}")
        else:
            payload["inflation_check"] = check.to_dict()
            if check.cut is not None:
                payload["cut"] = check.cut.to_dict(graph)
            if not check.passed:
                exit_code = EXIT_VIOLATION
            _stderr(f"{'pass' if check.passed else 'VIOLATION'}: cec={check.cec} k*={check.k_star}")
    if "cut" not in payload:
        report = cyclic_edge_connectivity(graph, max_len=args.max_len)
        payload["cut"] = report.to_dict(graph)
        _stderr(f"cec={report.value}{' (capped)' if report.capped else ''}")

    if args.json:
        _print_json(payload)
    return exit_code


# --- batch ---

def _batch_job(
    descriptor: dict[str, Any],
    line: bytes,
    embedding_data: Optional[bytes],
    mode_value: str,
    budget: int,
) -> dict[str, Any]:
    """Analyse one graph; errors land in the report instead of propagating."""
    started = time.monotonic()
    report = RunReport(input=descriptor, tool_version=config.TOOL_VERSION)
    try:
        graph = parse_graph6(decode_text(line, f"{descriptor['path']}#{descriptor['index']}", "ascii"))
        report.profile = classify(graph)
        loaded = LoadedInput(graph)
        if embedding_data is not None:
            embedding_text = decode_text(embedding_data, descriptor.get("embedding", "embedding"))
            loaded.embedding = parse_embedded(embedding_text, descriptor)
            if loaded.embedding.graph != graph:
                raise InputError("embedding file describes a different graph")
            report.embedding = embedding_report(loaded.embedding)
        report.filters = _filters(loaded)
        result = solve(graph, SolveMode(mode_value), budget, workers=1)
        report.solve = _solve_payload(graph, result)
    except HistlabError as exc:
        report.error = exc.to_dict()
    report.wall_time = time.monotonic() - started
    return report.to_dict()


def _batch_sources(args: argparse.Namespace) -> list[Path]:
    if args.file:
        return [Path(args.file)]
    return list_graph_files(Path(args.dir))


def cmd_batch(args: argparse.Namespace) -> int:
    budget = args.budget if args.budget is not None else config.HISTLAB_BUDGET
    embedding_dir = Path(args.embedding_dir) if args.embedding_dir else None

    jobs: list[tuple[Any, ...]] = []
    for path in _batch_sources(args):
        # decoded per line inside the job so one bad byte only fails its own graph
        lines = [line.strip() for line in path.read_bytes().splitlines()]
        lines = [line for line in lines if line]
        for index, line in enumerate(lines):
            descriptor = {"path": str(path), "index": index, "format": "graph6"}
            embedding_data = None
            if embedding_dir is not None:
                candidate = embedding_dir / f"{path.stem}-{index}.emb"
                if candidate.is_file():
                    descriptor["embedding"] = str(candidate)
                    embedding_data = candidate.read_bytes()
            jobs.append((descriptor, line, embedding_data, args.mode, budget))

    run_log = RunLogger("batch", args.file or args.dir)
    summary: dict[str, int] = {"graphs": len(jobs), "errors": 0}
    summary.update({verdict.value: 0 for verdict in Verdict})
    try:
        outcomes = JobDispatcher(config.HISTLAB_THREADS).run_sync(_batch_job, jobs)
        for outcome, job in zip(outcomes, jobs):
            descriptor = job[0]
            label = f"{descriptor['path']}#{descriptor['index']}"
            if not outcome.ok or outcome.result is None:
                summary["errors"] += 1
                run_log.log_error(label, outcome.error or RuntimeError("no result"))
                line = RunReport(input=descriptor, tool_version=config.TOOL_VERSION,
                                 error={"code": "internal", "message": str(outcome.error)}).to_dict()
                _print_json(line)
                continue
            line = outcome.result
            profile = line.get("profile") or {}
            run_log.log_graph_start(outcome.index, label, profile.get("n", 0), profile.get("m", 0))
            if line.get("error"):
                summary["errors"] += 1
                run_log.log_debug(label, line["error"].get("message", ""), code=line["error"].get("code"))
            else:
                verdict = line["solve"]["verdict"]
                summary[verdict] += 1
                run_log.log_graph_result(outcome.index, verdict, line["solve"]["nodes_explored"], line["wall_time"])
            _print_json(line)
    finally:
        run_log.log_run_end(summary)
        run_log.close()

    _print_json({"summary": summary})
    _stderr(" ".join(f"{key}={value}" for key, value in summary.items()))
    return EXIT_OK


# --- registry ---

@dataclass
class CliCommand:
    """A CLI subcommand and the handler behind it."""

    name: str
    description: str
    handler: Callable[[argparse.Namespace], int]


COMMANDS: list[CliCommand] = [
    CliCommand("solve", "Decide, count or enumerate Hists of one graph", cmd_solve),
    CliCommand("check", "Run the cheap NoHist filters without searching", cmd_check),
    CliCommand("gen", "Generate catalog graphs and construction families", cmd_gen),
    CliCommand("cec", "Cyclic edge-connectivity, optionally checking an inflation", cmd_cec),
    CliCommand("batch", "Solve every graph in a graph6 file or directory", cmd_batch),
]


def get_command(name: str) -> Optional[CliCommand]:
    for command in COMMANDS:
        if command.name == name:
            return command
    return None


def run_command(args: argparse.Namespace) -> int:
    """Dispatch to the handler; input problems become exit code 2."""
    command = get_command(args.command)
    if command is None:
        _stderr(f"error: unknown command {args.command!r}")
        return EXIT_INPUT
    try:
        return command.handler(args)
    except HistlabError as exc:
        _log.warning("%s failed: %s", command.name, exc)
        _stderr(f"error: {exc.code}: {exc}")
        return EXIT_INPUT
    except OSError as exc:
        _log.warning("%s failed: %s", command.name, exc)
        _stderr(f"error: io: {exc}")
        return EXIT_INPUT
