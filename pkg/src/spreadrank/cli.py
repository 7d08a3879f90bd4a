"""Command-line front end.

Subcommands: ingest, simulate, centrality, evaluate, report.  Exit codes:
0 success, 2 usage or parameter problems, 3 data problems, 4 convergence
failures.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .config import DEFAULT_MEASURES, RunConfig, graph_fingerprint, simulation_hash
from .errors import (CapacityError, ConvergenceError, DataError, DependencyError,
                     ParameterError, ParseError, SpreadrankError,
                     UndefinedCorrelationError, ValidationError)
from .graph import apply_wcs, load_edge_list, orient_undirected
from .measures import MeasureContext, measure_ids
from .propagation import spread_all
from .ranking import aggregate, evaluate_measures
from . import storage

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_CONVERGENCE = 4


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out-dir", type=Path, default=Path("."),
                        help="directory for output files")
    parser.add_argument("--no-timestamps", action="store_true",
                        help="omit generated-at comments for reproducible bytes")


def _add_config(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--runs", type=int, default=20000, help="cascades per seed node")
    parser.add_argument("--seed", type=int, default=1, help="master RNG seed")
    parser.add_argument("--top-k", type=int, default=50, help="top-k size for ranking error")
    parser.add_argument("--katz-alpha", type=float, default=None,
                        help="fixed Katz attenuation (default: 0.85/spectral radius)")
    parser.add_argument("--radius", type=int, default=3, help="gravity hop radius")
    parser.add_argument("--measures", type=str, default=",".join(DEFAULT_MEASURES),
                        help="comma-separated measure ids")


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    measures = tuple(m.strip() for m in args.measures.split(",") if m.strip()) \
        if hasattr(args, "measures") else DEFAULT_MEASURES
    return RunConfig(
        runs=getattr(args, "runs", 20000),
        master_seed=getattr(args, "seed", 1),
        top_k=getattr(args, "top_k", 50),
        katz_alpha=getattr(args, "katz_alpha", None),
        gravity_radius=getattr(args, "radius", 3),
        measures=measures,
    )


def _write_config(cfg: RunConfig, out_dir: Path) -> None:
    (out_dir / "config.json").write_text(cfg.to_json(), encoding="utf-8")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spreadrank",
                                     description="Centrality measures versus cascade spread")
    parser.add_argument("--version", action="version", version=f"spreadrank {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="canonicalize an edge list")
    p_ingest.add_argument("input", type=Path, help="raw edge list file")
    p_ingest.add_argument("--name", type=str, default=None, help="dataset name (default: file stem)")
    p_ingest.add_argument("--directed", action="store_true",
                          help="input declares edge directions")
    p_ingest.add_argument("--weighted", action="store_true",
                          help="input carries edge weights")
    p_ingest.add_argument("--keep-weights", action="store_true",
                          help="keep declared weights as cascade probabilities "
                               "instead of assigning 1/in-degree")
    _add_common(p_ingest)

    p_sim = sub.add_parser("simulate", help="estimate expected spread per seed node")
    p_sim.add_argument("graph", type=Path, help="canonical edge list from ingest")
    p_sim.add_argument("--force", action="store_true", help="ignore an existing cache")
    p_sim.add_argument("--quiet", action="store_true", help="suppress progress output")
    _add_common(p_sim)
    _add_config(p_sim)

    p_cent = sub.add_parser("centrality", help="compute one centrality measure")
    p_cent.add_argument("graph", type=Path)
    p_cent.add_argument("--measure", type=str, required=True,
                        help=f"one of: {', '.join(measure_ids())}")
    _add_common(p_cent)
    _add_config(p_cent)

    p_eval = sub.add_parser("evaluate", help="score measures against simulated spread")
    p_eval.add_argument("graph", type=Path)
    p_eval.add_argument("spread", type=Path, help="spread CSV from simulate")
    p_eval.add_argument("--dataset", type=str, default=None,
                        help="dataset name for report rows (default: graph stem)")
    _add_common(p_eval)
    _add_config(p_eval)

    p_rep = sub.add_parser("report", help="aggregate evaluation reports")
    p_rep.add_argument("evaluations", type=Path, nargs="+", help="evaluation CSV files")
    _add_common(p_rep)
    return parser


def cmd_ingest(args: argparse.Namespace) -> int:
    net = load_edge_list(args.input, declared_directed=args.directed,
                         declared_weighted=args.weighted)
    if net.edge_count == 0:
        raise DataError(f"no edges in {args.input}")
    if not net.directed:
        net = orient_undirected(net)
    if not (args.weighted and args.keep_weights):
        net = apply_wcs(net)
    name = args.name or args.input.stem
    args.out_dir.mkdir(parents=True, exist_ok=True)
    graph_path = args.out_dir / f"{name}.edges"
    storage.write_edge_list(net, graph_path,
                            comments={"dataset": name,
                                      "graph_fingerprint": graph_fingerprint(net)},
                            timestamps=not args.no_timestamps)
    storage.write_id_map(net, args.out_dir / f"{name}.idmap.csv")
    print(f"dataset={name} nodes={net.node_count} edges={net.edge_count} "
          f"density={net.density():.4f} self_loops_dropped={net.self_loops_dropped} "
          f"duplicates_dropped={net.duplicates_dropped}")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    net = storage.read_canonical_network(args.graph)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    cache_path = args.out_dir / f"{args.graph.stem}.spread.csv"
    expected_hash = simulation_hash(net, cfg.runs, cfg.master_seed)
    if cache_path.exists() and not args.force:
        try:
            _, stored_hash = storage.read_spread(cache_path)
        except (ParseError, DataError, ValidationError):
            stored_hash = ""
        if stored_hash == expected_hash:
            print(f"cache hit: {cache_path} (config_hash={expected_hash})")
            return 0
        print(f"cache mismatch, recomputing: {cache_path}", file=sys.stderr)

    def progress(done: int, total: int) -> None:
        step = max(1, total // 100)
        if done % step == 0 or done == total:
            print(f"simulated {done}/{total} seeds", file=sys.stderr)

    spread = spread_all(net, cfg, progress=None if args.quiet else progress)
    storage.write_spread(spread, cache_path, expected_hash,
                         timestamps=not args.no_timestamps)
    _write_config(cfg, args.out_dir)
    print(f"wrote {cache_path} (config_hash={expected_hash})")
    return 0


def cmd_centrality(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    if args.measure not in measure_ids():
        raise ParameterError(
            f"unknown measure {args.measure!r}; valid ids: {', '.join(measure_ids())}")
    net = storage.read_canonical_network(args.graph)
    ctx = MeasureContext(net, cfg)
    scores = ctx.get(args.measure)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    out_path = args.out_dir / f"{args.graph.stem}.{args.measure}.csv"
    storage.write_scores(scores, out_path, graph_fingerprint(net),
                         timestamps=not args.no_timestamps)
    _write_config(cfg, args.out_dir)
    print(f"wrote {out_path}")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    net = storage.read_canonical_network(args.graph)
    spread, stored_hash = storage.read_spread(args.spread)
    # provenance records the simulation knobs the spread file was built with
    args.runs = spread.runs
    args.seed = spread.master_seed
    cfg = _config_from_args(args)
    expected_hash = simulation_hash(net, spread.runs, spread.master_seed)
    if stored_hash and stored_hash != expected_hash:
        raise DataError(f"spread cache {args.spread} does not match graph {args.graph} "
                        f"(hash {stored_hash} != {expected_hash})")
    if spread.values.size != net.node_count:
        raise DataError("spread cache covers a different node count than the graph")
    dataset = args.dataset or args.graph.stem
    ctx = MeasureContext(net, cfg)
    wanted = list(dict.fromkeys(("c_od", "c_os") + cfg.measures))
    scores = {measure_id: ctx.get(measure_id) for measure_id in wanted}
    report = evaluate_measures(dataset, net.node_count, net.density(), scores,
                               spread, cfg.top_k)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    out_path = args.out_dir / f"{dataset}.evaluation.csv"
    storage.write_evaluation(report, out_path, expected_hash,
                             timestamps=not args.no_timestamps)
    _write_config(cfg, args.out_dir)
    print(f"wrote {out_path}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    reports = []
    hashes = set()
    for path in args.evaluations:
        report, stored_hash = storage.read_evaluation(path)
        reports.append(report)
        hashes.add(stored_hash)
    if len(args.evaluations) != len({r.dataset for r in reports}):
        raise DataError("duplicate dataset names across evaluation files")
    combined = aggregate(reports)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    report_path = args.out_dir / "report.csv"
    scatter_path = args.out_dir / "scatter.csv"
    storage.write_combined_report(reports, combined, report_path,
                                  timestamps=not args.no_timestamps)
    storage.write_scatter(reports, scatter_path, timestamps=not args.no_timestamps)
    print(f"wrote {report_path} and {scatter_path}")
    return 0


_COMMANDS = {
    "ingest": cmd_ingest,
    "simulate": cmd_simulate,
    "centrality": cmd_centrality,
    "evaluate": cmd_evaluate,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParameterError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ParseError, ValidationError, CapacityError, DependencyError,
            UndefinedCorrelationError, DataError, SpreadrankError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    raise SystemExit(main())
