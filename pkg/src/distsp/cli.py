"""Command-line interface: gen, run, verify, bench, prune-stats."""

from __future__ import annotations

import argparse
import sys

from .bench import (CSV_HEADER, load_plan, report_for, run_experiment,
                    format_summary, summarize)
from .driver import RunConfig, run_sssp
from .engine import write_distances
from .errors import BenchError, GraphError
from .generate import GenSpec, generate_rmat
from .graph import load_dimacs, load_edgelist, partition_graph, save_edgelist
from .oracle import INF, dijkstra_seq
from .pruning import prune_full
from .termination import TERMINATION_MODES, TOKEN_RING
from .transport import MODE_SIM, MODE_THREADS


def _load_graph(path: str):
    return load_dimacs(path) if path.endswith(".gr") else load_edgelist(path)


def _resolve_source(g, source: str) -> int:
    if source == "max-out-degree":
        from .generate import default_source
        return default_source(g)
    return int(source)


def _add_run_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--graph", required=True, help="edge-list or .gr file")
    sp.add_argument("--source", default="max-out-degree",
                    help="source vertex id, or 'max-out-degree' (default)")
    sp.add_argument("--parts", type=int, required=True)
    sp.add_argument("--term", default=TOKEN_RING, choices=TERMINATION_MODES)
    sp.add_argument("--mode", default=MODE_SIM,
                    choices=(MODE_SIM, MODE_THREADS))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--min-delay", type=int, default=1)
    sp.add_argument("--max-delay", type=int, default=4)
    sp.add_argument("--tick-cap", type=int, default=None)


def _run_config(args) -> RunConfig:
    return RunConfig(
        parts=args.parts, term_mode=args.term, mode=args.mode,
        seed=args.seed, min_delay=args.min_delay, max_delay=args.max_delay,
        tick_cap=args.tick_cap)


def cmd_gen(args) -> int:
    spec = GenSpec(scale=args.scale, edge_factor=args.edge_factor,
                   probs=tuple(args.probs), weight_lo=args.weight_lo,
                   weight_hi=args.weight_hi, seed=args.seed)
    g = generate_rmat(spec)
    save_edgelist(g, args.output)
    print(f"wrote {args.output}: n={g.n_vertices} m={g.n_edges}")
    return 0


def cmd_run(args) -> int:
    g = _load_graph(args.graph)
    source = _resolve_source(g, args.source)
    result = run_sssp(g, source, _run_config(args))
    oracle = dijkstra_seq(g, source)
    report = report_for(result, oracle, args.graph.rsplit("/", 1)[-1], g,
                        args.parts, args.term, 0, args.mode)
    print(CSV_HEADER)
    print(report.to_row())
    if args.dist_out:
        with open(args.dist_out, "w", encoding="utf-8") as f:
            write_distances(result.dist, f)
    return 0


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    source = _resolve_source(g, args.source)
    result = run_sssp(g, source, _run_config(args))
    oracle = dijkstra_seq(g, source)
    mismatches = [v for v, (a, b) in enumerate(zip(result.dist, oracle.dist))
                  if a != b]
    print(f"verdict={result.verdict} wall={result.wall} "
          f"updates={result.updates_sent}")
    if mismatches:
        print(f"MISMATCH on {len(mismatches)} vertices "
              f"(first 10: {mismatches[:10]})")
        for v in mismatches[:10]:
            got = "INF" if result.dist[v] == INF else result.dist[v]
            want = "INF" if oracle.dist[v] == INF else oracle.dist[v]
            print(f"  vertex {v}: engine={got} oracle={want}")
        return 1
    print(f"distances match the oracle on all {g.n_vertices} vertices")
    return 0


def cmd_bench(args) -> int:
    plan = load_plan(args.plan)
    progress = None
    if args.verbose:
        progress = lambda r: print(r.to_row(), file=sys.stderr)  # noqa: E731
    reports = run_experiment(plan, out_csv=args.output, progress=progress)
    summary = summarize(reports)
    text = format_summary(summary)
    print(text)
    summary_path = args.output.rsplit(".", 1)[0] + ".summary.csv"
    with open(summary_path, "w", encoding="utf-8") as f:
        f.write(text + "\n")
    if not args.no_figures:
        from .figures import render_figures
        outdir = args.figures_dir
        if outdir is None:
            out = args.output
            outdir = (out.rsplit("/", 1)[0] if "/" in out else ".")
        for path in render_figures(summary, outdir):
            print(f"figure: {path}", file=sys.stderr)
    print(f"wrote {args.output} ({len(reports)} rows) and {summary_path}",
          file=sys.stderr)
    return 0


def cmd_prune_stats(args) -> int:
    g = _load_graph(args.graph)
    parts = partition_graph(g, args.parts)
    print("part,owned,edges_before,edges_after,removed,removed_pct")
    total_before = total_after = 0
    for part in parts:
        before = part.n_local_edges()
        _, removed = prune_full(part)
        after = part.n_local_edges()
        total_before += before
        total_after += after
        pct = (100.0 * removed / before) if before else 0.0
        print(f"{part.part_id},{part.owned_count()},{before},{after},"
              f"{removed},{pct:.2f}")
    removed = total_before - total_after
    pct = (100.0 * removed / total_before) if total_before else 0.0
    print(f"total,{g.n_vertices},{total_before},{total_after},"
          f"{removed},{pct:.2f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="distsp",
        description="Distributed single-source shortest paths, simulated.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gen", help="generate an RMAT graph file")
    sp.add_argument("--scale", type=int, required=True,
                    help="log2 of the vertex count")
    sp.add_argument("--edge-factor", type=int, default=16)
    sp.add_argument("--probs", type=float, nargs=4,
                    default=[0.57, 0.19, 0.19, 0.05],
                    metavar=("A", "B", "C", "D"))
    sp.add_argument("--weight-lo", type=int, default=1)
    sp.add_argument("--weight-hi", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("run", help="run the engine; print the report row")
    _add_run_args(sp)
    sp.add_argument("--dist-out", default=None,
                    help="write per-vertex distances to this file")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("verify",
                        help="run and diff against the sequential oracle")
    _add_run_args(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="run an experiment plan")
    sp.add_argument("--plan", required=True, help="TOML plan file")
    sp.add_argument("-o", "--output", default="results.csv")
    sp.add_argument("--figures-dir", default=None,
                    help="where to render figures (default: next to the CSV)")
    sp.add_argument("--no-figures", action="store_true")
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("prune-stats",
                        help="edge counts before/after pruning, per partition")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--parts", type=int, required=True)
    sp.set_defaults(func=cmd_prune_stats)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, BenchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
