"""Experiment harness: plans, run reports, CSV emission, and summaries.

Every run is checked against the sequential oracle; an oracle mismatch
under a clean verdict aborts the experiment, while mismatches under
heuristic verdicts are recorded in the ``oracle_match`` column (that is
the behaviour being measured).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

from .driver import VERDICT_CLEAN, RunConfig, RunResult, run_sssp
from .engine import EngineConfig
from .errors import BenchError
from .generate import DEFAULT_PROBS, GenSpec, default_source, generate_rmat
from .graph import Graph, load_dimacs, load_edgelist
from .oracle import OracleResult, dijkstra_seq, distances_equal
from .termination import TERMINATION_MODES, TOKEN_RING
from .transport import MODE_SIM, MODE_THREADS

CSV_FIELDS = ("graph_id", "n", "m", "p", "term_mode", "trial", "wall",
              "updates", "relax", "mteps", "verdict", "oracle_match",
              "pruned_edges")
CSV_HEADER = ",".join(CSV_FIELDS)


@dataclass
class RunReport:
    """One CSV row: a single trial of one experiment cell."""

    graph_id: str
    n: int
    m: int
    p: int
    term_mode: str
    trial: int
    wall: int | float
    updates: int
    relax: int
    mteps: float | None
    verdict: str
    oracle_match: bool
    pruned_edges: int

    def to_row(self) -> str:
        wall = repr(self.wall) if isinstance(self.wall, float) else str(self.wall)
        mteps = "" if self.mteps is None else repr(self.mteps)
        match = "true" if self.oracle_match else "false"
        return (f"{self.graph_id},{self.n},{self.m},{self.p},{self.term_mode},"
                f"{self.trial},{wall},{self.updates},{self.relax},{mteps},"
                f"{self.verdict},{match},{self.pruned_edges}")

    @staticmethod
    def from_row(row: str) -> "RunReport":
        parts = row.split(",")
        if len(parts) != len(CSV_FIELDS):
            raise BenchError(f"bad report row: {row!r}")
        (graph_id, n, m, p, term_mode, trial, wall, updates, relax, mteps,
         verdict, match, pruned) = parts
        return RunReport(
            graph_id=graph_id, n=int(n), m=int(m), p=int(p),
            term_mode=term_mode, trial=int(trial),
            wall=int(wall) if wall.isdigit() else float(wall),
            updates=int(updates), relax=int(relax),
            mteps=None if mteps == "" else float(mteps),
            verdict=verdict, oracle_match=match == "true",
            pruned_edges=int(pruned))


def write_reports(reports: list[RunReport], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(CSV_HEADER + "\n")
        for r in reports:
            f.write(r.to_row() + "\n")


def read_reports(path: str | Path) -> list[RunReport]:
    with open(path, "r", encoding="utf-8") as f:
        lines = [ln.rstrip("\n") for ln in f if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise BenchError(f"{path}: missing or wrong CSV header")
    return [RunReport.from_row(ln) for ln in lines[1:]]


@dataclass
class PlanCell:
    """One experiment cell: a graph crossed with rank counts and modes."""

    graph_path: str | None = None
    gen: GenSpec | None = None
    source: int | str = "max-out-degree"
    parts: tuple[int, ...] = (1, 2, 4, 8)
    term_modes: tuple[str, ...] = (TOKEN_RING,)
    mode: str = MODE_SIM

    def load_graph(self) -> tuple[str, Graph]:
        if self.gen is not None:
            return self.gen.graph_id(), generate_rmat(self.gen)
        if self.graph_path is None:
            raise BenchError("plan cell names neither a graph file nor a generator")
        path = Path(self.graph_path)
        g = load_dimacs(str(path)) if path.suffix == ".gr" else load_edgelist(str(path))
        return path.name, g


@dataclass
class BenchPlan:
    cells: list[PlanCell]
    trials: int = 5
    seed: int = 0
    min_delay: int = 1
    max_delay: int = 4
    engine: EngineConfig = field(default_factory=EngineConfig)

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise BenchError(f"trials must be >= 1, got {self.trials}")


_PLAN_KEYS = frozenset({"cells", "trials", "seed", "min_delay", "max_delay"})
_CELL_KEYS = frozenset({"graph", "scale", "edge_factor", "graph_seed",
                        "probs", "weight_lo", "weight_hi", "source", "parts",
                        "term", "termination", "mode"})


def load_plan(path: str | Path) -> BenchPlan:
    """Parse a TOML plan file; see README for the schema."""
    with open(path, "rb") as f:
        doc = _toml.load(f)
    unknown = set(doc) - _PLAN_KEYS
    if unknown:
        raise BenchError(f"{path}: unknown plan keys {sorted(unknown)}")
    cells = []
    for raw in doc.get("cells", []):
        unknown = set(raw) - _CELL_KEYS
        if unknown:
            raise BenchError(f"{path}: unknown cell keys {sorted(unknown)}")
        gen = None
        if "scale" in raw:
            gen = GenSpec(
                scale=int(raw["scale"]),
                edge_factor=int(raw.get("edge_factor", 16)),
                probs=tuple(raw["probs"]) if "probs" in raw else DEFAULT_PROBS,
                weight_lo=int(raw.get("weight_lo", 1)),
                weight_hi=int(raw.get("weight_hi", 20)),
                seed=int(raw.get("graph_seed", doc.get("seed", 0))),
            )
            gen.validate()
        term_modes = tuple(raw.get("termination", raw.get("term", [TOKEN_RING])))
        for mode in term_modes:
            if mode not in TERMINATION_MODES:
                raise BenchError(f"unknown termination mode {mode!r}")
        run_mode = raw.get("mode", MODE_SIM)
        if run_mode not in (MODE_SIM, MODE_THREADS):
            raise BenchError(f"unknown run mode {run_mode!r}")
        cells.append(PlanCell(
            graph_path=raw.get("graph"),
            gen=gen,
            source=raw.get("source", "max-out-degree"),
            parts=tuple(int(p) for p in raw.get("parts", [1, 2, 4, 8])),
            term_modes=term_modes,
            mode=run_mode,
        ))
    if not cells:
        raise BenchError(f"{path}: plan has no cells")
    return BenchPlan(
        cells=cells,
        trials=int(doc.get("trials", 5)),
        seed=int(doc.get("seed", 0)),
        min_delay=int(doc.get("min_delay", 1)),
        max_delay=int(doc.get("max_delay", 4)),
    )


def resolve_source(g: Graph, source: int | str) -> int:
    if isinstance(source, int):
        return source
    if source == "max-out-degree":
        return default_source(g)
    if isinstance(source, str) and source.lstrip("-").isdigit():
        return int(source)
    raise BenchError(f"unknown source policy {source!r}")


def report_for(result: RunResult, oracle: OracleResult, graph_id: str,
               g: Graph, p: int, term_mode: str, trial: int,
               mode: str) -> RunReport:
    match = distances_equal(result.dist, oracle.dist)
    mteps = None
    if mode == MODE_THREADS and result.wall > 0:
        mteps = result.relax_attempts / result.wall / 1e6
    return RunReport(
        graph_id=graph_id, n=g.n_vertices, m=g.n_edges, p=p,
        term_mode=term_mode, trial=trial, wall=result.wall,
        updates=result.updates_sent, relax=result.relax_attempts,
        mteps=mteps, verdict=result.verdict, oracle_match=match,
        pruned_edges=result.pruned_edges)


def run_experiment(plan: BenchPlan, out_csv: str | Path | None = None,
                   progress=None) -> list[RunReport]:
    """Execute every cell of the plan, ``trials`` runs per cell.

    The oracle check runs for every report. A mismatch under a clean
    verdict raises :class:`BenchError`: that combination would mean the
    termination protocol lied.
    """
    reports: list[RunReport] = []
    for cell in plan.cells:
        graph_id, g = cell.load_graph()
        source = resolve_source(g, cell.source)
        oracle = dijkstra_seq(g, source)
        for p in cell.parts:
            for term_mode in cell.term_modes:
                for trial in range(plan.trials):
                    cfg = RunConfig(
                        parts=p, term_mode=term_mode, mode=cell.mode,
                        seed=plan.seed + trial, min_delay=plan.min_delay,
                        max_delay=plan.max_delay,
                        engine=replace(plan.engine))
                    result = run_sssp(g, source, cfg)
                    report = report_for(result, oracle, graph_id, g, p,
                                        term_mode, trial, cell.mode)
                    if report.verdict == VERDICT_CLEAN and not report.oracle_match:
                        raise BenchError(
                            f"{graph_id} p={p} trial={trial}: clean verdict "
                            f"but distances disagree with the oracle")
                    reports.append(report)
                    if progress is not None:
                        progress(report)
    if out_csv is not None:
        write_reports(reports, out_csv)
    return reports


@dataclass
class SummaryRow:
    graph_id: str
    term_mode: str
    p: int
    mean_wall: float
    speedup: float | None
    mean_mteps: float | None


def summarize(reports: list[RunReport]) -> list[SummaryRow]:
    """Per (graph, mode, p): mean wall time plus speedup relative to p=1."""
    groups: dict[tuple[str, str, int], list[RunReport]] = {}
    for r in reports:
        groups.setdefault((r.graph_id, r.term_mode, r.p), []).append(r)
    base: dict[tuple[str, str], float] = {}
    for (gid, mode, p), rows in groups.items():
        if p == 1:
            base[(gid, mode)] = sum(r.wall for r in rows) / len(rows)
    out = []
    for (gid, mode, p) in sorted(groups):
        rows = groups[(gid, mode, p)]
        mean_wall = sum(r.wall for r in rows) / len(rows)
        b = base.get((gid, mode))
        speedup = (b / mean_wall) if b and mean_wall > 0 else None
        mtepses = [r.mteps for r in rows if r.mteps is not None]
        mean_mteps = sum(mtepses) / len(mtepses) if mtepses else None
        out.append(SummaryRow(gid, mode, p, mean_wall, speedup, mean_mteps))
    return out


def format_summary(rows: list[SummaryRow]) -> str:
    lines = ["graph_id,term_mode,p,mean_wall,speedup,mean_mteps"]
    for r in rows:
        speedup = "" if r.speedup is None else f"{r.speedup:.3f}"
        mteps = "" if r.mean_mteps is None else f"{r.mean_mteps:.4f}"
        lines.append(f"{r.graph_id},{r.term_mode},{r.p},"
                     f"{r.mean_wall:.3f},{speedup},{mteps}")
    return "\n".join(lines)
