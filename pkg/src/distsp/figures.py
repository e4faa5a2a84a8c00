"""Benchmark figures rendered next to the CSV output.

One line per (graph, termination mode): wall time, speedup, and, when
threaded trials produced it, traversal throughput, each against the rank
count. Headless backend; files only.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .bench import SummaryRow  # noqa: E402

_FIGSIZE = (5.2, 3.4)


def _series(rows: list[SummaryRow], attr: str):
    by_line: dict[tuple[str, str], list[tuple[int, float]]] = {}
    for r in rows:
        val = getattr(r, attr)
        if val is None:
            continue
        by_line.setdefault((r.graph_id, r.term_mode), []).append((r.p, val))
    return {k: sorted(v) for k, v in by_line.items()}


def _plot(series, ylabel: str, path: Path, logy: bool = False) -> None:
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    for (gid, mode), pts in sorted(series.items()):
        xs = [p for p, _ in pts]
        ys = [y for _, y in pts]
        ax.plot(xs, ys, marker="o", label=f"{gid} ({mode})")
    ax.set_xlabel("ranks")
    ax.set_ylabel(ylabel)
    if logy:
        ax.set_yscale("log")
    ax.set_xscale("log", base=2)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_figures(summary: list[SummaryRow], outdir: str | Path) -> list[Path]:
    """Render runtime/speedup (and throughput) plots; returns written paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    wall = _series(summary, "mean_wall")
    if wall:
        path = outdir / "runtime.png"
        _plot(wall, "mean wall (ticks or seconds)", path, logy=True)
        written.append(path)

    speedup = _series(summary, "speedup")
    if speedup:
        path = outdir / "speedup.png"
        _plot(speedup, "speedup vs one rank", path)
        written.append(path)

    mteps = _series(summary, "mean_mteps")
    if mteps:
        path = outdir / "mteps.png"
        _plot(mteps, "million edge relaxations / s", path)
        written.append(path)

    return written
