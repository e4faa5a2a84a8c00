"""Synthetic graph generation: recursive-matrix (RMAT) edge sampling."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import GraphError
from .graph import Graph, build_graph

# Graph500 convention for skewed quadrant probabilities.
DEFAULT_PROBS = (0.57, 0.19, 0.19, 0.05)
UNIFORM_PROBS = (0.25, 0.25, 0.25, 0.25)


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one generated graph.

    ``2**scale`` vertices and ``edge_factor * 2**scale`` directed edges;
    weights are drawn uniformly from ``[weight_lo, weight_hi)`` at integer
    resolution. Self-loops are redrawn so the edge count is exact;
    parallel edges are kept.
    """

    scale: int
    edge_factor: int
    probs: tuple[float, float, float, float] = DEFAULT_PROBS
    weight_lo: int = 1
    weight_hi: int = 20
    seed: int = 0

    def validate(self) -> None:
        if self.scale < 1:
            raise GraphError(f"scale must be >= 1, got {self.scale}")
        if self.edge_factor < 1:
            raise GraphError(
                f"edge_factor must be >= 1, got {self.edge_factor}")
        if len(self.probs) != 4 or any(p < 0 for p in self.probs):
            raise GraphError(f"bad quadrant probabilities {self.probs!r}")
        if abs(sum(self.probs) - 1.0) > 1e-9:
            raise GraphError(
                f"quadrant probabilities must sum to 1, got {self.probs!r}")
        if self.weight_lo < 1 or self.weight_hi <= self.weight_lo:
            raise GraphError(
                f"need 1 <= weight_lo < weight_hi, got "
                f"[{self.weight_lo}, {self.weight_hi})")

    def graph_id(self) -> str:
        return f"rmat-s{self.scale}-e{self.edge_factor}-x{self.seed}"


def generate_rmat(spec: GenSpec) -> Graph:
    """Sample a directed RMAT graph; deterministic for a fixed seed."""
    spec.validate()
    rng = random.Random(spec.seed)
    rand = rng.random
    n = 1 << spec.scale
    m = spec.edge_factor * n
    a, b, c, _d = spec.probs
    ab = a + b
    abc = a + b + c
    lo, hi = spec.weight_lo, spec.weight_hi
    scale = spec.scale
    edges = []
    for _ in range(m):
        while True:
            u = v = 0
            for _ in range(scale):
                u <<= 1
                v <<= 1
                r = rand()
                if r < a:
                    pass
                elif r < ab:
                    v |= 1
                elif r < abc:
                    u |= 1
                else:
                    u |= 1
                    v |= 1
            if u != v:
                break
        edges.append((u, v, rng.randrange(lo, hi)))
    return build_graph(edges, n, directed=True)


def default_source(g: Graph) -> int:
    """Highest-out-degree vertex (lowest id wins ties).

    Skewed generators routinely leave low-degree or isolated vertices, so
    a fixed source would make many runs trivially empty.
    """
    best = 0
    best_deg = -1
    for v, lst in enumerate(g.adj):
        if len(lst) > best_deg:
            best = v
            best_deg = len(lst)
    return best
