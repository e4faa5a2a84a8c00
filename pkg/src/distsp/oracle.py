"""Sequential shortest-path references used as ground truth for every run."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .errors import GraphError
from .graph import Graph

INF = math.inf


@dataclass
class OracleResult:
    dist: list[float]
    pops: int
    relaxations: int
    pop_order: list[int] = field(default_factory=list)


def dijkstra_seq(g: Graph, s: int) -> OracleResult:
    """Exact distances from ``s`` with deterministic (dist, id) pop order.

    Uses lazy deletion: duplicate heap entries are skipped when their key
    exceeds the current distance, so the recorded pop order contains each
    settled vertex exactly once.
    """
    n = g.n_vertices
    if not 0 <= s < n:
        raise GraphError(f"source {s} out of range for n={n}")
    dist: list[float] = [INF] * n
    dist[s] = 0
    pq: list[tuple[float, int]] = [(0, s)]
    pop_order: list[int] = []
    relax = 0
    adj = g.adj
    heappush = heapq.heappush
    heappop = heapq.heappop
    while pq:
        d, u = heappop(pq)
        if d > dist[u]:
            continue
        pop_order.append(u)
        edges = adj[u]
        relax += len(edges)
        for v, w in edges:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heappush(pq, (nd, v))
    return OracleResult(dist, len(pop_order), relax, pop_order)


def bellman_ford_seq(g: Graph, s: int) -> OracleResult:
    """Edge-sweep Bellman-Ford; the independent second oracle.

    ``pops`` counts full sweeps, ``relaxations`` counts edge examinations
    from vertices with a finite tentative distance. ``pop_order`` is empty
    (the algorithm settles no vertex order).
    """
    n = g.n_vertices
    if not 0 <= s < n:
        raise GraphError(f"source {s} out of range for n={n}")
    dist: list[float] = [INF] * n
    dist[s] = 0
    edge_list = [(u, v, w) for u, lst in enumerate(g.adj) for v, w in lst]
    relax = 0
    sweeps = 0
    for _ in range(n):
        sweeps += 1
        changed = False
        for u, v, w in edge_list:
            du = dist[u]
            if du == INF:
                continue
            relax += 1
            nd = du + w
            if nd < dist[v]:
                dist[v] = nd
                changed = True
        if not changed:
            break
    return OracleResult(dist, sweeps, relax)


def distances_equal(a: list[float], b: list[float], tol: float = 0.0) -> bool:
    """Compare distance vectors; exact by default, tolerant for float weights."""
    if len(a) != len(b):
        return False
    for x, y in zip(a, b):
        if x == y:
            continue
        if tol and math.isfinite(x) and math.isfinite(y) and abs(x - y) <= tol:
            continue
        return False
    return True
