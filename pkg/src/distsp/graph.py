"""Weighted digraphs, edge-list file I/O, and 1D block partitioning."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import GraphError

Weight = int | float
Edge = tuple[int, int, Weight]


class Graph:
    """Immutable weighted digraph stored as per-vertex adjacency lists.

    ``adj[u]`` holds the out-edges of ``u`` as ``(target, weight)`` tuples.
    Self-loops are dropped on construction; parallel edges are kept.
    Instances are shared between partitions and oracle runs, so they must
    not be mutated after construction.
    """

    __slots__ = ("n_vertices", "n_edges", "adj", "directed")

    def __init__(self, n_vertices: int, n_edges: int,
                 adj: list[list[tuple[int, Weight]]], directed: bool):
        self.n_vertices = n_vertices
        self.n_edges = n_edges
        self.adj = adj
        self.directed = directed

    def edges(self) -> Iterator[Edge]:
        """Yield every stored arc as (source, target, weight)."""
        for u, lst in enumerate(self.adj):
            for v, w in lst:
                yield u, v, w

    def out_degree(self, v: int) -> int:
        return len(self.adj[v])

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"Graph({kind}, n={self.n_vertices}, m={self.n_edges})"


def build_graph(edges: Iterable[Edge], n: int, directed: bool = True) -> Graph:
    """Build a graph from an edge list.

    Endpoints must lie in [0, n); weights must be finite and non-negative.
    Self-loops are dropped. With ``directed=False`` each input edge
    materializes both arcs, and ``n_edges`` counts arcs.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    adj: list[list[tuple[int, Weight]]] = [[] for _ in range(n)]
    m = 0
    for u, v, w in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if w < 0 or not math.isfinite(w):
            raise GraphError(f"edge ({u}, {v}) has invalid weight {w!r}")
        if u == v:
            continue
        adj[u].append((v, w))
        m += 1
        if not directed:
            adj[v].append((u, w))
            m += 1
    return Graph(n, m, adj, directed)


@dataclass(frozen=True)
class PartitionLayout:
    """Contiguous block mapping of vertex ids onto ranks.

    Rank ``r`` owns vertices ``[r * block, min(n, (r + 1) * block))``.
    The last ranks may own fewer vertices (or none) when ``n_parts``
    does not divide ``n_vertices``.
    """

    n_vertices: int
    n_parts: int
    block: int

    @staticmethod
    def create(n_vertices: int, n_parts: int) -> "PartitionLayout":
        if not 1 <= n_parts <= n_vertices:
            raise GraphError(
                f"need 1 <= parts <= {n_vertices} vertices, got {n_parts}")
        block = -(-n_vertices // n_parts)
        return PartitionLayout(n_vertices, n_parts, block)

    def owned_range(self, rank: int) -> tuple[int, int]:
        lo = min(self.n_vertices, rank * self.block)
        hi = min(self.n_vertices, lo + self.block)
        return lo, hi


def owner(layout: PartitionLayout, v: int) -> int:
    """Rank that owns vertex ``v``."""
    if not 0 <= v < layout.n_vertices:
        raise GraphError(f"vertex {v} out of range for n={layout.n_vertices}")
    return v // layout.block


class Partition:
    """One rank's owned vertex range and the adjacency of its owned vertices.

    ``local_adj[i]`` holds the out-edges of vertex ``lo + i``; targets may
    be ghost vertices owned by other ranks. The lists are mutable on
    purpose: edge pruning deletes entries in place and keeps
    ``n_interedges`` consistent.
    """

    __slots__ = ("part_id", "layout", "lo", "hi", "local_adj", "n_interedges")

    def __init__(self, part_id: int, layout: PartitionLayout,
                 local_adj: list[list[tuple[int, Weight]]]):
        lo, hi = layout.owned_range(part_id)
        if len(local_adj) != hi - lo:
            raise GraphError(
                f"partition {part_id} expects {hi - lo} owned lists, "
                f"got {len(local_adj)}")
        self.part_id = part_id
        self.layout = layout
        self.lo = lo
        self.hi = hi
        self.local_adj = local_adj
        self.n_interedges = sum(
            1 for lst in local_adj for v, _ in lst if not lo <= v < hi)

    def owns(self, v: int) -> bool:
        return self.lo <= v < self.hi

    def owned_count(self) -> int:
        return self.hi - self.lo

    def n_local_edges(self) -> int:
        return sum(len(lst) for lst in self.local_adj)

    def __repr__(self) -> str:
        return (f"Partition(rank={self.part_id}, owned=[{self.lo},{self.hi}), "
                f"edges={self.n_local_edges()}, inter={self.n_interedges})")


def partition_graph(g: Graph, p: int) -> list[Partition]:
    """Split a graph into ``p`` partitions; edges live with their source."""
    layout = PartitionLayout.create(g.n_vertices, p)
    parts = []
    for rank in range(p):
        lo, hi = layout.owned_range(rank)
        local = [list(g.adj[v]) for v in range(lo, hi)]
        parts.append(Partition(rank, layout, local))
    return parts


def graph_from_partitions(parts: list[Partition]) -> Graph:
    """Reassemble the global graph from partitions (inverse of partitioning)."""
    if not parts:
        raise GraphError("no partitions given")
    layout = parts[0].layout
    adj: list[list[tuple[int, Weight]]] = [[] for _ in range(layout.n_vertices)]
    m = 0
    for part in sorted(parts, key=lambda q: q.part_id):
        for i, lst in enumerate(part.local_adj):
            adj[part.lo + i] = [tuple(e) for e in lst]
            m += len(lst)
    return Graph(layout.n_vertices, m, adj, directed=True)


def _format_weight(w: Weight) -> str:
    return str(w) if isinstance(w, int) else repr(float(w))


def _parse_weight(tok: str, path: str, lineno: int) -> Weight:
    try:
        if any(c in tok for c in ".eE") and not tok.isdigit():
            return float(tok)
        return int(tok)
    except ValueError:
        raise GraphError(f"{path}:{lineno}: bad weight {tok!r}") from None


def save_edgelist(g: Graph, path: str) -> None:
    """Write the ``"N M"`` header followed by one ``"u v w"`` line per arc."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{g.n_vertices} {g.n_edges}\n")
        for u, v, w in g.edges():
            f.write(f"{u} {v} {_format_weight(w)}\n")


def load_edgelist(path: str) -> Graph:
    """Load the text edge-list format written by :func:`save_edgelist`.

    First non-comment line is ``"N M"``; each following line is
    ``"u v w"`` with 0-based ids. Lines starting with ``#`` are ignored.
    Errors name the offending line.
    """
    n = m = -1
    edges: list[Edge] = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if n < 0:
                if len(toks) != 2:
                    raise GraphError(f"{path}:{lineno}: expected 'N M' header")
                try:
                    n, m = int(toks[0]), int(toks[1])
                except ValueError:
                    raise GraphError(
                        f"{path}:{lineno}: bad header {line!r}") from None
                continue
            if len(toks) != 3:
                raise GraphError(f"{path}:{lineno}: expected 'u v w'")
            try:
                u, v = int(toks[0]), int(toks[1])
            except ValueError:
                raise GraphError(
                    f"{path}:{lineno}: bad endpoints {line!r}") from None
            w = _parse_weight(toks[2], path, lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(
                    f"{path}:{lineno}: endpoint out of range for n={n}")
            if w < 0 or not math.isfinite(w):
                raise GraphError(f"{path}:{lineno}: invalid weight {w!r}")
            edges.append((u, v, w))
    if n < 0:
        raise GraphError(f"{path}: missing 'N M' header")
    if len(edges) != m:
        raise GraphError(
            f"{path}: header declares {m} edges, file has {len(edges)}")
    return build_graph(edges, n, directed=True)


def load_dimacs(path: str) -> Graph:
    """Read a DIMACS-style ``.gr`` file: ``p sp N M`` then ``a u v w`` lines.

    Vertex ids are 1-based in the file and converted to 0-based.
    """
    n = -1
    edges: list[Edge] = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line[0] == "c":
                continue
            toks = line.split()
            if toks[0] == "p":
                if len(toks) != 4:
                    raise GraphError(f"{path}:{lineno}: bad problem line")
                n = int(toks[2])
            elif toks[0] == "a":
                if n < 0:
                    raise GraphError(
                        f"{path}:{lineno}: arc before problem line")
                if len(toks) != 4:
                    raise GraphError(f"{path}:{lineno}: expected 'a u v w'")
                u, v = int(toks[1]) - 1, int(toks[2]) - 1
                w = _parse_weight(toks[3], path, lineno)
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphError(
                        f"{path}:{lineno}: endpoint out of range for n={n}")
                edges.append((u, v, w))
            else:
                raise GraphError(
                    f"{path}:{lineno}: unknown record {toks[0]!r}")
    if n < 0:
        raise GraphError(f"{path}: missing problem line")
    return build_graph(edges, n, directed=True)
