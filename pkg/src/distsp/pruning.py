"""Triangle-based deletion of edges that cannot lie on any shortest path.

Within one partition, an out-edge (u, b) is dominated when another neighbour
a of u closes the triangle locally with ``w(u, b) > w(u, a) + w(a, b)``; the
heavy edge is deleted and every path through it is strictly improved by the
detour. The inequality is strict, so at least one optimal path always
survives. Only locally witnessed triangles count: u and a must be owned by
the partition, while b may be a ghost vertex.

The scan is resumable: an idle process runs it in small budgeted increments
between transport polls and gets the same final edge set as a single
uninterrupted pass.
"""

from __future__ import annotations

from .graph import Partition

# A vertex scan may touch far more neighbour pairs than closed triangles
# (budget only counts the latter); this bounds the free scanning per call.
_SCAN_FACTOR = 32
_SCAN_MIN = 256


class PruneState:
    """Cursor, per-vertex snapshot, and bookkeeping for a pruning pass.

    ``vertex_idx`` indexes the partition's owned vertices; ``pair_idx``
    enumerates ordered pairs of adjacency positions of the vertex under
    scan. Deletions take effect immediately: the owning adjacency list is
    rewritten when the vertex scan completes, and deleted edges stop
    serving as triangle midpoints for later vertices.
    """

    __slots__ = ("vertex_idx", "pair_idx", "removed", "done",
                 "_entries", "_alive", "_minw")

    def __init__(self) -> None:
        self.vertex_idx = 0
        self.pair_idx = 0
        self.removed = 0
        self.done = False
        self._entries: list[tuple[int, int | float]] | None = None
        self._alive: list[bool] | None = None
        self._minw: list[dict[int, int | float]] | None = None

    def _ensure_minw(self, part: Partition) -> list[dict[int, int | float]]:
        if self._minw is None:
            minw = []
            for lst in part.local_adj:
                d: dict[int, int | float] = {}
                for v, w in lst:
                    old = d.get(v)
                    if old is None or w < old:
                        d[v] = w
                minw.append(d)
            self._minw = minw
        return self._minw

    def _commit_vertex(self, part: Partition) -> None:
        i = self.vertex_idx
        entries = self._entries
        alive = self._alive
        if entries is not None and not all(alive):
            kept = [e for e, a in zip(entries, alive) if a]
            lo, hi = part.lo, part.hi
            for (v, _w), a in zip(entries, alive):
                if not a and not lo <= v < hi:
                    part.n_interedges -= 1
            self.removed += len(entries) - len(kept)
            part.local_adj[i] = kept
            d: dict[int, int | float] = {}
            for v, w in kept:
                old = d.get(v)
                if old is None or w < old:
                    d[v] = w
            self._minw[i] = d
        self._entries = None
        self._alive = None
        self.pair_idx = 0
        self.vertex_idx = i + 1


def prune_step(part: Partition, st: PruneState, budget: int) -> PruneState:
    """Advance the pruning scan by at most ``budget`` closed triangles.

    Neighbour pairs whose triangle edge (a, b) is absent from the local
    subgraph consume no budget. Returns ``st`` (mutated in place); a
    finished state is returned unchanged.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    if st.done:
        return st
    minw = st._ensure_minw(part)
    local_adj = part.local_adj
    n_owned = len(local_adj)
    lo, hi = part.lo, part.hi
    scan_left = max(_SCAN_MIN, budget * _SCAN_FACTOR)

    while scan_left > 0:
        if st.vertex_idx >= n_owned:
            st.done = True
            return st
        if st._entries is None:
            current = local_adj[st.vertex_idx]
            if len(current) < 2:
                st.vertex_idx += 1
                continue
            st._entries = list(current)
            st._alive = [True] * len(current)
            st.pair_idx = 0
        entries = st._entries
        alive = st._alive
        span = len(entries)
        total = span * (span - 1)
        k = st.pair_idx
        while k < total and scan_left > 0:
            a, r = divmod(k, span - 1)
            b = r if r < a else r + 1
            if alive[a] and alive[b]:
                va, wa = entries[a]
                vb, wb = entries[b]
                if lo <= va < hi:
                    w_mid = minw[va - lo].get(vb)
                    if w_mid is not None:
                        if budget == 0:
                            st.pair_idx = k
                            return st
                        budget -= 1
                        if wb > wa + w_mid:
                            alive[b] = False
            scan_left -= 1
            k += 1
        st.pair_idx = k
        if k >= total:
            st._commit_vertex(part)

    if st.vertex_idx >= n_owned and st._entries is None:
        st.done = True
    return st


def prune_full(part: Partition) -> tuple[Partition, int]:
    """Run the pruning scan to completion on one partition.

    Mutates the partition's adjacency in place and returns it along with
    the number of deleted edges.
    """
    st = PruneState()
    while not st.done:
        prune_step(part, st, 1 << 30)
    return part, st.removed
