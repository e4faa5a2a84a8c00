"""Per-rank state machine: local Dijkstra plus asynchronous ghost updates.

Each rank runs Dijkstra over its owned subgraph. Relaxing an edge whose
target lives on another rank sends that rank a distance update instead;
receiving an update re-seeds the local queue, so a vertex may be settled
more than once as better remote distances arrive. The rank that owns the
source starts working immediately; all others spend their idle start-up
time pruning edges until the first update activates them (pruning is not
resumed after that unless configured). An idle rank hands its quantum to
the termination detector.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .errors import ProtocolError
from .graph import Partition
from .pruning import PruneState, prune_step
from .termination import (BLACK, TOKEN_RING, TermState, TermVerdict,
                          heuristic_step, on_recv, receive_red, receive_token,
                          red_received, token_step)
from .transport import RED, TOKEN, UPDATE, Endpoint

INF = math.inf

PRUNING = "pruning"
WORKING = "working"
PROBING = "probing_termination"
TERMINATED = "terminated"


@dataclass
class EngineConfig:
    prune_budget: int = 64
    resume_pruning_when_idle: bool = False


class ProcState:
    """All state owned by one logical rank during a run."""

    __slots__ = ("part", "rank", "lo", "hi", "block", "n_parts", "dist", "pq",
                 "phase", "term", "prune", "msg_count", "sent_count",
                 "relax_attempts", "pop_order", "cfg", "terminated", "clean")

    def __init__(self, part: Partition, source: int,
                 term_mode: str = TOKEN_RING,
                 cfg: EngineConfig | None = None):
        layout = part.layout
        self.part = part
        self.rank = part.part_id
        self.lo = part.lo
        self.hi = part.hi
        self.block = layout.block
        self.n_parts = layout.n_parts
        self.dist: list[float] = [INF] * (part.hi - part.lo)
        self.pq: list[tuple[float, int]] = []
        self.term = TermState(term_mode)
        self.prune: PruneState | None = None
        self.msg_count = 0
        self.sent_count = 0
        self.relax_attempts = 0
        self.pop_order: list[int] = []
        self.cfg = cfg if cfg is not None else EngineConfig()
        self.terminated = False
        self.clean = False
        if part.lo <= source < part.hi:
            self.dist[source - part.lo] = 0
            self.pq.append((0, source))
            self.phase = WORKING
        else:
            self.phase = PRUNING

    # -- scheduler introspection -------------------------------------------

    def quiet(self) -> bool:
        """No queued work and no pruning left to run."""
        if self.pq:
            return False
        if self.phase == PRUNING and (self.prune is None or not self.prune.done):
            return False
        return True

    @property
    def holds_token(self) -> bool:
        return self.term.holds_token

    @property
    def net_received(self) -> int:
        return self.term.counter

    # -- the SP-engine proper ----------------------------------------------

    def absorb_messages(self, msgs: list) -> None:
        """Fold polled messages into local state.

        Improving updates re-seed the queue; stale ones still count toward
        ``msg_count``. Ring traffic is routed to the termination state.
        """
        lo, hi = self.lo, self.hi
        dist = self.dist
        term = self.term
        got_update = False
        for msg in msgs:
            kind = msg[0]
            if kind == UPDATE:
                v = msg[1]
                if not lo <= v < hi:
                    raise ProtocolError(
                        f"rank {self.rank} received an update for vertex {v} "
                        f"it does not own")
                self.msg_count += 1
                on_recv(term)
                got_update = True
                d = msg[2]
                i = v - lo
                if d < dist[i]:
                    dist[i] = d
                    heapq.heappush(self.pq, (d, v))
            elif kind == TOKEN:
                receive_token(term, msg[1], msg[2])
            elif kind == RED:
                receive_red(term)
            else:
                raise ProtocolError(f"unknown message kind {kind!r}")
        if got_update and self.phase in (PRUNING, PROBING):
            self.phase = WORKING

    def dijkstra_drain(self, ep: Endpoint) -> None:
        """Settle the local queue, relaxing owned edges and emitting updates.

        Every edge examination of a non-stale pop counts as one relaxation
        attempt. Ghost targets get one update per examination; receivers
        discard non-improving ones.
        """
        pq = self.pq
        if not pq:
            return
        dist = self.dist
        lo, hi, block = self.lo, self.hi, self.block
        local_adj = self.part.local_adj
        term = self.term
        rank = self.rank
        pop_order = self.pop_order
        heappop = heapq.heappop
        heappush = heapq.heappush
        send = ep.send
        relax = 0
        sent = 0
        while pq:
            d, u = heappop(pq)
            i = u - lo
            if d > dist[i]:
                continue
            pop_order.append(u)
            edges = local_adj[i]
            relax += len(edges)
            for v, w in edges:
                nd = d + w
                if lo <= v < hi:
                    j = v - lo
                    if nd < dist[j]:
                        dist[j] = nd
                        heappush(pq, (nd, v))
                else:
                    send(v // block, (UPDATE, v, nd, rank))
                    sent += 1
                    # keep in sync with termination.on_send
                    term.color = BLACK
                    term.counter -= 1
        self.relax_attempts += relax
        self.sent_count += sent

    def step(self, ep: Endpoint) -> None:
        """One scheduler quantum: poll, absorb, then work / prune / probe."""
        if self.terminated:
            raise ProtocolError(f"rank {self.rank} stepped after terminating")
        msgs = ep.poll()
        if msgs:
            self.absorb_messages(msgs)
            if self.term.red_seen:
                self._finish(
                    red_received(self.term, self.rank, self.n_parts, ep), ep)
                return
        if self.pq:
            self.dijkstra_drain(ep)
            return
        if self._should_prune():
            if self.prune is None:
                self.prune = PruneState()
            prune_step(self.part, self.prune, self.cfg.prune_budget)
            return
        if self.phase in (PRUNING, WORKING):
            self.phase = PROBING
        verdict = self._detector_step(ep)
        if verdict is not None:
            self._finish(verdict, ep)

    def _should_prune(self) -> bool:
        if self.phase == PRUNING:
            return self.prune is None or not self.prune.done
        if self.cfg.resume_pruning_when_idle:
            return self.prune is None or not self.prune.done
        return False

    def _detector_step(self, ep: Endpoint) -> TermVerdict | None:
        term = self.term
        if term.mode == TOKEN_RING:
            return token_step(term, self.rank, self.n_parts, ep, is_idle=True)
        return heuristic_step(term, self.part, self.n_parts)

    def _finish(self, verdict: TermVerdict, ep: Endpoint) -> None:
        if self.pq:
            raise ProtocolError(
                f"rank {self.rank} got a termination verdict with queued work")
        self.phase = TERMINATED
        self.terminated = True
        self.clean = verdict.clean
        ep.close()

    def pruned_edges(self) -> int:
        return self.prune.removed if self.prune is not None else 0

    def __repr__(self) -> str:
        return (f"ProcState(rank={self.rank}, phase={self.phase}, "
                f"pq={len(self.pq)}, msgs={self.msg_count})")


def gather_distances(procs: list[ProcState]) -> list[float]:
    """Concatenate owned distance slices into the global vector (rank order)."""
    out: list[float] = []
    for proc in sorted(procs, key=lambda p: p.rank):
        out.extend(proc.dist)
    return out


def write_distances(dist: list[float], stream) -> None:
    """Write one ``"v dist"`` line per vertex, with an INF sentinel."""
    for v, d in enumerate(dist):
        if d == INF:
            stream.write(f"{v} INF\n")
        else:
            stream.write(f"{v} {d}\n")
