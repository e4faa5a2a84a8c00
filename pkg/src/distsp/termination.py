"""Distributed quiescence detection over the message transport.

Two detectors share one state record:

* ``token_ring`` -- a white/black/red token circulates rank 0 -> 1 -> ...
  -> P-1 -> 0. Every rank keeps a persistent counter (updates received
  minus updates sent) and a colour; sending or receiving an update
  blackens the rank. A rank holding the token forwards it when idle,
  folding its colour (OR) and counter (+) into the token and whitening
  itself. Rank 0 opens a round by whitening itself and emitting a white,
  zero token; on return the round succeeds only if the token is white,
  the folded counters plus rank 0's own sum to zero, and rank 0 is white
  and idle. Success means provable quiescence: rank 0 sends a red token
  around the ring and everyone terminates with a clean verdict. A failed
  round is simply retried.

  Receiving blackens as well as sending (more conservative than the
  minimum sound rule, never less safe); each forwarder whitens itself
  after folding, otherwise no round could ever report all-white.

* ``count_heuristic`` -- a rank self-terminates after
  ``P * max(1, n_interedges)`` consecutive empty polls. Cheap, quiet, and
  unsound: a sufficiently delayed update arrives after the receiver gave
  up. Its verdicts are never marked clean and every run is checked
  against the oracle downstream.

* ``count_heuristic_literal`` -- trips once the *total* number of received
  updates reaches ``P * n_interedges``, so the busiest ranks stop first
  and zero-inter-edge ranks stop immediately. Kept for studying the rule
  as published; do not use it for anything else.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ProtocolError
from .graph import Partition
from .transport import RED, TOKEN, Endpoint

WHITE = 0
BLACK = 1

TOKEN_RING = "token_ring"
COUNT_HEURISTIC = "count_heuristic"
COUNT_HEURISTIC_LITERAL = "count_heuristic_literal"
TERMINATION_MODES = (TOKEN_RING, COUNT_HEURISTIC, COUNT_HEURISTIC_LITERAL)


@dataclass(frozen=True)
class TermVerdict:
    terminated: bool
    clean: bool


class TermState:
    """Per-rank detector state; lives inside the engine's process state."""

    __slots__ = ("mode", "color", "counter", "received", "idle_polls",
                 "holds_token", "token_color", "token_count", "red_seen",
                 "round_active")

    def __init__(self, mode: str = TOKEN_RING):
        if mode not in TERMINATION_MODES:
            raise ValueError(f"unknown termination mode {mode!r}")
        self.mode = mode
        self.color = WHITE
        self.counter = 0
        self.received = 0
        self.idle_polls = 0
        self.holds_token = False
        self.token_color = WHITE
        self.token_count = 0
        self.red_seen = False
        self.round_active = False


def on_send(ts: TermState) -> TermState:
    """Bookkeeping for one outgoing distance update."""
    ts.color = BLACK
    ts.counter -= 1
    return ts


def on_recv(ts: TermState) -> TermState:
    """Bookkeeping for one received distance update."""
    ts.color = BLACK
    ts.counter += 1
    ts.received += 1
    ts.idle_polls = 0
    return ts


def receive_token(ts: TermState, color: int, count: int) -> None:
    if ts.red_seen:
        raise ProtocolError("ring token arrived after the red announcement")
    if ts.holds_token:
        raise ProtocolError("second ring token arrived while one is held")
    ts.holds_token = True
    ts.token_color = color
    ts.token_count = count


def receive_red(ts: TermState) -> None:
    if ts.red_seen:
        raise ProtocolError("duplicate red token")
    ts.red_seen = True


def red_received(ts: TermState, rank: int, n_parts: int,
                 ep: Endpoint) -> TermVerdict:
    """Forward the red announcement along the ring and terminate cleanly.

    Rank 0 originated the red token, so the last rank does not wrap it
    around.
    """
    nxt = rank + 1
    if nxt < n_parts:
        ep.send(nxt, (RED, 0, 0, rank))
    return TermVerdict(True, True)


def token_step(ts: TermState, rank: int, n_parts: int, ep: Endpoint,
               is_idle: bool) -> TermVerdict | None:
    """One detector quantum of the token-ring protocol.

    Returns a clean verdict at rank 0 when a round proves quiescence;
    other ranks terminate via the red token (see :func:`red_received`).
    """
    if ts.mode != TOKEN_RING:
        raise ProtocolError("token_step called outside token_ring mode")
    if n_parts == 1:
        if is_idle and ts.color == WHITE and ts.counter == 0:
            return TermVerdict(True, True)
        ts.color = WHITE
        return None
    if rank == 0:
        if ts.holds_token:
            ts.holds_token = False
            ts.round_active = False
            if (is_idle and ts.token_color == WHITE and ts.color == WHITE
                    and ts.token_count + ts.counter == 0):
                ep.send(1, (RED, 0, 0, rank))
                return TermVerdict(True, True)
            return None
        if not ts.round_active and is_idle:
            ts.color = WHITE
            ts.round_active = True
            ep.send(1, (TOKEN, WHITE, 0, rank))
        return None
    if ts.holds_token and is_idle:
        color = BLACK if BLACK in (ts.color, ts.token_color) else WHITE
        count = ts.token_count + ts.counter
        ts.color = WHITE
        ts.holds_token = False
        ep.send((rank + 1) % n_parts, (TOKEN, color, count, rank))
    return None


def heuristic_step(ts: TermState, part: Partition,
                   n_parts: int) -> TermVerdict | None:
    """One detector quantum of the count/timeout heuristic."""
    if ts.mode == COUNT_HEURISTIC:
        ts.idle_polls += 1
        if ts.idle_polls >= n_parts * max(1, part.n_interedges):
            return TermVerdict(True, False)
        return None
    if ts.mode == COUNT_HEURISTIC_LITERAL:
        if ts.received >= n_parts * part.n_interedges:
            return TermVerdict(True, False)
        return None
    raise ProtocolError("heuristic_step called in token_ring mode")
