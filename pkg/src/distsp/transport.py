"""Asynchronous point-to-point messaging between logical ranks.

Two interchangeable backends sit behind the same :class:`Endpoint` surface:

* :class:`SimTransport` -- a deterministic discrete-event simulation. Sends
  never block; a message becomes deliverable ``delay`` ticks after it was
  sent, where distance updates draw the delay uniformly from
  ``[min_delay, max_delay]`` and ring tokens always travel at ``min_delay``
  so a ring circuit takes a predictable number of ticks.
* :class:`ThreadTransport` -- one OS thread per rank with shared queues;
  delivery is immediate from the transport's view (unbounded but finite
  from the receiver's).

Both guarantee reliable, unduplicated, FIFO-per-(src, dst) delivery; the
simulator floors a message's delivery tick at the channel's last scheduled
delivery so a short delay draw can never overtake an earlier send.

Messages travel as plain 4-tuples to keep allocation cheap:

* ``(UPDATE, vertex, distance, src)`` -- a tentative-distance update,
* ``(TOKEN, color, count, src)``     -- a termination-ring token,
* ``(RED, 0, 0, src)``               -- the termination announcement.
"""

from __future__ import annotations

import heapq
import random
import threading
from collections import Counter
from dataclasses import dataclass, field

from .errors import ProtocolError, TerminationSafetyError

UPDATE = 0
TOKEN = 1
RED = 2

Message = tuple[int, int, int | float, int]

MODE_SIM = "sim"
MODE_THREADS = "threads"


@dataclass
class TransportConfig:
    n_parts: int
    mode: str = MODE_SIM
    min_delay: int = 1
    max_delay: int = 4
    seed: int = 0
    tick_cap: int = 100_000

    def __post_init__(self) -> None:
        if self.n_parts < 1:
            raise ValueError("n_parts must be >= 1")
        if self.min_delay < 1 or self.max_delay < self.min_delay:
            raise ValueError(
                f"need 1 <= min_delay <= max_delay, got "
                f"({self.min_delay}, {self.max_delay})")
        if self.mode not in (MODE_SIM, MODE_THREADS):
            raise ValueError(f"unknown transport mode {self.mode!r}")


class Endpoint:
    """A rank's handle for sending and polling; one per rank per run."""

    __slots__ = ("rank", "_transport")

    def __init__(self, rank: int, transport):
        self.rank = rank
        self._transport = transport

    def send(self, dst: int, msg: Message) -> None:
        self._transport.send(self.rank, dst, msg)

    def poll(self) -> list[Message]:
        return self._transport.poll(self.rank)

    def close(self) -> None:
        self._transport.close(self.rank)


class SimTransport:
    """Deterministic simulated message layer; see module docstring."""

    def __init__(self, cfg: TransportConfig):
        self.n_parts = cfg.n_parts
        self.min_delay = cfg.min_delay
        self.max_delay = cfg.max_delay
        self.rng = random.Random(cfg.seed)
        self.now = 0
        self._events: list[tuple[int, int, int, Message]] = []
        self._seq = 0
        self._channel_floor: dict[tuple[int, int], int] = {}
        self._inbox: list[list[Message]] = [[] for _ in range(cfg.n_parts)]
        self._closed = [False] * cfg.n_parts
        self.sent_per_channel: Counter = Counter()
        self.received_per_channel: Counter = Counter()
        self.updates_sent = 0
        self.updates_polled = 0
        self.tokens_sent = 0
        self.tokens_polled = 0

    def send(self, src: int, dst: int, msg: Message) -> None:
        if self._closed[src]:
            raise ProtocolError(f"rank {src} sent a message after terminating")
        if not 0 <= dst < self.n_parts:
            raise ProtocolError(f"send to unknown rank {dst}")
        if msg[3] != src:
            raise ProtocolError(
                f"rank {src} sent a message stamped for rank {msg[3]}")
        kind = msg[0]
        if kind == UPDATE:
            delay = self.rng.randint(self.min_delay, self.max_delay)
            self.updates_sent += 1
        else:
            if dst == src:
                raise ProtocolError("ring token addressed to its own rank")
            delay = self.min_delay
            self.tokens_sent += 1
        key = (src, dst)
        deliver = self.now + delay
        floor = self._channel_floor.get(key, 0)
        if deliver < floor:
            deliver = floor
        self._channel_floor[key] = deliver
        self._seq += 1
        heapq.heappush(self._events, (deliver, self._seq, dst, msg))
        self.sent_per_channel[key] += 1

    def deliver_due(self) -> None:
        events = self._events
        while events and events[0][0] <= self.now:
            _, _, dst, msg = heapq.heappop(events)
            self._inbox[dst].append(msg)

    def poll(self, rank: int) -> list[Message]:
        box = self._inbox[rank]
        if not box:
            return []
        self._inbox[rank] = []
        for msg in box:
            self.received_per_channel[(msg[3], rank)] += 1
            if msg[0] == UPDATE:
                self.updates_polled += 1
            else:
                self.tokens_polled += 1
        return box

    def close(self, rank: int) -> None:
        self._closed[rank] = True

    @property
    def in_flight_updates(self) -> int:
        return self.updates_sent - self.updates_polled

    @property
    def in_flight_tokens(self) -> int:
        return self.tokens_sent - self.tokens_polled

    def channel_ledger_balanced(self) -> bool:
        return all(self.received_per_channel.get(k, 0) == v
                   for k, v in self.sent_per_channel.items())


class ThreadTransport:
    """Thread-safe message layer for one-thread-per-rank runs."""

    def __init__(self, n_parts: int):
        self.n_parts = n_parts
        self._lock = threading.Lock()
        self._inbox: list[list[Message]] = [[] for _ in range(n_parts)]
        self._closed = [False] * n_parts
        self.updates_sent = 0
        self.updates_polled = 0

    def send(self, src: int, dst: int, msg: Message) -> None:
        if self._closed[src]:
            raise ProtocolError(f"rank {src} sent a message after terminating")
        if not 0 <= dst < self.n_parts:
            raise ProtocolError(f"send to unknown rank {dst}")
        with self._lock:
            self._inbox[dst].append(msg)
            if msg[0] == UPDATE:
                self.updates_sent += 1

    def poll(self, rank: int) -> list[Message]:
        with self._lock:
            box = self._inbox[rank]
            if not box:
                return []
            self._inbox[rank] = []
            for msg in box:
                if msg[0] == UPDATE:
                    self.updates_polled += 1
        return box

    def close(self, rank: int) -> None:
        self._closed[rank] = True

    @property
    def in_flight_updates(self) -> int:
        with self._lock:
            return self.updates_sent - self.updates_polled


@dataclass
class SimOutcome:
    """What the scheduler observed during one simulated run."""

    ticks: int
    capped: bool
    first_quiet_tick: int | None = None
    first_rest_tick: int | None = None
    clean_verdict_tick: int | None = None
    end_tick: int | None = None
    updates_sent: int = 0
    updates_polled: int = 0
    tokens_sent: int = 0
    channel_balanced: bool = True
    per_proc_clean: list[bool] = field(default_factory=list)


def run_simulation(procs, cfg: TransportConfig,
                   transport: SimTransport | None = None) -> SimOutcome:
    """Round-robin cooperative scheduler over simulated transport.

    Each tick delivers due messages and then steps every non-terminated
    process once, in rank order. Runs until every process terminates or
    ``cfg.tick_cap`` is reached. Fully deterministic for fixed inputs and
    seed.

    A process must expose ``step(endpoint)`` and ``terminated``; the
    optional ``clean``, ``quiet()``, ``holds_token`` and ``net_received``
    attributes feed the scheduler's safety checks:

    * when a process terminates with a clean verdict, no distance update
      may be in flight and every process must be quiet
      (:class:`TerminationSafetyError` otherwise);
    * the per-rank receive/send counters must always sum to minus the
      number of in-flight updates.
    """
    tr = transport if transport is not None else SimTransport(cfg)
    eps = [Endpoint(r, tr) for r in range(cfg.n_parts)]
    introspective = all(hasattr(p, "quiet") for p in procs)
    counters = all(hasattr(p, "net_received") for p in procs)

    first_quiet: int | None = None
    first_rest: int | None = None
    clean_tick: int | None = None
    end_tick: int | None = None
    tick = 0
    capped = False
    while True:
        if all(p.terminated for p in procs):
            end_tick = tick - 1 if tick else 0
            break
        if tick >= cfg.tick_cap:
            capped = True
            break
        tr.now = tick
        tr.deliver_due()
        for rank, proc in enumerate(procs):
            if proc.terminated:
                continue
            proc.step(eps[rank])
            if proc.terminated and getattr(proc, "clean", False):
                if clean_tick is None:
                    clean_tick = tick
                _assert_safe_verdict(tr, procs, rank, introspective)
        if counters:
            total = sum(p.net_received for p in procs)
            if total != tr.updates_polled - tr.updates_sent:
                raise ProtocolError(
                    f"counter conservation broken at tick {tick}: "
                    f"sum={total}, in flight={tr.in_flight_updates}")
        if introspective and first_quiet is None and _quiet_base(tr, procs):
            first_quiet = tick
        if (introspective and first_quiet is not None and first_rest is None
                and clean_tick is None and _at_rest(tr, procs)):
            first_rest = tick
        tick += 1

    return SimOutcome(
        ticks=tick,
        capped=capped,
        first_quiet_tick=first_quiet,
        first_rest_tick=first_rest,
        clean_verdict_tick=clean_tick,
        end_tick=end_tick,
        updates_sent=tr.updates_sent,
        updates_polled=tr.updates_polled,
        tokens_sent=tr.tokens_sent,
        channel_balanced=tr.channel_ledger_balanced(),
        per_proc_clean=[bool(getattr(p, "clean", False)) for p in procs],
    )


def _quiet_base(tr: SimTransport, procs) -> bool:
    return tr.in_flight_updates == 0 and all(p.quiet() for p in procs)


def _at_rest(tr: SimTransport, procs) -> bool:
    """Quiet plus no ring traffic pending: only a fresh round can follow."""
    if not _quiet_base(tr, procs):
        return False
    if tr.in_flight_tokens != 0:
        return False
    return not any(getattr(p, "holds_token", False) for p in procs)


def _assert_safe_verdict(tr: SimTransport, procs, rank: int,
                         introspective: bool) -> None:
    if tr.in_flight_updates != 0:
        raise TerminationSafetyError(
            f"rank {rank} reported clean termination with "
            f"{tr.in_flight_updates} update(s) in flight")
    if introspective:
        for other in procs:
            if not other.quiet():
                raise TerminationSafetyError(
                    f"rank {rank} reported clean termination while another "
                    f"rank still has queued work")
