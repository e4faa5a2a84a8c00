"""Distributed single-source shortest paths over asynchronous messaging.

Per-rank Dijkstra with cross-rank distance updates, triangle-based edge
pruning for idle ranks, and two termination detectors (a sound token ring
and an unsound count heuristic), all runnable on a deterministic
discrete-event simulator or on one thread per rank, and verifiable
against a sequential oracle.
"""

from .bench import (BenchPlan, PlanCell, RunReport, SummaryRow, load_plan,
                    read_reports, run_experiment, summarize, write_reports)
from .driver import (VERDICT_CLEAN, VERDICT_HEURISTIC, VERDICT_TICK_CAP,
                     RunConfig, RunResult, run_sssp)
from .engine import EngineConfig, ProcState, gather_distances
from .errors import (BenchError, GraphError, ProtocolError,
                     TerminationSafetyError)
from .generate import GenSpec, default_source, generate_rmat
from .graph import (Graph, Partition, PartitionLayout, build_graph,
                    graph_from_partitions, load_dimacs, load_edgelist, owner,
                    partition_graph, save_edgelist)
from .oracle import (INF, OracleResult, bellman_ford_seq, dijkstra_seq,
                     distances_equal)
from .pruning import PruneState, prune_full, prune_step
from .termination import (COUNT_HEURISTIC, COUNT_HEURISTIC_LITERAL,
                          TERMINATION_MODES, TOKEN_RING, TermState,
                          TermVerdict, heuristic_step, on_recv, on_send,
                          token_step)
from .transport import (MODE_SIM, MODE_THREADS, RED, TOKEN, UPDATE, Endpoint,
                        SimOutcome, SimTransport, ThreadTransport,
                        TransportConfig, run_simulation)

__version__ = "0.1.0"

__all__ = [
    "BenchError", "BenchPlan", "COUNT_HEURISTIC", "COUNT_HEURISTIC_LITERAL",
    "EngineConfig", "Endpoint", "GenSpec", "Graph", "GraphError", "INF",
    "MODE_SIM", "MODE_THREADS", "OracleResult", "Partition",
    "PartitionLayout", "PlanCell", "ProcState", "ProtocolError",
    "PruneState", "RED", "RunConfig", "RunReport", "RunResult", "SimOutcome",
    "SimTransport", "SummaryRow", "TERMINATION_MODES", "TOKEN", "TOKEN_RING",
    "TermState", "TermVerdict", "TerminationSafetyError", "ThreadTransport",
    "TransportConfig", "UPDATE", "VERDICT_CLEAN", "VERDICT_HEURISTIC",
    "VERDICT_TICK_CAP", "bellman_ford_seq", "build_graph", "default_source",
    "dijkstra_seq", "distances_equal", "gather_distances", "generate_rmat",
    "graph_from_partitions", "heuristic_step", "load_dimacs", "load_edgelist",
    "load_plan", "on_recv", "on_send", "owner", "partition_graph",
    "prune_full", "prune_step", "read_reports", "run_experiment", "run_sssp",
    "run_simulation", "save_edgelist", "summarize", "token_step",
    "write_reports",
]
