import pytest

from distsp import (COUNT_HEURISTIC, MODE_THREADS, RunConfig, TOKEN_RING,
                    build_graph, dijkstra_seq, distances_equal, run_sssp)
from distsp.bench import report_for
from distsp.driver import default_tick_cap
from conftest import random_graph


class TestThreadedMode:
    def test_token_ring_clean_and_exact(self):
        g = random_graph(50, n=64, m=512)
        oracle = dijkstra_seq(g, 0)
        cfg = RunConfig(parts=2, term_mode=TOKEN_RING, mode=MODE_THREADS,
                        seed=0)
        res = run_sssp(g, 0, cfg)
        assert res.verdict == "clean"
        assert distances_equal(res.dist, oracle.dist)
        assert isinstance(res.wall, float)

    def test_mteps_reported_for_threaded_runs(self):
        g = random_graph(51, n=64, m=512)
        oracle = dijkstra_seq(g, 0)
        cfg = RunConfig(parts=2, mode=MODE_THREADS, seed=0)
        res = run_sssp(g, 0, cfg)
        report = report_for(res, oracle, "g", g, 2, TOKEN_RING, 0,
                            MODE_THREADS)
        assert report.mteps is not None and report.mteps > 0

    def test_heuristic_in_threads_terminates(self):
        g = random_graph(52, n=32, m=128)
        cfg = RunConfig(parts=2, term_mode=COUNT_HEURISTIC,
                        mode=MODE_THREADS, seed=0)
        res = run_sssp(g, 0, cfg)
        assert res.verdict in ("heuristic", "tick_cap")

    def test_expired_wall_cap_reports_nontermination(self):
        g = random_graph(56, n=64, m=512)
        cfg = RunConfig(parts=2, mode=MODE_THREADS, seed=0, wall_cap=0.0)
        res = run_sssp(g, 0, cfg)
        assert res.verdict == "tick_cap"

    def test_threaded_runs_repeatedly_clean(self):
        # shake out scheduling races: many short runs across rank counts
        for i in range(10):
            g = random_graph(70 + i, n=48, m=400)
            oracle = dijkstra_seq(g, 0)
            cfg = RunConfig(parts=(i % 4) + 1, mode=MODE_THREADS, seed=i)
            res = run_sssp(g, 0, cfg)
            assert res.verdict == "clean", i
            assert distances_equal(res.dist, oracle.dist), i


class TestDegenerateGraphs:
    def test_isolated_source_everyone_prunes_to_completion(self):
        from distsp import INF, build_graph
        g = build_graph([(1, 2, 3), (2, 3, 1)], 8)
        res = run_sssp(g, 0, RunConfig(parts=4, seed=0))
        assert res.verdict == "clean"
        assert res.dist == [0] + [INF] * 7

    def test_single_vertex_graph(self):
        from distsp import build_graph
        g = build_graph([], 1)
        res = run_sssp(g, 0, RunConfig(parts=1, seed=0))
        assert res.verdict == "clean"
        assert res.dist == [0]

    def test_edgeless_graph_multiple_parts(self):
        from distsp import INF, build_graph
        g = build_graph([], 6)
        res = run_sssp(g, 2, RunConfig(parts=3, seed=1))
        assert res.verdict == "clean"
        assert res.dist == [INF, INF, 0, INF, INF, INF]

    def test_same_seed_reproduces_full_result(self):
        g = random_graph(60, n=64, m=600)
        a = run_sssp(g, 0, RunConfig(parts=4, seed=5))
        b = run_sssp(g, 0, RunConfig(parts=4, seed=5))
        assert a.dist == b.dist
        assert a.wall == b.wall
        assert a.updates_sent == b.updates_sent
        assert a.relax_attempts == b.relax_attempts


class TestTokenSafetyStress:
    def test_cascading_chain_with_long_delays(self):
        # each partition's distances depend on updates from the previous
        # one, so the computation ripples rank by rank while token rounds
        # race far ahead; the verdict must still only come at quiescence
        n = 32
        edges = [(v, v + 1, 1) for v in range(n - 1)]
        edges += [(v, min(n - 1, v + 9), 15) for v in range(0, n, 4)]
        g = build_graph(edges, n)
        oracle = dijkstra_seq(g, 0)
        for seed in range(100):
            cfg = RunConfig(parts=8, seed=seed, min_delay=1,
                            max_delay=3 + (seed % 48))
            res = run_sssp(g, 0, cfg)
            assert res.verdict == "clean", seed
            assert distances_equal(res.dist, oracle.dist), seed


class TestRunConfig:
    def test_source_out_of_range(self):
        from distsp import GraphError
        g = random_graph(53, n=8)
        with pytest.raises(GraphError):
            run_sssp(g, 8, RunConfig(parts=2))

    def test_unknown_mode(self):
        g = random_graph(53, n=8)
        with pytest.raises(ValueError):
            run_sssp(g, 0, RunConfig(parts=2, mode="sockets"))

    def test_tick_cap_grows_with_heuristic_window(self):
        g = random_graph(54, n=32, m=300)
        ring = default_tick_cap(g, RunConfig(parts=4), max_inter=100)
        heur = default_tick_cap(
            g, RunConfig(parts=4, term_mode=COUNT_HEURISTIC), max_inter=100)
        assert heur > ring

    def test_explicit_tick_cap_reports_nontermination(self):
        g = random_graph(55, n=48, m=400)
        res = run_sssp(g, 0, RunConfig(parts=4, seed=1, tick_cap=3))
        assert res.verdict == "tick_cap"
