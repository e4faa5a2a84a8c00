import random

import pytest

from distsp import (PruneState, build_graph, dijkstra_seq, distances_equal,
                    graph_from_partitions, owner, partition_graph, prune_full,
                    prune_step)
from conftest import random_graph


def one_partition(g):
    part, = partition_graph(g, 1)
    return part


class TestPruneStep:
    def test_dominated_edge_deleted(self):
        # u=0, a=1, b=2: w(u,b)=5 > w(u,a)=1 + w(a,b)=1
        g = build_graph([(0, 1, 1), (0, 2, 5), (1, 2, 1)], 3)
        part = one_partition(g)
        st = prune_step(part, PruneState(), budget=100)
        assert st.removed == 1
        assert (2, 5) not in part.local_adj[0]
        assert (1, 1) in part.local_adj[0]
        before = dijkstra_seq(g, 0).dist
        after = dijkstra_seq(graph_from_partitions([part]), 0).dist
        assert before == after

    def test_exact_equality_is_kept(self):
        # 2 == 1 + 1: strict inequality, nothing deleted
        g = build_graph([(0, 1, 1), (0, 2, 2), (1, 2, 1)], 3)
        part = one_partition(g)
        st = prune_step(part, PruneState(), budget=100)
        assert st.removed == 0

    def test_star_graph_finishes_without_budget(self):
        edges = [(0, v, 1) for v in range(1, 12)]
        g = build_graph(edges, 12)
        part = one_partition(g)
        st = prune_step(part, PruneState(), budget=1)
        assert st.removed == 0
        assert st.done

    def test_budget_must_be_positive(self):
        part = one_partition(random_graph(5))
        with pytest.raises(ValueError):
            prune_step(part, PruneState(), budget=0)

    def test_done_state_is_noop(self):
        part = one_partition(random_graph(6))
        _, removed = prune_full(part)
        st = PruneState()
        st.done = True
        before = part.n_local_edges()
        prune_step(part, st, budget=10)
        assert part.n_local_edges() == before


class TestPruneFull:
    def test_unit_weight_complete_digraph_untouched(self):
        edges = [(u, v, 1) for u in range(4) for v in range(4) if u != v]
        g = build_graph(edges, 4)
        part, removed = prune_full(one_partition(g))
        assert removed == 0

    def test_heavy_chord_removed(self):
        edges = [(u, v, 1) for u in range(4) for v in range(4) if u != v]
        edges = [(u, v, 5 if (u, v) == (0, 2) else w) for u, v, w in edges]
        g = build_graph(edges, 4)
        part, removed = prune_full(one_partition(g))
        assert removed == 1
        assert all(v != 2 for v, _ in part.local_adj[0])

    def test_distances_preserved_on_random_graph(self):
        g = random_graph(17, n=60, m=1000)
        parts = partition_graph(g, 3)
        for part in parts:
            prune_full(part)
        pruned = graph_from_partitions(parts)
        assert pruned.n_edges < g.n_edges
        for s in range(0, 60, 7):
            assert distances_equal(dijkstra_seq(g, s).dist,
                                   dijkstra_seq(pruned, s).dist)

    def test_second_pass_removes_nothing(self):
        for seed in range(10):
            part = one_partition(random_graph(seed, n=40, m=500))
            _, first = prune_full(part)
            _, second = prune_full(part)
            assert second == 0

    def test_interedge_count_stays_consistent(self):
        g = random_graph(23, n=48, m=700)
        for part in partition_graph(g, 4):
            prune_full(part)
            expected = sum(
                1 for lst in part.local_adj for v, _ in lst
                if owner(part.layout, v) != part.part_id)
            assert part.n_interedges == expected


class TestResumability:
    @pytest.mark.parametrize("seed", range(6))
    def test_any_budget_schedule_matches_full_pass(self, seed):
        g = random_graph(seed, n=40, m=600)
        part_a = one_partition(g)
        part_b = one_partition(g)

        _, removed_full = prune_full(part_a)

        rng = random.Random(seed)
        st = PruneState()
        while not st.done:
            prune_step(part_b, st, budget=rng.randrange(1, 9))
        assert st.removed == removed_full
        assert part_b.local_adj == part_a.local_adj

    def test_removed_is_monotone(self):
        part = one_partition(random_graph(41, n=40, m=600))
        st = PruneState()
        last = 0
        while not st.done:
            prune_step(part, st, budget=3)
            assert st.removed >= last
            last = st.removed


def test_ghost_edge_deleted_with_local_witness():
    # rank 0 owns {0, 1}; 0->2 crosses into rank 1 but the witnessing
    # triangle 0->1->2 is entirely stored on rank 0
    g = build_graph([(0, 1, 1), (1, 2, 1), (0, 2, 9)], 4)
    parts = partition_graph(g, 2)
    part0 = parts[0]
    assert part0.n_interedges == 2
    _, removed = prune_full(part0)
    assert removed == 1
    assert part0.n_interedges == 1
    before = dijkstra_seq(g, 0).dist
    after = dijkstra_seq(graph_from_partitions(parts), 0).dist
    assert before == after


def test_no_cross_partition_witness():
    # the only witnessing triangle for 0->3 has its midpoint edge 2->3
    # stored on rank 1, invisible to rank 0, so the heavy edge survives
    g = build_graph([(0, 2, 1), (2, 3, 1), (0, 3, 9)], 4)
    parts = partition_graph(g, 2)
    removed_total = sum(prune_full(p)[1] for p in parts)
    assert removed_total == 0
