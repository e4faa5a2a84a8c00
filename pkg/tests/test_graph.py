import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from distsp import (GraphError, PartitionLayout, build_graph,
                    graph_from_partitions, load_dimacs, load_edgelist, owner,
                    partition_graph, save_edgelist)
from conftest import random_graph


class TestBuildGraph:
    def test_undirected_materializes_both_arcs(self):
        g = build_graph([(0, 1, 5)], 2, directed=False)
        assert g.n_edges == 2
        assert g.adj[0] == [(1, 5)]
        assert g.adj[1] == [(0, 5)]

    def test_self_loop_dropped(self):
        g = build_graph([(0, 0, 3)], 1)
        assert g.n_edges == 0

    def test_parallel_edges_kept(self):
        g = build_graph([(0, 1, 2), (0, 1, 7)], 2, directed=True)
        assert g.adj[0] == [(1, 2), (1, 7)]
        assert g.n_edges == 2

    def test_edge_count_matches_adjacency(self):
        g = random_graph(1)
        assert g.n_edges == sum(len(lst) for lst in g.adj)

    @pytest.mark.parametrize("edges,n", [
        ([(0, 5, 1)], 2),
        ([(5, 0, 1)], 2),
        ([(-1, 0, 1)], 2),
    ])
    def test_endpoint_out_of_range(self, edges, n):
        with pytest.raises(GraphError):
            build_graph(edges, n)

    @pytest.mark.parametrize("w", [-1, -0.5, math.inf, math.nan])
    def test_bad_weight(self, w):
        with pytest.raises(GraphError):
            build_graph([(0, 1, w)], 2)


class TestOwner:
    def test_first_block(self):
        layout = PartitionLayout.create(10, 2)
        assert owner(layout, 4) == 0

    def test_second_block(self):
        layout = PartitionLayout.create(10, 2)
        assert owner(layout, 5) == 1

    def test_short_last_block(self):
        # blocks of 4: {0..3}, {4..7}, {8, 9}
        layout = PartitionLayout.create(10, 3)
        assert layout.block == 4
        assert [owner(layout, v) for v in range(10)] == \
            [0, 0, 0, 0, 1, 1, 1, 1, 2, 2]

    def test_out_of_range(self):
        layout = PartitionLayout.create(10, 2)
        with pytest.raises(GraphError):
            owner(layout, 10)

    @given(st.integers(1, 200), st.integers(1, 32))
    def test_owner_total_and_contiguous(self, n, p):
        if p > n:
            p = n
        layout = PartitionLayout.create(n, p)
        owners = [owner(layout, v) for v in range(n)]
        assert all(0 <= r < p for r in owners)
        assert owners == sorted(owners)
        covered = 0
        for rank in range(p):
            lo, hi = layout.owned_range(rank)
            assert owners[lo:hi] == [rank] * (hi - lo)
            covered += hi - lo
        assert covered == n


class TestPartitionGraph:
    def test_path_graph_two_parts(self):
        g = build_graph([(0, 1, 1), (1, 2, 1)], 3)
        parts = partition_graph(g, 2)
        p0, p1 = parts
        assert (p0.lo, p0.hi) == (0, 2)
        assert p0.local_adj == [[(1, 1)], [(2, 1)]]
        assert p0.n_interedges == 1
        assert (p1.lo, p1.hi) == (2, 3)
        assert p1.n_interedges == 0

    def test_single_partition_has_no_interedges(self):
        g = random_graph(2)
        part, = partition_graph(g, 1)
        assert part.n_interedges == 0
        assert part.n_local_edges() == g.n_edges

    def test_complete_digraph_singleton_blocks(self):
        edges = [(u, v, 1) for u in range(4) for v in range(4) if u != v]
        g = build_graph(edges, 4)
        parts = partition_graph(g, 4)
        assert all(p.n_interedges == 3 for p in parts)

    def test_p_out_of_range(self):
        g = random_graph(3, n=10)
        with pytest.raises(GraphError):
            partition_graph(g, 0)
        with pytest.raises(GraphError):
            partition_graph(g, 11)

    @given(st.integers(0, 10_000), st.integers(1, 17))
    @settings(max_examples=60, deadline=None)
    def test_partition_cover(self, seed, p):
        g = random_graph(seed, n=40)
        reassembled = graph_from_partitions(partition_graph(g, p))
        assert sorted(reassembled.edges()) == sorted(g.edges())

    @given(st.integers(0, 10_000), st.integers(1, 17))
    @settings(max_examples=60, deadline=None)
    def test_interedges_recomputed_independently(self, seed, p):
        g = random_graph(seed, n=40)
        for part in partition_graph(g, p):
            expected = sum(
                1 for lst in part.local_adj for v, _ in lst
                if owner(part.layout, v) != part.part_id)
            assert part.n_interedges == expected


class TestEdgeListIO:
    def test_load_minimal(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("2 1\n0 1 5\n")
        g = load_edgelist(str(path))
        assert g.n_vertices == 2
        assert list(g.edges()) == [(0, 1, 5)]

    def test_comments_ignored(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("# header comment\n2 1\n# mid comment\n0 1 5\n")
        assert load_edgelist(str(path)).n_edges == 1

    def test_round_trip_random_graph(self, tmp_path):
        g = random_graph(99, n=30, m=100)
        path = tmp_path / "g.txt"
        save_edgelist(g, str(path))
        g2 = load_edgelist(str(path))
        assert sorted(g2.edges()) == sorted(g.edges())
        assert g2.n_vertices == g.n_vertices

    def test_float_weights_round_trip(self, tmp_path):
        g = build_graph([(0, 1, 0.5), (1, 0, 2.25)], 2)
        path = tmp_path / "g.txt"
        save_edgelist(g, str(path))
        assert sorted(load_edgelist(str(path)).edges()) == sorted(g.edges())

    def test_out_of_range_endpoint_names_line(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("2 1\n0 5 1\n")
        with pytest.raises(GraphError, match=":2"):
            load_edgelist(str(path))

    def test_inconsistent_header(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("2 5\n0 1 1\n")
        with pytest.raises(GraphError, match="header"):
            load_edgelist(str(path))

    def test_garbage_line(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("2 1\n0 1\n")
        with pytest.raises(GraphError, match=":2"):
            load_edgelist(str(path))


class TestDimacs:
    def test_basic_gr_file(self, tmp_path):
        path = tmp_path / "g.gr"
        path.write_text(
            "c road fragment\np sp 3 2\na 1 2 4\na 2 3 6\n")
        g = load_dimacs(str(path))
        assert g.n_vertices == 3
        assert sorted(g.edges()) == [(0, 1, 4), (1, 2, 6)]

    def test_arc_before_header(self, tmp_path):
        path = tmp_path / "g.gr"
        path.write_text("a 1 2 4\n")
        with pytest.raises(GraphError, match="problem line"):
            load_dimacs(str(path))
