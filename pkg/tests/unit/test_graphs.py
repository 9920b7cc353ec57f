"""
Tests for graph representation, edge-list ingestion and generators.
"""
from math import comb

import networkx as nx
import numpy as np
import pytest

from embedding_core.core.exceptions import GraphFormatError, InvalidArgumentError
from embedding_core.core.graphs import (
    DegreeSequence,
    EdgeListOptions,
    GraphBuilder,
    chung_lu,
    clique_union,
    erdos_renyi,
    graph_from_dense,
    graph_stats,
    load_edge_list,
    preferential_attachment,
    save_edge_list,
    toy_graph,
)


class TestGraphBuilder:
    """Builder validation and normalization."""

    def test_duplicates_and_reversed_pairs_collapse(self):
        """Repeated and reversed pairs become one undirected edge."""
        graph = (
            GraphBuilder()
            .with_nodes(3)
            .add_edges([(0, 1), (1, 0), (0, 1), (1, 2)])
            .build()
        )
        assert graph.num_edges == 2
        assert graph.edges() == {(0, 1), (1, 2)}
        assert graph.validate().is_valid

    def test_self_loop_rejected_by_default(self):
        with pytest.raises(InvalidArgumentError, match="Self-loops"):
            GraphBuilder().with_nodes(2).add_edge(1, 1).build()

    def test_self_loop_dropped_when_requested(self):
        graph = (
            GraphBuilder()
            .with_nodes(2)
            .dropping_self_loops()
            .add_edges([(0, 0), (0, 1)])
            .build()
        )
        assert graph.num_self_loops == 0
        assert graph.num_edges == 1

    def test_endpoint_out_of_range(self):
        with pytest.raises(InvalidArgumentError, match="outside node range"):
            GraphBuilder().with_nodes(2).add_edge(0, 2).build()

    def test_node_count_required(self):
        with pytest.raises(ValueError):
            GraphBuilder().add_edge(0, 1).build()

    def test_builder_resets_after_build(self):
        builder = GraphBuilder().with_nodes(3).add_edge(0, 1)
        builder.build()
        assert builder.with_nodes(2).build().num_edges == 0

    def test_from_dense_requires_symmetry(self):
        with pytest.raises(InvalidArgumentError, match="symmetric"):
            graph_from_dense(np.array([[0, 1], [0, 0]]))


class TestGraph:
    """Adjacency queries."""

    def test_neighbors_sorted(self, make_graph):
        graph = make_graph(4, [(0, 3), (0, 1), (0, 2)])
        assert graph.neighbors(0).tolist() == [1, 2, 3]
        assert graph.has_edge(3, 0)
        assert not graph.has_edge(1, 2)

    def test_degrees(self, two_triangles):
        assert two_triangles.degrees().tolist() == [2] * 6
        assert two_triangles.max_degree == 2

    def test_loopless_adjacency_strips_diagonal(self, looped_cliques):
        stripped = looped_cliques.loopless_adjacency()
        assert stripped.diagonal().sum() == 0
        assert stripped.nnz == looped_cliques.adjacency.nnz - 12

    def test_triangles_match_networkx(self, rng, nx_oracle):
        """Per-node triangle counts agree with networkx on random graphs."""
        for trial in range(10):
            graph = erdos_renyi(30, 90.0, seed=int(rng.integers(1 << 30)))
            expected = nx.triangles(nx_oracle(graph))
            assert graph.triangles().tolist() == [expected[i] for i in range(30)]


class TestEdgeList:
    """Edge-list parsing."""

    def test_comments_weights_and_compaction(self, tmp_path):
        path = tmp_path / "tri.txt"
        path.write_text("# a comment\n10 20\n20 30 0.5\n30 10\n20 10\n")
        graph = load_edge_list(path)
        assert graph.n == 3
        assert graph.num_edges == 3
        assert graph.triangle_count() == 1
        assert graph.name == "tri"

    def test_malformed_line_reports_line_number(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0 1\nfoo bar\n")
        with pytest.raises(GraphFormatError) as info:
            load_edge_list(path)
        assert info.value.details["line_number"] == 2

    def test_single_token_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0 1\n7\n")
        with pytest.raises(GraphFormatError, match="expected two node ids"):
            load_edge_list(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("# nothing here\n")
        with pytest.raises(GraphFormatError, match="no edges"):
            load_edge_list(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(GraphFormatError, match="Cannot read"):
            load_edge_list(tmp_path / "absent.txt")

    def test_directed_input_keeps_reciprocated_pairs(self, tmp_path):
        path = tmp_path / "directed.txt"
        path.write_text("0 1\n1 0\n1 2\n")
        graph = load_edge_list(path, EdgeListOptions(symmetrize=False))
        assert graph.n == 3
        assert graph.edges() == {(0, 1)}

    def test_self_loops_dropped_unless_kept(self, tmp_path):
        path = tmp_path / "loops.txt"
        path.write_text("0 0\n0 1\n")
        assert load_edge_list(path).num_self_loops == 0

        kept = load_edge_list(
            path, EdgeListOptions(drop_self_loops=False, allow_self_loops=True)
        )
        assert kept.num_self_loops == 1
        assert kept.num_edges == 2

    def test_save_then_load_preserves_toy_graph(self, tmp_path):
        graph = toy_graph(3)
        path = save_edge_list(graph, tmp_path / "toy.txt")
        loaded = load_edge_list(
            path, EdgeListOptions(drop_self_loops=False, allow_self_loops=True)
        )
        assert loaded.edges() == graph.edges()


class TestGenerators:
    """Synthetic graph families."""

    def test_toy_graph_shape(self):
        graph = toy_graph(100)
        assert graph.n == 300
        assert graph.num_self_loops == 300
        assert graph.num_edges == 700
        assert graph.triangle_count() == 100
        assert graph.validate().is_valid

    def test_toy_graph_needs_two_triangles(self):
        with pytest.raises(InvalidArgumentError):
            toy_graph(1)

    def test_clique_union(self):
        graph = clique_union(12, 3)
        assert graph.num_edges == 12
        assert graph.triangle_count() == 4
        assert graph.max_degree == 2

    def test_clique_union_with_loops(self, looped_cliques):
        assert looped_cliques.num_self_loops == 12
        assert looped_cliques.num_edges == 24

    def test_clique_union_requires_divisibility(self):
        with pytest.raises(InvalidArgumentError, match="must divide"):
            clique_union(10, 3)

    def test_erdos_renyi_is_seeded(self):
        first = erdos_renyi(50, 100.0, seed=7)
        second = erdos_renyi(50, 100.0, seed=7)
        assert first.edges() == second.edges()
        assert 50 < first.num_edges < 150
        assert first.num_self_loops == 0

    def test_erdos_renyi_rejects_too_many_edges(self):
        with pytest.raises(InvalidArgumentError):
            erdos_renyi(4, 7.0)

    def test_chung_lu_matches_expected_degrees(self):
        degrees = DegreeSequence(np.full(200, 4.0))
        graph = chung_lu(degrees, seed=3)
        mean_degree = 2 * graph.num_edges / graph.n
        assert 3.0 < mean_degree < 5.0
        assert graph.num_self_loops == 0
        assert chung_lu(degrees, seed=3).edges() == graph.edges()

    def test_preferential_attachment(self, nx_oracle):
        graph = preferential_attachment(100, 2, seed=11)
        assert graph.n == 100
        assert 3 + 97 <= graph.num_edges <= 3 + 2 * 97
        assert nx.is_connected(nx_oracle(graph))
        assert preferential_attachment(100, 2, seed=11).edges() == graph.edges()

    @pytest.mark.parametrize("c", [2, 3, 5])
    def test_clique_union_matches_block_membership(self, c):
        n = 6 * c
        dense = clique_union(n, c).to_dense()
        blocks = np.arange(n) // c
        expected = (blocks[:, None] == blocks[None, :]).astype(float)
        np.fill_diagonal(expected, 0.0)
        np.testing.assert_array_equal(dense, expected)
        looped = clique_union(n, c, self_loops=True).to_dense()
        np.testing.assert_array_equal(looped, expected + np.eye(n))
        assert clique_union(n, c).triangle_count() == (n // c) * comb(c, 3)

    def test_erdos_renyi_edge_count_within_four_sigma(self):
        n, m = 500, 2000.0
        pairs = n * (n - 1) / 2
        sigma = np.sqrt(pairs * (m / pairs) * (1 - m / pairs))
        for seed in range(10):
            graph = erdos_renyi(n, m, seed=seed)
            assert abs(graph.num_edges - m) <= 4 * sigma

    @pytest.mark.parametrize("n", [256, 1000])
    def test_preferential_attachment_hub_size(self, n):
        for seed in range(3):
            graph = preferential_attachment(n, 2, seed=seed)
            assert graph.max_degree <= 10 * np.sqrt(n)
            assert graph.num_self_loops == 0

    @pytest.mark.parametrize("n, m", [(5, 0), (3, 3)])
    def test_preferential_attachment_bad_arguments(self, n, m):
        with pytest.raises(InvalidArgumentError):
            preferential_attachment(n, m)


class TestDegreeSequence:
    def test_rejects_negative(self):
        with pytest.raises(InvalidArgumentError):
            DegreeSequence(np.array([1.0, -1.0]))

    def test_summary_values(self):
        degrees = DegreeSequence(np.array([1.0, 3.0, 2.0]))
        assert degrees.sorted().tolist() == [3.0, 2.0, 1.0]
        assert degrees.total == 6.0
        assert degrees.maximum == 3.0


class TestGraphStats:
    def test_clique_union_stats(self):
        stats = graph_stats(clique_union(12, 3))
        assert stats.n == 12
        assert stats.edges == 12
        assert stats.mean_degree == pytest.approx(2.0)
        assert stats.max_degree == 2
        assert stats.p95_degree == pytest.approx(2.0)
        assert stats.triangles == 4
        assert stats.bounded_degree_rank == 5

    def test_stats_ignore_loops(self, looped_cliques):
        stats = graph_stats(looped_cliques)
        assert stats.edges == 12
        assert stats.max_degree == 2
