"""
Tests for reconstruction metrics, evaluation reports, EFD searches and
result writers.
"""
import csv
import json
from itertools import combinations

import numpy as np
import pytest
from pydantic import ValidationError

from embedding_core.core.constructions import clique_line_construct
from embedding_core.core.evaluation import (
    BaselineSettings,
    EFDSettings,
    SeedPolicy,
    TriangleCurve,
    baseline_efd,
    efd_search,
    evaluate_embedding,
    expected_degrees,
    expected_triangles_per_node,
    low_degree_triangle_curve,
    matched_random_graph,
    rel_frobenius_error,
    rel_threshold_error,
    sequence_l1_error,
    true_profile,
    write_curves_csv,
    write_json,
    write_matrix_csv,
    write_sequences_csv,
)
from embedding_core.core.exceptions import InvalidArgumentError, InvalidDataError
from embedding_core.core.graphs import DegreeSequence, clique_union, erdos_renyi
from embedding_core.core.linalg import LBFGSSettings
from embedding_core.core.lpca import (
    EmbeddingPair,
    ExpectedAdjacency,
    LPCASettings,
    lpca_fit,
    reconstruct,
)
from embedding_core.core.tsvd import tsvd_fit
from embedding_core.shared_types import (
    BaselineKind,
    EmbeddingMethod,
    Provenance,
    ReconstructionMode,
)


def brute_force_triangles(P):
    """Per-node expected triangles over all triples of the loopless symmetrized P."""
    S = (P + P.T) / 2.0
    np.fill_diagonal(S, 0.0)
    n = S.shape[0]
    counts = np.zeros(n)
    for i, j, k in combinations(range(n), 3):
        weight = S[i, j] * S[j, k] * S[i, k]
        counts[[i, j, k]] += weight
    return counts


def brute_force_curve(P, degrees, caps):
    S = (P + P.T) / 2.0
    np.fill_diagonal(S, 0.0)
    n = S.shape[0]
    values = []
    for cap in caps:
        keep = [i for i in range(n) if degrees[i] <= cap]
        total = sum(S[i, j] * S[j, k] * S[i, k] for i, j, k in combinations(keep, 3))
        values.append(total / n)
    return values


def matrix(P):
    return ExpectedAdjacency(P=P, provenance=Provenance.LPCA_LOGISTIC)


def probabilistic(n, rng):
    return matrix(rng.random((n, n)))


class TestRelativeError:
    def test_truth_has_zero_error(self, small_toy):
        truth = ExpectedAdjacency.from_graph(small_toy)
        assert rel_frobenius_error(small_toy, truth) == 0.0

    def test_known_value(self, make_graph):
        graph = make_graph(2, [(0, 1)])
        half = matrix(np.full((2, 2), 0.5))
        assert rel_frobenius_error(graph, half) == pytest.approx(1.0 / np.sqrt(2.0))

    def test_empty_graph_rejected(self, make_graph):
        graph = make_graph(3, [])
        expected = matrix(np.zeros((3, 3)))
        with pytest.raises(InvalidArgumentError, match="without edges"):
            rel_frobenius_error(graph, expected)

    def test_size_mismatch(self, two_triangles):
        expected = matrix(np.zeros((2, 2)))
        with pytest.raises(InvalidDataError):
            rel_frobenius_error(two_triangles, expected)


class TestThresholdError:
    """Blocked error of the clipped X Y^T, never holding the n x n matrix."""

    @pytest.mark.parametrize("block_rows, workers", [(7, 2), (1, 1), (500, None)])
    def test_matches_full_reconstruction(self, block_rows, workers):
        graph = erdos_renyi(60, 180.0, seed=4)
        tsvd = tsvd_fit(graph, 8)
        full = rel_frobenius_error(graph, reconstruct(tsvd))
        blocked = rel_threshold_error(
            graph, tsvd, block_rows=block_rows, workers=workers
        )
        assert blocked == pytest.approx(full, rel=1e-9)

    def test_exact_embedding_has_zero_error(self, looped_cliques):
        embedding = clique_line_construct(looped_cliques.n, 3)
        assert rel_threshold_error(looped_cliques, embedding) == 0.0

    def test_clipping(self, make_graph):
        graph = make_graph(2, [(0, 1)])
        embedding = EmbeddingPair(
            X=np.array([[2.0], [-1.0]]),
            Y=np.array([[1.0], [1.0]]),
            method=EmbeddingMethod.TSVD,
        )
        # clipped rows [1, 1] and [0, 0] against [0, 1] and [1, 0]
        assert rel_threshold_error(graph, embedding) == pytest.approx(1.0)

    def test_embedding_for_another_graph(self, two_triangles):
        embedding = tsvd_fit(erdos_renyi(10, 20.0, seed=0), 2)
        with pytest.raises(InvalidDataError, match="nodes"):
            rel_threshold_error(two_triangles, embedding)

    def test_edgeless_graph(self, make_graph):
        graph = make_graph(3, [])
        embedding = EmbeddingPair(
            X=np.ones((3, 1)), Y=np.ones((3, 1)), method=EmbeddingMethod.TSVD
        )
        with pytest.raises(InvalidDataError, match="without edges"):
            rel_threshold_error(graph, embedding)


class TestDegreesAndTriangles:
    """Expected statistics against brute-force enumeration."""

    def test_triangles_of_true_adjacency(self, rng):
        for trial in range(20):
            n = int(rng.integers(3, 31))
            graph = erdos_renyi(n, n * (n - 1) / 6, seed=trial)
            counts = expected_triangles_per_node(ExpectedAdjacency.from_graph(graph))
            np.testing.assert_allclose(counts, graph.triangles(), atol=1e-10)

    def test_triangles_of_probabilistic_matrices(self, rng):
        for _ in range(20):
            expected = probabilistic(int(rng.integers(3, 16)), rng)
            counts = expected_triangles_per_node(expected, block_rows=4, workers=2)
            np.testing.assert_allclose(
                counts, brute_force_triangles(expected.P), atol=1e-10
            )

    def test_degrees_respect_self_loop_flag(self):
        P = np.array([[1.0, 0.5], [0.25, 0.0]])
        loopless = ExpectedAdjacency(P=P, provenance=Provenance.LPCA_LOGISTIC)
        looped = ExpectedAdjacency(
            P=P, provenance=Provenance.LPCA_LOGISTIC, self_loops=True
        )
        np.testing.assert_allclose(expected_degrees(loopless).values, [0.375, 0.375])
        np.testing.assert_allclose(expected_degrees(looped).values, [1.375, 0.375])


class TestTriangleCurves:
    """Low-degree triangle curves."""

    def test_matches_brute_force(self, rng):
        caps = [1.0, 2.0, 3.0, 5.0, 8.0]
        for _ in range(20):
            expected = probabilistic(int(rng.integers(3, 31)), rng)
            degrees = expected_degrees(expected)
            curve = low_degree_triangle_curve(expected, degrees, caps)
            oracle = brute_force_curve(expected.P, degrees.values, caps)
            np.testing.assert_allclose(curve.values, oracle, atol=1e-10)

    def test_matches_brute_force_on_graphs(self):
        caps = [1.0, 2.0, 3.0, 4.0, 6.0, 10.0]
        for seed in range(20):
            n = 10 + seed
            graph = erdos_renyi(n, n * 1.5, seed=seed)
            expected = ExpectedAdjacency.from_graph(graph)
            degrees = DegreeSequence(graph.degrees().astype(float))
            curve = low_degree_triangle_curve(expected, degrees, caps)
            oracle = brute_force_curve(expected.P, degrees.values, caps)
            np.testing.assert_allclose(curve.values, oracle, atol=1e-10)

    def test_true_curve(self, two_triangles):
        expected = ExpectedAdjacency.from_graph(two_triangles)
        degrees = DegreeSequence(two_triangles.degrees().astype(float))
        curve = low_degree_triangle_curve(expected, degrees, [1, 2], label="true")
        assert curve.values.tolist() == pytest.approx([0.0, 2.0 / 6.0])
        assert curve.members == [0, 6]
        assert curve.single_triangle_level == pytest.approx(1.0 / 6.0)
        assert curve.rows()[1] == {
            "cap": 2.0,
            "value": pytest.approx(1.0 / 3.0),
            "method": "true",
            "rank": None,
        }

    def test_fewer_than_three_nodes_give_zero(self, make_graph):
        graph = make_graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        expected = ExpectedAdjacency.from_graph(graph)
        degrees = DegreeSequence(graph.degrees().astype(float))
        curve = low_degree_triangle_curve(expected, degrees, [1, 2, 3])
        assert curve.values.tolist() == pytest.approx([0.0, 0.0, 0.25])

    def test_caps_must_ascend(self, two_triangles):
        expected = ExpectedAdjacency.from_graph(two_triangles)
        degrees = DegreeSequence(two_triangles.degrees().astype(float))
        with pytest.raises(InvalidArgumentError, match="ascending"):
            low_degree_triangle_curve(expected, degrees, [2, 2])

    def test_curve_must_not_decrease(self):
        with pytest.raises(InvalidArgumentError, match="non-decreasing"):
            TriangleCurve(caps=np.array([1.0, 2.0]), values=np.array([0.5, 0.1]), n=4)
        with pytest.raises(InvalidArgumentError, match="non-negative"):
            TriangleCurve(caps=np.array([1.0]), values=np.array([-0.5]), n=4)
        with pytest.raises(InvalidArgumentError, match="length"):
            TriangleCurve(caps=np.array([1.0]), values=np.array([0.5, 1.0]), n=4)


class TestSequenceError:
    @pytest.mark.parametrize(
        "reference, estimate, error",
        [
            ([3.0, 1.0], [1.0, 3.0], 0.0),
            ([2.0, 2.0], [1.0, 1.0], 0.5),
            ([0.0, 0.0], [0.0, 0.0], 0.0),
            ([0.0, 0.0], [1.0, 0.0], float("inf")),
        ],
    )
    def test_values(self, reference, estimate, error):
        assert sequence_l1_error(np.array(reference), np.array(estimate)) == error

    def test_length_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            sequence_l1_error(np.zeros(2), np.zeros(3))


class TestEvaluateEmbedding:
    """One-call evaluation."""

    def test_exact_construction(self, looped_cliques):
        evaluation = evaluate_embedding(
            looped_cliques, clique_line_construct(12, 3), caps=[2, 3]
        )
        report = evaluation.report
        assert report.exact
        assert report.mode is ReconstructionMode.THRESHOLD
        assert report.provenance == "construction-threshold"
        assert report.rel_frob_error == 0.0
        assert report.degree_l1_error == 0.0
        assert report.triangle_l1_error == 0.0
        assert evaluation.truth.curve.values.tolist() == pytest.approx([0.0, 4 / 12])
        np.testing.assert_allclose(
            evaluation.profile.curve.values, evaluation.truth.curve.values
        )

    def test_inexact_lpca_uses_logistic(self, two_triangles):
        settings = LPCASettings(optimizer=LBFGSSettings(max_iters=5))
        embedding = lpca_fit(two_triangles, 1, seed=0, settings=settings)
        report = evaluate_embedding(two_triangles, embedding).report
        assert not report.exact
        assert report.mode is ReconstructionMode.LOGISTIC
        assert report.provenance == "lpca-logistic"
        assert report.rel_frob_error > 0.0
        assert report.to_dict()["method"] == "lpca"

    def test_truth_profile_reused(self, two_triangles):
        truth = true_profile(two_triangles)
        evaluation = evaluate_embedding(
            two_triangles, clique_line_construct(6, 3), truth=truth
        )
        assert evaluation.truth is truth
        assert truth.degrees.values.tolist() == [2.0] * 6


class TestEFD:
    """Exact factorization dimension searches."""

    def test_two_triangles(self, two_triangles):
        result = efd_search(two_triangles, rank_grid=[1, 6])
        assert result.efd == 6
        assert [o.rank for o in result.outcomes] == [1, 6]
        assert not result.outcomes[0].exact
        assert result.outcomes[1].exact
        assert result.to_dict()["efd"] == "6"

    @pytest.mark.slow
    def test_clique_union_efd_at_grid_floor(self):
        graph = clique_union(30, 3)
        policy = SeedPolicy(seeds=3)
        result = efd_search(graph, rank_grid=[4, 8, 16], seed_policy=policy)
        assert result.efd is not None
        assert result.efd <= 4

    def test_ranks_above_n_end_search(self, two_triangles):
        result = efd_search(two_triangles, rank_grid=[7, 8])
        assert result.efd is None
        assert result.outcomes == []
        assert result.efd_label == "none"

    @pytest.mark.parametrize("grid", [[], [3, 2], [0, 1], [2, 2]])
    def test_bad_grid(self, two_triangles, grid):
        with pytest.raises(InvalidArgumentError):
            efd_search(two_triangles, rank_grid=grid)

    def test_settings_validate_grid(self):
        with pytest.raises(ValidationError):
            EFDSettings(rank_grid=[4, 2])

    def test_seed_policy(self):
        assert SeedPolicy(seeds=3, base_seed=10).seed_list() == [10, 11, 12]

    def test_baseline_takes_worst_trial(self, two_triangles):
        baseline = BaselineSettings(kind=BaselineKind.CHUNG_LU, trials=2, seed=3)
        result = baseline_efd(two_triangles, baseline, rank_grid=[1, 6])
        assert len(result.trial_efds) == 2
        assert result.efd == max(result.trial_efds)
        assert result.baseline is BaselineKind.CHUNG_LU
        assert result.graph.endswith(":chung_lu")
        assert {o.trial for o in result.outcomes} == {0, 1}

    def test_matched_random_graphs(self, small_toy):
        er = matched_random_graph(small_toy, BaselineKind.ERDOS_RENYI, seed=2)
        cl = matched_random_graph(small_toy, BaselineKind.CHUNG_LU, seed=2)
        assert er.n == cl.n == small_toy.n
        assert er.num_self_loops == cl.num_self_loops == 0
        again = matched_random_graph(small_toy, BaselineKind.ERDOS_RENYI, seed=2)
        assert again.edges() == er.edges()


class TestWriters:
    def test_json_converts_numpy_and_infinities(self, tmp_path):
        path = write_json(
            {"array": np.arange(3), "value": np.float64(0.5), "error": float("inf")},
            tmp_path / "nested" / "out.json",
        )
        data = json.loads(path.read_text())
        assert data == {"array": [0, 1, 2], "value": 0.5, "error": "inf"}

    def test_curves_csv(self, tmp_path):
        curve = TriangleCurve(
            caps=np.array([1.0, 2.0]),
            values=np.array([0.0, 0.5]),
            n=4,
            label="lpca",
            rank=8,
        )
        path = write_curves_csv([curve], tmp_path / "curves.csv")
        rows = list(csv.DictReader(path.open()))
        assert [row["cap"] for row in rows] == ["1.0", "2.0"]
        assert rows[1]["method"] == "lpca"
        assert rows[1]["rank"] == "8"

    def test_sequences_csv_sorted_descending(self, tmp_path):
        path = write_sequences_csv(
            {"true": np.array([1.0, 3.0, 2.0]), "lpca": np.array([0.5])},
            tmp_path / "seq.csv",
        )
        rows = list(csv.reader(path.open()))
        assert rows[0] == ["index", "true", "lpca"]
        assert [row[1] for row in rows[1:]] == ["3.0", "2.0", "1.0"]
        assert rows[2][2] == ""

    def test_matrix_csv(self, tmp_path):
        matrix = np.array([[0.25, 1.0], [0.0, 0.5]])
        path = write_matrix_csv(matrix, tmp_path / "P.csv")
        np.testing.assert_allclose(np.loadtxt(path, delimiter=","), matrix)
