"""
Tests for the truncated SVD baseline.
"""
import numpy as np
import pytest

from embedding_core.core.evaluation import rel_frobenius_error
from embedding_core.core.exceptions import InvalidArgumentError
from embedding_core.core.graphs import graph_from_dense, toy_graph
from embedding_core.core.linalg import top_k_eigs
from embedding_core.core.lpca import reconstruct
from embedding_core.core.reproduce import FIGURE1_REFERENCE
from embedding_core.core.tsvd import spectral_factors, tsvd_fit, unthresholded_error
from embedding_core.shared_types import EmbeddingMethod


def random_graph(n, rng, density=0.2):
    upper = np.triu((rng.random((n, n)) < density).astype(float), k=1)
    return graph_from_dense(upper + upper.T)


class TestTSVD:
    """Spectral embeddings and their errors."""

    @pytest.mark.parametrize("k, key", [(15, "tsvd_rank15"), (5, "tsvd_rank5")])
    def test_toy_graph_error(self, k, key):
        """Thresholded TSVD on 100 linked triangles matches the reference errors."""
        graph = toy_graph(100)
        embedding = tsvd_fit(graph, k)
        expected = reconstruct(embedding, self_loops=True)
        error = rel_frobenius_error(graph, expected)
        assert error == pytest.approx(FIGURE1_REFERENCE[key], abs=0.01)

    def test_unthresholded_error_follows_eckart_young(self, rng):
        """||A - X Y^T||_F is the tail of the eigenvalue magnitudes."""
        for _ in range(10):
            graph = random_graph(40, rng)
            spectrum = np.sort(np.abs(np.linalg.eigvalsh(graph.to_dense())))[::-1]
            errors = []
            for k in range(1, 11):
                error = unthresholded_error(graph, tsvd_fit(graph, k))
                tail = np.sqrt(np.sum(spectrum[k:] ** 2))
                assert error == pytest.approx(tail, rel=1e-6, abs=1e-8)
                errors.append(error)
            assert np.all(np.diff(errors) <= 1e-9)

    def test_full_rank_reproduces_graph(self, rng):
        graph = random_graph(12, rng, density=0.4)
        embedding = tsvd_fit(graph, 12)
        assert embedding.method is EmbeddingMethod.TSVD
        np.testing.assert_allclose(embedding.product(), graph.to_dense(), atol=1e-8)
        expected = reconstruct(embedding)
        assert rel_frobenius_error(graph, expected) == pytest.approx(0.0, abs=1e-8)

    def test_accepts_plain_arrays(self):
        A = np.array([[0.0, 1.0], [1.0, 0.0]])
        embedding = tsvd_fit(A, 2)
        np.testing.assert_allclose(embedding.product(), A, atol=1e-12)

    @pytest.mark.parametrize("k", [0, 7])
    def test_rank_out_of_range(self, k, two_triangles):
        with pytest.raises(InvalidArgumentError, match="1 <= k <= n"):
            tsvd_fit(two_triangles, k)


class TestSpectralFactors:
    def test_negative_eigenvalues_carry_sign_on_x(self):
        pairs = top_k_eigs(np.diag([-4.0, 1.0]), 2)
        X, Y = spectral_factors(pairs)
        np.testing.assert_allclose(X @ Y.T, np.diag([-4.0, 1.0]), atol=1e-12)
        np.testing.assert_allclose(np.abs(Y), np.diag([2.0, 1.0]), atol=1e-12)
        assert np.all(np.abs(X) == np.abs(Y))
