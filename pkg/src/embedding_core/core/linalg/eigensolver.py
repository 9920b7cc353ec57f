"""
Symmetric Eigensolver - Top-k eigenpairs by absolute eigenvalue.

Dense LAPACK tridiagonal reduction (scipy.linalg.eigh) handles matrices up to
DENSE_EIGEN_LIMIT rows; larger sparse adjacencies go through ARPACK Lanczos
(scipy.sparse.linalg.eigsh, which="LM").

Ordering is by |lambda| descending; at equal magnitude the positive
eigenvalue comes first. Eigenvector signs are fixed so the largest-magnitude
component of each vector is positive.
"""
import logging
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from ...shared_types import DENSE_EIGEN_LIMIT, SYMMETRY_TOLERANCE, FloatArray
from ..exceptions import EigensolverError, InvalidArgumentError
from ..graphs import Graph

logger = logging.getLogger(__name__)

MatrixLike = Union[FloatArray, sp.spmatrix, Graph]

# magnitudes closer than this (relative) count as ties
TIE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class EigenPairs:
    """k eigenpairs ordered by descending |value|."""

    values: FloatArray
    vectors: FloatArray

    @property
    def k(self) -> int:
        return int(self.values.size)

    def orthonormality_error(self) -> float:
        """max |V^T V - I|."""
        gram = self.vectors.T @ self.vectors
        return float(np.abs(gram - np.eye(self.k)).max()) if self.k else 0.0

    def residuals(self, matrix: MatrixLike) -> FloatArray:
        """||A v_i - lambda_i v_i||_2 for every pair."""
        a = _as_operator(matrix)
        av = a @ self.vectors
        return np.asarray(
            np.linalg.norm(av - self.vectors * self.values[None, :], axis=0)
        )

    def reconstruct(self) -> FloatArray:
        """V diag(lambda) V^T."""
        return (self.vectors * self.values[None, :]) @ self.vectors.T


def top_k_eigs(matrix: MatrixLike, k: int) -> EigenPairs:
    """
    Top-k eigenpairs of a symmetric matrix, selected by absolute eigenvalue.

    Args:
        matrix: Dense array, scipy sparse matrix or Graph adjacency
        k: Number of pairs (1 <= k <= n)

    Raises:
        InvalidArgumentError: non-square or non-symmetric input, bad k
        EigensolverError: ARPACK failed to converge
    """
    a = _as_operator(matrix)

    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgumentError(
            "Eigensolver needs a square matrix",
            argument="matrix",
            value=a.shape,
            component="linalg",
        )
    n = a.shape[0]
    if not 1 <= k <= n:
        raise InvalidArgumentError(
            f"k must lie in [1, {n}]", argument="k", value=k, component="linalg"
        )

    asymmetry = _max_asymmetry(a)
    if asymmetry > SYMMETRY_TOLERANCE:
        raise InvalidArgumentError(
            f"Matrix is not symmetric (max asymmetry {asymmetry:.3g})",
            argument="matrix",
            value=asymmetry,
            component="linalg",
        )

    if n <= DENSE_EIGEN_LIMIT or k >= n - 1:
        dense = a.toarray() if sp.issparse(a) else np.asarray(a, dtype=np.float64)
        values, vectors = scipy.linalg.eigh(dense)
    else:
        values, vectors = _lanczos(a, k)

    order = _magnitude_order(values)[:k]
    values = values[order].astype(np.float64)
    vectors = _fix_signs(vectors[:, order].astype(np.float64))

    logger.debug(
        f"top_k_eigs n={n} k={k}: |lambda| in "
        f"[{abs(values[-1]):.4g}, {abs(values[0]):.4g}]"
    )
    return EigenPairs(values=values, vectors=vectors)


def _lanczos(a: sp.spmatrix, k: int) -> Tuple[FloatArray, FloatArray]:
    n = a.shape[0]
    # one extra pair so ties at the cutoff can be ordered deterministically
    wanted = min(k + 1, n - 1)
    try:
        values, vectors = eigsh(
            a.astype(np.float64),
            k=wanted,
            which="LM",
            v0=np.ones(n) / np.sqrt(n),
            maxiter=n * 100,
            tol=0.0,
        )
    except ArpackNoConvergence as e:
        raise EigensolverError(
            f"ARPACK did not converge for k={k} on n={n}",
            n=n,
            k=k,
            iterations=n * 100,
            converged=len(e.eigenvalues),
        ) from e
    return values, vectors


def _as_operator(matrix: MatrixLike) -> Union[FloatArray, sp.csr_matrix]:
    if isinstance(matrix, Graph):
        return matrix.adjacency.astype(np.float64)
    if sp.issparse(matrix):
        return sp.csr_matrix(matrix, dtype=np.float64)
    return np.asarray(matrix, dtype=np.float64)


def _max_asymmetry(a: Union[FloatArray, sp.csr_matrix]) -> float:
    diff = a - a.T
    if sp.issparse(diff):
        return float(abs(diff).max()) if diff.nnz else 0.0
    return float(np.abs(diff).max()) if diff.size else 0.0


def _magnitude_order(values: FloatArray) -> np.ndarray:
    """Indices by descending |value|, positive first among ties."""
    magnitudes = np.abs(values)
    scale = max(float(magnitudes.max()), 1.0) if magnitudes.size else 1.0
    quantized = np.round(magnitudes / (scale * TIE_TOLERANCE))
    return np.lexsort((-values, -quantized))


def _fix_signs(vectors: FloatArray) -> FloatArray:
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs[None, :]
