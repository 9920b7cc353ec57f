"""
Logistic PCA Loss - Objective and gradient for sigma(X Y^T) factorization.

With shifted adjacency S = 2A - 1 (entries +-1, diagonal included) and
M = X Y^T, the loss is

    L = sum_ij softplus(-S_ij M_ij) = sum_ij -log logistic(S_ij M_ij)

and with G_ij = -S_ij * logistic(-S_ij M_ij) the gradients are
dL/dX = G Y and dL/dY = G^T X.

M is never materialized whole: row blocks of M, S and G are formed, reduced
into loss and gradient contributions, and discarded. Block results are summed
in block order.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.special import expit

from ...shared_types import DEFAULT_BLOCK_ROWS, FloatArray
from ..exceptions import InvalidArgumentError, NonFiniteValueError
from ..graphs import Graph
from ..linalg import LossAndGradient, map_blocks, row_blocks

logger = logging.getLogger(__name__)


def softplus(z: FloatArray) -> FloatArray:
    """log(1 + e^z) without overflow."""
    return np.maximum(z, 0.0) + np.log1p(np.exp(-np.abs(z)))


class ShiftedAdjacency:
    """Read-only +-1 view of a graph: 2A - 1 over all ordered pairs."""

    def __init__(self, graph: Graph):
        self.graph = graph

    @property
    def n(self) -> int:
        return self.graph.n

    def block(self, rows: slice) -> FloatArray:
        """Dense +-1 rows of the shifted adjacency."""
        ones = self.graph.adjacency[rows].toarray()
        return 2.0 * ones - 1.0

    def to_dense(self) -> FloatArray:
        return self.block(slice(None))

    def __getitem__(self, index: Tuple[int, int]) -> float:
        i, j = index
        return 1.0 if self.graph.has_edge(i, j) else -1.0


@dataclass(frozen=True)
class LossGradient:
    """LPCA loss with gradients for both factors."""

    loss: float
    gX: FloatArray
    gY: FloatArray


def lpca_loss_grad(
    graph: Graph,
    X: FloatArray,
    Y: FloatArray,
    block_rows: int = DEFAULT_BLOCK_ROWS,
    workers: Optional[int] = None,
) -> LossGradient:
    """
    LPCA loss and gradient over all n^2 ordered pairs.

    Args:
        graph: Target graph
        X, Y: Factors of shape (n, k)
        block_rows: Rows of M = X Y^T held in memory at once
        workers: Threads sharing the row blocks

    Returns:
        Loss, dL/dX and dL/dY
    """
    n = graph.n
    if X.shape != Y.shape or X.ndim != 2 or X.shape[0] != n:
        raise InvalidArgumentError(
            f"Factors must both be ({n}, k); got X{X.shape}, Y{Y.shape}",
            argument="X",
            component="lpca",
        )

    shifted = ShiftedAdjacency(graph)

    def block_terms(rows: slice) -> Tuple[float, FloatArray, FloatArray]:
        S = shifted.block(rows)
        z = -S * (X[rows] @ Y.T)
        G = -S * expit(z)
        return float(softplus(z).sum()), G @ Y, G.T @ X[rows]

    blocks = row_blocks(n, block_rows)
    parts = map_blocks(block_terms, blocks, workers)

    loss = 0.0
    gX = np.empty_like(X)
    gY = np.zeros_like(Y)
    for rows, (block_loss, block_gX, block_gY) in zip(blocks, parts):
        loss += block_loss
        gX[rows] = block_gX
        gY += block_gY

    if not np.isfinite(loss):
        raise NonFiniteValueError("LPCA loss is not finite", quantity="loss")

    return LossGradient(loss=loss, gX=gX, gY=gY)


def flat_objective(
    graph: Graph,
    k: int,
    block_rows: int = DEFAULT_BLOCK_ROWS,
    workers: Optional[int] = None,
) -> LossAndGradient:
    """Objective over the flattened parameter vector [vec(X), vec(Y)]."""
    n = graph.n

    def f_and_grad(theta: FloatArray) -> Tuple[float, FloatArray]:
        X, Y = unflatten(theta, n, k)
        result = lpca_loss_grad(graph, X, Y, block_rows=block_rows, workers=workers)
        return result.loss, np.concatenate([result.gX.ravel(), result.gY.ravel()])

    return f_and_grad


def flatten(X: FloatArray, Y: FloatArray) -> FloatArray:
    return np.concatenate([X.ravel(), Y.ravel()])


def unflatten(theta: FloatArray, n: int, k: int) -> Tuple[FloatArray, FloatArray]:
    half = n * k
    return theta[:half].reshape(n, k), theta[half:].reshape(n, k)
