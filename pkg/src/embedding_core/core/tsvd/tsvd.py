"""
Truncated SVD Baseline - Thresholded spectral embedding of an adjacency matrix.

For symmetric A with top-|lambda| eigenpairs (Z, W):

    X = Z s(W) |W|^{1/2},    Y = Z |W|^{1/2}

so X Y^T = Z W Z^T, the best rank-k Frobenius approximation of A.
Reconstruction always goes through the clamp sigma.
"""
import logging
from typing import Tuple, Union

import numpy as np
import scipy.sparse as sp

from ...shared_types import EmbeddingMethod, FloatArray
from ..exceptions import InvalidArgumentError
from ..graphs import Graph
from ..linalg import EigenPairs, top_k_eigs
from ..lpca import EmbeddingPair

logger = logging.getLogger(__name__)


def tsvd_fit(graph: Union[Graph, FloatArray, sp.spmatrix], k: int) -> EmbeddingPair:
    """
    Rank-k TSVD embedding.

    Args:
        graph: Graph or symmetric adjacency matrix
        k: Number of eigenpairs, 1 <= k <= n

    Returns:
        EmbeddingPair tagged tsvd
    """
    n = graph.n if isinstance(graph, Graph) else int(graph.shape[0])
    if not 1 <= k <= n:
        raise InvalidArgumentError(
            f"TSVD rank must satisfy 1 <= k <= n (k={k}, n={n})",
            argument="k",
            value=k,
            component="tsvd",
        )

    pairs = top_k_eigs(graph, k)
    X, Y = spectral_factors(pairs)
    logger.debug(
        f"TSVD rank {k}: eigenvalues in [{pairs.values.min():.4g}, "
        f"{pairs.values.max():.4g}]"
    )
    return EmbeddingPair(X=X, Y=Y, method=EmbeddingMethod.TSVD)


def spectral_factors(pairs: EigenPairs) -> Tuple[FloatArray, FloatArray]:
    """Split Z W Z^T into X = Z s(W)|W|^{1/2} and Y = Z |W|^{1/2}; s(0) = +1."""
    root = np.sqrt(np.abs(pairs.values))
    signs = np.where(pairs.values < 0, -1.0, 1.0)
    X = pairs.vectors * (signs * root)
    Y = pairs.vectors * root
    return X, Y


def unthresholded_error(graph: Graph, embedding: EmbeddingPair) -> float:
    """||A - X Y^T||_F, without sigma."""
    diff = graph.to_dense() - embedding.product()
    return float(np.linalg.norm(diff))
