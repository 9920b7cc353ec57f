"""
Exactness and Reconstruction - Compare sigma(X Y^T) against A.

An embedding is exact when every 1-entry of A has [X Y^T]_ij >= 1 and every
0-entry has [X Y^T]_ij <= 0, diagonal included. Then the clamp
sigma(x) = max(0, min(1, x)) reproduces A entrywise.
"""
import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy.special import expit

from ...shared_types import (
    DEFAULT_BLOCK_ROWS,
    NEAR_EXACT_TOLERANCE,
    EmbeddingMethod,
    Provenance,
    ReconstructionMode,
)
from ..exceptions import InvalidArgumentError, InvalidDataError
from ..graphs import Graph
from ..linalg import map_blocks, row_blocks
from .model import EmbeddingPair, ExpectedAdjacency

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExactnessReport:
    """Outcome of an exactness check."""

    exact: bool
    violations: int
    worst_margin: float
    near_exact_violations: int
    checked_pairs: int
    diagonal_masked: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def verify_exact(
    graph: Graph,
    embedding: EmbeddingPair,
    mask_diagonal: bool = False,
    block_rows: int = DEFAULT_BLOCK_ROWS,
    workers: Optional[int] = None,
) -> ExactnessReport:
    """
    Check sigma(X Y^T) == A with zero tolerance.

    worst_margin is the smallest slack over all checked pairs, where slack is
    [X Y^T]_ij - 1 on 1-entries and -[X Y^T]_ij on 0-entries; it is >= 0 when
    the embedding is exact. near_exact_violations counts slacks below -1e-9.
    """
    n = graph.n
    if embedding.n != n:
        raise InvalidDataError(
            f"Embedding covers {embedding.n} nodes, graph has {n}",
            argument="embedding",
            component="lpca",
        )

    def block_slack(rows: slice) -> Tuple[int, float, int]:
        M = embedding.product(rows)
        ones = graph.adjacency[rows].toarray() > 0
        slack = np.where(ones, M - 1.0, -M)
        if mask_diagonal:
            local = np.arange(rows.stop - rows.start)
            slack[local, local + rows.start] = np.inf
        return (
            int(np.count_nonzero(slack < 0)),
            float(slack.min()) if slack.size else np.inf,
            int(np.count_nonzero(slack < -NEAR_EXACT_TOLERANCE)),
        )

    parts = map_blocks(block_slack, row_blocks(n, block_rows), workers)
    violations = sum(part[0] for part in parts)
    worst = min((part[1] for part in parts), default=np.inf)
    near = sum(part[2] for part in parts)

    report = ExactnessReport(
        exact=violations == 0,
        violations=violations,
        worst_margin=float(worst),
        near_exact_violations=near,
        checked_pairs=n * n - (n if mask_diagonal else 0),
        diagonal_masked=mask_diagonal,
    )
    logger.debug(f"verify_exact: {report.to_dict()}")
    return report


def reconstruct(
    embedding: EmbeddingPair,
    mode: ReconstructionMode = ReconstructionMode.THRESHOLD,
    self_loops: bool = False,
) -> ExpectedAdjacency:
    """
    Apply sigma (threshold) or the logistic function entrywise to X Y^T.

    The result is not symmetrized; X Y^T need not be symmetric.
    """
    logistic = mode is ReconstructionMode.LOGISTIC
    if embedding.method is not EmbeddingMethod.LPCA and logistic:
        raise InvalidArgumentError(
            f"{embedding.method.value} embeddings are reconstructed by thresholding",
            argument="mode",
            value=mode.value,
            component="lpca",
        )

    M = embedding.product()
    if mode is ReconstructionMode.THRESHOLD:
        P = np.clip(M, 0.0, 1.0)
    else:
        P = expit(M)
    return ExpectedAdjacency(
        P=P, provenance=_provenance(embedding.method, mode), self_loops=self_loops
    )


def default_mode(embedding: EmbeddingPair, exact: bool) -> ReconstructionMode:
    """Threshold for TSVD, constructions and exact LPCA; logistic otherwise."""
    if embedding.method is EmbeddingMethod.LPCA and not exact:
        return ReconstructionMode.LOGISTIC
    return ReconstructionMode.THRESHOLD


def _provenance(method: EmbeddingMethod, mode: ReconstructionMode) -> Provenance:
    if method is EmbeddingMethod.TSVD:
        return Provenance.TSVD_THRESHOLD
    if method is EmbeddingMethod.CONSTRUCTION:
        return Provenance.CONSTRUCTION_THRESHOLD
    if mode is ReconstructionMode.LOGISTIC:
        return Provenance.LPCA_LOGISTIC
    return Provenance.LPCA_THRESHOLD
