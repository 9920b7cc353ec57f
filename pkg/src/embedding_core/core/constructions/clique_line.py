"""
Line-Cluster Construction - Rank-3 exact embedding of a clique union.

Nodes are placed on a line in clusters of c points. With x2 the entrywise
square of the positions,

    X = [1 | x2 | x],    Y = [2 - x2 | -1 | 2x]

gives [X Y^T]_ij = 2 - (x_i - x_j)^2: at least 1 inside a cluster (spread
below 1) and negative across clusters (gap above 2). The diagonal equals 2,
so sigma(X Y^T) is the clique union with a loop on every node.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ...shared_types import EmbeddingMethod, FloatArray
from ..exceptions import InvalidArgumentError
from ..lpca import EmbeddingPair

logger = logging.getLogger(__name__)

DEFAULT_GAP = 3.0
DEFAULT_SPREAD = 0.01


@dataclass(frozen=True)
class LineClusterLayout:
    """n positions on a line grouped into clusters of c consecutive nodes."""

    positions: FloatArray = field(repr=False)
    cluster_size: int
    gap: float
    eps: float

    def __post_init__(self) -> None:
        if not self.gap > 2.0:
            raise InvalidArgumentError(
                "Cluster gap must exceed 2",
                argument="gap",
                value=self.gap,
                component="constructions",
            )
        if not 0.0 < self.eps < self.gap:
            raise InvalidArgumentError(
                "Cluster spread must lie in (0, gap)",
                argument="eps",
                value=self.eps,
                component="constructions",
            )

    @classmethod
    def evenly(
        cls, n: int, c: int, gap: float = DEFAULT_GAP, eps: Optional[float] = None
    ) -> "LineClusterLayout":
        """
        Cluster g starts at g * (gap + eps); its members are eps / c apart.

        Members of one cluster are then within eps of each other and any two
        points of different clusters are more than gap apart.
        """
        if c < 1 or n < 1 or n % c != 0:
            raise InvalidArgumentError(
                f"Clique size {c} must divide node count {n}",
                argument="c",
                value=c,
                component="constructions",
            )
        eps = DEFAULT_SPREAD / c if eps is None else eps
        cluster = np.arange(n) // c
        member = np.arange(n) % c
        positions = cluster * (gap + eps) + member * (eps / c)
        return cls(
            positions=positions.astype(np.float64), cluster_size=c, gap=gap, eps=eps
        )

    @property
    def n(self) -> int:
        return int(self.positions.size)

    def clusters(self) -> np.ndarray:
        return np.arange(self.n) // self.cluster_size

    def distances(self) -> FloatArray:
        return np.abs(self.positions[:, None] - self.positions[None, :])


def clique_line_construct(
    n: int, c: int, gap: float = DEFAULT_GAP, eps: Optional[float] = None
) -> EmbeddingPair:
    """
    Rank-3 embedding whose threshold reconstruction is clique_union(n, c)
    with unit diagonal.

    Raises:
        InvalidArgumentError: c does not divide n, or gap/eps out of range
    """
    layout = LineClusterLayout.evenly(n, c, gap=gap, eps=eps)
    return layout_embedding(layout)


def layout_embedding(layout: LineClusterLayout) -> EmbeddingPair:
    """Factor 2J - D for the squared-distance matrix D of a layout."""
    x = layout.positions
    x2 = x * x
    ones = np.ones_like(x)
    X = np.column_stack([ones, x2, x])
    Y = np.column_stack([2.0 * ones - x2, -ones, 2.0 * x])
    logger.debug(
        f"Line layout: n={layout.n} c={layout.cluster_size} "
        f"gap={layout.gap} eps={layout.eps:.3g}"
    )
    return EmbeddingPair(X=X, Y=Y, method=EmbeddingMethod.CONSTRUCTION)
