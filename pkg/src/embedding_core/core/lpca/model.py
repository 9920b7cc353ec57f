"""
Embedding Models - Factor pairs, expected adjacency matrices and the
embedding container format.

Container layout (text):
    n k method
    <n rows of X>
    <n rows of Y>
with 17 significant digits per value so a save/load cycle is exact.
"""
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from ...shared_types import EmbeddingMethod, FloatArray, Provenance
from ..exceptions import EmbeddingFormatError, InvalidArgumentError
from ..linalg import parse_rows, write_rows

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmbeddingPair:
    """Factors X, Y in R^{n x k} with X Y^T approximating an adjacency matrix."""

    X: FloatArray = field(repr=False)
    Y: FloatArray = field(repr=False)
    method: EmbeddingMethod
    iterations_used: int = 0
    final_loss: Optional[float] = None
    seed: Optional[int] = None
    converged_reason: Optional[str] = None

    def __post_init__(self) -> None:
        X = np.atleast_2d(np.asarray(self.X, dtype=np.float64))
        Y = np.atleast_2d(np.asarray(self.Y, dtype=np.float64))
        if X.shape != Y.shape or X.ndim != 2:
            raise InvalidArgumentError(
                f"Factor shapes differ: X{X.shape} vs Y{Y.shape}",
                argument="Y",
                component="lpca",
            )
        if X.shape[1] < 1:
            raise InvalidArgumentError(
                "Embedding rank must be at least 1", argument="X", component="lpca"
            )
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
            raise InvalidArgumentError(
                "Factors must be finite", argument="X", component="lpca"
            )
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @property
    def n(self) -> int:
        return int(self.X.shape[0])

    @property
    def rank(self) -> int:
        return int(self.X.shape[1])

    def product(self, rows: slice = slice(None)) -> FloatArray:
        """Rows of X Y^T."""
        return self.X[rows] @ self.Y.T

    def with_metadata(self, **changes: Any) -> "EmbeddingPair":
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        """Metadata (factors excluded)."""
        return {
            "n": self.n,
            "rank": self.rank,
            "method": self.method.value,
            "iterations_used": self.iterations_used,
            "final_loss": self.final_loss,
            "seed": self.seed,
            "converged_reason": self.converged_reason,
        }


@dataclass(frozen=True)
class ExpectedAdjacency:
    """n x n matrix of edge probabilities in [0, 1]."""

    P: FloatArray = field(repr=False)
    provenance: Provenance
    self_loops: bool = False

    def __post_init__(self) -> None:
        P = np.asarray(self.P, dtype=np.float64)
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise InvalidArgumentError(
                "Expected adjacency must be square",
                argument="P",
                value=P.shape,
                component="evaluation",
            )
        if not np.all(np.isfinite(P)) or (P.size and (P.min() < 0 or P.max() > 1)):
            raise InvalidArgumentError(
                "Expected adjacency entries must be finite and lie in [0, 1]",
                argument="P",
                component="evaluation",
            )
        object.__setattr__(self, "P", P)

    @property
    def n(self) -> int:
        return int(self.P.shape[0])

    def symmetrized(self) -> FloatArray:
        """(P + P^T) / 2."""
        return (self.P + self.P.T) / 2.0

    def loopless(self) -> FloatArray:
        """Symmetrized P with a zero diagonal."""
        S = self.symmetrized()
        np.fill_diagonal(S, 0.0)
        return S

    @classmethod
    def from_graph(cls, graph: Any) -> "ExpectedAdjacency":
        """The true adjacency of a graph as a 0/1 expected adjacency."""
        return cls(
            P=graph.to_dense(),
            provenance=Provenance.TRUE_ADJACENCY,
            self_loops=graph.allow_self_loops,
        )


def save_embedding(embedding: EmbeddingPair, path: Union[str, Path]) -> Path:
    """Write an embedding container."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as fp:
        fp.write(f"{embedding.n} {embedding.rank} {embedding.method.value}\n")
        write_rows(fp, embedding.X)
        write_rows(fp, embedding.Y)
    logger.debug(f"Saved rank-{embedding.rank} embedding to {path}")
    return path


def load_embedding(path: Union[str, Path]) -> EmbeddingPair:
    """Read an embedding container written by save_embedding."""
    path = Path(path)
    try:
        lines = [line for line in path.read_text().splitlines() if line.strip()]
    except OSError as e:
        raise EmbeddingFormatError(
            f"Cannot read embedding '{path}': {e.strerror or e}", path=str(path)
        ) from e

    if not lines:
        raise EmbeddingFormatError(f"Embedding '{path}' is empty", path=str(path))

    header = lines[0].split()
    try:
        n, k, method = int(header[0]), int(header[1]), EmbeddingMethod(header[2])
    except (IndexError, ValueError) as e:
        raise EmbeddingFormatError(
            f"Bad embedding header '{lines[0]}' (expected 'n k method')",
            path=str(path),
        ) from e

    if len(lines) != 1 + 2 * n:
        raise EmbeddingFormatError(
            f"Embedding '{path}' has {len(lines) - 1} rows, expected {2 * n}",
            path=str(path),
        )
    try:
        X = parse_rows(lines[1 : 1 + n], k)
        Y = parse_rows(lines[1 + n :], k)
    except ValueError as e:
        raise EmbeddingFormatError(
            f"Malformed factor rows in '{path}': {e}", path=str(path)
        ) from e

    return EmbeddingPair(X=X, Y=Y, method=method)
