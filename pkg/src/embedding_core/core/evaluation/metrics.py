"""
Reconstruction Metrics - Error, degree and triangle statistics of expected
adjacency matrices.

Degree and triangle statistics work on the symmetrized matrix (P + P^T) / 2.
Triangle statistics always drop the diagonal; degrees keep it only when the
graph family allows self-loops.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ...shared_types import DEFAULT_BLOCK_ROWS, FloatArray
from ..exceptions import InvalidArgumentError, InvalidDataError
from ..graphs import DegreeSequence, Graph
from ..linalg import map_blocks, row_blocks
from ..lpca import EmbeddingPair, ExpectedAdjacency

logger = logging.getLogger(__name__)

# slack allowed when checking that a curve never decreases
CURVE_TOLERANCE = 1e-9


def _check_error_inputs(graph: Graph, n: int, what: str) -> None:
    if n != graph.n:
        raise InvalidDataError(
            f"{what} has {n} nodes, graph has {graph.n}",
            argument="expected",
            component="evaluation",
        )
    if graph.adjacency.nnz == 0:
        raise InvalidDataError(
            "Relative error is undefined for a graph without edges",
            argument="graph",
            value=graph.name,
            component="evaluation",
        )


def rel_frobenius_error(graph: Graph, expected: ExpectedAdjacency) -> float:
    """
    ||P - A||_F / ||A||_F over the full matrices, diagonal included.

    Raises:
        InvalidDataError: size mismatch, or a graph without edges
    """
    _check_error_inputs(graph, expected.n, "Expected adjacency")

    diff = expected.P.copy()
    coo = graph.adjacency.tocoo()
    diff[coo.row, coo.col] -= 1.0
    return float(np.linalg.norm(diff) / np.sqrt(graph.adjacency.nnz))


def rel_threshold_error(
    graph: Graph,
    embedding: EmbeddingPair,
    block_rows: int = DEFAULT_BLOCK_ROWS,
    workers: Optional[int] = None,
) -> float:
    """
    rel_frobenius_error of the threshold reconstruction, one row block at a
    time, without materializing the n x n matrix.
    """
    _check_error_inputs(graph, embedding.n, "Embedding")

    def block_squares(rows: slice) -> float:
        diff = np.clip(embedding.product(rows), 0.0, 1.0)
        diff -= graph.adjacency[rows].toarray()
        return float(np.sum(diff * diff))

    parts = map_blocks(block_squares, row_blocks(graph.n, block_rows), workers)
    return float(np.sqrt(sum(parts) / graph.adjacency.nnz))


def expected_degrees(expected: ExpectedAdjacency) -> DegreeSequence:
    """Row sums of the symmetrized P."""
    S = expected.symmetrized() if expected.self_loops else expected.loopless()
    return DegreeSequence(S.sum(axis=1))


def expected_triangles_per_node(
    expected: ExpectedAdjacency,
    block_rows: int = DEFAULT_BLOCK_ROWS,
    workers: Optional[int] = None,
) -> FloatArray:
    """
    Expected triangles through every node: (1/2) diag(S^3), S loopless.

    For a 0/1 matrix this is the exact triangle count per node.
    """
    S = expected.loopless()

    def block_diag(rows: slice) -> FloatArray:
        return ((S[rows] @ S) * S[rows]).sum(axis=1)

    parts = map_blocks(block_diag, row_blocks(S.shape[0], block_rows), workers)
    if not parts:
        return np.zeros(0, dtype=np.float64)
    return np.concatenate(parts) / 2.0


@dataclass(frozen=True)
class TriangleCurve:
    """Normalized triangle counts of the subgraphs of degree at most each cap."""

    caps: FloatArray
    values: FloatArray
    n: int
    label: str = ""
    rank: Optional[int] = None
    members: List[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        caps = np.asarray(self.caps, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        if caps.shape != values.shape:
            raise InvalidArgumentError(
                "Curve caps and values differ in length",
                argument="values",
                component="evaluation",
            )
        scale = max(float(values.max()) if values.size else 0.0, 1.0)
        if values.size and (
            values.min() < 0 or np.any(np.diff(values) < -CURVE_TOLERANCE * scale)
        ):
            raise InvalidArgumentError(
                "Triangle curve must be non-negative and non-decreasing",
                argument="values",
                component="evaluation",
            )
        object.__setattr__(self, "caps", caps)
        object.__setattr__(self, "values", values)

    @property
    def single_triangle_level(self) -> float:
        """1/n: the value of one triangle after normalization."""
        return 1.0 / self.n if self.n else 0.0

    def rows(self) -> List[Dict[str, Any]]:
        """Plot-ready rows: cap, value, method, rank."""
        return [
            {"cap": cap, "value": value, "method": self.label, "rank": self.rank}
            for cap, value in zip(self.caps.tolist(), self.values.tolist())
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "rank": self.rank,
            "n": self.n,
            "caps": self.caps.tolist(),
            "values": self.values.tolist(),
            "members": self.members,
            "single_triangle_level": self.single_triangle_level,
        }


def low_degree_triangle_curve(
    expected: ExpectedAdjacency,
    degrees: DegreeSequence,
    caps: Sequence[float],
    label: str = "",
    rank: Optional[int] = None,
) -> TriangleCurve:
    """
    For every cap c, (1/n) * expected triangles among nodes of degree <= c,
    via trace(S_c^3) / 6 on the loopless symmetrized submatrix.

    Raises:
        InvalidArgumentError: caps not strictly ascending, or degrees of the
            wrong length
    """
    caps_array = np.asarray(list(caps), dtype=np.float64)
    if caps_array.size and np.any(np.diff(caps_array) <= 0):
        raise InvalidArgumentError(
            "Degree caps must be strictly ascending",
            argument="caps",
            value=list(caps),
            component="evaluation",
        )
    n = expected.n
    if len(degrees) != n:
        raise InvalidArgumentError(
            f"Degree sequence has {len(degrees)} entries, expected {n}",
            argument="degrees",
            component="evaluation",
        )

    S = expected.loopless()
    values: List[float] = []
    members: List[int] = []
    for cap in caps_array:
        keep = np.flatnonzero(degrees.values <= cap)
        members.append(int(keep.size))
        if keep.size < 3:
            values.append(0.0)
            continue
        sub = S[np.ix_(keep, keep)]
        values.append(float(((sub @ sub) * sub).sum()) / 6.0 / n)

    logger.debug(f"Triangle curve '{label}': {len(values)} caps, n={n}")
    return TriangleCurve(
        caps=caps_array,
        values=np.asarray(values),
        n=n,
        label=label,
        rank=rank,
        members=members,
    )


def sequence_l1_error(reference: FloatArray, estimate: FloatArray) -> float:
    """
    L1 distance between the descending-sorted sequences relative to the
    reference total. Zero when both are all zero, infinite when only the
    reference is.
    """
    ref = np.sort(np.asarray(reference, dtype=np.float64))[::-1]
    est = np.sort(np.asarray(estimate, dtype=np.float64))[::-1]
    if ref.shape != est.shape:
        raise InvalidArgumentError(
            "Sequences differ in length", argument="estimate", component="evaluation"
        )
    distance = float(np.abs(ref - est).sum())
    total = float(np.abs(ref).sum())
    if total == 0.0:
        return 0.0 if distance == 0.0 else float("inf")
    return distance / total
