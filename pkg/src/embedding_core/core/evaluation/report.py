"""
Evaluation Reports - One-call evaluation of an embedding against its graph.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

from pydantic import BaseModel, Field

from ...shared_types import DEFAULT_BLOCK_ROWS, FloatArray, ReconstructionMode
from ..graphs import DegreeSequence, Graph
from ..lpca import (
    EmbeddingPair,
    ExactnessReport,
    ExpectedAdjacency,
    default_mode,
    reconstruct,
    verify_exact,
)
from .metrics import (
    TriangleCurve,
    expected_degrees,
    expected_triangles_per_node,
    low_degree_triangle_curve,
    rel_frobenius_error,
    sequence_l1_error,
)

logger = logging.getLogger(__name__)


class EvalReport(BaseModel):
    """Scalar summary of an evaluated embedding."""

    graph: str
    n: int = Field(ge=0)
    method: str
    rank: int = Field(ge=1)
    mode: ReconstructionMode
    provenance: str
    exact: bool
    violations: int = Field(ge=0)
    worst_margin: float
    rel_frob_error: float
    degree_l1_error: float
    triangle_l1_error: float
    iterations: int = 0
    loss: Optional[float] = None
    seed: Optional[int] = None
    converged_reason: Optional[str] = None
    wall_time_s: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


@dataclass(frozen=True)
class GraphProfile:
    """Degree and triangle statistics of one (expected) adjacency matrix."""

    expected: ExpectedAdjacency
    degrees: DegreeSequence
    triangles: FloatArray
    curve: Optional[TriangleCurve] = None


@dataclass(frozen=True)
class Evaluation:
    """Report plus the reconstructed matrix and its statistics."""

    report: EvalReport
    exactness: ExactnessReport
    profile: GraphProfile
    truth: GraphProfile


def profile(
    expected: ExpectedAdjacency,
    caps: Optional[Sequence[float]] = None,
    label: str = "",
    rank: Optional[int] = None,
    block_rows: int = DEFAULT_BLOCK_ROWS,
    workers: Optional[int] = None,
) -> GraphProfile:
    """Expected degrees, per-node triangles and (with caps) the triangle curve."""
    degrees = expected_degrees(expected)
    triangles = expected_triangles_per_node(
        expected, block_rows=block_rows, workers=workers
    )
    curve = None
    if caps is not None:
        curve = low_degree_triangle_curve(
            expected, degrees, caps, label=label, rank=rank
        )
    return GraphProfile(
        expected=expected, degrees=degrees, triangles=triangles, curve=curve
    )


def true_profile(
    graph: Graph,
    caps: Optional[Sequence[float]] = None,
    block_rows: int = DEFAULT_BLOCK_ROWS,
    workers: Optional[int] = None,
) -> GraphProfile:
    """Profile of the true adjacency; its expected degrees are the true degrees."""
    return profile(
        ExpectedAdjacency.from_graph(graph),
        caps=caps,
        label="true",
        block_rows=block_rows,
        workers=workers,
    )


def evaluate_embedding(
    graph: Graph,
    embedding: EmbeddingPair,
    mode: Optional[ReconstructionMode] = None,
    caps: Optional[Sequence[float]] = None,
    truth: Optional[GraphProfile] = None,
    wall_time_s: Optional[float] = None,
    block_rows: int = DEFAULT_BLOCK_ROWS,
    workers: Optional[int] = None,
) -> Evaluation:
    """
    Verify, reconstruct and measure an embedding.

    Args:
        graph: True graph
        embedding: Embedding to evaluate
        mode: Reconstruction mode (default: threshold unless inexact LPCA)
        caps: Degree caps for the low-degree triangle curve
        truth: Precomputed true profile, reused across embeddings
        wall_time_s: Fit time to carry into the report
    """
    exactness = verify_exact(graph, embedding, block_rows=block_rows, workers=workers)
    mode = mode or default_mode(embedding, exactness.exact)
    expected = reconstruct(embedding, mode, self_loops=graph.allow_self_loops)

    if truth is None:
        truth = true_profile(graph, caps=caps, block_rows=block_rows, workers=workers)
    measured = profile(
        expected,
        caps=caps,
        label=embedding.method.value,
        rank=embedding.rank,
        block_rows=block_rows,
        workers=workers,
    )

    report = EvalReport(
        graph=graph.name,
        n=graph.n,
        method=embedding.method.value,
        rank=embedding.rank,
        mode=mode,
        provenance=expected.provenance.value,
        exact=exactness.exact,
        violations=exactness.violations,
        worst_margin=exactness.worst_margin,
        rel_frob_error=rel_frobenius_error(graph, expected),
        degree_l1_error=sequence_l1_error(
            truth.degrees.values, measured.degrees.values
        ),
        triangle_l1_error=sequence_l1_error(truth.triangles, measured.triangles),
        iterations=embedding.iterations_used,
        loss=embedding.final_loss,
        seed=embedding.seed,
        converged_reason=embedding.converged_reason,
        wall_time_s=wall_time_s,
    )
    logger.info(
        f"{report.method} rank {report.rank} on '{report.graph}': "
        f"exact={report.exact}, rel_frob_error={report.rel_frob_error:.4f}"
    )
    return Evaluation(
        report=report, exactness=exactness, profile=measured, truth=truth
    )
