"""
Evaluation module for Embedding Core.

Relative Frobenius error, expected degree and triangle statistics,
low-degree triangle curves, EFD searches with random-graph baselines and
result writers.
"""

from ..lpca import ExpectedAdjacency
from .efd import (
    BaselineSettings,
    EFDSettings,
    EfdResult,
    RankOutcome,
    SeedPolicy,
    baseline_efd,
    efd_search,
    matched_random_graph,
)
from .metrics import (
    TriangleCurve,
    expected_degrees,
    expected_triangles_per_node,
    low_degree_triangle_curve,
    rel_frobenius_error,
    rel_threshold_error,
    sequence_l1_error,
)
from .report import (
    EvalReport,
    Evaluation,
    GraphProfile,
    evaluate_embedding,
    profile,
    true_profile,
)
from .writers import write_curves_csv, write_json, write_matrix_csv, write_sequences_csv

__all__ = [
    # Metrics
    "ExpectedAdjacency",
    "TriangleCurve",
    "expected_degrees",
    "expected_triangles_per_node",
    "low_degree_triangle_curve",
    "rel_frobenius_error",
    "rel_threshold_error",
    "sequence_l1_error",
    # Reports
    "EvalReport",
    "Evaluation",
    "GraphProfile",
    "evaluate_embedding",
    "profile",
    "true_profile",
    # EFD
    "BaselineSettings",
    "EFDSettings",
    "EfdResult",
    "RankOutcome",
    "SeedPolicy",
    "baseline_efd",
    "efd_search",
    "matched_random_graph",
    # Writers
    "write_curves_csv",
    "write_json",
    "write_matrix_csv",
    "write_sequences_csv",
]
