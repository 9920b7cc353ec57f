"""
Graph Statistics - Summary numbers reported next to factorization results.
"""
from dataclasses import asdict, dataclass
from typing import Any, Dict

import numpy as np

from .graph import DegreeSequence, Graph


@dataclass(frozen=True)
class GraphStats:
    """Size, degree and triangle summary of a graph."""

    name: str
    n: int
    edges: int
    mean_degree: float
    max_degree: int
    p95_degree: float
    triangles: int
    bounded_degree_rank: int

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def graph_stats(graph: Graph) -> GraphStats:
    """
    Summarize a graph, ignoring self-loops.

    bounded_degree_rank is 2 * max_degree + 1, the rank at which the
    polynomial construction factors any graph of that maximum degree exactly.
    """
    degrees = DegreeSequence(
        graph.loopless_adjacency().getnnz(axis=1).astype(np.float64)
    )
    max_degree = int(degrees.maximum)
    return GraphStats(
        name=graph.name,
        n=graph.n,
        edges=graph.num_edges - graph.num_self_loops,
        mean_degree=degrees.mean,
        max_degree=max_degree,
        p95_degree=degrees.percentile(95),
        triangles=graph.triangle_count(),
        bounded_degree_rank=2 * max_degree + 1,
    )
