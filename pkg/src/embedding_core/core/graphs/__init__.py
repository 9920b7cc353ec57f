"""
Graph module for Embedding Core.

Immutable undirected graphs, edge-list I/O and synthetic graph families.
"""

from .edge_list import EdgeListOptions, load_edge_list, save_edge_list
from .generators import (
    chung_lu,
    clique_union,
    erdos_renyi,
    preferential_attachment,
    toy_graph,
)
from .graph import (
    DegreeSequence,
    Graph,
    GraphBuilder,
    GraphValidationResult,
    graph_from_dense,
)
from .stats import GraphStats, graph_stats

__all__ = [
    # Graph types
    "Graph",
    "GraphBuilder",
    "GraphValidationResult",
    "DegreeSequence",
    "graph_from_dense",
    # I/O
    "EdgeListOptions",
    "load_edge_list",
    "save_edge_list",
    # Generators
    "toy_graph",
    "clique_union",
    "erdos_renyi",
    "chung_lu",
    "preferential_attachment",
    # Statistics
    "GraphStats",
    "graph_stats",
]
