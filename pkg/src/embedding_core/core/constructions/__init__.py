"""
Constructions module for Embedding Core.

Explicit exact embeddings: line clusters for clique unions (rank 3),
polynomial rows for bounded-degree graphs (rank 2c + 1) and binary codes for
clique unions (rank O(log n)), with exactness certificates.
"""

from .binary_clusters import BinaryEmbedding, CodeParameters, binary_cluster_construct
from .certificate import ConstructionCertificate, certify
from .clique_line import LineClusterLayout, clique_line_construct, layout_embedding
from .vandermonde import (
    MAX_NODES,
    MAX_ROOT_PAIRS,
    PolynomialBasis,
    rank_report,
    required_root_pairs,
    runs_of_ones,
    scaled_samples,
    vandermonde_construct,
)

__all__ = [
    # Line clusters
    "LineClusterLayout",
    "clique_line_construct",
    "layout_embedding",
    # Polynomial rows
    "MAX_NODES",
    "MAX_ROOT_PAIRS",
    "PolynomialBasis",
    "rank_report",
    "required_root_pairs",
    "runs_of_ones",
    "scaled_samples",
    "vandermonde_construct",
    # Binary codes
    "BinaryEmbedding",
    "CodeParameters",
    "binary_cluster_construct",
    # Certificates
    "ConstructionCertificate",
    "certify",
]
