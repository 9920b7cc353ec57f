"""
Embedding Core - source root.

Exact and near-exact low-rank factorizations of graph adjacency matrices.
"""

__version__ = "1.0.1"
__author__ = "Embedding Core Team"
