"""
Embedding Core - Exact Low-Rank Graph Embeddings

This package learns factorizations A = sigma(X Y^T) of graph adjacency
matrices with logistic PCA, builds the constructive low-rank embeddings
for clique unions and bounded-degree graphs, and evaluates reconstructions
(exactness, Frobenius error, degree and triangle recovery).
"""

__version__ = "1.0.1"
