"""
Core module for Embedding Core.

Graphs, linear algebra, logistic PCA, the TSVD baseline, constructive
embeddings, evaluation metrics and reproduction recipes.
"""
