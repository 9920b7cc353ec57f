"""
Shared Types module for Embedding Core.

This module contains common types, enumerations, and base classes used across
all Embedding Core components.
"""

from .embedding_types import (  # Enumerations; Base classes; Type aliases; Constants
    DEFAULT_BLOCK_ROWS,
    DEFAULT_MAX_ITERS,
    DEFAULT_RANK_GRID,
    DENSE_EIGEN_LIMIT,
    ENV_DATA_DIR,
    ENV_OUT_DIR,
    EXIT_DATA,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    NEAR_EXACT_TOLERANCE,
    SYMMETRY_TOLERANCE,
    BaselineKind,
    ConstructionMethod,
    EmbeddingError,
    EmbeddingMethod,
    FloatArray,
    GraphFamily,
    IntArray,
    LogLevel,
    OutputFormat,
    Provenance,
    ReconstructionMode,
    Seed,
)

__all__ = [
    # Enumerations
    "EmbeddingMethod",
    "ReconstructionMode",
    "Provenance",
    "GraphFamily",
    "ConstructionMethod",
    "BaselineKind",
    "OutputFormat",
    "LogLevel",
    # Base classes
    "EmbeddingError",
    # Type aliases
    "FloatArray",
    "IntArray",
    "Seed",
    # Constants
    "DEFAULT_MAX_ITERS",
    "DEFAULT_BLOCK_ROWS",
    "DEFAULT_RANK_GRID",
    "DENSE_EIGEN_LIMIT",
    "SYMMETRY_TOLERANCE",
    "NEAR_EXACT_TOLERANCE",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_DATA",
    "EXIT_NUMERICAL",
    "ENV_OUT_DIR",
    "ENV_DATA_DIR",
]
