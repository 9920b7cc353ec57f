"""
Embedding Types - Common types and enumerations for Embedding Core.

This module defines shared types, enumerations, and the base error class used
across all Embedding Core components.

Key Components:
- Method and provenance enumerations
- Base error class with CLI exit codes
- Type aliases and constants
"""
from datetime import datetime
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np
import numpy.typing as npt


class EmbeddingMethod(str, Enum):
    """How an embedding pair was produced."""

    LPCA = "lpca"
    TSVD = "tsvd"
    CONSTRUCTION = "construction"


class ReconstructionMode(str, Enum):
    """Entrywise map applied to X Y^T."""

    THRESHOLD = "threshold"
    LOGISTIC = "logistic"


class Provenance(str, Enum):
    """Origin of an expected adjacency matrix."""

    TRUE_ADJACENCY = "true-adjacency"
    TSVD_THRESHOLD = "tsvd-threshold"
    LPCA_LOGISTIC = "lpca-logistic"
    LPCA_THRESHOLD = "lpca-threshold"
    CONSTRUCTION_THRESHOLD = "construction-threshold"


class GraphFamily(str, Enum):
    """Synthetic graph families."""

    TOY = "toy"
    CLIQUES = "cliques"
    ER = "er"
    CHUNGLU = "chunglu"
    PA = "pa"


class ConstructionMethod(str, Enum):
    """Constructive embeddings."""

    CLIQUES_LINE = "cliques-line"
    VANDERMONDE = "vandermonde"
    BINARY = "binary"


class BaselineKind(str, Enum):
    """Random-graph baselines for the EFD protocol."""

    CHUNG_LU = "chung_lu"
    ERDOS_RENYI = "erdos_renyi"


class OutputFormat(str, Enum):
    """Result serialization formats."""

    JSON = "json"
    CSV = "csv"


class LogLevel(str, Enum):
    """Logging levels for the command line."""

    DEBUG = "debug"
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"
    CRITICAL = "critical"


# Base Error Classes
class EmbeddingError(Exception):
    """
    Base exception for all Embedding Core errors.

    Provides structured error information for debugging and for mapping
    failures onto command-line exit codes.
    """

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
        component: Optional[str] = None,
        recoverable: bool = False,
    ):
        super().__init__(message)
        self.message = message
        self.error_code = error_code or "EMBEDDING_ERROR"
        self.details = details or {}
        self.component = component or "unknown"
        self.recoverable = recoverable
        self.timestamp = datetime.utcnow()

    def to_dict(self) -> Dict[str, Any]:
        """Convert error to dictionary for serialization."""
        return {
            "error_code": self.error_code,
            "message": self.message,
            "component": self.component,
            "details": self.details,
            "recoverable": self.recoverable,
            "exit_code": self.exit_code,
            "timestamp": self.timestamp.isoformat(),
        }

    def __str__(self) -> str:
        return f"[{self.error_code}] {self.message}"


# Type Aliases
FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]
Seed = Optional[int]

# Constants
DEFAULT_MAX_ITERS = 2000
DEFAULT_BLOCK_ROWS = 512
DEFAULT_RANK_GRID = (16, 32, 48, 64, 80, 96, 112, 128, 144, 160)
DENSE_EIGEN_LIMIT = 4096
SYMMETRY_TOLERANCE = 1e-10
NEAR_EXACT_TOLERANCE = 1e-9

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4

# Environment
ENV_OUT_DIR = "EMBEDDING_CORE_OUT_DIR"
ENV_DATA_DIR = "EMBEDDING_CORE_DATA_DIR"
