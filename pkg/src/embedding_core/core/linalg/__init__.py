"""
Linear algebra module for Embedding Core.

Symmetric top-k eigensolver, L-BFGS minimizer, gradient checker, row-block
execution helpers and matrix text I/O.
"""

from .blocks import default_workers, map_blocks, row_blocks
from .eigensolver import EigenPairs, top_k_eigs
from .gradcheck import GradientCheck, check_gradient
from .matrix_io import dump_matrix, load_matrix, parse_rows, write_rows
from .optimizer import (
    ConvergenceReason,
    LBFGSSettings,
    LossAndGradient,
    OptimizeOutcome,
    lbfgs_minimize,
)

__all__ = [
    # Eigensolver
    "EigenPairs",
    "top_k_eigs",
    # Optimizer
    "ConvergenceReason",
    "LBFGSSettings",
    "LossAndGradient",
    "OptimizeOutcome",
    "lbfgs_minimize",
    # Gradient checking
    "GradientCheck",
    "check_gradient",
    # Row blocks
    "default_workers",
    "map_blocks",
    "row_blocks",
    # Matrix I/O
    "dump_matrix",
    "load_matrix",
    "parse_rows",
    "write_rows",
]
