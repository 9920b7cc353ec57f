"""
Logistic PCA module for Embedding Core.

Loss and gradient, L-BFGS training, exactness checks, reconstruction and the
embedding container.
"""

from .exactness import ExactnessReport, default_mode, reconstruct, verify_exact
from .fit import FitResult, LPCASettings, lpca_fit, lpca_fit_best, lpca_fit_checked
from .loss import (
    LossGradient,
    ShiftedAdjacency,
    flat_objective,
    flatten,
    lpca_loss_grad,
    softplus,
    unflatten,
)
from .model import EmbeddingPair, ExpectedAdjacency, load_embedding, save_embedding

__all__ = [
    # Models
    "EmbeddingPair",
    "ExpectedAdjacency",
    "load_embedding",
    "save_embedding",
    # Loss
    "LossGradient",
    "ShiftedAdjacency",
    "flat_objective",
    "flatten",
    "lpca_loss_grad",
    "softplus",
    "unflatten",
    # Training
    "FitResult",
    "LPCASettings",
    "lpca_fit",
    "lpca_fit_best",
    "lpca_fit_checked",
    # Exactness
    "ExactnessReport",
    "default_mode",
    "reconstruct",
    "verify_exact",
]
