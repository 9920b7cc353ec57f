"""
Truncated SVD module for Embedding Core.

Spectral baseline embedding reconstructed by thresholding.
"""

from .tsvd import spectral_factors, tsvd_fit, unthresholded_error

__all__ = [
    "spectral_factors",
    "tsvd_fit",
    "unthresholded_error",
]
