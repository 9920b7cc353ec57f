"""
Reproduction module for Embedding Core.

Dataset registry with reference values, recipes for every evaluation
artifact and the manifest each recipe writes.
"""

from .datasets import DATASETS, DatasetSpec, get_dataset
from .manifest import Artifact, Manifest
from .recipes import (
    FIGURE1_REFERENCE,
    ReproduceConfig,
    figure4_ranks,
    parse_target,
    run_target,
)

__all__ = [
    "DATASETS",
    "DatasetSpec",
    "get_dataset",
    "Artifact",
    "Manifest",
    "FIGURE1_REFERENCE",
    "ReproduceConfig",
    "figure4_ranks",
    "parse_target",
    "run_target",
]
