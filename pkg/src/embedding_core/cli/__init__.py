"""
Command-line interface for Embedding Core.
"""

from .config import RunConfig, configure_logging
from .main import app, run

__all__ = ["app", "run", "RunConfig", "configure_logging"]
