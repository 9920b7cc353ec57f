"""
CLI Configuration - Validated run configuration and logging setup.
"""
import logging
import os
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, TypeVar

from pydantic import BaseModel, Field, field_validator, model_validator
from rich.console import Console
from rich.logging import RichHandler

from ..core.exceptions import InvalidArgumentError
from ..core.linalg import LBFGSSettings
from ..core.lpca import LPCASettings
from ..shared_types import (
    DEFAULT_MAX_ITERS,
    ENV_OUT_DIR,
    EmbeddingMethod,
    LogLevel,
    OutputFormat,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")

err_console = Console(stderr=True)


def configure_logging(level: LogLevel = LogLevel.WARNING) -> None:
    """Route all library logging through a RichHandler on stderr."""
    logging.basicConfig(
        level=level.value.upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[
            RichHandler(console=err_console, rich_tracebacks=True, show_path=False)
        ],
        force=True,
    )


def default_out_dir() -> Path:
    return Path(os.environ.get(ENV_OUT_DIR, "results"))


def _parse_list(text: Optional[str], kind: Callable[[str], T]) -> Optional[List[T]]:
    if text is None or not text.strip():
        return None
    try:
        return [kind(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise InvalidArgumentError(
            f"Cannot parse list '{text}': {e}", value=text, component="cli"
        ) from e


def parse_int_list(text: Optional[str]) -> Optional[List[int]]:
    """'16,32,48' -> [16, 32, 48]."""
    return _parse_list(text, int)


def parse_float_list(text: Optional[str]) -> Optional[List[float]]:
    return _parse_list(text, float)


class RunConfig(BaseModel):
    """One CLI invocation, validated before any compute starts."""

    subcommand: str
    graph: Optional[Path] = None
    embedding: Optional[Path] = None
    out_dir: Path = Field(default_factory=default_out_dir)
    method: Optional[EmbeddingMethod] = None
    rank: Optional[int] = Field(default=None, ge=1)
    rank_grid: Optional[List[int]] = None
    seed: Optional[int] = Field(default=None, ge=0)
    seeds: int = Field(default=1, ge=1)
    max_iters: int = Field(default=DEFAULT_MAX_ITERS, ge=1)
    threads: Optional[int] = Field(default=None, ge=1)
    output_format: OutputFormat = OutputFormat.JSON

    @field_validator("graph", "embedding")
    @classmethod
    def validate_input_path(cls, v: Optional[Path]) -> Optional[Path]:
        if v is not None and not v.is_file():
            raise ValueError(f"input file '{v}' does not exist")
        return v

    @field_validator("rank_grid")
    @classmethod
    def validate_grid(cls, v: Optional[List[int]]) -> Optional[List[int]]:
        if v is None:
            return v
        if not v or any(k < 1 for k in v):
            raise ValueError("rank grid entries must be positive")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("rank grid must be strictly ascending")
        return v

    @model_validator(mode="after")
    def validate_method_rank(self) -> "RunConfig":
        if self.method is not None and self.rank is None:
            raise ValueError(f"--rank is required for method '{self.method.value}'")
        return self

    def lpca_settings(self) -> LPCASettings:
        return LPCASettings(
            seed=self.seed,
            restarts=self.seeds,
            workers=self.threads,
            optimizer=LBFGSSettings(max_iters=self.max_iters),
        )

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")
