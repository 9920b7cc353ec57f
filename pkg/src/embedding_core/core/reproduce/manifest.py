"""
Reproduction Manifest - Index of every artifact a recipe wrote.
"""
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List

from pydantic import BaseModel, Field

from ..evaluation import write_json

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


class Artifact(BaseModel):
    """One file written by a recipe."""

    path: str
    kind: str = Field(description="csv or json")
    description: str = ""


class Manifest(BaseModel):
    """Artifacts, reference values and computed values of one recipe run."""

    target: str
    out_dir: str
    created_at: str = Field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat()
    )
    artifacts: List[Artifact] = Field(default_factory=list)
    reference: Dict[str, Any] = Field(default_factory=dict)
    computed: Dict[str, Any] = Field(default_factory=dict)
    skipped: List[str] = Field(default_factory=list)
    config: Dict[str, Any] = Field(default_factory=dict)

    def add(self, path: Path, description: str = "") -> Path:
        """Record a written file (relative to out_dir when possible)."""
        try:
            shown = str(Path(path).relative_to(self.out_dir))
        except ValueError:
            shown = str(path)
        self.artifacts.append(
            Artifact(
                path=shown,
                kind=Path(path).suffix.lstrip("."),
                description=description,
            )
        )
        return path

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    def write(self) -> Path:
        path = write_json(self.to_dict(), Path(self.out_dir) / MANIFEST_NAME)
        logger.info(f"Manifest for {self.target}: {len(self.artifacts)} artifacts")
        return path
