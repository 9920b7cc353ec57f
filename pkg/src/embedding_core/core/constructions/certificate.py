"""
Construction Certificates - Exactness evidence for constructive embeddings.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, Field

from ...shared_types import ConstructionMethod
from ..graphs import Graph
from ..lpca import EmbeddingPair, verify_exact

logger = logging.getLogger(__name__)


class ConstructionCertificate(BaseModel):
    """Verdict of verify_exact for one constructed embedding."""

    method: ConstructionMethod
    n: int = Field(ge=1)
    k: int = Field(ge=1)
    target: str = Field(description="Name of the target graph")
    exact: bool
    worst_margin: float
    violations: int = Field(ge=0)
    near_exact_violations: int = Field(ge=0)
    diagonal_masked_exact: Optional[bool] = Field(
        default=None, description="Verdict with the diagonal excluded"
    )
    details: Dict[str, Any] = Field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(), indent=2) + "\n")
        return path


def certify(
    target: Graph,
    embedding: EmbeddingPair,
    method: ConstructionMethod,
    check_masked: bool = False,
    details: Optional[Dict[str, Any]] = None,
) -> ConstructionCertificate:
    """Run verify_exact (and optionally the diagonal-masked variant)."""
    report = verify_exact(target, embedding)
    masked = None
    if check_masked:
        masked = verify_exact(target, embedding, mask_diagonal=True)

    certificate = ConstructionCertificate(
        method=method,
        n=embedding.n,
        k=embedding.rank,
        target=target.name,
        exact=report.exact,
        worst_margin=report.worst_margin,
        violations=report.violations,
        near_exact_violations=report.near_exact_violations,
        diagonal_masked_exact=masked.exact if masked is not None else None,
        details=details or {},
    )
    logger.info(
        f"{method.value} construction on '{target.name}': exact={certificate.exact}, "
        f"k={certificate.k}, worst margin {certificate.worst_margin:.4g}"
    )
    return certificate
