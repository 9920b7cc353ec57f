"""
Exact Factorization Dimension - Smallest grid rank at which LPCA reproduces
a graph exactly, and the same search on degree- or density-matched random
graphs.
"""
import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field, field_validator

from ...shared_types import DEFAULT_RANK_GRID, BaselineKind, Seed
from ..exceptions import InvalidArgumentError
from ..graphs import DegreeSequence, Graph, chung_lu, erdos_renyi
from ..lpca import LPCASettings, lpca_fit_best

logger = logging.getLogger(__name__)


class SeedPolicy(BaseModel):
    """Seeds tried per rank: `seeds` consecutive values from `base_seed`."""

    seeds: int = Field(default=1, ge=1, description="Seeds tried before a rank fails")
    base_seed: int = Field(default=0, ge=0)

    def seed_list(self) -> List[int]:
        return list(range(self.base_seed, self.base_seed + self.seeds))


def _ascending(grid: List[int]) -> List[int]:
    if not grid:
        raise ValueError("rank grid must not be empty")
    if any(k < 1 for k in grid):
        raise ValueError("ranks must be at least 1")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("rank grid must be strictly ascending")
    return grid


class EFDSettings(BaseModel):
    """Rank grid, seed policy and LPCA settings of an EFD search."""

    rank_grid: List[int] = Field(default_factory=lambda: list(DEFAULT_RANK_GRID))
    seed_policy: SeedPolicy = Field(default_factory=SeedPolicy)
    lpca: LPCASettings = Field(default_factory=LPCASettings)

    @field_validator("rank_grid")
    @classmethod
    def validate_grid(cls, v: List[int]) -> List[int]:
        return _ascending(v)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


class BaselineSettings(BaseModel):
    """Random-graph baseline: model kind, trial count and generation seed."""

    kind: BaselineKind = BaselineKind.CHUNG_LU
    trials: int = Field(default=3, ge=1)
    seed: int = Field(default=0, ge=0, description="Seed of the first trial graph")


class RankOutcome(BaseModel):
    """Result of fitting one grid rank."""

    rank: int
    exact: bool
    iterations: int
    final_loss: Optional[float]
    seed: Optional[int]
    worst_margin: float
    violations: int
    wall_time_s: float
    trial: Optional[int] = None


class EfdResult(BaseModel):
    """Outcomes per tested rank and the resulting EFD (None when not found)."""

    graph: str
    rank_grid: List[int]
    outcomes: List[RankOutcome] = Field(default_factory=list)
    efd: Optional[int] = None
    baseline: Optional[BaselineKind] = None
    trial_efds: List[Optional[int]] = Field(default_factory=list)

    @property
    def efd_label(self) -> str:
        return str(self.efd) if self.efd is not None else "none"

    def to_dict(self) -> Dict[str, Any]:
        data = self.model_dump(mode="json")
        data["efd"] = self.efd_label
        return data


def efd_search(
    graph: Graph,
    rank_grid: Optional[Sequence[int]] = None,
    seed_policy: Optional[SeedPolicy] = None,
    settings: Optional[EFDSettings] = None,
    trial: Optional[int] = None,
) -> EfdResult:
    """
    Fit LPCA at each grid rank in ascending order, stopping at the first
    exact rank. Each rank gets every seed of the policy before it fails.
    """
    settings = settings or EFDSettings()
    grid = _grid(rank_grid, settings)
    policy = seed_policy or settings.seed_policy

    result = EfdResult(graph=graph.name, rank_grid=grid)
    for k in grid:
        if k > graph.n:
            logger.info(f"EFD '{graph.name}': rank {k} exceeds n={graph.n}; stopping")
            break
        fit = lpca_fit_best(graph, k, policy.seed_list(), settings.lpca)
        outcome = RankOutcome(
            rank=k,
            exact=fit.exact,
            iterations=fit.embedding.iterations_used,
            final_loss=fit.embedding.final_loss,
            seed=fit.embedding.seed,
            worst_margin=fit.exactness.worst_margin,
            violations=fit.exactness.violations,
            wall_time_s=fit.wall_time_s,
            trial=trial,
        )
        result.outcomes.append(outcome)
        logger.info(
            f"EFD '{graph.name}' rank {k}: exact={fit.exact} "
            f"({fit.exactness.violations} violations, {outcome.iterations} iterations)"
        )
        if fit.exact:
            result.efd = k
            break

    return result


def matched_random_graph(graph: Graph, kind: BaselineKind, seed: Seed) -> Graph:
    """Random graph matching the degree sequence (Chung-Lu) or edge count (ER)."""
    if kind is BaselineKind.CHUNG_LU:
        degrees = graph.loopless_adjacency().getnnz(axis=1).astype(np.float64)
        return chung_lu(DegreeSequence(degrees), seed=seed)
    loops = graph.num_self_loops
    return erdos_renyi(graph.n, float(graph.num_edges - loops), seed=seed)


def baseline_efd(
    graph: Graph,
    baseline: Optional[BaselineSettings] = None,
    rank_grid: Optional[Sequence[int]] = None,
    seed_policy: Optional[SeedPolicy] = None,
    settings: Optional[EFDSettings] = None,
) -> EfdResult:
    """
    EFD at which every one of `trials` matched random graphs factors exactly.

    Every trial is searched on its own; the baseline EFD is the largest
    trial EFD, or None when any trial exhausts the grid.
    """
    baseline = baseline or BaselineSettings()
    settings = settings or EFDSettings()
    grid = _grid(rank_grid, settings)

    result = EfdResult(
        graph=f"{graph.name}:{baseline.kind.value}",
        rank_grid=grid,
        baseline=baseline.kind,
    )
    for trial in range(baseline.trials):
        random_graph = matched_random_graph(graph, baseline.kind, baseline.seed + trial)
        trial_result = efd_search(
            random_graph,
            rank_grid=grid,
            seed_policy=seed_policy,
            settings=settings,
            trial=trial,
        )
        result.outcomes.extend(trial_result.outcomes)
        result.trial_efds.append(trial_result.efd)

    if all(efd is not None for efd in result.trial_efds):
        result.efd = max(efd for efd in result.trial_efds if efd is not None)
    logger.info(
        f"{baseline.kind.value} baseline for '{graph.name}': EFD {result.efd_label} "
        f"(trials: {result.trial_efds})"
    )
    return result


def _grid(rank_grid: Optional[Sequence[int]], settings: EFDSettings) -> List[int]:
    if rank_grid is None:
        return list(settings.rank_grid)
    try:
        return _ascending(list(rank_grid))
    except ValueError as e:
        raise InvalidArgumentError(
            str(e), argument="rank_grid", value=list(rank_grid), component="evaluation"
        ) from e
