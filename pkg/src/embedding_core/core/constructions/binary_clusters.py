"""
Binary Cluster Construction - Exact embedding of a clique union through
sparse binary codes.

Every node gets a row of U in {0,1}^{n x k} with w = ceil(2 ln n) ones,
k = ceil(d ln n). Rows of one cluster are perturbations of a random center
row: each member keeps all but s = floor(ln n / 3) of the center's ones.
With L = ceil(ln n) and M = I - J / (4L),

    [U M U^T]_ij = u_i . u_j - w^2 / (4L)

is at least 1 inside a cluster and at most 0 across clusters provided
centers overlap in at most floor(w^2 / (4L)) - 2s positions. Centers are
resampled until that holds; the finished embedding is verified against
the clique union (with unit diagonal) and the whole draw is retried on
failure.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from ...shared_types import EmbeddingMethod, FloatArray, IntArray, Seed
from ..exceptions import ConstructionError, InvalidArgumentError
from ..graphs import Graph, clique_union
from ..lpca import EmbeddingPair, verify_exact

logger = logging.getLogger(__name__)

DEFAULT_OVERSAMPLING = 8.0
DEFAULT_MAX_RETRIES = 10
CENTER_DRAWS = 200_000


class _ResampleNeeded(Exception):
    """A draw of centers or members failed validation."""


@dataclass(frozen=True)
class CodeParameters:
    """Integer constants of the construction for a given n and d."""

    n: int
    c: int
    d: float
    log_n: float
    rounded_log: int
    nnz_per_row: int
    k: int
    perturbed: int
    overlap_limit: int

    @classmethod
    def for_size(cls, n: int, c: int, d: float) -> "CodeParameters":
        log_n = math.log(n)
        rounded_log = math.ceil(log_n)
        nnz = math.ceil(2.0 * log_n)
        perturbed = math.floor(log_n / 3.0)
        offset = nnz * nnz / (4.0 * rounded_log)
        return cls(
            n=n,
            c=c,
            d=d,
            log_n=log_n,
            rounded_log=rounded_log,
            nnz_per_row=nnz,
            k=math.ceil(d * log_n),
            perturbed=perturbed,
            overlap_limit=math.floor(offset) - 2 * perturbed,
        )

    @property
    def offset(self) -> float:
        """w^2 / (4L), subtracted from every dot product by M."""
        return self.nnz_per_row**2 / (4.0 * self.rounded_log)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "c": self.c,
            "d": self.d,
            "log_n": self.log_n,
            "nnz_per_row": self.nnz_per_row,
            "k": self.k,
            "perturbed": self.perturbed,
            "overlap_limit": self.overlap_limit,
        }


@dataclass(frozen=True)
class BinaryEmbedding:
    """Binary codes U, mixing matrix M and the factor pair X = U, Y = U M^T."""

    U: IntArray = field(repr=False)
    M: FloatArray = field(repr=False)
    centers: IntArray = field(repr=False)
    embedding: EmbeddingPair
    parameters: CodeParameters
    attempts: int
    centers_as_nodes: bool = False

    @property
    def k(self) -> int:
        return int(self.U.shape[1])

    @property
    def nnz_per_row(self) -> int:
        return self.parameters.nnz_per_row

    def target(self) -> Graph:
        """Clique union the construction realizes, loops on the diagonal."""
        return clique_union(self.parameters.n, self.parameters.c, self_loops=True)


def binary_cluster_construct(
    n: int,
    c: int,
    d: float = DEFAULT_OVERSAMPLING,
    seed: Seed = None,
    max_retries: int = DEFAULT_MAX_RETRIES,
    centers_as_nodes: bool = False,
) -> BinaryEmbedding:
    """
    Sample a binary-code embedding of n/c disjoint c-cliques.

    Cluster g occupies nodes g*c .. g*c + c - 1. With centers_as_nodes the
    first node of every cluster is the center row itself; that variant is
    returned without an exactness check.

    Raises:
        InvalidArgumentError: c does not divide n, or n < 2
        ConstructionError: no valid draw within max_retries
    """
    if n < 2 or c < 1 or n % c != 0:
        raise InvalidArgumentError(
            f"Need n >= 2 and c dividing n (n={n}, c={c})",
            argument="c",
            value=c,
            component="constructions",
        )
    if d <= 0:
        raise InvalidArgumentError(
            "Oversampling constant must be positive",
            argument="d",
            value=d,
            component="constructions",
        )

    params = CodeParameters.for_size(n, c, d)
    _check_feasible(params)

    rng = np.random.default_rng(seed)
    M = np.eye(params.k) - np.ones((params.k, params.k)) / (4.0 * params.rounded_log)
    target = clique_union(n, c, self_loops=True)
    attempts = 0

    def draw() -> BinaryEmbedding:
        nonlocal attempts
        attempts += 1
        centers = _sample_centers(params, rng)
        U = _sample_members(params, centers, rng, centers_as_nodes)
        X = U.astype(np.float64)
        embedding = EmbeddingPair(X=X, Y=X @ M.T, method=EmbeddingMethod.CONSTRUCTION)
        if not centers_as_nodes and not verify_exact(target, embedding).exact:
            raise _ResampleNeeded("sampled codes do not reproduce the clique union")
        return BinaryEmbedding(
            U=U,
            M=M,
            centers=centers,
            embedding=embedding,
            parameters=params,
            attempts=attempts,
            centers_as_nodes=centers_as_nodes,
        )

    retrying = Retrying(
        stop=stop_after_attempt(max_retries),
        retry=retry_if_exception_type(_ResampleNeeded),
        before_sleep=lambda state: logger.warning(
            f"Binary construction draw {state.attempt_number} rejected; resampling"
        ),
    )
    try:
        result = retrying(draw)
    except RetryError as e:
        raise ConstructionError(
            f"No valid binary code for n={n}, c={c}, d={d} "
            f"after {max_retries} draws",
            method="binary",
            suggestions=[f"increase d above {d}", "raise max_retries"],
        ) from e

    logger.info(
        f"Binary construction n={n} c={c}: k={params.k}, "
        f"{params.nnz_per_row} ones per row, {result.attempts} draw(s)"
    )
    return result


def _check_feasible(params: CodeParameters) -> None:
    if params.nnz_per_row + params.perturbed > params.k:
        raise ConstructionError(
            f"k={params.k} positions cannot hold {params.nnz_per_row} ones "
            f"plus {params.perturbed} moved ones",
            method="binary",
            suggestions=[f"increase d above {params.d}"],
        )
    within = params.nnz_per_row - 2 * params.perturbed - params.offset
    if params.overlap_limit < 0 or within < 1.0:
        raise ConstructionError(
            f"n={params.n} is too small for the code margins "
            f"(overlap limit {params.overlap_limit}, in-cluster margin {within:.3g})",
            method="binary",
            suggestions=["use a larger n"],
        )


def _sample_centers(params: CodeParameters, rng: np.random.Generator) -> IntArray:
    """Greedily draw n/c rows with pairwise overlap within the limit."""
    clusters = params.n // params.c
    centers = np.zeros((clusters, params.k), dtype=np.int64)

    for g in range(clusters):
        for _ in range(CENTER_DRAWS):
            support = rng.choice(params.k, size=params.nnz_per_row, replace=False)
            overlaps = centers[:g, support].sum(axis=1)
            if overlaps.size == 0 or overlaps.max() <= params.overlap_limit:
                centers[g, support] = 1
                break
        else:
            raise _ResampleNeeded(f"no admissible center {g} in {CENTER_DRAWS} draws")
    return centers


def _sample_members(
    params: CodeParameters,
    centers: IntArray,
    rng: np.random.Generator,
    centers_as_nodes: bool,
) -> IntArray:
    """c rows per center, each moving `perturbed` of the center's ones."""
    rows: List[IntArray] = []
    for center in centers:
        inside = np.flatnonzero(center)
        outside = np.flatnonzero(center == 0)
        for member in range(params.c):
            row = center.copy()
            if not (centers_as_nodes and member == 0):
                dropped = rng.choice(inside, size=params.perturbed, replace=False)
                added = rng.choice(outside, size=params.perturbed, replace=False)
                row[dropped] = 0
                row[added] = 1
            rows.append(row)
    return np.vstack(rows)
