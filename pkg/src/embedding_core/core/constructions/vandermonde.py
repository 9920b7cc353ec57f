"""
Vandermonde Construction - Exact embedding of a bounded-degree graph.

Row i of the adjacency matrix is realized by a polynomial p_i of degree at
most 2c that is positive exactly on the columns where row i has ones:

- sample points are node positions t = 1..n mapped to t' = (2t - n - 1) / n
- each maximal run of ones t_a..t_b gets the root pair t_a - 1/2, t_b + 1/2
- the sign is chosen so p_i is positive on the ones, and the coefficients
  are scaled so the smallest value on a one is at least 1

X holds the coefficients and Y the basis functions evaluated at the sample
points, so [X Y^T]_ij = p_i(t'_j) and k = 2c + 1. Unused high-order
coefficients stay zero (padding roots at infinity).
"""
import logging
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from numpy.polynomial import chebyshev, polynomial

from ...shared_types import EmbeddingMethod, FloatArray, IntArray
from ..exceptions import ConstructionError, InvalidArgumentError, InvalidDataError
from ..graphs import Graph
from ..lpca import EmbeddingPair

logger = logging.getLogger(__name__)

MAX_NODES = 4096
MAX_ROOT_PAIRS = 16

# scaling headroom so rounding in X Y^T cannot pull a one below 1
SCALE_HEADROOM = 1.0 + 1e-9


class PolynomialBasis(str, Enum):
    """Basis in which row polynomials are expanded."""

    MONOMIAL = "monomial"
    CHEBYSHEV = "chebyshev"


def scaled_samples(n: int) -> FloatArray:
    """t' = (2t - n - 1) / n for t = 1..n, inside (-1, 1)."""
    t = np.arange(1, n + 1, dtype=np.float64)
    return (2.0 * t - n - 1.0) / n


def runs_of_ones(columns: IntArray) -> List[Tuple[int, int]]:
    """Maximal runs of consecutive column indices as (first, last)."""
    if columns.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(columns) > 1)
    starts = np.concatenate([[columns[0]], columns[breaks + 1]])
    ends = np.concatenate([columns[breaks], [columns[-1]]])
    return [(int(a), int(b)) for a, b in zip(starts, ends)]


def run_roots(runs: List[Tuple[int, int]], n: int) -> FloatArray:
    """Scaled root pair straddling every run of 0-based columns."""
    roots: List[float] = []
    for first, last in runs:
        # column j sits at t = j + 1
        roots.extend([first + 0.5, last + 1.5])
    t = np.asarray(roots, dtype=np.float64)
    return (2.0 * t - n - 1.0) / n


def required_root_pairs(graph: Graph) -> int:
    """Largest number of runs of ones in any adjacency row."""
    return max(
        (len(runs_of_ones(graph.neighbors(i))) for i in range(graph.n)), default=0
    )


def basis_matrix(
    samples: FloatArray, degree: int, basis: PolynomialBasis
) -> FloatArray:
    if basis is PolynomialBasis.CHEBYSHEV:
        return chebyshev.chebvander(samples, degree)
    return polynomial.polyvander(samples, degree)


def vandermonde_construct(
    graph: Graph,
    c: Optional[int] = None,
    basis: PolynomialBasis = PolynomialBasis.MONOMIAL,
) -> EmbeddingPair:
    """
    Rank-(2c+1) embedding with sigma(X Y^T) equal to the adjacency of graph.

    A row's polynomial needs one root pair per run of consecutive ones, so the
    budget c is checked against the number of runs rather than the degree;
    runs never outnumber the degree, and c defaults to the max degree.

    Args:
        graph: Target graph, self-loops allowed
        c: Root-pair budget per row (default: the graph's max degree)
        basis: Polynomial basis for the coefficient rows

    Raises:
        InvalidArgumentError: c is outside 1..MAX_ROOT_PAIRS, or a row has
            more than c runs of ones
        InvalidDataError: the graph exceeds MAX_NODES, or its max degree
            exceeds MAX_ROOT_PAIRS when c is left to default
        ConstructionError: a row misses its margin in double precision
    """
    n = graph.n
    if n > MAX_NODES:
        raise InvalidDataError(
            f"Vandermonde construction is capped at {MAX_NODES} nodes",
            argument="graph",
            value=n,
            component="constructions",
        )
    if c is None:
        c = max(graph.max_degree, 1)
        if c > MAX_ROOT_PAIRS:
            raise InvalidDataError(
                f"Max degree {c} exceeds the supported maximum of "
                f"{MAX_ROOT_PAIRS} root pairs; pass a smaller c if rows have "
                f"fewer runs of ones",
                argument="graph",
                value=c,
                component="constructions",
            )
    elif not 1 <= c <= MAX_ROOT_PAIRS:
        raise InvalidArgumentError(
            f"Root-pair budget c={c} is outside the supported range "
            f"1..{MAX_ROOT_PAIRS}",
            argument="c",
            value=c,
            component="constructions",
        )

    needed = required_root_pairs(graph)
    if needed > c:
        raise InvalidArgumentError(
            f"Some row has {needed} runs of ones but c={c}",
            argument="c",
            value=c,
            component="constructions",
        )

    degree = 2 * c
    V = basis_matrix(scaled_samples(n), degree, basis)
    from_roots = (
        chebyshev.chebfromroots
        if basis is PolynomialBasis.CHEBYSHEV
        else polynomial.polyfromroots
    )

    X = np.zeros((n, degree + 1), dtype=np.float64)
    for i in range(n):
        X[i] = _row_coefficients(graph, i, V, from_roots)

    logger.info(
        f"Vandermonde construction on '{graph.name}': k={degree + 1}, "
        f"root pairs used <= {needed}, basis={basis.value}"
    )
    return EmbeddingPair(X=X, Y=V, method=EmbeddingMethod.CONSTRUCTION)


def _row_coefficients(
    graph: Graph, i: int, V: FloatArray, from_roots: Any
) -> FloatArray:
    n, width = V.shape
    columns = graph.neighbors(i)
    coeffs = np.zeros(width, dtype=np.float64)

    if columns.size == 0:
        coeffs[0] = -1.0
        return coeffs

    roots = run_roots(runs_of_ones(columns), n)
    head = np.asarray(from_roots(roots), dtype=np.float64)
    coeffs[: head.size] = head

    ones = np.zeros(n, dtype=bool)
    ones[columns] = True
    values = V @ coeffs
    if values[columns[0]] < 0:
        coeffs = -coeffs
        values = -values

    smallest = values[ones].min()
    if not smallest > 0:
        raise ConstructionError(
            f"Row {i} polynomial is not positive on its ones (min {smallest:.3g})",
            method="vandermonde",
            row=i,
            suggestions=["use a smaller graph or the chebyshev basis"],
        )
    coeffs = coeffs * (SCALE_HEADROOM / smallest)

    values = V @ coeffs
    if values[ones].min() < 1.0 or (values[~ones].max(initial=-np.inf) > 0.0):
        raise ConstructionError(
            f"Row {i} misses its margin in double precision; n={n} is beyond "
            f"the usable range for {width // 2} root pairs",
            method="vandermonde",
            row=i,
            suggestions=["use a smaller graph or the chebyshev basis"],
        )
    return coeffs


def rank_report(graph: Graph, c: Optional[int] = None) -> Dict[str, Any]:
    """Construction rank next to the degree statistics it is bounded by."""
    degrees = graph.degree_sequence()
    c = max(graph.max_degree, 1) if c is None else c
    return {
        "rank": 2 * c + 1,
        "c": c,
        "root_pairs_needed": required_root_pairs(graph),
        "max_degree": graph.max_degree,
        "p95_degree": degrees.percentile(95) if len(degrees) else 0.0,
    }
