"""
Graph Core - Immutable undirected graphs over compact node ids.

A Graph stores its adjacency as a symmetric scipy CSR matrix with sorted
neighbor lists and unit entries. Self-loops are only admitted for graph
families that ask for them (the toy graph); a self-loop contributes one entry
to its node's neighbor list.

Key Features:
- GraphBuilder for fluent, deduplicating construction
- Validation pass for symmetry, duplicates, loops and degree sums
- DegreeSequence with a sorted view and summary statistics
- Exact per-node and total triangle counts (diagonal excluded)
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Set, Tuple

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, Field

from ...shared_types import FloatArray, IntArray
from ..exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)


class GraphValidationResult(BaseModel):
    """Result of the structural validation pass over a graph."""

    is_valid: bool = Field(default=True, description="Whether all invariants hold")
    errors: List[str] = Field(
        default_factory=list, description="Violated invariants"
    )

    def add_error(self, message: str) -> None:
        """Add validation error."""
        self.errors.append(message)
        self.is_valid = False


@dataclass(frozen=True)
class DegreeSequence:
    """Per-node (expected) degrees."""

    values: FloatArray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise InvalidArgumentError(
                "Degree sequence must be one-dimensional",
                argument="degrees",
                component="graphs",
            )
        if values.size and (not np.all(np.isfinite(values)) or values.min() < 0):
            raise InvalidArgumentError(
                "Degrees must be finite and non-negative",
                argument="degrees",
                component="graphs",
            )
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)

    def sorted(self, descending: bool = True) -> FloatArray:
        """Sorted copy of the degrees."""
        ordered = np.sort(self.values)
        return ordered[::-1].copy() if descending else ordered

    @property
    def total(self) -> float:
        return float(self.values.sum())

    @property
    def mean(self) -> float:
        return float(self.values.mean()) if self.values.size else 0.0

    @property
    def maximum(self) -> float:
        return float(self.values.max()) if self.values.size else 0.0

    def percentile(self, q: float) -> float:
        """Degree percentile (q in [0, 100])."""
        if not self.values.size:
            return 0.0
        return float(np.percentile(self.values, q))


@dataclass(frozen=True)
class Graph:
    """
    Undirected, unweighted graph on nodes 0..n-1.

    Instances are immutable after construction and safe to share between
    worker threads.
    """

    n: int
    adjacency: sp.csr_matrix = field(repr=False)
    allow_self_loops: bool = False
    name: str = ""

    @property
    def num_edges(self) -> int:
        """Unordered edges, each self-loop counted once."""
        loops = self.num_self_loops
        return (int(self.adjacency.nnz) - loops) // 2 + loops

    @property
    def num_self_loops(self) -> int:
        return int(np.count_nonzero(self.adjacency.diagonal()))

    @property
    def has_self_loops(self) -> bool:
        return self.num_self_loops > 0

    def neighbors(self, node: int) -> IntArray:
        """Sorted neighbor list of a node."""
        start, end = self.adjacency.indptr[node], self.adjacency.indptr[node + 1]
        return np.asarray(self.adjacency.indices[start:end], dtype=np.int64)

    def has_edge(self, i: int, j: int) -> bool:
        neighbors = self.neighbors(i)
        pos = np.searchsorted(neighbors, j)
        return bool(pos < neighbors.size and neighbors[pos] == j)

    def degrees(self) -> IntArray:
        """Length of every neighbor list."""
        return np.diff(self.adjacency.indptr).astype(np.int64)

    def degree_sequence(self) -> DegreeSequence:
        return DegreeSequence(self.degrees().astype(np.float64))

    @property
    def max_degree(self) -> int:
        degrees = self.degrees()
        return int(degrees.max()) if degrees.size else 0

    def edges(self) -> Set[Tuple[int, int]]:
        """Unordered edges as (i, j) with i <= j."""
        upper = sp.triu(self.adjacency, format="coo")
        return {(int(i), int(j)) for i, j in zip(upper.row, upper.col)}

    def edge_array(self) -> IntArray:
        """Unordered edges as an (m, 2) array sorted by (i, j)."""
        upper = sp.triu(self.adjacency, format="csr")
        rows = np.repeat(np.arange(self.n), np.diff(upper.indptr))
        return np.column_stack([rows, upper.indices]).astype(np.int64)

    def to_dense(self) -> FloatArray:
        """Dense 0/1 adjacency including any self-loops."""
        return np.asarray(self.adjacency.toarray(), dtype=np.float64)

    def loopless_adjacency(self) -> sp.csr_matrix:
        """Adjacency with the diagonal removed."""
        if not self.has_self_loops:
            return self.adjacency
        stripped = self.adjacency - sp.diags(self.adjacency.diagonal())
        stripped = sp.csr_matrix(stripped)
        stripped.eliminate_zeros()
        return stripped

    def triangles(self) -> IntArray:
        """Triangles through every node, self-loops ignored."""
        a = self.loopless_adjacency().astype(np.float64)
        closed = (a @ a).multiply(a)
        return (np.asarray(closed.sum(axis=1)).ravel() / 2).round().astype(np.int64)

    def triangle_count(self) -> int:
        return int(self.triangles().sum() // 3)

    def validate(self) -> GraphValidationResult:
        """Check symmetry, duplicates, loops and the degree-sum identity."""
        result = GraphValidationResult()
        a = self.adjacency

        if a.shape != (self.n, self.n):
            result.add_error(f"adjacency shape {a.shape} does not match n={self.n}")
            return result
        if a.nnz and not np.all(a.data == 1):
            result.add_error("adjacency contains duplicate or weighted entries")
        if not a.has_sorted_indices:
            result.add_error("neighbor lists are not sorted")
        if (a != a.T).nnz:
            result.add_error("adjacency is not symmetric")
        if self.has_self_loops and not self.allow_self_loops:
            result.add_error(f"{self.num_self_loops} self-loops in a loopless graph")

        loops = self.num_self_loops
        degree_sum = int(self.degrees().sum())
        expected = 2 * (self.num_edges - loops) + loops
        if degree_sum != expected:
            result.add_error(
                f"degree sum {degree_sum} does not match edge count identity {expected}"
            )

        return result

    def summary(self) -> Dict[str, Any]:
        """Short description for logging."""
        return {
            "name": self.name,
            "n": self.n,
            "edges": self.num_edges,
            "self_loops": self.num_self_loops,
            "allow_self_loops": self.allow_self_loops,
        }


class GraphBuilder:
    """Fluent builder producing validated, deduplicated, symmetric graphs."""

    def __init__(self) -> None:
        self.reset()

    def reset(self) -> "GraphBuilder":
        """Reset builder state."""
        self._n: Optional[int] = None
        self._name = ""
        self._allow_self_loops = False
        self._drop_self_loops = False
        self._rows: List[IntArray] = []
        self._cols: List[IntArray] = []
        return self

    def with_nodes(self, n: int) -> "GraphBuilder":
        """Set the node count."""
        if n < 0:
            raise InvalidArgumentError(
                "Node count must be non-negative", argument="n", value=n
            )
        self._n = n
        return self

    def with_name(self, name: str) -> "GraphBuilder":
        self._name = name
        return self

    def with_self_loops(self, allow: bool = True) -> "GraphBuilder":
        """Admit self-loops in the built graph."""
        self._allow_self_loops = allow
        return self

    def dropping_self_loops(self, drop: bool = True) -> "GraphBuilder":
        """Silently discard self-loops instead of rejecting them."""
        self._drop_self_loops = drop
        return self

    def add_edge(self, i: int, j: int) -> "GraphBuilder":
        self._rows.append(np.array([i], dtype=np.int64))
        self._cols.append(np.array([j], dtype=np.int64))
        return self

    def add_edges(self, edges: Iterable[Tuple[int, int]]) -> "GraphBuilder":
        pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        return self.add_edge_arrays(pairs[:, 0], pairs[:, 1])

    def add_edge_arrays(self, rows: IntArray, cols: IntArray) -> "GraphBuilder":
        """Add edges given as parallel endpoint arrays."""
        rows = np.asarray(rows, dtype=np.int64).ravel()
        cols = np.asarray(cols, dtype=np.int64).ravel()
        if rows.shape != cols.shape:
            raise InvalidArgumentError(
                "Endpoint arrays must have equal length",
                argument="cols",
                component="graphs",
            )
        self._rows.append(rows)
        self._cols.append(cols)
        return self

    def build(self) -> Graph:
        """Build the graph and reset the builder."""
        if self._n is None:
            raise ValueError("Node count is required")

        n = self._n
        rows = np.concatenate(self._rows) if self._rows else np.empty(0, np.int64)
        cols = np.concatenate(self._cols) if self._cols else np.empty(0, np.int64)

        lowest = min(rows.min(), cols.min()) if rows.size else 0
        highest = max(rows.max(), cols.max()) if rows.size else -1
        if lowest < 0 or highest >= n:
            raise InvalidArgumentError(
                f"Edge endpoint outside node range 0..{n - 1}",
                argument="edges",
                component="graphs",
            )

        loops = rows == cols
        if loops.any() and not self._allow_self_loops:
            if not self._drop_self_loops:
                raise InvalidArgumentError(
                    "Self-loops are not allowed for this graph",
                    argument="edges",
                    value=int(loops.sum()),
                    component="graphs",
                )
            rows, cols = rows[~loops], cols[~loops]

        both_rows = np.concatenate([rows, cols])
        both_cols = np.concatenate([cols, rows])
        adjacency = sp.csr_matrix(
            (np.ones(both_rows.size, dtype=np.float64), (both_rows, both_cols)),
            shape=(n, n),
        )
        adjacency.sum_duplicates()
        adjacency.data[:] = 1.0
        adjacency.sort_indices()

        graph = Graph(
            n=n,
            adjacency=adjacency,
            allow_self_loops=self._allow_self_loops,
            name=self._name,
        )

        validation = graph.validate()
        if not validation.is_valid:
            raise InvalidArgumentError(
                f"Built graph violates invariants: {'; '.join(validation.errors)}",
                argument="edges",
                component="graphs",
            )

        logger.debug(f"Built graph {graph.summary()}")
        self.reset()
        return graph


def graph_from_dense(
    matrix: FloatArray, allow_self_loops: bool = False, name: str = ""
) -> Graph:
    """Graph whose edges are the nonzero entries of a symmetric 0/1 matrix."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidArgumentError(
            "Adjacency must be a square matrix",
            argument="matrix",
            value=matrix.shape,
            component="graphs",
        )
    if not np.array_equal(matrix != 0, (matrix != 0).T):
        raise InvalidArgumentError(
            "Adjacency must be symmetric", argument="matrix", component="graphs"
        )
    rows, cols = np.nonzero(np.triu(matrix))
    return (
        GraphBuilder()
        .with_nodes(matrix.shape[0])
        .with_name(name)
        .with_self_loops(allow_self_loops)
        .add_edge_arrays(rows, cols)
        .build()
    )
