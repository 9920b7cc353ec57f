"""
Shared fixtures for the Embedding Core test suite.
"""
from typing import Callable, Iterable, Tuple

import networkx as nx
import numpy as np
import pytest

from embedding_core.core.evaluation import rel_frobenius_error
from embedding_core.core.graphs import Graph, GraphBuilder, clique_union, toy_graph
from embedding_core.core.lpca import (
    EmbeddingPair,
    ExactnessReport,
    reconstruct,
    verify_exact,
)
from embedding_core.shared_types import ReconstructionMode


def build_graph(
    n: int, edges: Iterable[Tuple[int, int]], self_loops: bool = False
) -> Graph:
    """Graph from an explicit edge list."""
    builder = GraphBuilder().with_nodes(n).with_name("test").with_self_loops(self_loops)
    edges = list(edges)
    if edges:
        builder.add_edges(edges)
    return builder.build()


def to_networkx(graph: Graph) -> nx.Graph:
    """Loopless networkx copy used as a brute-force oracle."""
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    g.add_edges_from((i, j) for i, j in graph.edges() if i != j)
    return g


def random_bounded_degree_graph(
    n: int, max_degree: int, rng: np.random.Generator, attempts: int = 400
) -> Graph:
    """Random loopless graph whose degrees never exceed max_degree."""
    degrees = np.zeros(n, dtype=np.int64)
    edges = set()
    for _ in range(attempts):
        i, j = (int(v) for v in rng.integers(0, n, size=2))
        if i == j or (min(i, j), max(i, j)) in edges:
            continue
        if degrees[i] >= max_degree or degrees[j] >= max_degree:
            continue
        edges.add((min(i, j), max(i, j)))
        degrees[i] += 1
        degrees[j] += 1
    return build_graph(n, sorted(edges))


@pytest.fixture
def make_graph() -> Callable[..., Graph]:
    return build_graph


@pytest.fixture
def nx_oracle() -> Callable[[Graph], nx.Graph]:
    return to_networkx


@pytest.fixture
def bounded_degree_graph() -> Callable[..., Graph]:
    return random_bounded_degree_graph


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240101)


@pytest.fixture
def two_triangles() -> Graph:
    """Two disjoint triangles."""
    return build_graph(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])


@pytest.fixture
def small_toy() -> Graph:
    return toy_graph(4)


@pytest.fixture
def looped_cliques() -> Graph:
    return clique_union(12, 3, self_loops=True)


@pytest.fixture
def assert_exactness_sound() -> Callable[[Graph, EmbeddingPair], ExactnessReport]:
    """
    Check an embedding; whenever it is exact, its threshold reconstruction
    must reproduce the graph with zero Frobenius error.
    """

    def check(graph: Graph, embedding: EmbeddingPair) -> ExactnessReport:
        report = verify_exact(graph, embedding)
        if report.exact and graph.adjacency.nnz:
            expected = reconstruct(
                embedding,
                ReconstructionMode.THRESHOLD,
                self_loops=graph.allow_self_loops,
            )
            assert rel_frobenius_error(graph, expected) == 0.0
        return report

    return check
