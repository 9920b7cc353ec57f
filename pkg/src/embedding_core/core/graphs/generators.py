"""
Graph Generators - Synthetic graph families.

Every generator is a pure function of its parameters and seed:
- toy_graph: triangles joined in a cycle, with a self-loop on every node
- clique_union: disjoint c-cliques
- erdos_renyi: independent edges with a common probability
- chung_lu: independent edges matching an expected degree sequence
- preferential_attachment: degree-proportional growth from a seed clique
"""
import logging
from math import comb
from typing import List

import numpy as np

from ...shared_types import IntArray, Seed
from ..exceptions import InvalidArgumentError
from .graph import DegreeSequence, Graph, GraphBuilder

logger = logging.getLogger(__name__)


def toy_graph(t: int) -> Graph:
    """
    t triangles linked in a cycle, plus a self-loop on every node.

    Triangle i occupies nodes 3i, 3i+1, 3i+2; node 3i+2 is joined to the first
    node of the next triangle. The linking edges close no further triangles.
    """
    if t < 2:
        raise InvalidArgumentError(
            "Toy graph needs at least two triangles",
            argument="t",
            value=t,
            component="graphs",
        )

    base = 3 * np.arange(t, dtype=np.int64)
    rows = np.concatenate([base, base, base + 1, base + 2])
    cols = np.concatenate([base + 1, base + 2, base + 2, (base + 3) % (3 * t)])
    nodes = np.arange(3 * t, dtype=np.int64)

    return (
        GraphBuilder()
        .with_nodes(3 * t)
        .with_name(f"toy-{t}")
        .with_self_loops()
        .add_edge_arrays(rows, cols)
        .add_edge_arrays(nodes, nodes)
        .build()
    )


def clique_union(n: int, c: int, self_loops: bool = False) -> Graph:
    """
    Union of n/c disjoint c-cliques over consecutive node blocks.

    With self_loops every node also carries a loop, giving a block-diagonal
    adjacency of all-ones blocks.
    """
    if c < 1 or n < 1 or n % c != 0:
        raise InvalidArgumentError(
            f"Clique size {c} must divide node count {n}",
            argument="c",
            value=c,
            component="graphs",
        )

    local_i, local_j = np.triu_indices(c, k=0 if self_loops else 1)
    offsets = np.arange(0, n, c, dtype=np.int64)[:, None]
    rows = (offsets + local_i[None, :]).ravel()
    cols = (offsets + local_j[None, :]).ravel()

    return (
        GraphBuilder()
        .with_nodes(n)
        .with_name(f"cliques-{n}-{c}")
        .with_self_loops(self_loops)
        .add_edge_arrays(rows, cols)
        .build()
    )


def erdos_renyi(n: int, m: float, seed: Seed = None) -> Graph:
    """Each pair is an edge independently with p = m / C(n, 2)."""
    pairs = comb(n, 2)
    if n < 1 or m < 0 or m > pairs:
        raise InvalidArgumentError(
            f"Expected edge count must lie in [0, {pairs}]",
            argument="m",
            value=m,
            component="graphs",
        )

    p = m / pairs if pairs else 0.0
    rng = np.random.default_rng(seed)
    rows: List[IntArray] = []
    cols: List[IntArray] = []

    for i in range(n - 1):
        hits = np.flatnonzero(rng.random(n - i - 1) < p) + i + 1
        rows.append(np.full(hits.size, i, dtype=np.int64))
        cols.append(hits)

    graph = _assemble(n, rows, cols, f"er-{n}-{m:g}")
    logger.debug(f"Erdos-Renyi p={p:.3g}: {graph.num_edges} edges (expected {m:g})")
    return graph


def chung_lu(degrees: DegreeSequence, seed: Seed = None) -> Graph:
    """Each pair i<j is an edge independently with p = min(1, d_i d_j / sum(d))."""
    d = degrees.values
    n = d.size
    total = float(d.sum())
    rng = np.random.default_rng(seed)
    rows: List[IntArray] = []
    cols: List[IntArray] = []

    if total > 0:
        clamped = 0
        for i in range(n - 1):
            if d[i] == 0:
                continue
            p = d[i] * d[i + 1 :] / total
            clamped += int(np.count_nonzero(p > 1.0))
            hits = np.flatnonzero(rng.random(n - i - 1) < p) + i + 1
            rows.append(np.full(hits.size, i, dtype=np.int64))
            cols.append(hits)
        if clamped:
            logger.warning(f"Chung-Lu: clamped {clamped} pair probabilities to 1")

    return _assemble(n, rows, cols, f"chunglu-{n}")


def preferential_attachment(n: int, m: int, seed: Seed = None) -> Graph:
    """
    Barabasi-Albert growth from a clique on m+1 nodes.

    Each arriving node draws m endpoints with probability proportional to
    current degree; repeated draws collapse into a single edge.
    """
    if m < 1 or n <= m:
        raise InvalidArgumentError(
            f"Preferential attachment needs n > m >= 1 (n={n}, m={m})",
            argument="n",
            value=n,
            component="graphs",
        )

    rng = np.random.default_rng(seed)
    seed_i, seed_j = np.triu_indices(m + 1, k=1)

    # every edge endpoint appears once, so uniform draws are degree-proportional
    endpoints = np.empty(2 * (seed_i.size + m * (n - m - 1)), dtype=np.int64)
    filled = 2 * seed_i.size
    endpoints[:filled:2] = seed_i
    endpoints[1:filled:2] = seed_j

    rows = [seed_i.astype(np.int64)]
    cols = [seed_j.astype(np.int64)]

    for node in range(m + 1, n):
        targets = np.unique(endpoints[rng.integers(0, filled, size=m)])
        rows.append(np.full(targets.size, node, dtype=np.int64))
        cols.append(targets)
        count = targets.size
        endpoints[filled : filled + 2 * count : 2] = node
        endpoints[filled + 1 : filled + 2 * count : 2] = targets
        filled += 2 * count

    return _assemble(n, rows, cols, f"pa-{n}-{m}")


def _assemble(n: int, rows: List[IntArray], cols: List[IntArray], name: str) -> Graph:
    builder = GraphBuilder().with_nodes(n).with_name(name)
    for r, c in zip(rows, cols):
        builder.add_edge_arrays(r, c)
    return builder.build()
