"""
Edge List I/O - Plain-text graph ingestion and export.

Reads whitespace- or tab-separated node pairs (SNAP style), ignoring comment
lines and an optional weight column. Node ids are compacted to 0..n-1 in order
of first appearance; duplicate and reversed pairs collapse into one undirected
edge.
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from ..exceptions import GraphFormatError
from .graph import Graph, GraphBuilder

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class EdgeListOptions(BaseModel):
    """Parsing options for edge-list files."""

    comment_prefix: str = Field(
        default="#", description="Lines starting with this are skipped"
    )
    one_indexed: bool = Field(
        default=False,
        description="Ids start at 1; only relevant when compact_ids is off",
    )
    compact_ids: bool = Field(
        default=True, description="Relabel ids 0..n-1 in order of first appearance"
    )
    symmetrize: bool = Field(
        default=True,
        description="Treat pairs as undirected; otherwise keep reciprocated pairs",
    )
    drop_self_loops: bool = Field(default=True, description="Discard (i, i) lines")
    allow_self_loops: bool = Field(
        default=False, description="Keep self-loops as graph edges"
    )


def load_edge_list(
    path: PathLike, options: Optional[EdgeListOptions] = None
) -> Graph:
    """
    Load an undirected graph from an edge-list file.

    Args:
        path: Edge-list file
        options: Parsing options

    Returns:
        Deduplicated, symmetrized graph

    Raises:
        GraphFormatError: on unreadable, malformed or empty input
    """
    options = options or EdgeListOptions()
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise GraphFormatError(
            f"Cannot read edge list '{path}': {e.strerror or e}", path=str(path)
        ) from e

    labels: Dict[int, int] = {}
    sources: List[int] = []
    targets: List[int] = []

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(options.comment_prefix):
            continue

        tokens = line.split()
        if len(tokens) < 2:
            raise GraphFormatError(
                f"Line {line_number}: expected two node ids, got '{line}'",
                path=str(path),
                line_number=line_number,
                line=line,
            )
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError as e:
            raise GraphFormatError(
                f"Line {line_number}: non-integer node id in '{line}'",
                path=str(path),
                line_number=line_number,
                line=line,
            ) from e

        if options.compact_ids:
            u = labels.setdefault(u, len(labels))
            v = labels.setdefault(v, len(labels))
        else:
            offset = 1 if options.one_indexed else 0
            u, v = u - offset, v - offset
            if u < 0 or v < 0:
                raise GraphFormatError(
                    f"Line {line_number}: node id below index base",
                    path=str(path),
                    line_number=line_number,
                    line=line,
                )

        sources.append(u)
        targets.append(v)

    if not sources:
        raise GraphFormatError(f"Edge list '{path}' contains no edges", path=str(path))

    rows = np.asarray(sources, dtype=np.int64)
    cols = np.asarray(targets, dtype=np.int64)
    n = len(labels) if options.compact_ids else int(max(rows.max(), cols.max())) + 1

    if not options.symmetrize:
        rows, cols = _reciprocated(rows, cols)

    graph = (
        GraphBuilder()
        .with_nodes(n)
        .with_name(path.stem)
        .with_self_loops(options.allow_self_loops)
        .dropping_self_loops(options.drop_self_loops)
        .add_edge_arrays(rows, cols)
        .build()
    )

    logger.info(f"Loaded graph '{graph.name}': n={graph.n}, edges={graph.num_edges}")
    return graph


def save_edge_list(graph: Graph, path: PathLike) -> Path:
    """Write a graph in the edge-list format read by load_edge_list."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    edges = graph.edge_array()

    with path.open("w") as fp:
        fp.write(f"# nodes: {graph.n} edges: {graph.num_edges}\n")
        for i, j in edges:
            fp.write(f"{i} {j}\n")

    logger.debug(f"Saved {edges.shape[0]} edges to {path}")
    return path


def _reciprocated(
    rows: np.ndarray, cols: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Keep only pairs listed in both directions (self-loops are kept)."""
    forward = set(zip(rows.tolist(), cols.tolist()))
    keep = [(u, v) for u, v in forward if u == v or (v, u) in forward]
    if not keep:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    pairs = np.asarray(sorted(keep), dtype=np.int64)
    return pairs[:, 0], pairs[:, 1]
