"""
Row-Block Execution - Bounded-memory, thread-parallel row sweeps.

Dense n x n intermediates (X Y^T, P^2 rows) are materialized one block of rows
at a time. Blocks run on a thread pool (numpy kernels release the GIL) and
results are always returned in block order, so reductions do not depend on
scheduling.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, TypeVar

import psutil

from ...shared_types import DEFAULT_BLOCK_ROWS
from ..exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

T = TypeVar("T")


def default_workers() -> int:
    """Physical core count, or 1 when unknown."""
    return psutil.cpu_count(logical=False) or 1


def row_blocks(n: int, block_rows: int = DEFAULT_BLOCK_ROWS) -> List[slice]:
    """Contiguous row slices covering 0..n-1."""
    if block_rows < 1:
        raise InvalidArgumentError(
            "Block height must be positive",
            argument="block_rows",
            value=block_rows,
            component="linalg",
        )
    starts = range(0, n, block_rows)
    return [slice(start, min(start + block_rows, n)) for start in starts]


def map_blocks(
    fn: Callable[[slice], T],
    blocks: List[slice],
    workers: Optional[int] = None,
) -> List[T]:
    """Apply fn to every block; results come back in block order."""
    workers = workers or 1
    if workers == 1 or len(blocks) <= 1:
        return [fn(block) for block in blocks]

    with ThreadPoolExecutor(max_workers=min(workers, len(blocks))) as pool:
        return list(pool.map(fn, blocks))
