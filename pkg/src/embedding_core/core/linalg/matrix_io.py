"""
Matrix Text I/O - Row-per-line real matrices with round-trip precision.

Values are written with 17 significant digits, enough for an exact
double-precision round trip.
"""
from pathlib import Path
from typing import IO, List, Union

import numpy as np

from ...shared_types import FloatArray

FLOAT_FORMAT = "%.17g"


def write_rows(fp: IO[str], matrix: FloatArray) -> None:
    """Write one matrix row per line."""
    np.savetxt(fp, np.atleast_2d(matrix), fmt=FLOAT_FORMAT)


def parse_rows(lines: List[str], cols: int) -> FloatArray:
    """Parse whitespace-separated rows; raises ValueError on shape mismatch."""
    rows = [np.array(line.split(), dtype=np.float64) for line in lines]
    if any(row.size != cols for row in rows):
        raise ValueError(f"expected {cols} values per row")
    if not rows:
        return np.empty((0, cols), dtype=np.float64)
    return np.vstack(rows)


def dump_matrix(matrix: FloatArray, path: Union[str, Path]) -> Path:
    """Debug dump: a `rows cols` header followed by the rows."""
    path = Path(path)
    matrix = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
    with path.open("w") as fp:
        fp.write(f"{matrix.shape[0]} {matrix.shape[1]}\n")
        write_rows(fp, matrix)
    return path


def load_matrix(path: Union[str, Path]) -> FloatArray:
    """Read a matrix written by dump_matrix."""
    lines = Path(path).read_text().splitlines()
    rows, cols = (int(token) for token in lines[0].split())
    matrix = parse_rows(lines[1 : rows + 1], cols)
    if matrix.shape[0] != rows:
        raise ValueError(f"expected {rows} rows, found {matrix.shape[0]}")
    return matrix
