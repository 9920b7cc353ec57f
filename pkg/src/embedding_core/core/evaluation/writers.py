"""
Result Writers - JSON documents and plot-ready CSV files.

CSV layouts:
    curves:     cap, value, method, rank
    sequences:  index, <one column per label>    (descending-sorted values)
    matrices:   n rows of n comma-separated values
"""
import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Union

import numpy as np

from ...shared_types import FloatArray
from .metrics import TriangleCurve

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

CURVE_COLUMNS = ["cap", "value", "method", "rank"]


def _prepare(path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return str(value)
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def write_json(data: Mapping[str, Any], path: PathLike) -> Path:
    """Pretty-printed JSON; numpy values and non-finite floats are converted."""
    path = _prepare(path)
    path.write_text(json.dumps(_jsonable(data), indent=2, sort_keys=False) + "\n")
    logger.debug(f"Wrote {path}")
    return path


def write_curves_csv(curves: Iterable[TriangleCurve], path: PathLike) -> Path:
    path = _prepare(path)
    with path.open("w", newline="") as fp:
        writer = csv.DictWriter(fp, fieldnames=CURVE_COLUMNS)
        writer.writeheader()
        for curve in curves:
            for row in curve.rows():
                writer.writerow(
                    {**row, "rank": "" if row["rank"] is None else row["rank"]}
                )
    logger.debug(f"Wrote {path}")
    return path


def write_sequences_csv(sequences: Dict[str, FloatArray], path: PathLike) -> Path:
    """Descending-sorted sequences side by side, one column per label."""
    path = _prepare(path)
    labels = list(sequences)
    columns = [np.sort(np.asarray(sequences[label]))[::-1] for label in labels]
    length = max((column.size for column in columns), default=0)

    with path.open("w", newline="") as fp:
        writer = csv.writer(fp)
        writer.writerow(["index", *labels])
        for i in range(length):
            writer.writerow(
                [i, *(repr(float(c[i])) if i < c.size else "" for c in columns)]
            )
    logger.debug(f"Wrote {path}")
    return path


def write_matrix_csv(matrix: FloatArray, path: PathLike) -> Path:
    path = _prepare(path)
    np.savetxt(path, np.asarray(matrix, dtype=np.float64), delimiter=",", fmt="%.10g")
    logger.debug(f"Wrote {path}")
    return path
