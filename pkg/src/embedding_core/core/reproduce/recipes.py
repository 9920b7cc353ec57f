"""
Reproduction Recipes - Full pipelines behind each evaluation artifact.

Targets:
    figure1                  toy graph: LPCA rank 5, TSVD ranks 5 and 15
    table2                   every registry row whose dataset file is present
    table2-row:<dataset>     stats, EFD, TSVD error and random baselines
    figure2:<dataset>        sorted expected degrees across a rank sweep
    figure3:<dataset>        sorted expected triangle counts across a rank sweep
    figure4:<dataset>        low-degree triangle curves

Every run writes into its own directory under out_dir and finishes with a
manifest.json listing the files, reference values and computed values.
"""
import csv
import logging
import os
import re
import time
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from ...shared_types import DEFAULT_RANK_GRID, ENV_DATA_DIR, ENV_OUT_DIR, BaselineKind
from ..evaluation import (
    BaselineSettings,
    EFDSettings,
    Evaluation,
    GraphProfile,
    SeedPolicy,
    baseline_efd,
    efd_search,
    evaluate_embedding,
    rel_threshold_error,
    true_profile,
    write_curves_csv,
    write_json,
    write_matrix_csv,
    write_sequences_csv,
)
from ..exceptions import InvalidArgumentError
from ..graphs import Graph, graph_stats, toy_graph
from ..lpca import EmbeddingPair, LPCASettings, lpca_fit_best
from ..tsvd import tsvd_fit
from .datasets import DATASETS, DatasetSpec, get_dataset
from .manifest import Manifest

logger = logging.getLogger(__name__)

TOY_TRIANGLES = 100
FIGURE1_REFERENCE = {"lpca_rank5": 0.031, "tsvd_rank15": 0.894, "tsvd_rank5": 0.966}
SWEEP_RANKS = (16, 32, 64, 128)
FIGURE4_LPCA_RANK = 16
FIGURE4_TSVD_RANK = 128
FIGURE4_OFFSET = 16
MAX_CAPS = 200
# networks whose EFD is the smallest grid rank also get a rank-8 attempt
SUBGRID_EFD = 16
SUBGRID_RANK = 8

_TARGET = re.compile(r"^(figure1|table2|table2-row|figure2|figure3|figure4)(?::(.+))?$")
_NEEDS_DATASET = {"table2-row", "figure2", "figure3", "figure4"}


def _env_path(variable: str, fallback: str) -> Path:
    return Path(os.environ.get(variable, fallback))


class ReproduceConfig(BaseModel):
    """Settings shared by all recipes."""

    out_dir: Path = Field(default_factory=lambda: _env_path(ENV_OUT_DIR, "results"))
    data_dir: Path = Field(default_factory=lambda: _env_path(ENV_DATA_DIR, "data"))
    lpca: LPCASettings = Field(default_factory=LPCASettings)
    seed_policy: SeedPolicy = Field(default_factory=SeedPolicy)
    rank_grid: List[int] = Field(default_factory=lambda: list(DEFAULT_RANK_GRID))
    sweep_ranks: List[int] = Field(default_factory=lambda: list(SWEEP_RANKS))
    baselines: bool = Field(default=True, description="Run random-graph EFDs")
    baseline_trials: int = Field(default=3, ge=1)
    caps: Optional[List[float]] = Field(
        default=None, description="Degree caps for figure4 (default 1..max degree)"
    )

    @field_validator("rank_grid", "sweep_ranks")
    @classmethod
    def validate_ranks(cls, v: List[int]) -> List[int]:
        if not v or any(k < 1 for k in v):
            raise ValueError("ranks must be positive and non-empty")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("ranks must be strictly ascending")
        return v

    def efd_settings(self) -> EFDSettings:
        return EFDSettings(
            rank_grid=self.rank_grid, seed_policy=self.seed_policy, lpca=self.lpca
        )

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


def parse_target(target: str) -> Tuple[str, Optional[DatasetSpec]]:
    """Split 'kind[:dataset]' and resolve the dataset."""
    match = _TARGET.match(target.strip())
    if not match:
        raise InvalidArgumentError(
            f"Unknown reproduction target '{target}'",
            argument="target",
            value=target,
            component="reproduce",
        )
    kind, name = match.group(1), match.group(2)
    if kind in _NEEDS_DATASET and not name:
        raise InvalidArgumentError(
            f"Target '{kind}' needs a dataset, e.g. '{kind}:Cora'",
            argument="target",
            value=target,
            component="reproduce",
        )
    if kind not in _NEEDS_DATASET and name:
        raise InvalidArgumentError(
            f"Target '{kind}' takes no dataset",
            argument="target",
            value=target,
            component="reproduce",
        )
    return kind, get_dataset(name) if name else None


def run_target(target: str, config: Optional[ReproduceConfig] = None) -> Manifest:
    """Run one recipe and write its manifest."""
    config = config or ReproduceConfig()
    kind, dataset = parse_target(target)
    slug = target.strip().replace(":", "-")
    out_dir = Path(config.out_dir) / slug
    out_dir.mkdir(parents=True, exist_ok=True)

    manifest = Manifest(target=target, out_dir=str(out_dir), config=config.to_dict())
    started = time.perf_counter()

    if kind == "figure1":
        figure1(config, manifest)
    elif kind == "table2":
        table2(config, manifest)
    else:
        assert dataset is not None
        recipe: Callable[[DatasetSpec, ReproduceConfig, Manifest], None] = {
            "table2-row": table2_row,
            "figure2": figure2,
            "figure3": figure3,
            "figure4": figure4,
        }[kind]
        recipe(dataset, config, manifest)

    manifest.computed["wall_time_s"] = time.perf_counter() - started
    manifest.write()
    return manifest


# Individual recipes


def _fit_lpca(
    graph: Graph, k: int, config: ReproduceConfig
) -> Tuple[EmbeddingPair, float]:
    fit = lpca_fit_best(graph, k, config.seed_policy.seed_list(), config.lpca)
    return fit.embedding, fit.wall_time_s


def _fit_tsvd(graph: Graph, k: int) -> Tuple[EmbeddingPair, float]:
    started = time.perf_counter()
    embedding = tsvd_fit(graph, k)
    return embedding, time.perf_counter() - started


def _evaluate(
    graph: Graph,
    fitted: Tuple[EmbeddingPair, float],
    truth: Optional[GraphProfile],
    config: ReproduceConfig,
    caps: Optional[List[float]] = None,
) -> Evaluation:
    embedding, wall_time_s = fitted
    return evaluate_embedding(
        graph,
        embedding,
        caps=caps,
        truth=truth,
        wall_time_s=wall_time_s,
        block_rows=config.lpca.block_rows,
        workers=config.lpca.resolved_workers(),
    )


def figure1(config: ReproduceConfig, manifest: Manifest) -> None:
    """Toy graph reconstructions: LPCA rank 5, TSVD ranks 5 and 15."""
    graph = toy_graph(TOY_TRIANGLES)
    out = Path(manifest.out_dir)
    truth = true_profile(graph)

    manifest.add(write_matrix_csv(graph.to_dense(), out / "true.csv"), "true adjacency")
    runs = {
        "lpca_rank5": _fit_lpca(graph, 5, config),
        "tsvd_rank5": _fit_tsvd(graph, 5),
        "tsvd_rank15": _fit_tsvd(graph, 15),
    }

    errors: Dict[str, Any] = {}
    for label, fitted in runs.items():
        evaluation = _evaluate(graph, fitted, truth, config)
        path = write_matrix_csv(evaluation.profile.expected.P, out / f"{label}.csv")
        manifest.add(path, f"reconstructed expected adjacency ({label})")
        errors[label] = evaluation.report.to_dict()

    manifest.reference.update(FIGURE1_REFERENCE)
    manifest.computed.update(
        {label: report["rel_frob_error"] for label, report in errors.items()}
    )
    manifest.add(write_json(errors, out / "errors.json"), "error summary")


def _table2_values(dataset: DatasetSpec, config: ReproduceConfig) -> Dict[str, Any]:
    graph = dataset.load(config.data_dir)
    stats = graph_stats(graph)
    settings = config.efd_settings()

    efd = efd_search(graph, settings=settings)
    rank8_exact: Optional[bool] = None
    if efd.efd == SUBGRID_EFD and graph.n >= SUBGRID_RANK:
        below = efd_search(graph, rank_grid=[SUBGRID_RANK], settings=settings)
        rank8_exact = below.efd is not None
        logger.info(f"Rank {SUBGRID_RANK} on '{dataset.name}': exact={rank8_exact}")

    tsvd_rank = min(efd.efd or settings.rank_grid[-1], graph.n)
    tsvd, _ = _fit_tsvd(graph, tsvd_rank)
    tsvd_error = rel_threshold_error(
        graph,
        tsvd,
        block_rows=config.lpca.block_rows,
        workers=config.lpca.resolved_workers(),
    )

    values: Dict[str, Any] = {
        "dataset": dataset.name,
        "nodes": stats.n,
        "mean_degree": stats.mean_degree,
        "p95_degree": stats.p95_degree,
        "max_degree": stats.max_degree,
        "bounded_degree_rank": stats.bounded_degree_rank,
        "efd": efd.efd_label,
        "tsvd_rank": tsvd_rank,
        "tsvd_error": tsvd_error,
        "efd_rank8_exact": rank8_exact,
        "efd_chung_lu": None,
        "efd_erdos_renyi": None,
        "efd_search": efd.to_dict(),
    }
    if config.baselines:
        for kind, key in [
            (BaselineKind.CHUNG_LU, "efd_chung_lu"),
            (BaselineKind.ERDOS_RENYI, "efd_erdos_renyi"),
        ]:
            result = baseline_efd(
                graph,
                BaselineSettings(kind=kind, trials=config.baseline_trials),
                settings=settings,
            )
            values[key] = result.efd_label
            values[f"{key}_search"] = result.to_dict()
    return values


def table2_row(
    dataset: DatasetSpec, config: ReproduceConfig, manifest: Manifest
) -> None:
    """One dataset row: stats, EFD, TSVD error at the EFD and baselines."""
    values = _table2_values(dataset, config)
    manifest.reference.update(dataset.reference())
    manifest.computed.update(
        {k: v for k, v in values.items() if not k.endswith("_search")}
    )
    path = write_json(values, Path(manifest.out_dir) / f"{dataset.name}.json")
    manifest.add(path, f"table row for {dataset.name}")


def table2(config: ReproduceConfig, manifest: Manifest) -> None:
    """All rows whose dataset file is present, as one CSV and one JSON."""
    rows: List[Dict[str, Any]] = []
    for dataset in DATASETS.values():
        if not dataset.available(config.data_dir):
            logger.warning(f"Skipping {dataset.name}: no file in {config.data_dir}")
            manifest.skipped.append(dataset.name)
            continue
        values = _table2_values(dataset, config)
        rows.append({k: v for k, v in values.items() if not k.endswith("_search")})
        manifest.reference[dataset.name] = dataset.reference()

    out = Path(manifest.out_dir)
    manifest.computed["rows"] = rows
    manifest.add(write_json({"rows": rows}, out / "table2.json"), "table rows")
    manifest.add(_write_table_csv(rows, out / "table2.csv"), "table rows")


def _write_table_csv(rows: List[Dict[str, Any]], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    columns = list(rows[0]) if rows else ["dataset"]
    with path.open("w", newline="") as fp:
        writer = csv.DictWriter(fp, fieldnames=columns)
        writer.writeheader()
        writer.writerows(rows)
    return path


def _rank_sweep(
    dataset: DatasetSpec, config: ReproduceConfig
) -> Tuple[Graph, GraphProfile, Dict[str, Evaluation]]:
    graph = dataset.load(config.data_dir)
    truth = true_profile(
        graph, block_rows=config.lpca.block_rows, workers=config.lpca.resolved_workers()
    )
    evaluations: Dict[str, Evaluation] = {}
    for k in config.sweep_ranks:
        if k > graph.n:
            continue
        evaluations[f"lpca-{k}"] = _evaluate(
            graph, _fit_lpca(graph, k, config), truth, config
        )
        evaluations[f"tsvd-{k}"] = _evaluate(graph, _fit_tsvd(graph, k), truth, config)
    return graph, truth, evaluations


def _write_sweep(
    dataset: DatasetSpec,
    config: ReproduceConfig,
    manifest: Manifest,
    statistic: str,
) -> None:
    _, truth, evaluations = _rank_sweep(dataset, config)

    def pick(p: GraphProfile) -> Any:
        return p.degrees.values if statistic == "degrees" else p.triangles

    error_key = "degree_l1_error" if statistic == "degrees" else "triangle_l1_error"

    sequences = {"true": pick(truth)}
    sequences.update({label: pick(ev.profile) for label, ev in evaluations.items()})
    out = Path(manifest.out_dir)
    manifest.add(
        write_sequences_csv(sequences, out / f"{dataset.name}-{statistic}.csv"),
        f"sorted expected {statistic}",
    )

    summary = {label: ev.report.to_dict() for label, ev in evaluations.items()}
    manifest.add(write_json(summary, out / "reports.json"), "per-embedding reports")
    manifest.computed.update(
        {label: getattr(ev.report, error_key) for label, ev in evaluations.items()}
    )


def figure2(dataset: DatasetSpec, config: ReproduceConfig, manifest: Manifest) -> None:
    """Sorted expected degree sequences, true and reconstructed."""
    _write_sweep(dataset, config, manifest, "degrees")


def figure3(dataset: DatasetSpec, config: ReproduceConfig, manifest: Manifest) -> None:
    """Sorted expected per-node triangle counts, true and reconstructed."""
    _write_sweep(dataset, config, manifest, "triangles")


def figure4_ranks(efd: int) -> Dict[str, Tuple[str, int]]:
    """
    Curves to draw: LPCA at 16 and EFD - 16, TSVD at 128 and EFD - 16.

    When EFD - 16 drops below 16, rank 16 is used again.
    """
    below = max(efd - FIGURE4_OFFSET, FIGURE4_LPCA_RANK)
    return {
        f"lpca-{FIGURE4_LPCA_RANK}": ("lpca", FIGURE4_LPCA_RANK),
        "lpca-efd-minus-16": ("lpca", below),
        f"tsvd-{FIGURE4_TSVD_RANK}": ("tsvd", FIGURE4_TSVD_RANK),
        "tsvd-efd-minus-16": ("tsvd", below),
    }


def figure4(dataset: DatasetSpec, config: ReproduceConfig, manifest: Manifest) -> None:
    """Low-degree triangle curves for the true graph and four reconstructions."""
    graph = dataset.load(config.data_dir)
    top = min(graph.max_degree, MAX_CAPS)
    caps = config.caps or [float(c) for c in range(1, top + 1)]
    truth = true_profile(
        graph,
        caps=caps,
        block_rows=config.lpca.block_rows,
        workers=config.lpca.resolved_workers(),
    )

    fits: Dict[Tuple[str, int], Tuple[EmbeddingPair, float]] = {}
    curves = [truth.curve] if truth.curve is not None else []
    computed: Dict[str, Any] = {}
    for label, (method, k) in figure4_ranks(dataset.efd).items():
        if k > graph.n:
            continue
        if (method, k) not in fits:
            fits[(method, k)] = (
                _fit_lpca(graph, k, config) if method == "lpca" else _fit_tsvd(graph, k)
            )
        evaluation = _evaluate(graph, fits[(method, k)], truth, config, caps=caps)
        curve = evaluation.profile.curve
        if curve is not None:
            curves.append(replace(curve, label=label))
        computed[label] = {
            "rank": k,
            "rel_frob_error": evaluation.report.rel_frob_error,
        }

    out = Path(manifest.out_dir)
    manifest.add(
        write_curves_csv(curves, out / f"{dataset.name}-curves.csv"),
        "low-degree triangle curves (cap, value, method, rank)",
    )
    manifest.add(
        write_json(
            {
                "curves": [c.to_dict() for c in curves],
                "single_triangle_level": 1 / graph.n,
            },
            out / f"{dataset.name}-curves.json",
        ),
        "curve data with the single-triangle reference level",
    )
    manifest.reference["efd"] = dataset.efd
    manifest.computed.update(computed)
