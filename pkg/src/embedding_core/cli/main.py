"""
Embedding Core command line.

Subcommands:
    generate    write a synthetic graph as an edge list
    embed       fit LPCA or TSVD at one rank
    construct   build an explicit exact embedding
    eval        evaluate an embedding against its graph
    efd         search the exact factorization dimension
    reproduce   run a reproduction recipe
    stats       print graph statistics

Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical error.
"""
import csv
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterator, Mapping, Optional, Tuple

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from ..core.constructions import (
    PolynomialBasis,
    binary_cluster_construct,
    certify,
    clique_line_construct,
    rank_report,
    vandermonde_construct,
)
from ..core.evaluation import (
    BaselineSettings,
    EFDSettings,
    SeedPolicy,
    baseline_efd,
    efd_search,
    evaluate_embedding,
    rel_frobenius_error,
    write_curves_csv,
    write_json,
    write_sequences_csv,
)
from ..core.exceptions import InvalidArgumentError, format_error_chain
from ..core.graphs import (
    DegreeSequence,
    EdgeListOptions,
    Graph,
    chung_lu,
    clique_union,
    erdos_renyi,
    graph_stats,
    load_edge_list,
    preferential_attachment,
    save_edge_list,
    toy_graph,
)
from ..core.lpca import (
    EmbeddingPair,
    default_mode,
    load_embedding,
    lpca_fit_best,
    reconstruct,
    save_embedding,
    verify_exact,
)
from ..core.reproduce import ReproduceConfig, run_target
from ..core.tsvd import tsvd_fit
from ..shared_types import (
    EXIT_NUMERICAL,
    EXIT_USAGE,
    BaselineKind,
    ConstructionMethod,
    EmbeddingError,
    EmbeddingMethod,
    GraphFamily,
    LogLevel,
    OutputFormat,
    ReconstructionMode,
)
from .config import (
    RunConfig,
    configure_logging,
    default_out_dir,
    err_console,
    parse_float_list,
    parse_int_list,
)

logger = logging.getLogger(__name__)

console = Console()

app = typer.Typer(
    name="embedding-core",
    help="Exact and near-exact low-rank graph embeddings.",
    no_args_is_help=True,
    add_completion=False,
)


@dataclass
class CLIState:
    """Options shared by every subcommand."""

    threads: Optional[int] = None


@app.callback()
def main(
    ctx: typer.Context,
    log_level: LogLevel = typer.Option(
        LogLevel.WARNING, "--log-level", help="Logging verbosity"
    ),
    threads: Optional[int] = typer.Option(
        None, "--threads", min=1, help="Worker threads for row-block work"
    ),
) -> None:
    configure_logging(log_level)
    ctx.obj = CLIState(threads=threads)


@contextmanager
def handle_errors() -> Iterator[None]:
    """Turn library errors into a message on stderr and an exit code."""
    try:
        yield
    except EmbeddingError as e:
        logger.error(format_error_chain(e))
        err_console.print(f"[bold red]error:[/] {e}")
        raise typer.Exit(code=e.exit_code)
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        logger.error(f"Invalid arguments: {messages}")
        err_console.print(f"[bold red]error:[/] {messages}")
        raise typer.Exit(code=EXIT_USAGE)


def _threads(ctx: typer.Context) -> Optional[int]:
    state = ctx.obj
    return state.threads if isinstance(state, CLIState) else None


def _load_graph(path: Path, keep_self_loops: bool = False) -> Graph:
    options = EdgeListOptions()
    if keep_self_loops:
        options = EdgeListOptions(drop_self_loops=False, allow_self_loops=True)
    return load_edge_list(path, options)


def _artifact(out_dir: Path, base: str, suffix: str) -> Path:
    """out_dir/<base><suffix>; base may contain dots."""
    return out_dir / f"{base}{suffix}"


def _write_record(
    record: Mapping[str, Any], out_dir: Path, base: str, fmt: OutputFormat
) -> Path:
    """One flat record as <base>.json or a one-row <base>.csv."""
    if fmt is OutputFormat.JSON:
        return write_json(record, _artifact(out_dir, base, ".json"))
    path = _artifact(out_dir, base, ".csv")
    path.parent.mkdir(parents=True, exist_ok=True)
    flat = {k: v for k, v in record.items() if not isinstance(v, (dict, list))}
    with path.open("w", newline="") as fp:
        writer = csv.DictWriter(fp, fieldnames=list(flat))
        writer.writeheader()
        writer.writerow(flat)
    return path


def _print_record(title: str, record: Mapping[str, Any]) -> None:
    table = Table(title=title, show_header=False)
    table.add_column("key", style="cyan")
    table.add_column("value")
    for key, value in record.items():
        if isinstance(value, float):
            value = f"{value:.6g}"
        table.add_row(key, str(value))
    console.print(table)


@app.command()
def generate(
    family: GraphFamily = typer.Option(..., "--family", "-f", help="Graph family"),
    out: Path = typer.Option(..., "--out", "-o", help="Edge-list file to write"),
    n: int = typer.Option(0, "--n", help="Number of nodes"),
    t: int = typer.Option(100, "--t", help="Triangles in the toy graph"),
    c: int = typer.Option(3, "--c", help="Clique size"),
    m: float = typer.Option(
        2.0, "--m", help="Expected edges (er) or edges per new node (pa)"
    ),
    degrees: Optional[str] = typer.Option(
        None, "--degrees", help="Comma-separated expected degrees (chunglu)"
    ),
    like: Optional[Path] = typer.Option(
        None, "--like", help="Match the degrees of this edge list (chunglu)"
    ),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed"),
) -> None:
    """Write a synthetic graph as an edge list."""
    with handle_errors():
        if family is GraphFamily.TOY:
            graph = toy_graph(t)
        elif family is GraphFamily.CLIQUES:
            graph = clique_union(n, c)
        elif family is GraphFamily.ER:
            graph = erdos_renyi(n, m, seed=seed)
        elif family is GraphFamily.PA:
            graph = preferential_attachment(n, int(m), seed=seed)
        else:
            graph = chung_lu(_expected_degrees(degrees, like), seed=seed)

        save_edge_list(graph, out)
        console.print(
            f"{family.value}: n={graph.n} edges={graph.num_edges} -> {out}"
        )


def _expected_degrees(degrees: Optional[str], like: Optional[Path]) -> DegreeSequence:
    if like is not None:
        graph = _load_graph(like)
        return DegreeSequence(graph.loopless_adjacency().getnnz(axis=1) * 1.0)
    values = parse_float_list(degrees)
    if not values:
        raise InvalidArgumentError(
            "chunglu needs --degrees or --like",
            argument="degrees",
            component="cli",
        )
    return DegreeSequence(values)


@app.command()
def embed(
    ctx: typer.Context,
    graph_path: Path = typer.Option(..., "--graph", "-g", help="Edge-list file"),
    method: EmbeddingMethod = typer.Option(
        EmbeddingMethod.LPCA, "--method", help="lpca or tsvd"
    ),
    rank: int = typer.Option(..., "--rank", "-k", help="Embedding rank"),
    seed: Optional[int] = typer.Option(None, "--seed", help="LPCA seed"),
    restarts: int = typer.Option(1, "--restarts", help="Consecutive seeds to try"),
    max_iters: int = typer.Option(2000, "--max-iters", help="L-BFGS iterations"),
    out_dir: Optional[Path] = typer.Option(None, "--out-dir", help="Output directory"),
    fmt: OutputFormat = typer.Option(
        OutputFormat.JSON, "--format", help="Metrics format"
    ),
    keep_self_loops: bool = typer.Option(
        False, "--keep-self-loops", help="Keep (i, i) lines as edges"
    ),
) -> None:
    """Fit an LPCA or TSVD embedding at one rank."""
    with handle_errors():
        config = RunConfig(
            subcommand="embed",
            graph=graph_path,
            out_dir=out_dir or default_out_dir(),
            method=method,
            rank=rank,
            seed=seed,
            seeds=restarts,
            max_iters=max_iters,
            threads=_threads(ctx),
            output_format=fmt,
        )
        if method is EmbeddingMethod.CONSTRUCTION:
            raise typer.BadParameter(
                "use the construct subcommand", param_hint="--method"
            )

        graph = _load_graph(graph_path, keep_self_loops)
        embedding, wall_time_s = _fit(graph, config)
        metrics = _embed_metrics(graph, embedding, config, wall_time_s)

        base = f"{graph.name}-{method.value}-k{rank}"
        save_embedding(embedding, _artifact(config.out_dir, base, ".emb"))
        _write_record(metrics, config.out_dir, f"{base}-metrics", fmt)
        _print_record(f"{method.value} rank {rank} on {graph.name}", metrics)


def _fit(graph: Graph, config: RunConfig) -> Tuple[EmbeddingPair, float]:
    assert config.rank is not None
    if config.method is EmbeddingMethod.TSVD:
        started = time.perf_counter()
        embedding = tsvd_fit(graph, config.rank)
        return embedding, time.perf_counter() - started

    settings = config.lpca_settings()
    fit = lpca_fit_best(graph, config.rank, settings.restart_seeds(), settings)
    return fit.embedding, fit.wall_time_s


def _embed_metrics(
    graph: Graph, embedding: EmbeddingPair, config: RunConfig, wall_time_s: float
) -> Dict[str, Any]:
    exactness = verify_exact(graph, embedding, workers=config.threads)
    mode = default_mode(embedding, exactness.exact)
    expected = reconstruct(embedding, mode, self_loops=graph.allow_self_loops)
    return {
        "graph": graph.name,
        "method": embedding.method.value,
        "rank": embedding.rank,
        "exact": exactness.exact,
        "violations": exactness.violations,
        "worst_margin": exactness.worst_margin,
        "mode": mode.value,
        "rel_frob_error": rel_frobenius_error(graph, expected),
        "iterations": embedding.iterations_used,
        "loss": embedding.final_loss,
        "seed": embedding.seed,
        "converged_reason": embedding.converged_reason,
        "wall_time_s": wall_time_s,
    }


@app.command()
def construct(
    method: ConstructionMethod = typer.Option(..., "--method", help="Construction"),
    n: int = typer.Option(0, "--n", help="Nodes (cliques-line, binary)"),
    c: Optional[int] = typer.Option(
        None, "--c", help="Clique size, or root-pair budget for vandermonde"
    ),
    d: float = typer.Option(8.0, "--d", help="Oversampling factor (binary)"),
    gap: float = typer.Option(3.0, "--gap", help="Cluster gap (cliques-line)"),
    eps: Optional[float] = typer.Option(None, "--eps", help="Cluster width"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed (binary)"),
    graph_path: Optional[Path] = typer.Option(
        None, "--graph", "-g", help="Target edge list (vandermonde)"
    ),
    basis: PolynomialBasis = typer.Option(
        PolynomialBasis.MONOMIAL, "--basis", help="Polynomial basis (vandermonde)"
    ),
    centers_as_nodes: bool = typer.Option(
        False, "--centers-as-nodes", help="Use each center row as a node (binary)"
    ),
    keep_self_loops: bool = typer.Option(
        False, "--keep-self-loops", help="Keep (i, i) lines as edges"
    ),
    out_dir: Optional[Path] = typer.Option(None, "--out-dir", help="Output directory"),
) -> None:
    """Build an explicit embedding and certify its exactness."""
    with handle_errors():
        config = RunConfig(
            subcommand="construct",
            graph=graph_path,
            out_dir=out_dir or default_out_dir(),
        )
        if method is ConstructionMethod.CLIQUES_LINE:
            size = _require(c, "--c")
            target = clique_union(n, size, self_loops=True)
            embedding = clique_line_construct(n, size, gap=gap, eps=eps)
            certificate = certify(
                target, embedding, method, check_masked=True, details={"gap": gap}
            )
        elif method is ConstructionMethod.VANDERMONDE:
            target = _load_graph(_require(graph_path, "--graph"), keep_self_loops)
            embedding = vandermonde_construct(target, c=c, basis=basis)
            certificate = certify(
                target, embedding, method, details=rank_report(target, c)
            )
        else:
            built = binary_cluster_construct(
                n,
                _require(c, "--c"),
                d=d,
                seed=seed,
                centers_as_nodes=centers_as_nodes,
            )
            target, embedding = built.target(), built.embedding
            details = {**built.parameters.to_dict(), "attempts": built.attempts}
            certificate = certify(target, embedding, method, details=details)

        base = f"{method.value}-{target.name}"
        save_embedding(embedding, _artifact(config.out_dir, base, ".emb"))
        certificate.save(_artifact(config.out_dir, base, "-certificate.json"))
        _print_record(f"{method.value} certificate", certificate.to_dict())

        if not certificate.exact:
            logger.error(
                f"{method.value}: {certificate.violations} violations "
                f"(worst margin {certificate.worst_margin:.3g})"
            )
            raise typer.Exit(code=EXIT_NUMERICAL)


def _require(value: Any, flag: str) -> Any:
    if value is None:
        raise typer.BadParameter("required for this method", param_hint=flag)
    return value


@app.command(name="eval")
def evaluate(
    ctx: typer.Context,
    graph_path: Path = typer.Option(..., "--graph", "-g", help="Edge-list file"),
    embedding_path: Path = typer.Option(
        ..., "--embedding", "-e", help="Embedding container"
    ),
    mode: Optional[ReconstructionMode] = typer.Option(
        None, "--mode", help="threshold or logistic (default by method)"
    ),
    caps: Optional[str] = typer.Option(
        None, "--caps", help="Comma-separated degree caps for the triangle curve"
    ),
    keep_self_loops: bool = typer.Option(
        False, "--keep-self-loops", help="Keep (i, i) lines as edges"
    ),
    out_dir: Optional[Path] = typer.Option(None, "--out-dir", help="Output directory"),
    fmt: OutputFormat = typer.Option(
        OutputFormat.JSON, "--format", help="Report format"
    ),
) -> None:
    """Evaluate an embedding: exactness, errors, degree and triangle sequences."""
    with handle_errors():
        config = RunConfig(
            subcommand="eval",
            graph=graph_path,
            embedding=embedding_path,
            out_dir=out_dir or default_out_dir(),
            threads=_threads(ctx),
            output_format=fmt,
        )
        graph = _load_graph(graph_path, keep_self_loops)
        embedding = load_embedding(embedding_path)
        cap_values = parse_float_list(caps)
        evaluation = evaluate_embedding(
            graph, embedding, mode=mode, caps=cap_values, workers=config.threads
        )

        label = embedding.method.value
        base = f"{graph.name}-{label}-k{embedding.rank}"
        report = evaluation.report.to_dict()
        _write_record(report, config.out_dir, f"{base}-report", fmt)
        write_sequences_csv(
            {
                "true": evaluation.truth.degrees.values,
                label: evaluation.profile.degrees.values,
            },
            _artifact(config.out_dir, base, "-degrees.csv"),
        )
        write_sequences_csv(
            {"true": evaluation.truth.triangles, label: evaluation.profile.triangles},
            _artifact(config.out_dir, base, "-triangles.csv"),
        )
        if evaluation.profile.curve is not None and evaluation.truth.curve is not None:
            write_curves_csv(
                [evaluation.truth.curve, evaluation.profile.curve],
                _artifact(config.out_dir, base, "-curves.csv"),
            )
        _print_record(f"{label} rank {embedding.rank} on {graph.name}", report)


@app.command()
def efd(
    ctx: typer.Context,
    graph_path: Path = typer.Option(..., "--graph", "-g", help="Edge-list file"),
    rank_grid: Optional[str] = typer.Option(
        None, "--rank-grid", help="Comma-separated ascending ranks"
    ),
    seeds: int = typer.Option(1, "--seeds", help="Seeds tried per rank"),
    base_seed: int = typer.Option(0, "--base-seed", help="First seed"),
    max_iters: int = typer.Option(2000, "--max-iters", help="L-BFGS iterations"),
    baseline: Optional[BaselineKind] = typer.Option(
        None, "--baseline", help="Also search matched random graphs"
    ),
    trials: int = typer.Option(3, "--trials", help="Random graphs per baseline"),
    keep_self_loops: bool = typer.Option(
        False, "--keep-self-loops", help="Keep (i, i) lines as edges"
    ),
    out_dir: Optional[Path] = typer.Option(None, "--out-dir", help="Output directory"),
) -> None:
    """Search the exact factorization dimension over a rank grid."""
    with handle_errors():
        config = RunConfig(
            subcommand="efd",
            graph=graph_path,
            out_dir=out_dir or default_out_dir(),
            rank_grid=parse_int_list(rank_grid),
            seeds=seeds,
            seed=base_seed,
            max_iters=max_iters,
            threads=_threads(ctx),
        )
        graph = _load_graph(graph_path, keep_self_loops)
        policy = SeedPolicy(seeds=seeds, base_seed=base_seed)
        settings = EFDSettings(seed_policy=policy, lpca=config.lpca_settings())
        if config.rank_grid is not None:
            settings = EFDSettings(
                rank_grid=config.rank_grid,
                seed_policy=policy,
                lpca=config.lpca_settings(),
            )

        results = [efd_search(graph, settings=settings)]
        if baseline is not None:
            results.append(
                baseline_efd(
                    graph,
                    BaselineSettings(kind=baseline, trials=trials, seed=base_seed),
                    settings=settings,
                )
            )

        table = Table(title=f"EFD of {graph.name}")
        for column in ("graph", "efd", "ranks tried"):
            table.add_column(column)
        for result in results:
            slug = result.graph.replace(":", "-")
            write_json(result.to_dict(), config.out_dir / f"{slug}-efd.json")
            table.add_row(result.graph, result.efd_label, str(len(result.outcomes)))
        console.print(table)


@app.command()
def reproduce(
    ctx: typer.Context,
    target: str = typer.Argument(
        ..., help="figure1 | table2 | table2-row:<name> | figure2..4:<name>"
    ),
    data_dir: Optional[Path] = typer.Option(
        None, "--data-dir", help="Directory holding dataset edge lists"
    ),
    out_dir: Optional[Path] = typer.Option(None, "--out-dir", help="Output root"),
    seeds: int = typer.Option(1, "--seeds", help="LPCA seeds per rank"),
    base_seed: int = typer.Option(0, "--base-seed", help="First seed"),
    rank_grid: Optional[str] = typer.Option(
        None, "--rank-grid", help="Comma-separated EFD rank grid"
    ),
    sweep_ranks: Optional[str] = typer.Option(
        None, "--sweep-ranks", help="Ranks for figure2/figure3"
    ),
    caps: Optional[str] = typer.Option(None, "--caps", help="Degree caps for figure4"),
    no_baselines: bool = typer.Option(
        False, "--no-baselines", help="Skip random-graph EFDs"
    ),
    trials: int = typer.Option(3, "--trials", help="Random graphs per baseline"),
) -> None:
    """Run a reproduction recipe and write its artifacts plus a manifest."""
    with handle_errors():
        overrides: Dict[str, Any] = {
            "seed_policy": SeedPolicy(seeds=seeds, base_seed=base_seed),
            "baselines": not no_baselines,
            "baseline_trials": trials,
            "caps": parse_float_list(caps),
        }
        if data_dir is not None:
            overrides["data_dir"] = data_dir
        if out_dir is not None:
            overrides["out_dir"] = out_dir
        grid = parse_int_list(rank_grid)
        if grid is not None:
            overrides["rank_grid"] = grid
        sweep = parse_int_list(sweep_ranks)
        if sweep is not None:
            overrides["sweep_ranks"] = sweep
        threads = _threads(ctx)
        if threads is not None:
            overrides["lpca"] = {"workers": threads}

        manifest = run_target(target, ReproduceConfig(**overrides))

        table = Table(title=f"{manifest.target} -> {manifest.out_dir}")
        table.add_column("artifact")
        table.add_column("description")
        for artifact in manifest.artifacts:
            table.add_row(artifact.path, artifact.description)
        console.print(table)
        for name in manifest.skipped:
            err_console.print(f"[yellow]skipped:[/] {name}")


@app.command()
def stats(
    graph_path: Path = typer.Option(..., "--graph", "-g", help="Edge-list file"),
    as_json: bool = typer.Option(False, "--json", help="Print JSON instead of a table"),
    keep_self_loops: bool = typer.Option(
        False, "--keep-self-loops", help="Keep (i, i) lines as edges"
    ),
) -> None:
    """Print size, degree and triangle statistics of a graph."""
    with handle_errors():
        RunConfig(subcommand="stats", graph=graph_path)
        summary = graph_stats(_load_graph(graph_path, keep_self_loops)).to_dict()
        if as_json:
            console.print_json(data=summary)
        else:
            _print_record(f"Statistics of {summary['name']}", summary)


def run() -> None:
    app()


if __name__ == "__main__":
    run()
