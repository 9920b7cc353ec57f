"""
Tests for the embedding-core command line.
"""
import json

import pytest
from typer.testing import CliRunner

from embedding_core.cli import app
from embedding_core.core.graphs import load_edge_list
from embedding_core.core.lpca import load_embedding
from embedding_core.shared_types import EXIT_DATA, EXIT_USAGE, EmbeddingMethod

runner = CliRunner()

TWO_TRIANGLES = "0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n"


@pytest.fixture
def triangles_file(tmp_path):
    path = tmp_path / "tri.txt"
    path.write_text(TWO_TRIANGLES)
    return path


@pytest.fixture
def cliques_file(tmp_path):
    path = tmp_path / "cliques.txt"
    result = runner.invoke(
        app,
        ["generate", "--family", "cliques", "--n", "12", "--c", "3",
         "--out", str(path)],
    )
    assert result.exit_code == 0, result.output
    return path


class TestGenerate:
    def test_cliques(self, cliques_file):
        graph = load_edge_list(cliques_file)
        assert graph.n == 12
        assert graph.num_edges == 12

    def test_seeded_erdos_renyi(self, tmp_path):
        paths = [tmp_path / "a.txt", tmp_path / "b.txt"]
        for path in paths:
            args = ["generate", "--family", "er", "--n", "40", "--m", "60"]
            args += ["--seed", "3"]
            result = runner.invoke(app, [*args, "--out", str(path)])
            assert result.exit_code == 0, result.output
        assert paths[0].read_text() == paths[1].read_text()

    def test_chunglu_needs_degrees(self, tmp_path):
        result = runner.invoke(
            app, ["generate", "--family", "chunglu", "--out", str(tmp_path / "cl.txt")]
        )
        assert result.exit_code == EXIT_USAGE

    def test_family_is_a_required_flag(self, tmp_path):
        out = str(tmp_path / "g.txt")
        missing = runner.invoke(app, ["generate", "--out", out])
        assert missing.exit_code == EXIT_USAGE
        positional = runner.invoke(app, ["generate", "cliques", "--out", out])
        assert positional.exit_code == EXIT_USAGE

    def test_chunglu_like(self, tmp_path, cliques_file):
        out = tmp_path / "cl.txt"
        result = runner.invoke(
            app,
            ["generate", "--family", "chunglu", "--like", str(cliques_file),
             "--seed", "1", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        assert out.is_file()


class TestStats:
    def test_json(self, cliques_file):
        result = runner.invoke(app, ["stats", "--graph", str(cliques_file), "--json"])
        assert result.exit_code == 0, result.output
        assert '"triangles": 4' in result.output
        assert '"bounded_degree_rank": 5' in result.output

    def test_missing_graph_is_usage_error(self, tmp_path):
        result = runner.invoke(app, ["stats", "--graph", str(tmp_path / "absent.txt")])
        assert result.exit_code == EXIT_USAGE

    def test_malformed_graph_is_data_error(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0 1\nnot an edge\n")
        result = runner.invoke(app, ["stats", "--graph", str(path)])
        assert result.exit_code == EXIT_DATA


class TestEmbedAndEval:
    """embed followed by eval."""

    def test_tsvd_then_eval(self, tmp_path, cliques_file):
        out = tmp_path / "out"
        result = runner.invoke(
            app,
            ["embed", "--graph", str(cliques_file), "--method", "tsvd", "--rank", "4",
             "--out-dir", str(out)],
        )
        assert result.exit_code == 0, result.output

        emb_path = out / "cliques-tsvd-k4.emb"
        embedding = load_embedding(emb_path)
        assert embedding.method is EmbeddingMethod.TSVD
        assert embedding.rank == 4
        metrics = json.loads((out / "cliques-tsvd-k4-metrics.json").read_text())
        assert metrics["rank"] == 4
        assert metrics["mode"] == "threshold"
        assert set(metrics) >= {"exact", "violations", "rel_frob_error", "wall_time_s"}

        result = runner.invoke(
            app,
            ["eval", "--graph", str(cliques_file), "--embedding", str(emb_path),
             "--caps", "1,2", "--out-dir", str(out)],
        )
        assert result.exit_code == 0, result.output
        report = json.loads((out / "cliques-tsvd-k4-report.json").read_text())
        assert report["method"] == "tsvd"
        assert report["n"] == 12
        for suffix in ("-degrees.csv", "-triangles.csv", "-curves.csv"):
            assert (out / f"cliques-tsvd-k4{suffix}").is_file()

    def test_lpca_full_rank_csv(self, tmp_path, triangles_file):
        out = tmp_path / "out"
        result = runner.invoke(
            app,
            ["embed", "-g", str(triangles_file), "-k", "6", "--seed", "0",
             "--format", "csv", "--out-dir", str(out)],
        )
        assert result.exit_code == 0, result.output
        lines = (out / "tri-lpca-k6-metrics.csv").read_text().splitlines()
        row = dict(zip(lines[0].split(","), lines[1].split(",")))
        assert row["exact"] == "True"
        assert row["seed"] == "0"

    def test_rank_above_n(self, tmp_path, triangles_file):
        result = runner.invoke(
            app,
            ["embed", "-g", str(triangles_file), "--method", "tsvd", "-k", "7",
             "--out-dir", str(tmp_path)],
        )
        assert result.exit_code == EXIT_USAGE

    def test_missing_graph(self, tmp_path):
        result = runner.invoke(
            app, ["embed", "-g", str(tmp_path / "absent.txt"), "-k", "2"]
        )
        assert result.exit_code == EXIT_USAGE

    def test_embedding_for_another_graph_is_data_error(self, tmp_path, triangles_file):
        emb_path = tmp_path / "small.emb"
        emb_path.write_text("2 1 tsvd\n1\n1\n1\n1\n")
        result = runner.invoke(
            app,
            ["eval", "-g", str(triangles_file), "-e", str(emb_path),
             "--out-dir", str(tmp_path)],
        )
        assert result.exit_code == EXIT_DATA

    def test_corrupt_embedding_is_data_error(self, tmp_path, triangles_file):
        emb_path = tmp_path / "broken.emb"
        emb_path.write_text("6 2 lpca\n1 2\n")
        result = runner.invoke(
            app,
            ["eval", "-g", str(triangles_file), "-e", str(emb_path),
             "--out-dir", str(tmp_path)],
        )
        assert result.exit_code == EXIT_DATA


class TestConstruct:
    def test_cliques_line(self, tmp_path):
        result = runner.invoke(
            app,
            ["construct", "--method", "cliques-line", "--n", "12", "--c", "3",
             "--out-dir", str(tmp_path)],
        )
        assert result.exit_code == 0, result.output
        certificate = json.loads(
            (tmp_path / "cliques-line-cliques-12-3-certificate.json").read_text()
        )
        assert certificate["exact"] is True
        assert certificate["k"] == 3
        assert load_embedding(tmp_path / "cliques-line-cliques-12-3.emb").rank == 3

    def test_cliques_line_needs_clique_size(self, tmp_path):
        result = runner.invoke(
            app,
            ["construct", "--method", "cliques-line", "--n", "12",
             "--out-dir", str(tmp_path)],
        )
        assert result.exit_code == EXIT_USAGE

    def test_vandermonde(self, tmp_path, triangles_file):
        result = runner.invoke(
            app,
            ["construct", "--method", "vandermonde", "--graph", str(triangles_file),
             "--out-dir", str(tmp_path)],
        )
        assert result.exit_code == 0, result.output
        certificate = json.loads(
            (tmp_path / "vandermonde-tri-certificate.json").read_text()
        )
        assert certificate["exact"] is True
        assert certificate["details"]["rank"] == 5

    def test_vandermonde_budget_too_small(self, tmp_path):
        path = tmp_path / "path.txt"
        path.write_text("0 1\n1 2\n")
        result = runner.invoke(
            app,
            ["construct", "--method", "vandermonde", "-g", str(path), "--c", "1",
             "--out-dir", str(tmp_path)],
        )
        assert result.exit_code == EXIT_USAGE

    def test_binary(self, tmp_path):
        result = runner.invoke(
            app,
            ["construct", "--method", "binary", "--n", "27", "--c", "3", "--seed", "0",
             "--out-dir", str(tmp_path)],
        )
        assert result.exit_code == 0, result.output
        certificate = json.loads(
            (tmp_path / "binary-cliques-27-3-certificate.json").read_text()
        )
        assert certificate["exact"] is True
        assert certificate["details"]["nnz_per_row"] == 7


class TestEFD:
    def test_two_triangles(self, tmp_path, triangles_file):
        result = runner.invoke(
            app,
            ["efd", "-g", str(triangles_file), "--rank-grid", "1,6",
             "--out-dir", str(tmp_path)],
        )
        assert result.exit_code == 0, result.output
        data = json.loads((tmp_path / "tri-efd.json").read_text())
        assert data["efd"] == "6"
        assert [o["rank"] for o in data["outcomes"]] == [1, 6]

    @pytest.mark.parametrize("grid", ["3,2", "0,4", "a,b"])
    def test_bad_grid(self, tmp_path, triangles_file, grid):
        result = runner.invoke(
            app,
            ["efd", "-g", str(triangles_file), "--rank-grid", grid,
             "--out-dir", str(tmp_path)],
        )
        assert result.exit_code == EXIT_USAGE


class TestReproduce:
    def test_unknown_target(self, tmp_path):
        result = runner.invoke(
            app, ["reproduce", "figure9", "--out-dir", str(tmp_path)]
        )
        assert result.exit_code == EXIT_USAGE

    def test_missing_dataset(self, tmp_path):
        data_dir = tmp_path / "data"
        data_dir.mkdir()
        result = runner.invoke(
            app,
            ["reproduce", "table2-row:Cora", "--data-dir", str(data_dir),
             "--out-dir", str(tmp_path / "results")],
        )
        assert result.exit_code == EXIT_DATA

    def test_table2_skips_missing_files(self, tmp_path):
        data_dir = tmp_path / "data"
        data_dir.mkdir()
        out = tmp_path / "results"
        result = runner.invoke(
            app,
            ["reproduce", "table2", "--data-dir", str(data_dir), "--out-dir", str(out)],
        )
        assert result.exit_code == 0, result.output
        manifest = json.loads((out / "table2" / "manifest.json").read_text())
        assert len(manifest["skipped"]) == 11


def test_no_arguments_prints_help():
    result = runner.invoke(app, [])
    assert "Usage" in result.output
