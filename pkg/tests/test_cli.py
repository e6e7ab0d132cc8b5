"""CLI behavior: goldens, exit codes, bench output schema."""

import numpy as np
import pytest

from graphee.cli import main

TRIANGLE_EDGES = "0 1\n0 2\n1 2\n"
TRIANGLE_LABELS = "0\n1\n1\n"
GOLDEN_TRIANGLE_CSV = "0,1\n1,0.5\n1,0.5\n"


@pytest.fixture
def triangle(tmp_path):
    edges = tmp_path / "triangle_edges.txt"
    labels = tmp_path / "triangle_labels.txt"
    edges.write_text(TRIANGLE_EDGES)
    labels.write_text(TRIANGLE_LABELS)
    return edges, labels


class TestEmbed:
    def test_triangle_golden_bytes(self, triangle, tmp_path):
        edges, labels = triangle
        out = tmp_path / "z.csv"
        code = main(
            ["embed", "--edges", str(edges), "--labels", str(labels), "--out", str(out)]
        )
        assert code == 0
        assert out.read_bytes() == GOLDEN_TRIANGLE_CSV.encode()

    def test_stdout_output(self, triangle, capsys):
        edges, labels = triangle
        code = main(
            ["embed", "--edges", str(edges), "--labels", str(labels), "--out", "-"]
        )
        captured = capsys.readouterr()
        assert code == 0
        assert captured.out == GOLDEN_TRIANGLE_CSV
        assert "nodes=3" in captured.err

    def test_byte_identical_across_runs(self, triangle, tmp_path):
        edges, labels = triangle
        outputs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            args = [
                "embed", "--edges", str(edges), "--labels", str(labels),
                "--lap", "--diag", "--corr", "--out", str(out),
            ]
            assert main(args) == 0
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]

    def test_missing_required_argument_exits_2(self, triangle, capsys):
        _, labels = triangle
        assert main(["embed", "--labels", str(labels), "--out", "-"]) == 2
        capsys.readouterr()

    def test_malformed_edges_exit_3(self, tmp_path, triangle, capsys):
        _, labels = triangle
        bad = tmp_path / "bad.txt"
        bad.write_text("0 1\n0 x\n")
        code = main(
            ["embed", "--edges", str(bad), "--labels", str(labels), "--out", "-"]
        )
        assert code == 3
        assert "line 2" in capsys.readouterr().err

    def test_short_label_file_exit_4(self, tmp_path, triangle, capsys):
        edges, _ = triangle
        short = tmp_path / "short.txt"
        short.write_text("0\n1\n")
        code = main(
            ["embed", "--edges", str(edges), "--labels", str(short), "--out", "-"]
        )
        assert code == 4
        capsys.readouterr()

    def test_missing_file_exit_3(self, triangle, capsys):
        _, labels = triangle
        code = main(
            ["embed", "--edges", "/nonexistent", "--labels", str(labels), "--out", "-"]
        )
        assert code == 3
        capsys.readouterr()

    def test_one_based_and_declared_nodes(self, tmp_path, capsys):
        edges = tmp_path / "e.txt"
        labels = tmp_path / "l.txt"
        edges.write_text("1 2\n")
        labels.write_text("0\n1\n-1\n")
        code = main(
            [
                "embed", "--edges", str(edges), "--labels", str(labels),
                "--one-based", "--nodes", "3", "--out", "-",
            ]
        )
        assert code == 0
        assert capsys.readouterr().out == "0,1\n1,0\n0,0\n"


class TestSbm:
    def test_zero_probability_graph_is_empty(self, tmp_path, capsys):
        out_e = tmp_path / "e.txt"
        out_l = tmp_path / "l.txt"
        code = main(
            [
                "sbm", "--nodes", "100", "--class-probs", "0.2,0.3,0.5",
                "--within", "0", "--between", "0", "--seed", "1",
                "--out-edges", str(out_e), "--out-labels", str(out_l),
            ]
        )
        assert code == 0
        assert out_e.read_text() == ""
        assert len(out_l.read_text().splitlines()) == 100
        capsys.readouterr()

    def test_complete_graph_edge_count(self, tmp_path, capsys):
        out_e = tmp_path / "e.txt"
        out_l = tmp_path / "l.txt"
        code = main(
            [
                "sbm", "--nodes", "100", "--class-probs", "1.0",
                "--within", "1", "--between", "0", "--seed", "1",
                "--out-edges", str(out_e), "--out-labels", str(out_l),
            ]
        )
        assert code == 0
        assert len(out_e.read_text().splitlines()) == 4950
        assert "edges=4950" in capsys.readouterr().err

    def test_bad_probabilities_exit_2(self, tmp_path, capsys):
        code = main(
            [
                "sbm", "--nodes", "10", "--class-probs", "0.5,0.6",
                "--within", "0.1", "--between", "0.1", "--seed", "1",
                "--out-edges", str(tmp_path / "e"), "--out-labels", str(tmp_path / "l"),
            ]
        )
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_output_files_parse_back(self, tmp_path, capsys):
        out_e = tmp_path / "e.txt"
        out_l = tmp_path / "l.txt"
        main(
            [
                "sbm", "--nodes", "50", "--class-probs", "0.5,0.5",
                "--within", "0.3", "--between", "0.1", "--seed", "9",
                "--out-edges", str(out_e), "--out-labels", str(out_l),
            ]
        )
        capsys.readouterr()
        out = tmp_path / "z.csv"
        code = main(
            [
                "embed", "--edges", str(out_e), "--labels", str(out_l),
                "--nodes", "50", "--out", str(out),
            ]
        )
        assert code == 0
        assert len(out.read_text().splitlines()) == 50


class TestDensity:
    def test_triangle(self, triangle, capsys):
        edges, _ = triangle
        assert main(["density", "--edges", str(edges)]) == 0
        out = capsys.readouterr().out
        assert "density=1.0000" in out
        assert "nodes=3" in out and "edges=3" in out

    def test_cora_sized_fixture(self, tmp_path, capsys):
        # 2708 nodes, exactly 5429 distinct undirected edges
        lines = []
        lines += [f"{i} {i + 1}" for i in range(2707)]
        lines += [f"{i} {i + 2}" for i in range(2706)]
        lines += [f"{i} {i + 3}" for i in range(16)]
        assert len(lines) == 5429
        path = tmp_path / "cora_sized.txt"
        path.write_text("\n".join(lines) + "\n")
        assert main(["density", "--edges", str(path)]) == 0
        out = capsys.readouterr().out
        assert "edges=5429" in out
        printed = float(out.split("density=")[1].strip())
        assert printed == pytest.approx(0.0014812, abs=5e-8)
        assert abs(printed - 0.00148) <= 5e-6

    def test_duplicates_and_loops_removed(self, tmp_path, capsys):
        path = tmp_path / "dups.txt"
        path.write_text("0 1\n1 0\n0 1 2.5\n2 2\n")
        assert main(["density", "--edges", str(path)]) == 0
        assert "edges=1" in capsys.readouterr().out

    def test_empty_file_with_declared_nodes(self, tmp_path, capsys):
        path = tmp_path / "empty.txt"
        path.write_text("")
        assert main(["density", "--edges", str(path), "--nodes", "5"]) == 0
        out = capsys.readouterr().out
        assert float(out.split("density=")[1].strip()) == 0.0

    def test_parse_failure_exit_3(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("a b\n")
        assert main(["density", "--edges", str(path)]) == 3
        capsys.readouterr()


class TestBench:
    def parse_csv(self, out):
        lines = out.strip().splitlines()
        assert lines[0] == "dataset,pipeline,lap,diag,corr,repeat,seconds"
        return [line.split(",") for line in lines[1:]]

    def test_grid_emits_eight_combos_per_pipeline(self, triangle, capsys):
        edges, labels = triangle
        code = main(
            [
                "bench", "--edges", str(edges), "--labels", str(labels),
                "--grid", "--repeats", "2", "--pipeline", "both",
            ]
        )
        assert code == 0
        rows = self.parse_csv(capsys.readouterr().out)
        for pipeline in ("sparse", "reference"):
            mine = [r for r in rows if r[1] == pipeline]
            combos = {(r[2], r[3], r[4]) for r in mine}
            assert len(combos) == 8
            assert len(mine) == 16  # 8 combos x 2 repeats

    def test_repeats_recorded(self, triangle, capsys):
        edges, labels = triangle
        code = main(
            ["bench", "--edges", str(edges), "--labels", str(labels), "--repeats", "5"]
        )
        assert code == 0
        rows = self.parse_csv(capsys.readouterr().out)
        assert [r[5] for r in rows] == ["1", "2", "3", "4", "5"]
        assert all(float(r[6]) > 0 for r in rows)

    def test_all_options_single_combo(self, triangle, capsys):
        edges, labels = triangle
        code = main(
            [
                "bench", "--edges", str(edges), "--labels", str(labels),
                "--all-options", "--repeats", "1",
            ]
        )
        assert code == 0
        rows = self.parse_csv(capsys.readouterr().out)
        assert len(rows) == 1
        assert rows[0][2:5] == ["true", "true", "true"]

    def test_explicit_flags(self, triangle, capsys):
        edges, labels = triangle
        code = main(
            [
                "bench", "--edges", str(edges), "--labels", str(labels),
                "--lap", "true", "--diag", "false", "--corr", "true",
                "--repeats", "1", "--format", "csv",
            ]
        )
        assert code == 0
        rows = self.parse_csv(capsys.readouterr().out)
        assert rows[0][2:5] == ["true", "false", "true"]

    def test_both_pipelines_report_difference(self, triangle, capsys):
        edges, labels = triangle
        code = main(
            [
                "bench", "--edges", str(edges), "--labels", str(labels),
                "--pipeline", "both", "--repeats", "1",
            ]
        )
        assert code == 0
        assert "max_abs_diff" in capsys.readouterr().err

    def test_table_format(self, triangle, capsys):
        edges, labels = triangle
        code = main(
            [
                "bench", "--edges", str(edges), "--labels", str(labels),
                "--repeats", "2", "--format", "table",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0].split()[:2] == ["dataset", "pipeline"]

    def test_bad_bool_exit_2(self, triangle, capsys):
        edges, labels = triangle
        code = main(
            ["bench", "--edges", str(edges), "--labels", str(labels), "--lap", "maybe"]
        )
        assert code == 2
        capsys.readouterr()

    def test_zero_repeats_exit_2(self, triangle, capsys):
        edges, labels = triangle
        code = main(
            ["bench", "--edges", str(edges), "--labels", str(labels), "--repeats", "0"]
        )
        assert code == 2
        capsys.readouterr()
