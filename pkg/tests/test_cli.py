import json
import subprocess
import sys
from pathlib import Path

import pytest

import tspdom as t
from tspdom.cli import main
from tspdom.instance import parse_instance

DATA = Path(__file__).parent / "data"


def run_cli(*args):
    """Run the CLI in-process, capturing stdout; returns (exit code, text)."""
    import io
    from contextlib import redirect_stdout

    buf = io.StringIO()
    with redirect_stdout(buf):
        try:
            code = main(list(args))
        except SystemExit as exc:  # argparse usage errors
            code = exc.code
    return code, buf.getvalue()


class TestGen:
    def test_bernoulli_round_trip(self, tmp_path):
        out = tmp_path / "a.tsp01"
        code, _ = run_cli(
            "gen", "--model", "bernoulli", "--n", "10", "--p", "0.5",
            "--seed", "1", "-o", str(out),
        )
        assert code == 0
        assert parse_instance(out.read_text()) == t.gen_bernoulli(10, 0.5, 1)

    def test_clique_edge_count(self, tmp_path):
        out = tmp_path / "b.tsp01"
        code, _ = run_cli("gen", "--model", "clique", "--n", "10", "--r", "4", "-o", str(out))
        assert code == 0
        assert len(parse_instance(out.read_text()).one_edges) == 6

    def test_small_n_usage_error(self, tmp_path):
        code, _ = run_cli(
            "gen", "--model", "bernoulli", "--n", "2", "--p", "0.5",
            "-o", str(tmp_path / "x"),
        )
        assert code == 2

    def test_conflicting_flags(self, tmp_path):
        code, _ = run_cli(
            "gen", "--model", "bernoulli", "--n", "10", "--p", "0.5", "--r", "3",
            "-o", str(tmp_path / "x"),
        )
        assert code == 2


class TestSolveCommand:
    @pytest.mark.parametrize(
        "name", ["golden_bernoulli", "golden_sparse", "golden_allones"]
    )
    def test_golden_output(self, name):
        code, out = run_cli("solve", "-i", str(DATA / f"{name}.tsp01"))
        assert code == 0
        assert out == (DATA / f"{name}.solve.json").read_text()

    def test_missing_file(self):
        code, _ = run_cli("solve", "-i", str(DATA / "no_such_file.tsp01"))
        assert code == 3

    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.tsp01"
        bad.write_text("p tsp01 4 1\ne 1 1\n")
        code, _ = run_cli("solve", "-i", str(bad))
        assert code == 4

    def test_eps_must_be_fraction(self):
        code, _ = run_cli("solve", "-i", str(DATA / "golden_allones.tsp01"), "--eps", "zero")
        assert code == 2


class TestClassifyCommand:
    def test_size_cap(self):
        code, _ = run_cli(
            "classify", "-i", str(DATA / "golden_sparse.tsp01"), "--max-n", "100"
        )
        assert code == 5

    def test_record_fields(self):
        code, out = run_cli("classify", "-i", str(DATA / "golden_sparse.tsp01"))
        assert code == 0
        record = json.loads(out)
        assert record["schema"] == 1
        assert record["kind"] == "sparse"
        assert record["eps"] == "1/28"
        assert record["min_matching_weight"] == 0


class TestEstimateCommand:
    def test_exact_and_mc_agree(self, tmp_path):
        inst_path = DATA / "golden_bernoulli.tsp01"
        inst = parse_instance(inst_path.read_text())
        report = t.solve(inst)
        tour_path = tmp_path / "tour.t"
        tour_path.write_text(t.instance.serialize_tour(report.tour))

        code, out = run_cli("estimate", "-i", str(inst_path), "-t", str(tour_path), "--exact")
        assert code == 0
        exact = json.loads(out)
        code, out = run_cli(
            "estimate", "-i", str(inst_path), "-t", str(tour_path),
            "--samples", "20000", "--seed", "3",
        )
        assert code == 0
        mc = json.loads(out)
        assert abs(mc["estimate"] - exact["estimate"]) <= 4 * mc["halfwidth"] + 1e-9

    def test_requires_mode(self, tmp_path):
        tour_path = tmp_path / "tour.t"
        inst = parse_instance((DATA / "golden_allones.tsp01").read_text())
        tour_path.write_text(t.instance.serialize_tour(t.solve(inst).tour))
        code, _ = run_cli(
            "estimate", "-i", str(DATA / "golden_allones.tsp01"), "-t", str(tour_path)
        )
        assert code == 2

    def test_worker_byte_identical(self, tmp_path):
        inst_path = DATA / "golden_bernoulli.tsp01"
        inst = parse_instance(inst_path.read_text())
        tour_path = tmp_path / "tour.t"
        tour_path.write_text(t.instance.serialize_tour(t.solve(inst).tour))
        outputs = []
        for workers in ("1", "4", "1"):
            code, out = run_cli(
                "estimate", "-i", str(inst_path), "-t", str(tour_path),
                "--samples", "120000", "--seed", "9", "--workers", workers,
            )
            assert code == 0
            outputs.append(out)
        assert outputs[0] == outputs[1] == outputs[2]


class TestReduceCommand:
    def test_triangle(self, tmp_path):
        graph = tmp_path / "g.tsp01"
        graph.write_text("p tsp01 3 3\ne 1 2\ne 2 3\ne 1 3\n")
        out = tmp_path / "reduced.tsp01"
        code, provenance = run_cli(
            "reduce", "-g", str(graph), "--eps", "1/2", "-o", str(out)
        )
        assert code == 0
        record = json.loads(provenance)
        assert record["n_prime"] == 289
        assert record["embedded_vertices"] == [1, 2, 3]
        reduced = parse_instance(out.read_text())
        assert reduced.n == 289
        # the embedded block carries the complement of the triangle: no
        # internal weight-1 edges, complete weight-1 bipartite to the rest
        assert all((u, v) not in reduced.one_edges for u in range(3) for v in range(u + 1, 3))
        assert all((u, v) in reduced.one_edges for u in range(3) for v in range(3, 10))

    def test_missing_graph(self, tmp_path):
        code, _ = run_cli(
            "reduce", "-g", str(tmp_path / "nope"), "-o", str(tmp_path / "out")
        )
        assert code == 3


class TestBenchCommand:
    def make_corpus(self, tmp_path, n_instances=3):
        corpus = tmp_path / "corpus"
        corpus.mkdir()
        for seed in range(n_instances):
            run_cli(
                "gen", "--model", "bernoulli", "--n", "10", "--p", "0.5",
                "--seed", str(seed), "-o", str(corpus / f"i{seed}.tsp01"),
            )
        return corpus

    def test_rows_and_header(self, tmp_path):
        corpus = self.make_corpus(tmp_path)
        out = tmp_path / "bench.csv"
        code, _ = run_cli("bench", "--corpus", str(corpus), "--out", str(out))
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == (
            "schema,instance,n,d_num,d_den,kind,tour_weight,dn,certified_ratio,"
            "certified_source,empirical_estimate,empirical_halfwidth,samples,"
            "ms_classify,ms_solve,ms_estimate"
        )
        assert len(lines) == 4
        import csv as csv_mod

        for row in csv_mod.DictReader(out.read_text().splitlines()):
            # the driver never exceeds the mean tour weight at even n
            assert int(row["tour_weight"]) <= float(row["dn"]) + 1e-9

    def test_empty_corpus(self, tmp_path):
        empty = tmp_path / "empty"
        empty.mkdir()
        code, _ = run_cli("bench", "--corpus", str(empty), "--out", str(tmp_path / "x.csv"))
        assert code == 6

    def test_deterministic_across_runs_and_workers(self, tmp_path):
        corpus = self.make_corpus(tmp_path)
        texts = []
        for tag, workers in (("a", "1"), ("b", "4"), ("c", "1")):
            out = tmp_path / f"bench_{tag}.csv"
            code, _ = run_cli(
                "bench", "--corpus", str(corpus), "--out", str(out),
                "--exact-max", "9", "--samples", "5000", "--seed", "11",
                "--workers", workers, "--no-timings",
            )
            assert code == 0
            texts.append(out.read_bytes())
        assert texts[0] == texts[1] == texts[2]


class TestConsoleEntry:
    def test_module_invocation(self):
        r = subprocess.run(
            [sys.executable, "-m", "tspdom.cli", "classify", "-i", str(DATA / "golden_allones.tsp01")],
            capture_output=True,
            text=True,
        )
        assert r.returncode == 0
        assert json.loads(r.stdout)["kind"] == "unclassified"
