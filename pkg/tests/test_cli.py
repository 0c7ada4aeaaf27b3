import csv
import io
import json
from fractions import Fraction
from pathlib import Path

import pytest

from simplexorder.cli import main
from simplexorder.reporting import canonical_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestExact:
    def test_fosd_float(self, capsys):
        report = run_json(capsys, "exact", "--order", "fosd", "--point", "0.25,0.75")
        assert report["command"] == "exact"
        assert float(report["result"]["probability"]) == pytest.approx(0.25)
        assert report["manifest"]["mode"] == "float"

    def test_mlr_rational(self, capsys):
        report = run_json(
            capsys, "exact", "--order", "mlr", "--point", "1/3,1/3,1/3"
        )
        assert report["result"]["probability"] == "1/6"
        assert report["manifest"]["mode"] == "rational"

    def test_restricted_cap(self, capsys):
        report = run_json(
            capsys,
            "exact", "--order", "mlr", "--point", "1/3,1/3,1/3", "--b", "9/20",
        )
        assert report["result"]["probability"] == "49/2400"

    def test_full_cap_equals_unrestricted(self, capsys):
        with_cap = run_json(
            capsys,
            "exact", "--order", "mlr", "--point", "0.2,0.3,0.5", "--b", "1",
        )
        without = run_json(
            capsys, "exact", "--order", "mlr", "--point", "0.2,0.3,0.5"
        )
        assert with_cap["result"]["probability"] == without["result"]["probability"]

    def test_cap_with_fosd_rejected(self, capsys):
        code, _, err = run(
            capsys, "exact", "--order", "fosd", "--point", "0.5,0.5", "--b", "0.5"
        )
        assert code == 2
        assert "mlr" in err

    def test_rescale_to_u(self, capsys):
        report = run_json(
            capsys,
            "exact", "--order", "fosd", "--point", "1/3,1/3,1/3", "--u", "2",
        )
        # Dominance probabilities are scale invariant.
        assert report["result"]["probability"] == "1/3"

    def test_bad_sum(self, capsys):
        code, _, err = run(capsys, "exact", "--order", "fosd", "--point", "0.5,0.6")
        assert code == 2

    def test_size_ceiling(self, capsys):
        point = ",".join(["1"] + ["0"] * 17)
        code, _, err = run(
            capsys, "exact", "--order", "fosd", "--point", point, "--u", "1"
        )
        assert code == 3


class TestEstimate:
    def test_comparability_with_z_score(self, capsys):
        report = run_json(
            capsys,
            "estimate", "--order", "fosd", "--n", "2",
            "--samples", "100000", "--seed", "42",
        )
        assert report["exact"] == "2/3"
        assert abs(report["z_score"]) <= 4
        result = report["result"]
        assert result["samples"] == 100000
        assert result["seed"] == 42
        assert result["generator_id"] == "philox4x64"
        lo, hi = result["ci95"]
        assert lo <= result["estimate"] <= hi

    def test_dominance_with_point(self, capsys):
        report = run_json(
            capsys,
            "estimate", "--order", "mlr", "--point", "1/3,1/3,1/3",
            "--samples", "50000", "--seed", "7",
        )
        assert report["exact"] == "1/6"
        assert abs(report["z_score"]) <= 4

    def test_restricted(self, capsys):
        report = run_json(
            capsys,
            "estimate", "--order", "mlr", "--point", "1/3,1/3,1/3",
            "--b", "9/20", "--samples", "50000", "--seed", "7",
        )
        assert report["exact"] == "49/2400"
        assert abs(report["z_score"]) <= 4

    def test_deterministic_modulo_time(self, capsys):
        argv = [
            "estimate", "--order", "fosd", "--n", "2",
            "--samples", "20000", "--seed", "5", "--workers", "2",
        ]
        r1 = run_json(capsys, *argv)
        r2 = run_json(capsys, *argv)
        for r in (r1, r2):
            r["result"].pop("wall_time_ms")
            r["manifest"].pop("timestamp")
        assert r1 == r2

    def test_needs_point_or_n(self, capsys):
        code, _, err = run(capsys, "estimate", "--order", "fosd")
        assert code == 2

    def test_exact_omitted_above_ceiling(self, capsys):
        point = ",".join(["1"] + ["0"] * 17)
        report = run_json(
            capsys,
            "estimate", "--order", "fosd", "--point", point,
            "--samples", "1000", "--seed", "1",
        )
        assert "exact" not in report
        assert "z_score" not in report

    def test_dimension_one_exact(self, capsys):
        report = run_json(
            capsys,
            "estimate", "--order", "mlr", "--n", "1",
            "--samples", "10000", "--seed", "3",
        )
        assert report["result"]["estimate"] == 1.0
        assert report["exact"] == "1"
        assert report["z_score"] == 0.0


class TestIntegral:
    def test_reference(self, capsys):
        report = run_json(
            capsys, "integral", "--n", "3", "--samples", "100000", "--seed", "11"
        )
        assert report["exact"] == "1/6"
        assert abs(report["z_score"]) <= 4


class TestIdentities:
    def test_rational_pass(self, capsys):
        report = run_json(
            capsys,
            "identities", "--n", "3", "--trials", "25", "--mode", "rational",
        )
        assert report["result"]["pass"] is True
        assert report["result"]["alternating"]["max_abs_residual"] == "0"
        assert report["result"]["power_sum"]["max_abs_error"] == "0"

    def test_float_pass(self, capsys):
        code, out, _ = run(capsys, "identities", "--n", "4", "--trials", "25")
        assert code == 0
        report = json.loads(out)
        assert report["result"]["pass"] is True
        assert float(report["result"]["alternating"]["max_rel_residual"]) <= 1e-10

    def test_failure_exits_four(self, capsys, monkeypatch):
        import simplexorder.cli as cli_mod

        monkeypatch.setattr(
            cli_mod, "alternating_identity_terms", lambda vec: [1.0, 1e-3]
        )
        code, out, _ = run(capsys, "identities", "--n", "2", "--trials", "1")
        assert code == 4
        report = json.loads(out)
        assert report["result"]["pass"] is False


class TestEnumerate:
    def test_reference_family(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--k", "3", "--n", "3")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "d0,d1,d2,coefficient"
        assert lines[-1] == "count=5 catalan=5 OK"
        rows = lines[1:-1]
        assert len(rows) == 5
        assert set(rows) == {
            "1,1,1,6",
            "1,2,0,3",
            "2,0,1,3",
            "2,1,0,3",
            "3,0,0,1",
        }
        # Ascending lexicographic emission.
        assert rows == sorted(rows)

    def test_k_zero(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--k", "0", "--n", "4")
        lines = out.strip().splitlines()
        assert lines[1] == "4,0,0,0,1"
        assert lines[-1] == "count=1"

    def test_partial_family(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--k", "2", "--n", "2")
        lines = out.strip().splitlines()
        assert lines[1:] == ["1,1,2", "2,0,1", "count=2 catalan=2 OK"]

    def test_json_format(self, capsys):
        report = run_json(
            capsys, "enumerate", "--k", "1", "--n", "2", "--format", "json"
        )
        assert report["result"]["count"] == 2
        assert {"degrees": [1, 1], "coefficient": 2} in report["result"]["rows"]

    def test_ceiling(self, capsys):
        code, _, err = run(capsys, "enumerate", "--k", "2", "--n", "17")
        assert code == 3

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "family.csv"
        code, out, _ = run(
            capsys, "enumerate", "--k", "2", "--n", "2", "--out", str(target)
        )
        assert code == 0
        assert out.strip() == "count=2 catalan=2 OK"
        assert target.read_text().splitlines()[0] == "d0,d1,coefficient"


class TestFigure:
    def test_stdout_csv(self, capsys):
        code, out, err = run(
            capsys,
            "figure", "--point", "1/3,1/3,1/3", "--order", "fosd",
            "--resolution", "12",
        )
        assert code == 0
        reader = csv.DictReader(io.StringIO(out))
        assert reader.fieldnames == ["x0", "x1", "x2", "relation"]
        rows = list(reader)
        assert len(rows) == 91
        relations = {r["relation"] for r in rows}
        assert relations <= {"less", "greater", "equal", "incomparable"}
        assert "comparable_fraction=" in err

    def test_vertex_reference_point(self, capsys):
        code, out, err = run(
            capsys,
            "figure", "--point", "1,0,0", "--order", "fosd",
            "--resolution", "10",
        )
        # Every lattice point dominates the minimal vertex.
        assert "comparable_fraction=1" in err

    def test_out_writes_csv_and_png(self, capsys, tmp_path):
        target = tmp_path / "grid.csv"
        report = run_json(
            capsys,
            "figure", "--point", "1/3,1/3,1/3", "--order", "mlr",
            "--resolution", "15", "--out", str(target),
        )
        assert target.exists()
        png = tmp_path / "grid.png"
        assert png.exists()
        assert report["result"]["png"] == str(png)
        assert report["result"]["points"] == 136
        assert 0.0 <= report["result"]["comparable_fraction"] <= 1.0

    def test_no_render(self, capsys, tmp_path):
        target = tmp_path / "grid.csv"
        report = run_json(
            capsys,
            "figure", "--point", "1/3,1/3,1/3", "--order", "mlr",
            "--resolution", "8", "--out", str(target), "--no-render",
        )
        assert report["result"]["png"] is None
        assert not (tmp_path / "grid.png").exists()

    def test_grid_ceiling(self, capsys):
        code, _, err = run(
            capsys,
            "figure", "--point", "0.25,0.25,0.25,0.25", "--order", "fosd",
            "--resolution", "4000",
        )
        assert code == 3


class TestClassifyAndFormats:
    def test_classify(self, capsys):
        report = run_json(
            capsys, "classify", "--order", "fosd", "--x", "0.25,0.75", "--y", "0.5,0.5"
        )
        assert report["result"]["relation"] == "greater"

    def test_classify_incomparable(self, capsys):
        report = run_json(
            capsys,
            "classify", "--order", "mlr",
            "--x", "0.2,0.5,0.3", "--y", "0.1,0.6,0.3",
        )
        assert report["result"]["relation"] == "incomparable"

    def test_table_format(self, capsys):
        code, out, _ = run(
            capsys,
            "classify", "--order", "fosd", "--x", "0.25,0.75", "--y", "0.5,0.5",
            "--format", "table",
        )
        assert code == 0
        assert "relation = greater" in out

    def test_csv_format(self, capsys):
        code, out, _ = run(
            capsys,
            "exact", "--order", "fosd", "--point", "0.25,0.75", "--format", "csv",
        )
        lines = out.strip().splitlines()
        assert lines[0] == "probability"
        assert float(lines[1]) == pytest.approx(0.25)

    def test_json_round_trip(self, capsys):
        code, out, _ = run(
            capsys, "exact", "--order", "mlr", "--point", "1/3,1/3,1/3"
        )
        assert canonical_json(json.loads(out)) == out

    def test_report_to_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(
            capsys,
            "exact", "--order", "mlr", "--point", "1/3,1/3,1/3",
            "--out", str(target),
        )
        assert code == 0
        assert out == ""
        report = json.loads(target.read_text())
        assert report["result"]["probability"] == "1/6"

    def test_help_exits_zero(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == 0

    def test_unknown_command_exits_two(self, capsys):
        code, _, _ = run(capsys, "frobnicate")
        assert code == 2
