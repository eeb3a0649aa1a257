import io
import json
import subprocess
import sys

import pytest

from conftest import TABLE1_CSV
from fuzzyassess.cli import main


@pytest.fixture
def table1_csv(tmp_path):
    path = tmp_path / "table1.csv"
    path.write_text(TABLE1_CSV)
    return path


@pytest.fixture
def boundary_csv(tmp_path):
    path = tmp_path / "boundary.csv"
    path.write_text("#scale:F,D,C,B,A\ngroup,grade,count\ng,B|A,10\nh,A,3\n")
    return path


def run(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(map(str, argv)), io.StringIO(stdin), out, err)
    return code, out.getvalue(), err.getvalue()


class TestCompare:
    def test_table1(self, table1_csv):
        code, out, _ = run("compare", "--model", "grm", "--scale", "F,D,C,B,A", table1_csv)
        assert code == 0
        assert out.index("1. ClassI") < out.index("2. ClassII")
        assert "tie on x_c; high half; greater y_c wins" in out

    def test_json(self, table1_csv):
        code, out, _ = run("compare", "--format", "json", table1_csv)
        assert code == 0
        doc = json.loads(out)
        assert doc["ranking"] == [["ClassI"], ["ClassII"]]
        assert doc["model"]["shape"] == "grm" and doc["model"]["f"] == 0.3

    def test_one_group(self, tmp_path):
        path = tmp_path / "one.csv"
        path.write_text("#scale:F,A\ngroup,grade,count\ng,A,1\n")
        code, out, err = run("compare", path)
        assert code == 2
        assert "at least two groups required" in err
        assert out == ""

    def test_classic_with_boundaries(self, boundary_csv):
        code, _, err = run("compare", "--model", "classic", boundary_csv)
        assert code == 2
        assert "boundary" in err

    def test_stdin(self):
        code, out, _ = run("compare", "-", stdin=TABLE1_CSV)
        assert code == 0 and "1. ClassI" in out

    def test_json_input(self, tmp_path):
        path = tmp_path / "t.json"
        path.write_text(json.dumps({
            "scale": ["F", "D", "C", "B", "A"],
            "groups": [{"id": "ClassI", "counts": {"C": 10, "A": 50}},
                       {"id": "ClassII", "counts": {"B": 20, "A": 40}}],
        }))
        code, out, _ = run("compare", path)
        assert code == 0 and out.index("1. ClassI") < out.index("2. ClassII")

    def test_shape_invariant_output(self, table1_csv):
        rankings = set()
        for model in ("grm", "triangular", "trapezoidal"):
            _, out, _ = run("compare", "--format", "json", "--model", model, table1_csv)
            doc = json.loads(out)
            rankings.add(json.dumps([doc["ranking"], doc["decisions"]]))
        assert len(rankings) == 1


class TestReport:
    def test_table1(self, table1_csv):
        code, out, _ = run("report", table1_csv)
        assert code == 0
        assert "ClassI   x_c=3.066667  y_c=0.361111  gpa=3.666667" in out
        assert "ranking" not in out

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        code, _, err = run("report", path)
        assert code == 2 and "empty dataset" in err

    def test_json(self, table1_csv):
        code, out, _ = run("report", "--format", "json", table1_csv)
        doc = json.loads(out)
        assert code == 0
        assert set(doc) == {"model", "groups"}
        assert [g["id"] for g in doc["groups"]] == ["ClassI", "ClassII"]

    def test_missing_file(self, tmp_path):
        code, _, err = run("report", tmp_path / "nope.csv")
        assert code == 2 and "error" in err

    def test_missing_scale(self, tmp_path):
        path = tmp_path / "noscale.csv"
        path.write_text("group,grade,count\ng,A,1\n")
        assert run("report", path)[0] == 2
        assert run("report", "--scale", "F,D,C,B,A", path)[0] == 0


class TestCoeffs:
    def test_grm(self):
        code, out, _ = run("coeffs", "--model", "grm", "--n", "5", "--k", "30")
        assert code == 0
        values = [line.split()[1] for line in out.splitlines()[1:]]
        assert values == ["0.700000", "0.200000", "0.500000", "3.800000", "1.900000"]

    def test_trapezoidal_json(self):
        code, out, _ = run("coeffs", "--model", "trapezoidal", "--n", "5", "--k", "30",
                           "--format", "json")
        assert code == 0
        assert json.loads(out)["gamma"] == 3 / 7

    def test_classic_overlap(self):
        code, _, err = run("coeffs", "--model", "classic", "--k", "10")
        assert code == 2 and "overlap" in err

    @pytest.mark.parametrize("argv", [["--k", "50"], ["--n", "1"], ["--model", "hexagon"]])
    def test_bad_args(self, argv):
        assert run("coeffs", *argv)[0] == 2


class TestVerify:
    def test_grm(self, table1_csv):
        code, out, _ = run("verify", "--model", "grm", table1_csv)
        assert code == 0
        worst = float(out.splitlines()[-1].split()[2])
        assert worst <= 1e-12

    def test_classic(self, table1_csv):
        code, out, _ = run("verify", "--model", "classic", "--resolution", "1e-3", table1_csv)
        assert code == 0
        assert float(out.splitlines()[-1].split()[2]) <= 5e-3

    def test_triangular(self, table1_csv):
        assert run("verify", "--model", "triangular", table1_csv)[0] == 2

    def test_disagreement_exits_1(self, table1_csv, monkeypatch):
        import fuzzyassess.cli as cli
        from fuzzyassess.model import Centroid

        monkeypatch.setattr(cli, "particle_centroid", lambda regions: Centroid(0.0, 0.0))
        code, out, _ = run("verify", table1_csv)
        assert code == 1
        assert "FAILED" in out


def test_subprocess_exit_codes_and_determinism(table1_csv):
    cmd = [sys.executable, "-m", "fuzzyassess", "compare", "--format", "json", str(table1_csv)]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    bad = subprocess.run([sys.executable, "-m", "fuzzyassess", "coeffs", "--model", "classic",
                          "--k", "10"], capture_output=True)
    assert bad.returncode == 2
