import contextlib
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from helpers import CLI_CASES, strip_timestamp
from zetacode.cli import main, parse_grid

DATA = Path(__file__).parent / "data"


@pytest.fixture(autouse=True)
def in_data_dir(monkeypatch):
    monkeypatch.chdir(DATA)


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def result(argv):
    code, out, err = run(argv)
    assert code == 0, err
    return json.loads(out)


@pytest.mark.parametrize("name", sorted(CLI_CASES))
def test_golden(name):
    code, out, err = run(CLI_CASES[name] + ["--threads", "1"])
    assert code == 0, err
    golden = (DATA / "golden" / f"{name}.txt").read_text()
    assert strip_timestamp(out) + "\n" == golden


class TestExamples:
    def test_zeta_univariate(self):
        r = result(["zeta", "--graph", "triangle.txt", "--univariate"])
        assert r["result"]["zeta_inverse"] == [1, 0, 0, -2, 0, 0, 1]

    def test_zeta_multivariate_schema(self):
        s = result(["zeta", "--graph", "triangle.txt", "--degree", "6"])["result"]["zeta_inverse"]
        assert s["vars"] == 3 and s["truncation"] == 6
        assert s["terms"] == [{"exp": [0, 0, 0], "coef": "1"}, {"exp": [1, 1, 1], "coef": "-2"},
                              {"exp": [2, 2, 2], "coef": "1"}]

    def test_pseudo(self):
        r = result(["pseudo", "--alist", "cycle3.alist", "--degree", "7"])["result"]
        assert {tuple(e["exponent"]) for e in r["pseudocodewords"]} == {(0, 0, 0), (1, 1, 1), (2, 2, 2)}
        assert r["violations"] == 0

    def test_ensemble_point_mass(self):
        r = result(["ensemble", "--kind", "point_mass", "--graph", "triangle.txt", "--u", "0"])
        assert r["result"]["estimates"][0]["mean"] == 1.0

    def test_cover(self):
        r = result(["cover", "--dense", "circ3.txt", "--seed", "1"])["result"]
        assert r["violations"] == 0 and r["lifted_codewords"] >= r["base_codewords"]

    def test_cycles(self):
        r = result(["cycles", "--graph", "k4.txt"])["result"]
        assert r["triangles"] == 4 and r["four_cycles"] == 3
        assert r["prime_cycle_counts"][2:4] == [8, 6]

    def test_metadata(self):
        r = result(["cover", "--dense", "circ3.txt", "--seed", "5"])
        meta = r["metadata"]
        assert meta["seed"] == 5 and meta["version"]
        assert meta["config"]["dense"] == "circ3.txt" and "threads" not in meta["config"]
        assert meta["timestamp"]

    def test_ensemble_spec_file(self, tmp_path):
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps({"kind": "erdos_renyi", "params": {"N": 4, "p": 0.3}, "seed": 3,
                                    "samples": 2000}))
        a = result(["ensemble", "--spec", str(spec), "--u", "0.1"])["result"]["estimates"]
        b = result(["ensemble", "--kind", "erdos_renyi", "--N", "4", "--p", "0.3", "--u", "0.1",
                    "--samples", "2000", "--seed", "3"])["result"]["estimates"]
        assert a == b

    def test_grid_point_past_radius_is_reported(self):
        r = result(["ensemble", "--kind", "point_mass", "--graph", "k4.txt", "--u-grid", "0.4:0.6:0.1"])
        est = r["result"]["estimates"]
        assert [e["u"] for e in est] == [0.4, 0.5, 0.6]
        assert est[0]["mean"] is not None and est[2]["mean"] is None

    def test_out_file(self, tmp_path):
        out = tmp_path / "z.csv"
        code, stdout, _ = run(["zeta", "--graph", "triangle.txt", "--univariate", "--format", "csv",
                               "--out", str(out)])
        assert code == 0 and stdout == ""
        lines = out.read_text().splitlines()
        assert lines[4] == "degree,zeta_inverse,zeta" and lines[5:8] == ["0,1,1", "1,0,0", "2,0,0"]


class TestErrors:
    def test_missing_seed(self):
        code, _, err = run(["cover", "--dense", "circ3.txt"])
        assert code == 2 and "--seed" in err

    def test_missing_seed_ensemble(self):
        code, _, _ = run(["ensemble", "--kind", "erdos_renyi", "--N", "4", "--p", "0.3", "--u", "0.1"])
        assert code == 2

    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.alist"
        bad.write_text("3 3\n2 2\n2 2 1\n2 2 2\n1 3\n1 2\n2 3\n1 2\n2 3\n1 3\n")
        code, _, err = run(["pseudo", "--alist", str(bad)])
        assert code == 2 and "bad.alist" in err

    def test_missing_file(self):
        code, _, _ = run(["zeta", "--graph", "nope.txt"])
        assert code == 2

    def test_domain_error(self):
        code, _, err = run(["ensemble", "--kind", "point_mass", "--graph", "k4.txt", "--u", "0.7"])
        assert code == 1 and "excluded" in err

    def test_non_cycle_code_is_domain_error(self, tmp_path):
        H = tmp_path / "h.txt"
        H.write_text("1 1 1\n")
        code, _, err = run(["pseudo", "--dense", str(H)])
        assert code == 1 and "cycle code" in err

    def test_gaussian_divergence_reported(self):
        r = result(["gaussian", "--graph", "k4.txt", "--u", "0.6", "--samples", "100", "--seed", "1"])
        assert all(e["error"] for e in r["result"]["estimators"])

    def test_u_and_grid_together_is_usage_error(self):
        code, _, _ = run(["ensemble", "--kind", "point_mass", "--graph", "triangle.txt", "--u", "0.1",
                          "--u-grid", "0:1:0.5"])
        assert code == 2


def test_parse_grid():
    assert parse_grid("0:0.3:0.1") == [0.0, 0.1, 0.2, 0.3]
    assert parse_grid("0.1:0.1:1") == [0.1]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "zetacode", "zeta", "--graph", "triangle.txt", "--univariate",
                          "--format", "csv"], capture_output=True, text=True, cwd=DATA)
    assert out.returncode == 0
    assert "3,-2,2" in out.stdout
