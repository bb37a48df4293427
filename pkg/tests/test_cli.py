import json
import math
import subprocess
import sys

import pytest

from expsums.cli import main
from expsums.sweeps import DISAGREES, SWEEP_SCHEMA


def run(capsys, *argv):
    code = main(["-q", *argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sum_gauss(capsys):
    code, out, _ = run(capsys, "sum", "--p", "5", "--n", "1", "--f", "x1^2", "--json", "--workers", "1")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "expsums.sum/1"
    assert doc["abs"] == pytest.approx(math.sqrt(5), abs=1e-12)
    assert doc["histogram"]["counts"] == [1, 2, 0, 0, 2]


def test_sum_trivial_examples(capsys):
    _, out, _ = run(capsys, "sum", "--p", "3", "--n", "1", "--f", "x1", "--json")
    assert json.loads(out)["S"]["coeffs"] == [0, 0, 0]
    _, out, _ = run(capsys, "sum", "--p", "5", "--n", "2", "--f", "0", "--json")
    assert json.loads(out)["S"]["coeffs"] == [25, 0, 0, 0, 0]


def test_sum_text_output(capsys):
    code, out, _ = run(capsys, "sum", "--p", "5", "--n", "1", "--f", "x1^2")
    assert code == 0 and "|S|       = 2.2360679775" in out


@pytest.mark.parametrize("argv", [
    ["sum", "--p", "4", "--n", "1", "--f", "x1"],
    ["sum", "--p", "5", "--n", "1", "--f", "x1 +"],
    ["sum", "--p", "5", "--n", "1", "--f", "x1", "--b", "0"],
    ["sum", "--p", "5", "--n", "1", "--f", "x1", "--workers", "0"],
    ["sum", "--p", "5", "--n", "2", "--f", "x1", "--m", "3", "--budget", "100"],
    ["verify", "--p", "5", "--n", "1", "--f", "x1^2", "--e-max", "0"],
    ["sweep", "--preset", "binary-forms", "--p", "4"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_verify_singular_case(capsys):
    code, out, _ = run(capsys, "verify", "--p", "5", "--n", "2", "--f", "x1^2*x2 + x2^2", "--m-max", "4", "--json", "--workers", "1")
    doc = json.loads(out)
    assert code == 0
    assert doc["hypotheses"]["verdict"] == "theorem applies"
    assert doc["predicted_dimension"] == 3
    assert all(c["holds"] for c in doc["bound_checks"])


def test_verify_smooth_case_text(capsys):
    code, out, _ = run(capsys, "verify", "--p", "7", "--n", "2", "--f", "x1^3 + x2^3 + x1", "--m-max", "2")
    assert code == 0
    assert "verdict: theorem applies" in out and "predicted dimension D = 4" in out


def test_verify_h3_failure(capsys):
    code, out, _ = run(capsys, "verify", "--p", "3", "--n", "2", "--f", "x1^4 + x2^3", "--m-max", "1")
    assert code == 0 and "verdict: theorem not applicable" in out


def test_verify_to_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--p", "5", "--n", "1", "--f", "x1^3 + x1", "--m-max", "4", "--json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["recovery"]["status"] == "pure"


def test_verify_workers_identical(capsys):
    args = ["verify", "--p", "5", "--n", "2", "--f", "x1^2*x2 + x2^2", "--m-max", "3", "--json"]
    _, one, _ = run(capsys, *args, "--workers", "1")
    _, three, _ = run(capsys, *args, "--workers", "3")
    assert one == three


def test_sweep_csv_prints_seed(capsys):
    code, out, err = run(capsys, "sweep", "--preset", "smooth-fermat", "--p", "7", "--d", "3", "--n", "2", "--seed", "5")
    assert code == 0
    assert out.startswith(f"# schema: {SWEEP_SCHEMA}\n")
    assert "seed = 5" in err


def test_sweep_json(capsys):
    code, out, _ = run(capsys, "sweep", "--preset", "line-arrangements", "--p", "7", "--d", "3", "--seed", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["seed"] == 1
    (row,) = doc["rows"]
    assert row["sum_mu"] == 3 and row["D_predicted"] == 5 and row["reference_flag"] == DISAGREES


def test_sweep_without_seed_draws_one(capsys):
    code, _, err = run(capsys, "sweep", "--preset", "binary-forms", "--p", "5", "--count", "1")
    assert code == 0 and "seed = " in err


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert out.strip().splitlines()[-1] == "selftest: all oracles pass"


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "expsums", "-q", "sum", "--p", "7", "--n", "1", "--f", "x1^2", "--json"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(res.stdout)["abs"] == pytest.approx(math.sqrt(7))
