import json
import math

import pytest

from mzvpade.cli import evaluate_target, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_zeta(capsys):
    code, out, _ = run(capsys, "eval", "zeta 3")
    data = json.loads(out)
    assert code == 0 and data["rigor"] == "rigorous"
    assert abs(float(data["value"]) - 1.2020569031595942) < 1e-15
    assert data["config"]["prec"] == 128


def test_eval_log_three_halves(capsys):
    code, out, _ = run(capsys, "eval", "li 1; inv 3")
    assert code == 0 and abs(float(json.loads(out)["value"]) - math.log(1.5)) < 1e-15


def test_eval_divergent_exit_two(capsys):
    code, out, _ = run(capsys, "eval", "li 1,1;l direct 1")
    assert code == 2 and "divergent" in json.loads(out)["error"]


@pytest.mark.parametrize("argv", [
    ("eval", "nonsense 3"),
    ("eval", "li 2 sideways 3"),
    ("solve", "--kind", "P", "--r", "-1", "--n", "0"),
    ("verify", "--suite", "nope"),
    ("vasilyev", "--r", "0", "--n", "1", "--mc"),
    (),
])
def test_usage_errors_exit_one(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 1


def test_vasilyev_budget_exit_three(capsys):
    code, out, _ = run(capsys, "vasilyev", "--r", "3", "--n", "0")
    assert code == 3 and "budget" in json.loads(out)["error"]


def test_solve_is_byte_identical(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("MZVPADE_CACHE_DIR", raising=False)
    _, first, _ = run(capsys, "solve", "--kind", "P", "--r", "1", "--n", "1")
    _, second, _ = run(capsys, "solve", "--kind", "P", "--r", "1", "--n", "1")
    assert first == second
    monkeypatch.setenv("MZVPADE_CACHE_DIR", str(tmp_path))
    _, cold, _ = run(capsys, "solve", "--kind", "P", "--r", "1", "--n", "1")
    _, warm, _ = run(capsys, "solve", "--kind", "P", "--r", "1", "--n", "1")
    assert cold == warm == first
    assert (tmp_path / "P_1_1.json").exists()


def test_solve_anchor(capsys):
    _, out, _ = run(capsys, "solve", "--kind", "Q", "--r", "0", "--n", "0")
    assert json.loads(out)["solution"]["polys"]["Ahat"] == [["1"]]


def test_verify_duality(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, _, err = run(capsys, "verify", "--suite", "duality", "--out", str(path))
    data = json.loads(path.read_text())
    assert code == 0 and data["passed"] == data["total"] == 8
    assert err.count("PASS") == 8


def test_verify_laurent_reports_constant(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "laurent", "--r", "1", "--n", "1")
    names = {c["name"]: c for c in json.loads(out)["checks"]}
    assert code == 0 and names["proportional (1,1)"]["measured"] == "c = 1"


def test_vasilyev_mc_is_seeded(capsys):
    argv = ("vasilyev", "--r", "0", "--n", "1", "--mc", "--seed", "5")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    data = json.loads(first)
    assert data["pass"]["routes_a_b"] and data["config"]["seed"] == 5


def test_evaluate_target_grammar():
    assert abs(float(evaluate_target("vwp 0 1 1", 128, 10**5).mid) - 0.0102845157979714) < 1e-12
    assert not evaluate_target("sseries 0 0 3", 64, 10).rigorous
