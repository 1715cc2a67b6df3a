import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest
from _figures import frontier_within_one_cell

from cubiprox.cli import (
    EXIT_BAD_INPUT,
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_PRECONDITION,
    run,
)


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def record(capsys, *argv):
    code, out, _ = call(capsys, *argv)
    assert code == EXIT_OK, out
    return json.loads(out)


def table(capsys, *argv):
    code, out, _ = call(capsys, *argv)
    assert code == EXIT_OK
    return list(csv.DictReader(io.StringIO(out)))


@pytest.mark.parametrize("argv, key, value", [
    (("prox", "quartic", "--alpha", "1", "--y", "1"), "x", 0.5),
    (("prox", "reciprocal", "--alpha", "1", "--y", "0"), "x", 1.0),
    (("prox", "reciprocal", "--alpha", "8", "--y", "0"), "x", 2.0),
    (("conjugate", "quartic", "--alpha", "1", "--y", "4"), "value", 3.0),
    (("conjugate", "reciprocal", "--alpha", "4", "--y", "-1"), "value", -4.0),
    (("project", "saddle", "--kind", "diag", "--alpha", "1", "--beta", "1",
      "--z", "1", "--gamma", "1"), "x", 0.0),
])
def test_scalar_outputs(capsys, argv, key, value):
    rec = record(capsys, *argv)
    assert rec["schema"] == 1
    assert rec["command"] == " ".join(argv[:2] if argv[0] != "cubic" else argv[:1])
    assert rec["outputs"][key] == pytest.approx(value, abs=1e-12)


def test_cubic_record(capsys):
    rec = record(capsys, "cubic", "-a", "1", "-b", "-6", "-c", "11", "-d", "-6")
    assert rec["outputs"]["kind"] == "THREE_SIMPLE"
    assert rec["outputs"]["roots"] == pytest.approx([1, 2, 3], abs=1e-12)
    assert rec["branch"] and rec["delta"] < 0 and rec["residual"] <= 1e-12
    rec = record(capsys, "depressed", "-p", "0", "-q", "-8")
    assert rec["outputs"]["roots"] == [2.0]


def test_conjugate_reciprocal_inf(capsys):
    code, out, _ = call(capsys, "conjugate", "reciprocal", "--alpha", "1", "--y", "1")
    assert code == EXIT_OK
    assert json.loads(out)["outputs"]["value"] == math.inf


def test_precondition_exit(capsys):
    code, out, err = call(capsys, "project", "saddle", "--kind", "diag", "--alpha", "1",
                          "--beta", "1", "--z", "1", "--gamma", "-1")
    assert code == EXIT_PRECONDITION and out == "" and "precondition" in err


@pytest.mark.parametrize("argv", [
    ("cubic", "-a", "0", "-b", "1", "-c", "0", "-d", "0"),
    ("prox", "quartic", "--alpha", "1", "--beta", "2", "--gamma", "1", "--y", "0"),
    ("prox", "reciprocal", "--alpha", "-1", "--y", "0"),
    ("prox", "reciprocal", "--alpha", "1", "--y", "nan"),
    ("project", "epigraph", "--alpha", "0", "--y", "1", "--eta", "0"),
    ("prox", "perspective", "--gamma", "0", "--y", "1", "--eta", "0"),
    ("project", "saddle", "--kind", "diag", "--alpha", "1", "--beta", "1",
     "--z", "0", "--gamma", "1"),
    ("sample", "reciprocal", "--lo", "1", "--hi", "0"),
    ("sample", "reciprocal", "--num", "0"),
])
def test_bad_input_exit(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == EXIT_BAD_INPUT and "invalid input" in err


def test_unparsable_number_exits_2():
    proc = subprocess.run([sys.executable, "-m", "cubiprox", "prox", "reciprocal",
                           "--alpha", "one", "--y", "0"], capture_output=True, text=True)
    assert proc.returncode == 2 and "not a number" in proc.stderr


@pytest.mark.parametrize("argv", [
    ("cubic", "-a", "2", "-b", "-3", "-c", "-3", "-d", "2"),
    ("prox", "quartic", "--alpha", "1", "--beta", "1", "--gamma", "1", "--delta", "1",
     "--y", "0.375"),
    ("conjugate", "quartic", "--alpha", "1", "--beta", "1", "--gamma", "1", "--y", "1"),
    ("prox", "reciprocal", "--alpha", "1", "--y", "-3"),
    ("conjugate", "reciprocal", "--alpha", "2", "--y", "-3"),
    ("prox", "perspective", "--gamma", "1", "--y", "2", "1", "--eta", "0.5"),
    ("project", "epigraph", "--alpha", "0.5", "--y", "3", "4", "--eta", "0"),
    ("project", "saddle", "--kind", "antidiag", "--alpha", "1", "--beta", "1",
     "--z", "1", "--gamma", "-2"),
])
def test_check_flag_and_round_trip(capsys, argv):
    rec = record(capsys, *argv, "--check")
    assert rec["check_passed"] is True
    assert rec["oracle_diff"] <= 1e-5
    # feeding the printed inputs back reproduces the outputs bit for bit
    flags = []
    for k, v in rec["inputs"].items():
        if k == "kind":
            flags += ["--kind", v]
            continue
        name = f"-{k}" if argv[0] in ("cubic", "depressed") else f"--{k}"
        vals = v if isinstance(v, list) else [v]
        flags += [name, *[repr(float(x)) for x in vals]]
    head = [a for a in argv if not a.startswith("-")][:2] if argv[0] not in ("cubic",) else ["cubic"]
    again = record(capsys, *head, *flags)
    assert again["outputs"] == rec["outputs"]


def test_tight_tol_fails_check(capsys):
    code, out, _ = call(capsys, "prox", "reciprocal", "--alpha", "1", "--y", "2",
                        "--check", "--tol", "0")
    rec = json.loads(out)
    if rec["oracle_diff"] > 0:
        assert code == EXIT_CHECK_FAILED and rec["check_passed"] is False


def test_csv_record(capsys):
    code, out, _ = call(capsys, "prox", "perspective", "--gamma", "1", "--y", "2", "--eta", "0",
                        "--csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    assert float(rows[0]["outputs.lambda"]) == pytest.approx(1.1795090246029183, abs=1e-12)
    assert rows[0]["inputs.y"] == "2"


def test_json_and_csv_exclusive():
    proc = subprocess.run([sys.executable, "-m", "cubiprox", "depressed", "-p", "0", "-q", "0",
                           "--json", "--csv"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_sample_reciprocal_monotone(capsys):
    rows = table(capsys, "sample", "reciprocal", "--alpha", "1", "--lo", "-5", "--hi", "5",
                 "--num", "1001")
    assert len(rows) == 1001
    xs = [float(r["prox"]) for r in rows]
    assert all(b >= a for a, b in zip(xs, xs[1:]))
    assert {r["branch"] for r in rows} >= {"cardano", "trig"}


def test_sample_quartic_cancellation_point(capsys):
    rows = table(capsys, "sample", "quartic", "--lo", "0.375", "--hi", "0.375", "--num", "1")
    assert float(rows[0]["prox"]) == pytest.approx(-0.25, abs=1e-15)


def test_sample_json(capsys):
    code, out, _ = call(capsys, "sample", "quartic", "--num", "5", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["columns"][0] == "input" and len(doc["rows"]) == 5


def test_sample_epigraph_map_frontier(capsys):
    rows = table(capsys, "sample", "epigraph-map", "--alpha", "0.5", "--num", "81")
    assert frontier_within_one_cell(rows, 0.5) > 50
    assert {r["branch"] for r in rows} == {"interior", "cardano", "trig"}


def test_check_suite(capsys):
    code, out, _ = call(capsys, "check", "saddle", "--n", "200", "--seed", "7")
    rec = json.loads(out)
    assert code == EXIT_OK and rec["passed"] and rec["n"] == 200 and rec["seed"] == 7


def test_check_suite_failure_exit(capsys):
    code, out, _ = call(capsys, "check", "quartic", "--n", "20", "--tol", "0")
    assert code == EXIT_CHECK_FAILED and json.loads(out)["passed"] is False


def test_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("CUBIPROX_SEED", "0x10")
    code, out, _ = call(capsys, "check", "reciprocal", "--n", "10")
    assert code == EXIT_OK and json.loads(out)["seed"] == 16


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cubiprox", "prox", "quartic", "--alpha", "1",
                           "--y", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outputs"]["x"] == 0.5
