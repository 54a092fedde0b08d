from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from gdrs_cosets.cli import EXIT_BUDGET, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_peculiarity_reconcile_json(capsys):
    code, out, _ = run(capsys, "peculiarity", "10", "4", "--method", "reconcile", "--format", "json")
    assert code == EXIT_OK
    report = json.loads(out)
    assert set(report) == {"command", "params", "rows", "checks"}
    assert [row["value"] for row in report["rows"]] == ["22", "20"] * 5
    assert [row["orbit"] for row in report["rows"]] == ["O0", "O1"] * 5
    assert [row["delta_from_0"] for row in report["rows"]][:2] == ["0", "2"]
    assert report["params"]["routes"] == ["profile_engine", "brute_force", "closed_form"]
    assert all(c["status"] == "PASS" for c in report["checks"])
    assert all(set(c) >= {"name", "status", "expected", "actual"} for c in report["checks"])


def test_peculiarity_coprime_csv(capsys):
    code, out, _ = run(capsys, "peculiarity", "7", "3", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["value"] for r in rows] == ["5"] * 7
    assert list(rows[0]) == ["lambda", "value", "orbit", "oplus_class", "delta_from_0"]


def test_peculiarity_usage_errors(capsys):
    code, _, err = run(capsys, "peculiarity", "10", "11")
    assert code == EXIT_USAGE and "mu" in err
    code, _, err = run(capsys, "peculiarity", "30", "15", "--method", "closed")
    assert code == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["peculiarity", "10", "4", "--method", "guess"])
    assert info.value.code == EXIT_USAGE
    capsys.readouterr()


def test_budget_exceeded_exit_code(capsys, monkeypatch):
    code, _, err = run(capsys, "peculiarity", "24", "12", "--method", "brute", "--budget", "1000")
    assert code == EXIT_BUDGET and "budget" in err
    monkeypatch.setenv("GDRS_BUDGET", "1000")
    code, _, _ = run(capsys, "peculiarity", "24", "12", "--method", "brute")
    assert code == EXIT_BUDGET


def test_reconcile_over_budget_reports_untested(capsys):
    code, out, _ = run(capsys, "peculiarity", "24", "12", "--method", "reconcile", "--budget", "1000", "--format", "json")
    assert code == EXIT_OK
    statuses = {c["name"]: c["status"] for c in json.loads(out)["checks"]}
    assert statuses["route brute_force"] == "UNTESTED"


def test_route_mismatch_exit_code(capsys, monkeypatch):
    from gdrs_cosets import peculiarity as pec

    real = pec.sum_peculiarity_closed_form

    def corrupted(ctx):
        t = real(ctx)
        return pec.PeculiarityTable(t.ctx, (t.values[0] + 1,) + t.values[1:], t.method, t.closed_form_case)

    monkeypatch.setattr(pec, "sum_peculiarity_closed_form", corrupted)
    code, out, err = run(capsys, "peculiarity", "10", "4", "--method", "reconcile")
    assert code == EXIT_CHECK_FAILED
    assert "lambda=0" in err and "closed_form: 23" in err and "brute_force: 22" in err


def test_coset_wd_two_classes(capsys):
    code, out, _ = run(capsys, "coset-wd", "7", "5", "--format", "json")
    assert code == EXIT_OK
    report = json.loads(out)
    assert [c["B_d-2"] for c in report["params"]["classes"]] == ["4", "3"]
    row3 = report["rows"][3]
    assert (row3["O0"], row3["O1"], row3["weight1"], row3["A_w"]) == ("4", "3", "0", "0")
    assert len(report["rows"]) == 9


def test_coset_wd_single_class(capsys):
    code, out, _ = run(capsys, "coset-wd", "5", "5", "--format", "json")
    report = json.loads(out)
    assert code == EXIT_OK
    assert [c["B_d-2"] for c in report["params"]["classes"]] == ["1"]


def test_coset_wd_leader_and_sweep(capsys):
    code, out, _ = run(capsys, "coset-wd", "7", "5", "--gamma2", "6", "--all-leaders", "--format", "json")
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["params"]["leader_lambda"] == "0"
    assert report["rows"][3]["leader"] == "4"
    checks = {c["name"]: c for c in report["checks"]}
    assert checks["integral spectrum over all leaders"]["actual"] == "3360"
    assert checks["cosets in O1"]["actual"] == "672"


def test_coset_wd_usage_errors(capsys):
    assert run(capsys, "coset-wd", "7", "4")[0] == EXIT_USAGE
    assert run(capsys, "coset-wd", "6", "5")[0] == EXIT_USAGE
    assert run(capsys, "coset-wd", "7", "8")[0] == EXIT_USAGE
    assert run(capsys, "coset-wd", "7", "5", "--gamma2", "7")[0] == EXIT_USAGE


@pytest.mark.parametrize("suite,extra", [
    ("table4", ["--q-max", "31"]),
    ("conjecture-4a", ["--R-max", "20"]),
    ("conjecture-mu-prime", []),
    ("conjecture-d-p2", ["--q-max", "31"]),
    ("oracle", []),
])
def test_verify_suites_pass(capsys, suite, extra):
    code, out, _ = run(capsys, "verify", "--suite", suite, *extra, "--format", "json")
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["checks"]
    assert all(c["status"] in ("PASS", "WARN", "UNTESTED") for c in report["checks"])
    assert report["rows"]


def test_table4_includes_three_orbit_example(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "table4", "--format", "json")
    rows = json.loads(out)["rows"]
    [row] = [r for r in rows if r["q"] == "13" and r["d"] == "6" and r["class"] == "lam=0 mod 4"]
    assert row["formula"] == row["engine"] == "42"


def test_output_is_deterministic(capsys, tmp_path):
    for fmt in ("json", "csv"):
        a, b = tmp_path / f"a.{fmt}", tmp_path / f"b.{fmt}"
        assert main(["coset-wd", "7", "5", "--format", fmt, "--out", str(a)]) == EXIT_OK
        assert main(["coset-wd", "7", "5", "--format", fmt, "--out", str(b)]) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()


def test_big_integers_are_strings(capsys):
    _, out, _ = run(capsys, "peculiarity", "120", "60", "--format", "json")
    value = json.loads(out)["rows"][0]["value"]
    assert isinstance(value, str) and int(value) > 2**64


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gdrs_cosets", "peculiarity", "9", "3", "--format", "csv"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "0,10,O0,0,0"
