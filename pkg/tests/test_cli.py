import csv
import json
import subprocess
import sys
from math import sqrt

import pytest

from fuzzybundle.chern import ChargeReport
from fuzzybundle.cli import EXIT_DOMAIN, EXIT_IO, EXIT_OK, EXIT_TOL, EXIT_USAGE, main
from fuzzybundle.sweep import CSV_HEADER, dumps_json


def test_exit_codes_are_disjoint():
    assert len({EXIT_OK, EXIT_TOL, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO}) == 5


def test_charge_json(capsys):
    assert main(["charge", "--two-n", "2", "--two-nu", "1", "--branch", "plus", "--format", "json"]) == 0
    text = capsys.readouterr().out
    data = json.loads(text)
    assert abs(data["q"] - 80 * sqrt(2) / 81) < 1e-10
    assert abs(data["c1"] + 80 * sqrt(2) / 81) < 1e-10
    assert data["k_limit"] == -1 and data["branch"] == "plus"
    # parse -> re-serialize is byte-identical
    assert dumps_json(json.loads(text)) == text
    assert dumps_json(ChargeReport.from_dict(data).to_dict()) == text


def test_charge_trivial_fiber(capsys):
    assert main(["charge", "--two-n", "2", "--two-nu", "0", "--branch", "plus"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["q"] == 0 and data["c1"] == 0


def test_charge_text_format(capsys):
    assert main(["charge", "--two-n", "3", "--two-nu", "1", "--branch", "minus", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "k_limit = 1" in out and "lemma3" in out


def test_charge_domain_error(capsys):
    assert main(["charge", "--two-n", "1", "--two-nu", "2", "--branch", "minus"]) == EXIT_DOMAIN
    assert "N > nu" in capsys.readouterr().err


def test_charge_tolerance_failure(capsys):
    assert main(["charge", "--two-n", "4", "--two-nu", "2", "--branch", "plus", "--tol", "1e-30"]) == EXIT_TOL


@pytest.mark.parametrize("argv", [
    [],
    ["charge", "--two-n", "2", "--two-nu", "1"],
    ["charge", "--two-n", "-2", "--two-nu", "1", "--branch", "plus"],
    ["charge", "--two-n", "1.5", "--two-nu", "1", "--branch", "plus"],
    ["charge", "--two-n", "2", "--two-nu", "1", "--branch", "up"],
    ["sweep", "--two-nu", "0", "--output", "x.csv"],
    ["sweep", "--two-nu", "4", "--two-n-max", "3", "--output", "x.csv"],
    ["bogus"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_help_is_not_an_error(capsys):
    assert main(["--help"]) == EXIT_OK


def _sweep(tmp_path, name, *extra):
    out = tmp_path / name
    code = main(["sweep", "--output", str(out), *extra])
    return code, out


def test_sweep_row_count(tmp_path):
    code, out = _sweep(tmp_path, "a.csv", "--two-nu", "1", "--branch", "plus", "--two-n-max", "4")
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert tuple(rows[0]) == CSV_HEADER
    assert [r[0] for r in rows[1:]] == ["2", "4"]


def test_sweep_csv_contents(tmp_path):
    code, out = _sweep(tmp_path, "b.csv", "--two-nu", "1", "--two-n-max", "6")
    assert code == 0
    text = out.read_text()
    assert text.splitlines()[0] == "two_N,two_nu,branch,inv_N,q,c1,k_limit,max_residual"
    rows = list(csv.DictReader(text.splitlines()))
    keys = [(int(r["two_nu"]), r["branch"], int(r["two_N"])) for r in rows]
    assert keys == sorted(keys)
    minus = next(r for r in rows if r["branch"] == "minus" and r["two_N"] == "2")
    assert abs(float(minus["q"]) + 32 * sqrt(2) / 81) < 1e-10
    assert minus["k_limit"] == "1"
    assert all(float(r["max_residual"]) < 1e-9 for r in rows)


def test_sweep_is_byte_stable(tmp_path):
    args = ("--two-nu", "1", "2", "--two-n-max", "8")
    _, a = _sweep(tmp_path, "a.csv", *args)
    _, b = _sweep(tmp_path, "b.csv", *args, "--workers", "3")
    assert a.read_bytes() == b.read_bytes()


def test_sweep_json_round_trip(tmp_path):
    code, out = _sweep(tmp_path, "c.json", "--two-nu", "3", "--two-n-max", "6", "--format", "json")
    assert code == 0
    text = out.read_text()
    data = json.loads(text)
    assert dumps_json(data) == text
    assert {d["branch"] for d in data} == {"plus", "minus"}
    assert set(data[0]) == set(CSV_HEADER)


def test_sweep_half_integer_mode(tmp_path):
    code, out = _sweep(tmp_path, "d.csv", "--two-nu", "1", "--branch", "plus",
                       "--two-n-max", "4", "--allow-half-integer-n")
    assert code == 0
    assert [r[0] for r in list(csv.reader(out.open()))[1:]] == ["1", "2", "3", "4"]


def test_sweep_tolerance_failure_drops_rows(tmp_path):
    code, out = _sweep(tmp_path, "e.csv", "--two-nu", "1", "--branch", "plus",
                       "--two-n-max", "4", "--tol", "1e-30")
    assert code == EXIT_TOL
    assert out.read_text().splitlines() == [",".join(CSV_HEADER)]


def test_sweep_unwritable_output(tmp_path):
    target = tmp_path / "missing" / "x.csv"
    assert main(["sweep", "--two-nu", "1", "--output", str(target)]) == EXIT_IO


def test_verify_core_passes(capsys):
    assert main(["verify", "--two-n", "2", "--two-nu", "1", "--branch", "plus"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "FAIL" not in out and "checks passed" in out


def test_verify_forced_failure(capsys):
    code = main(["verify", "--two-n", "2", "--two-nu", "1", "--branch", "minus", "--tol", "1e-15"])
    assert code == EXIT_TOL
    out = capsys.readouterr().out
    assert "FAIL" in out and "residual=" in out


def test_verify_domain_error():
    assert main(["verify", "--two-n", "2", "--two-nu", "2", "--branch", "minus"]) == EXIT_DOMAIN


def test_verify_full_with_small_sample(capsys):
    code = main(["verify", "--two-n", "2", "--two-nu", "1", "--branch", "plus",
                 "--suite", "full", "--samples", "50000", "--seed", "42"])
    assert code == EXIT_OK
    assert "projector.haar_mc_frobenius" in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fuzzybundle", "charge", "--two-n", "2", "--two-nu", "1", "--branch", "minus"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert abs(json.loads(proc.stdout)["q"] + 32 * sqrt(2) / 81) < 1e-10
