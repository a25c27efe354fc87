import json
import subprocess
import sys

import pytest

from qpiseries import cli
from qpiseries.identities import VerificationReport, catalog


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "qpiseries.cli", *args],
        capture_output=True, timeout=600,
    )


def test_list_counts_and_filter(capsys):
    assert cli.main(["list"]) == 0
    out = capsys.readouterr().out
    assert len(out.splitlines()) >= 38

    assert cli.main(["list", "--prefix", "B"]) == 0
    out = capsys.readouterr().out
    ids = [line.split()[0] for line in out.splitlines()]
    assert ids == ["B1", "B1-ALT", "B2", "B3", "B4", "B5"]

    assert cli.main(["list", "--json"]) == 0
    out = capsys.readouterr().out
    rows = [json.loads(line) for line in out.splitlines()]
    assert all(row["schema"] == 1 for row in rows)
    assert {"id", "kind", "lattice", "params", "classical_target"} <= set(rows[0])


def test_verify_json_schema_fields(capsys):
    assert cli.main(["verify", "A1", "--p", "0.5", "--digits", "30", "--json"]) == 0
    row = json.loads(capsys.readouterr().out.strip())
    assert set(row) == {"schema", "id", "mode", "point", "result", "residual",
                        "err_budget", "terms", "millis", "detail"}
    assert row["schema"] == 1 and row["millis"] == 0
    assert row["result"] == "pass"


def test_exit_codes(capsys):
    assert cli.main(["verify", "A1", "--p", "0.5", "--digits", "30"]) == 0
    capsys.readouterr()
    assert cli.main(["verify", "NO-SUCH-ID"]) == 2
    capsys.readouterr()
    assert cli.main(["limit", "PP-A"]) == 2
    capsys.readouterr()
    assert cli.main(["verify", "A1", "--digits", "5"]) == 2
    capsys.readouterr()


def test_verify_failure_exit_code(monkeypatch, capsys):
    def fake_verify(rec_id, p, digits, rng):
        return VerificationReport(id=rec_id, mode="certified", point="x",
                                  result="fail")
    monkeypatch.setattr(cli, "verify_example", fake_verify)
    assert cli.main(["verify", "A1"]) == 1
    capsys.readouterr()


def test_p_parsing_is_exact():
    # decimal string converts through a power-of-ten denominator
    from fractions import Fraction
    assert cli._parse_p("0.9") == Fraction(9, 10)
    assert cli._parse_p("0.125") == Fraction(1, 8)
    assert cli._parse_p("3/5") == Fraction(3, 5)
    with pytest.raises(Exception):
        cli._parse_p("1.5")


def test_limit_command(capsys):
    assert cli.main(["limit", "A5", "--j0", "3", "--j1", "9", "--order", "5",
                     "--digits", "22", "--json"]) == 0
    row = json.loads(capsys.readouterr().out.strip())
    assert row["agreement_digits"] >= 5
    assert row["target_label"] == "pi/3"


def test_limit_batch(capsys):
    assert cli.main(["limit", "A1", "A5", "--j0", "3", "--j1", "8",
                     "--order", "4", "--digits", "20"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 2 and out[0].startswith("A1") and out[1].startswith("A5")


def test_byte_identical_json_runs():
    args = ["verify", "all", "--json", "--seed", "1",
            "--p", "0.5", "--digits", "30", "--n-max", "5", "--trials", "2"]
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == 0, first.stderr.decode()
    assert second.returncode == 0
    assert first.stdout == second.stdout
    assert len(first.stdout.splitlines()) == len(catalog())
