import json
import subprocess
import sys

import pytest

from hlrr.cli import main
from hlrr.identities import registry


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_list_text(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    rows = out.strip().splitlines()
    assert len(rows) == len(registry())
    t2 = next(r for r in rows if r.split()[0] == "T2")
    assert "series" in t2 and "k=1,2,3" in t2


def test_list_json(capsys):
    code, out, _ = run(capsys, "list", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == len(registry())
    assert {"id", "paper_eq", "strategy", "params"} <= set(rows[0])


def test_verify_single_case(capsys):
    code, out, _ = run(capsys, "verify", "--ids", "RRintro", "--order", "60", "--seed", "7")
    assert code == 0
    assert "1 passed, 0 failed" in out


def test_verify_unknown_id(capsys):
    code, _, err = run(capsys, "verify", "--ids", "NOPE")
    assert code == 2 and "NOPE" in err


def test_verify_bad_parameters(capsys):
    assert run(capsys, "verify", "--ids", "T2", "--order", "500")[0] == 2
    assert run(capsys, "verify", "--ids", "T2", "--parallelism", "0")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "nightly"])
    assert info.value.code == 2


def test_verify_json_and_comma_ids(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--ids", "JTP,QBT", "--format", "json", "--output", str(out_file))
    assert code == 0
    report = json.loads(out)
    assert [c["id"] for c in report["cases"]] == ["JTP", "QBT"]
    assert json.loads(out_file.read_text()) == report
    assert report["seed"] == 42


def test_quick_suite_is_byte_identical(capsys, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", "--suite", "quick", "--seed", "42", "--output", str(first))[0] == 0
    assert run(capsys, "verify", "--suite", "quick", "--seed", "42", "--output", str(second), "--parallelism", "2")[0] == 0
    assert first.read_bytes() == second.read_bytes()


def test_mutant_sets_exit_code_and_report_shows_discrepancy(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("HLRR_TEST_CASES", "1")
    path = tmp_path / "m.json"
    code, out, _ = run(capsys, "verify", "--ids", "MUTANT", "RRintro", "--output", str(path))
    assert code == 1
    code, out, _ = run(capsys, "report", str(path))
    assert code == 0
    assert "1 passed, 1 failed" in out
    assert "exponent 3" in out and "lhs 1/1" in out and "rhs 0/1" in out


def test_report_round_trip(capsys, tmp_path):
    path = tmp_path / "r.json"
    run(capsys, "verify", "--ids", "E1", "T3.12", "B56", "--output", str(path))
    code, out, _ = run(capsys, "report", str(path))
    assert code == 0
    for case_id in ("E1", "T3.12", "B56"):
        assert case_id in out
    assert "3 passed, 0 failed" in out
    assert "reported printed_vs_jtp" in out


def test_report_empty_and_malformed(capsys, tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"run_id": "x", "seed": 1, "suite": "all", "cases": []}))
    code, out, _ = run(capsys, "report", str(empty))
    assert code == 0 and out.strip() == "no cases"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "report", str(bad))[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"cases": [{"status": "pass"}]}))
    assert run(capsys, "report", str(wrong))[0] == 2
    assert run(capsys, "report", str(tmp_path / "missing.json"))[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hlrr.cli", "verify", "--ids", "ALT"], capture_output=True, text=True)
    assert proc.returncode == 0 and "1 passed, 0 failed" in proc.stdout
