import csv
import io
import json
import subprocess
import sys

import pytest

from modcartan.cli import CheckResult, emit_report, exit_code, run_suite
from modcartan.cli.main import main
from modcartan.errors import PreconditionError


@pytest.fixture(scope="module")
def hc1_results():
    return run_suite("hc1", {})


def test_hc1_suite(hc1_results):
    assert len(hc1_results) >= 3
    assert all(r.status == "pass" for r in hc1_results)
    assert all(isinstance(r.wall_time_ms, int) for r in hc1_results)


def test_forms_witt_suite():
    res = run_suite("forms-witt", {"p": [5, 7]})
    assert len(res) == 6
    assert all(r.computed == 0 and r.passed for r in res)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("bogus", {})


def test_malformed_config():
    with pytest.raises(ValueError):
        run_suite("hc1", {"colour": "blue"})
    with pytest.raises(ValueError):
        run_suite("hc1", {"primes": "5"})


def test_failures_are_collected_not_raised():
    cfg = {"suites": {"current-h2": {"lie": [["heisenberg", 5], ["sl2", 5]], "algebras": [["truncated", 2]]}}}
    res = run_suite("current-h2", cfg)
    assert [r.status for r in res] == ["fail", "pass"]
    assert "PreconditionError" in res[0].computed
    assert exit_code(res) == 1


def test_stretch_is_skipped_by_default():
    res = run_suite("forms-contact", {"primes": [5]})
    assert res[-1].status.startswith("skipped") and res[-1].skipped
    assert exit_code(res) == 0


def test_size_cap_skips():
    res = run_suite("forms-witt", {"primes": [5], "size_cap": 10})
    assert [r.status.startswith("skipped") for r in res] == [False, True, True]


def test_emit_json(tmp_path, hc1_results):
    two = hc1_results[:2]
    path = tmp_path / "r.json"
    emit_report(two, "json", path)
    doc = json.loads(path.read_text())
    assert len(doc["results"]) == 2
    assert set(doc["header"]) == {"tool_version", "config_digest"}


def test_emit_csv_round_trip(hc1_results):
    text = emit_report(hc1_results, "csv", None)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["check_id", "params", "expected", "computed", "status", "wall_time_ms"]
    assert sum(r["status"] == "pass" for r in rows) == sum(r.passed for r in hc1_results)


def test_emit_empty():
    with pytest.raises(PreconditionError):
        emit_report([], "json", None)


def test_emit_unwritable(hc1_results, tmp_path):
    with pytest.raises(OSError):
        emit_report(hc1_results, "json", tmp_path / "missing" / "r.json")


def test_deterministic_and_parallel_order():
    def strip(results):
        return [{k: v for k, v in r.to_json().items() if k != "wall_time_ms"} for r in results]

    a = run_suite("derham", {"primes": [5]})
    b = run_suite("derham", {"primes": [5]}, jobs=3)
    assert strip(a) == strip(b)


def test_main_verify(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"primes": [5]}))
    out = tmp_path / "r.csv"
    assert main(["verify", "--suite", "deform", "--config", str(cfg), "--out", str(out), "--format", "csv"]) == 0
    assert out.read_text().count("\n") == 3


def test_main_exit_code_on_failure(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"suites": {"current-h2": {"lie": [["heisenberg", 5]], "algebras": [["truncated", 2]]}}}))
    assert main(["verify", "--suite", "current-h2", "--config", str(cfg), "--out", str(tmp_path / "r.json")]) == 1


def test_describe(capsys):
    assert main(["describe"]) == 0
    text = capsys.readouterr().out
    assert "forms-contact" in text and text.count("\n") == 13


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "modcartan", "describe"], capture_output=True, text=True)
    assert proc.returncode == 0 and "hc1" in proc.stdout


def test_check_result_flags():
    r = CheckResult("x", {}, 1, 1, "pass", 0)
    assert r.passed and not r.skipped
