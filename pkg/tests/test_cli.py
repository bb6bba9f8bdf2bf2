"""Command-line interface: exit codes, output formats, file exports, and
byte-identical deterministic reports."""

import json

import pytest

from linloop.cli import main

UNIT_JSON = {"generators": [{"kind": "monomial", "k": 1, "c": [["1"]]}]}


def _write_unit(tmp_path, obj=None):
    path = tmp_path / "unit.json"
    path.write_text(json.dumps(obj or UNIT_JSON))
    return str(path)


def test_verify_small_suite_exits_zero(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(
        ["verify", "--suite", "bott", "--seed", "7", "--instances", "6",
         "--out", str(out)]
    )
    assert code == 0
    report = json.loads(out.read_text())
    assert report["failed"] == 0
    assert report["rows"]
    assert all(
        set(r) >= {"anchor", "instance", "pass"} for r in report["rows"]
    )


def test_verify_reports_are_byte_identical(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    args = ["verify", "--suite", "stabilize", "--seed", "42", "--instances", "8"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_csv_format(tmp_path):
    out = tmp_path / "report.csv"
    code = main(
        ["verify", "--suite", "bott", "--instances", "4", "--format", "csv",
         "--out", str(out)]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "anchor,instance,pass,detail"
    assert len(lines) > 1


def test_verify_unknown_suite_exits_two(capsys):
    assert main(["verify", "--suite", "nonsense"]) == 2


def test_linearize_writes_files(tmp_path):
    unit = _write_unit(tmp_path)
    out = tmp_path / "lin"
    code = main(["linearize", "--input", unit, "--out", str(out), "--window", "4"])
    assert code == 0
    for name in ("bott.json", "endpoints.json", "trace.json"):
        assert (out / name).exists()
    frames = json.loads((out / "trace.json").read_text())
    assert frames and all("t" in f and "window" in f for f in frames)


def test_finite_linearize_writes_checks(tmp_path):
    unit = _write_unit(tmp_path)
    out = tmp_path / "fin"
    code = main(
        ["finite-linearize", "--input", unit, "--out", str(out), "--window", "4"]
    )
    assert code == 0
    checks = json.loads((out / "checks.json").read_text())
    assert checks and all(c["pass"] for c in checks)
    box = json.loads((out / "box.json").read_text())
    assert "factors" in box and "accumulated" in box


def test_trace_to_stdout(tmp_path, capsys):
    unit = _write_unit(tmp_path)
    code = main(["trace", "--input", unit, "--window", "3"])
    assert code == 0
    frames = json.loads(capsys.readouterr().out)
    assert isinstance(frames, list) and frames


def test_rejects_unpresented_loop(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"coeffs": {"0": [["1"]]}}))
    assert main(["linearize", "--input", path.as_posix(), "--out",
                 str(tmp_path / "x")]) == 2


def test_rejects_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["trace", "--input", str(path)]) == 2


def test_bench_emits_timings(tmp_path):
    out = tmp_path / "bench.json"
    code = main(["bench", "--suite", "bott", "--instances", "4", "--out", str(out)])
    assert code == 0
    timings = json.loads(out.read_text())
    assert timings[0]["suite"] == "bott"
    assert timings[0]["failed"] == 0
