"""Contract tests for the command-line tool (path via QTURN_CLI)."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("QTURN_CLI")

pytestmark = pytest.mark.skipif(CLI is None, reason="QTURN_CLI not set")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_verify_algebra_passes():
    r = run("verify", "--suite", "algebra")
    assert r.returncode == 0
    assert "PASS" in r.stdout


def test_verify_break_constraint_fails():
    r = run("verify", "--suite", "turnover", "--samples", "5",
            "--break-constraint")
    assert r.returncode == 1
    assert "FAIL" in r.stdout


def test_verify_json_report(tmp_path):
    out = tmp_path / "report.json"
    r = run("verify", "--suite", "subspace", "--samples", "5",
            "--out", str(out))
    assert r.returncode == 0
    rep = json.loads(out.read_text())
    assert rep["pass"] is True
    assert rep["suites"][0]["name"] == "subspace"
    assert (tmp_path / "report.json.manifest.json").exists()


def test_bad_arguments_exit_2():
    assert run("frobnicate").returncode == 2
    assert run("verify", "--suite", "bogus").returncode == 2
    assert run("optimize", "--config", "/does/not/exist.json").returncode == 2


def test_optimize_stream_and_determinism(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "J": [0.55],
        "schemes": ["T3"],
        "nb": [1],
        "theta": {"t": 5.0, "steps": 200},
        "optimizer": {"restarts": 2},
    }))
    out_a = tmp_path / "a.jsonl"
    out_b = tmp_path / "b.jsonl"
    ra = run("optimize", "--config", str(cfg), "--out", str(out_a),
             "--seed", "9")
    rb = run("optimize", "--config", str(cfg), "--out", str(out_b),
             "--seed", "9")
    assert ra.returncode == 0 and rb.returncode == 0
    assert out_a.read_bytes() == out_b.read_bytes()

    lines = out_a.read_text().splitlines()
    assert len(lines) == 1
    rec = json.loads(lines[0])
    assert set(rec) == {"scheme", "J", "nb", "theta", "params", "infidelity",
                        "log10_infidelity", "restarts", "seed"}
    assert rec["scheme"] == "T3" and rec["nb"] == 1
    assert rec["infidelity"] < 1e-6
    assert len(rec["restarts"]) == 2
    assert "log10 infidelity" in ra.stdout


def test_optimize_malformed_config(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{"J": [0.1], "schemes": ["T1"]}')  # missing nb, theta
    assert run("optimize", "--config", str(cfg)).returncode == 2


def test_compress_report_and_circuit(tmp_path):
    out = tmp_path / "circuit.json"
    r = run("compress", "--scheme", "T1", "--J", "1.0", "--t", "5",
            "--steps", "20", "--nb", "1", "--auto", "--seed", "3",
            "--out", str(out))
    assert r.returncode == 0
    rep = json.loads(r.stdout.splitlines()[-1])
    assert rep["original_gate_count"] == 80
    assert rep["compressed_gate_count"] == 61  # 3n + 1
    assert rep["substitutions_performed"] == 10
    circ = json.loads(out.read_text())
    assert len(circ["gates"]) == 61


def test_compress_precondition_exit_2():
    r = run("compress", "--scheme", "T3", "--J", "1.0", "--steps", "2",
            "--nb", "2", "--auto")
    assert r.returncode == 2


def test_compress_max_infidelity_exit_1():
    # far-off angles cannot track theta = -1.25 per step
    r = run("compress", "--scheme", "T2", "--J", "1.0", "--t", "5",
            "--steps", "4", "--nb", "2", "--auto", "--max-infidelity",
            "1e-12", "--seed", "1")
    assert r.returncode == 1


def test_dynamics_csv_contract(tmp_path):
    out = tmp_path / "curves.csv"
    r = run("dynamics", "--J", "1.0", "--methods", "exact,trotter:T2:50",
            "--out", str(out), "--seed", "2")
    assert r.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "J,t,method,p,gate_count"
    assert len(lines) == 1 + 2 * 200
    assert lines[1] == "1,0,exact,1.000000000000,0"
    trotter_rows = [l for l in lines if ",trotter:T2:50," in l]
    assert len(trotter_rows) == 200
    assert trotter_rows[0].endswith(",200")  # 4 gates x 50 steps


def test_dynamics_header_only_without_methods(tmp_path):
    out = tmp_path / "empty.csv"
    r = run("dynamics", "--J", "0.55", "--out", str(out))
    assert r.returncode == 0
    assert out.read_text() == "J,t,method,p,gate_count\n"


def test_dynamics_svg(tmp_path):
    out = tmp_path / "curves.csv"
    r = run("dynamics", "--J", "0.1", "--methods", "exact,trotter:T2:20",
            "--svg", "--out", str(out))
    assert r.returncode == 0
    svg = (tmp_path / "curves_J0.1.svg").read_text()
    assert svg.startswith("<svg")
    assert "<polyline" in svg and "<circle" in svg
