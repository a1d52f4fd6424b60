"""Command line contract: exit codes, env precedence, atomic output."""

import json
import os
import subprocess
import sys

import pytest

import gometrics.cli as cli

PY = sys.executable


def run_cli(*args, env_extra=None):
    env = {k: v for k, v in os.environ.items() if not k.startswith("GOMETRICS_")}
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [PY, "-m", "gometrics", *args],
        capture_output=True,
        env=env,
        timeout=300,
    )


# ------------------------------------------------------------- exit codes


def test_roots_known_systems_exit_zero():
    for system in ("a2", "g2"):
        proc = run_cli("roots", system)
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(proc.stdout)
        assert doc["schema"] == "1"
        assert "closed_symmetric_subsystem_classes" in doc


def test_roots_unknown_system_exits_2():
    proc = run_cli("roots", "e8")
    assert proc.returncode == 2
    assert proc.stderr


def test_go_check_go_metric_exits_0():
    proc = run_cli("go-check", "--space", "aw:2,1", "--metric", "1,1,1,1")
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(proc.stdout)
    assert doc["verdict"] == "go-consistent"


def test_go_check_non_go_metric_exits_3():
    proc = run_cli(
        "go-check", "--space", "aw:2,1", "--metric", "1,2,3,1", "--mode", "exact"
    )
    assert proc.returncode == 3
    doc = json.loads(proc.stdout)
    assert doc["verdict"] == "non-go-certified"
    checks = doc["checks"]
    assert any(c["status"] == "infeasible" for c in checks)


def test_go_check_su2_cases():
    assert run_cli("go-check", "--space", "lie:su2", "--metric", "2,1,1").returncode == 0
    assert run_cli("go-check", "--space", "lie:su2", "--metric", "1,2,3").returncode == 3


def test_go_check_g2_naturally_reductive_set_exits_0():
    proc = run_cli(
        "go-check", "--space", "lie:g2", "--metric", "1,1,11/9,11/9,1",
        "--samples", "8",
    )
    assert proc.returncode == 0, proc.stderr


@pytest.mark.parametrize(
    "args",
    [
        ("go-check", "--space", "aw:2,1", "--metric", "1,2,3"),  # wrong count
        ("go-check", "--space", "aw:0,0", "--metric", "1,1,1,1"),
        ("go-check", "--space", "lie:e8", "--metric", "1,1"),
        ("go-check", "--space", "lie:su2", "--metric", "1,-2,3"),
        ("go-check", "--space", "lie:su2", "--metric", "1,0.5,1", "--mode", "exact"),
        ("go-check", "--space", "lie:su2", "--metric", "1,2,"),
        (
            "go-check", "--space", "lie:su2", "--metric", "1,1,1",
            "--tol-feas", "1e-2", "--tol-infeas", "1e-3",
        ),
    ],
)
def test_malformed_requests_exit_2(args):
    proc = run_cli(*args)
    assert proc.returncode == 2
    assert proc.stderr.startswith(b"error:") or b"error" in proc.stderr


def test_decimal_metric_forces_float_mode():
    proc = run_cli("go-check", "--space", "lie:su2", "--metric", "1.0,2.0,3.0")
    assert proc.returncode == 3
    doc = json.loads(proc.stdout)
    methods = {c["method"] for c in doc["checks"]}
    assert "exact" not in methods


def test_reproduce_unknown_target_exits_2():
    proc = run_cli("reproduce", "something-else")
    assert proc.returncode == 2


def test_reproduce_aw_classification_exits_0():
    proc = run_cli("reproduce", "aw-classification")
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(proc.stdout)
    assert doc["kind"] == "aw-go-classification"


def test_reproduce_g2_einstein_byte_identical_runs():
    a = run_cli("reproduce", "g2-einstein")
    b = run_cli("reproduce", "g2-einstein")
    assert a.returncode == 0, a.stderr
    assert b.returncode == 0
    assert a.stdout == b.stdout
    assert a.stdout.endswith(b"\n")


def test_reproduce_mismatch_exits_5(monkeypatch, capsys):
    def broken(seed=0, einstein_tolerance=1e-5, tolerances=None):
        return {
            "kind": "g2-einstein-reproduction",
            "checks": [
                {"name": "set1-einstein-exact", "passed": True},
                {"name": "set3-non-go-certified", "passed": False},
            ],
        }

    monkeypatch.setattr(cli, "reproduce_main_theorem", broken)
    code = cli.main(["reproduce", "g2-einstein"])
    captured = capsys.readouterr()
    assert code == 5
    assert "mismatch: set3-non-go-certified" in captured.err


# ------------------------------------------------------- env and formats


def test_env_seed_changes_report_and_flag_wins():
    base = run_cli("go-check", "--space", "lie:su2", "--metric", "1.0,1.0,1.0")
    seeded = run_cli(
        "go-check", "--space", "lie:su2", "--metric", "1.0,1.0,1.0",
        env_extra={"GOMETRICS_SEED": "7"},
    )
    flagged = run_cli(
        "go-check", "--space", "lie:su2", "--metric", "1.0,1.0,1.0",
        "--seed", "0",
        env_extra={"GOMETRICS_SEED": "7"},
    )
    assert base.stdout != seeded.stdout
    assert flagged.stdout == base.stdout
    assert json.loads(seeded.stdout)["seed"] == 7


def test_env_invalid_value_exits_2():
    proc = run_cli(
        "go-check", "--space", "lie:su2", "--metric", "1,1,1",
        env_extra={"GOMETRICS_SEED": "many"},
    )
    assert proc.returncode == 2


def test_env_format_selects_csv():
    proc = run_cli(
        "roots", "a2", env_extra={"GOMETRICS_FORMAT": "csv"}
    )
    assert proc.returncode == 0
    first = proc.stdout.split(b"\n", 1)[0]
    assert first == b"class,size,roots"


def test_text_format_renders_summary():
    proc = run_cli(
        "go-check", "--space", "lie:su2", "--metric", "2,1,1", "--format", "text"
    )
    assert proc.returncode == 0
    assert b"go-consistent" in proc.stdout


def test_out_file_matches_stdout_bytes(tmp_path):
    path = tmp_path / "report.json"
    direct = run_cli("go-check", "--space", "lie:su2", "--metric", "2,1,1")
    towards = run_cli(
        "go-check", "--space", "lie:su2", "--metric", "2,1,1",
        "--out", str(path),
    )
    assert towards.returncode == 0
    assert path.read_bytes() == direct.stdout
    leftovers = [p for p in tmp_path.iterdir() if p.name != "report.json"]
    assert leftovers == []


def test_out_write_is_atomic_on_bad_directory(tmp_path):
    missing = tmp_path / "no-such-dir" / "report.json"
    proc = run_cli(
        "go-check", "--space", "lie:su2", "--metric", "2,1,1",
        "--out", str(missing),
    )
    assert proc.returncode == 2
    assert proc.stderr.startswith(b"error:")
    assert not missing.exists()


def test_su3_target_needs_five_coefficients():
    bad = run_cli("go-check", "--space", "lie:su3", "--metric", "1,1,1,1")
    assert bad.returncode == 2
    ok = run_cli("go-check", "--space", "lie:su3", "--metric", "12,12,12,12,12")
    assert ok.returncode == 0, ok.stderr
