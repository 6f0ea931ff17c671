"""End-to-end command line tests (subprocess) plus exit-code paths."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from convalg import CheckResult
from convalg import cli

INSTANCES = Path(__file__).resolve().parents[1] / "instances"


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "convalg.cli", *args],
        capture_output=True,
        text=True,
    )


def test_version():
    proc = run_cli("--version")
    assert proc.returncode == 0
    assert proc.stdout.strip() == "convalg 0.1.0"


def test_describe_text():
    proc = run_cli("describe", "--instance", str(INSTANCES / "i3.json"))
    assert proc.returncode == 0
    assert "algebra dimension: 52" in proc.stdout
    assert "points: 11 in 5 strata" in proc.stdout


def test_describe_json():
    proc = run_cli("describe", "--instance", str(INSTANCES / "i3.json"), "--format", "json")
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    assert obj["name"] == "I3"
    assert obj["e_dim"] == 2
    assert obj["num_points"] == 11
    assert obj["dim_F"] == 52
    assert len(obj["strata"]) == 5
    assert sum(s["size"] for s in obj["strata"]) == 11
    assert len(obj["blocks"]) == 25
    assert sum(b["labels"] for b in obj["blocks"]) == 52


def test_verify_json_schema_and_exit():
    proc = run_cli("verify", "--instance", str(INSTANCES / "i2.json"), "--format", "json")
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    assert set(obj) == {"name", "dim_F", "checks", "seed"}
    assert obj["name"] == "I2" and obj["dim_F"] == 6 and obj["seed"] == 0
    assert len(obj["checks"]) == 15
    for entry in obj["checks"]:
        assert entry["status"] == "pass"
        assert "witness" not in entry


def test_verify_reports_are_byte_identical():
    args = ("verify", "--instance", str(INSTANCES / "i2.json"), "--format", "json")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.stdout == second.stdout
    assert first.returncode == second.returncode == 0


def test_verify_timings_flag():
    base = ("verify", "--instance", str(INSTANCES / "i1.json"), "--format", "json")
    without = json.loads(run_cli(*base).stdout)
    assert "elapsed_ms" not in without
    with_timings = json.loads(run_cli(*base, "--timings").stdout)
    assert isinstance(with_timings["elapsed_ms"], int)


def test_verify_check_subset():
    proc = run_cli(
        "verify",
        "--instance",
        str(INSTANCES / "i2.json"),
        "--format",
        "json",
        "--checks",
        "unit,strata_partition",
    )
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    assert [c["id"] for c in obj["checks"]] == ["strata_partition", "unit"]


def test_verify_unknown_check():
    proc = run_cli(
        "verify", "--instance", str(INSTANCES / "i2.json"), "--checks", "no_such_check"
    )
    assert proc.returncode == 2
    assert "error:" in proc.stderr


def test_verify_text_output():
    proc = run_cli("verify", "--instance", str(INSTANCES / "i4.json"))
    assert proc.returncode == 0
    assert "checks passed: 15/15" in proc.stdout
    assert "FAIL" not in proc.stdout


def test_ideal_json():
    proc = run_cli(
        "ideal",
        "--instance",
        str(INSTANCES / "i2.json"),
        "--stabilizer",
        "0",
        "--shift",
        "1",
        "--format",
        "json",
    )
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    assert obj["dim"] == 2
    assert obj["stabilizer"] == []
    assert obj["shift"] == ["1"]
    assert obj["source_orbit"] == ["0:0", "0:1"]
    assert len(obj["basis"]) == 2
    assert obj["basis"][0]["element"] == {
        "[(0, 0)|0/0]^()": 1,
        "[(0, 1)|0/0]^()": 1,
    }
    action = {entry["label"]: entry["matrix"] for entry in obj["action"]}
    assert action["[(2, 0)|1/0]^()"] == [[0, 2], [0, 0]]


def test_ideal_bad_stratum():
    proc = run_cli(
        "ideal",
        "--instance",
        str(INSTANCES / "i4.json"),
        "--stabilizer",
        "10",
        "--shift",
        "0",
    )
    assert proc.returncode == 2
    assert "no points have stabilizer" in proc.stderr


def test_catalog_json():
    proc = run_cli(
        "catalog", "--instance", str(INSTANCES / "i3.json"), "--format", "json"
    )
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    assert obj["ok"] and obj["complete"]
    assert obj["sum_of_squares"] == 52 == obj["dim_F"]
    assert [line["dim"] for line in obj["lines"]] == [2, 2, 2, 2, 2, 2, 1, 1, 1, 5]


def test_catalog_needs_rank_two():
    proc = run_cli("catalog", "--instance", str(INSTANCES / "i2.json"))
    assert proc.returncode == 2


def test_out_writes_file(tmp_path):
    target = tmp_path / "report.json"
    proc = run_cli(
        "describe",
        "--instance",
        str(INSTANCES / "i1.json"),
        "--format",
        "json",
        "--out",
        str(target),
    )
    assert proc.returncode == 0
    assert proc.stdout == ""
    assert json.loads(target.read_text())["dim_F"] == 4


def test_bad_json_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    proc = run_cli("describe", "--instance", str(bad))
    assert proc.returncode == 2
    assert "error:" in proc.stderr


def test_missing_file(tmp_path):
    proc = run_cli("describe", "--instance", str(tmp_path / "absent.json"))
    assert proc.returncode == 2


def test_group_dimension_limit(tmp_path):
    too_big = tmp_path / "big.json"
    too_big.write_text(
        json.dumps({"e_dim": 6, "orbits": [{"stabilizer": []}]})
    )
    proc = run_cli("describe", "--instance", str(too_big))
    assert proc.returncode == 2
    assert "error:" in proc.stderr


def test_max_dim_refusal():
    proc = run_cli(
        "describe", "--instance", str(INSTANCES / "i3.json"), "--max-dim", "10"
    )
    assert proc.returncode == 2
    assert "exceeds" in proc.stderr


def test_missing_instance_flag():
    proc = run_cli("describe")
    assert proc.returncode == 2


def test_canonicalization_note(tmp_path):
    inst = tmp_path / "noncanon.json"
    inst.write_text(
        json.dumps(
            {
                "e_dim": 2,
                "orbits": [
                    {"stabilizer": []},
                    {"stabilizer": ["11", "10"]},
                ],
            }
        )
    )
    proc = run_cli("describe", "--instance", str(inst))
    assert proc.returncode == 0
    assert "canonicalized to" in proc.stderr


def test_failing_check_maps_to_exit_one(monkeypatch, capsys):
    def fake_run_checks(algebra, seed=0, check_ids=None, random_budget=2000):
        return [CheckResult("unit", "fail", {"labels": 1}, {"label": "boom"})]

    monkeypatch.setattr(cli, "run_checks", fake_run_checks)
    code = cli.main(
        ["verify", "--instance", str(INSTANCES / "i1.json"), "--format", "json"]
    )
    assert code == 1
    obj = json.loads(capsys.readouterr().out)
    assert obj["checks"][0]["status"] == "fail"
    assert obj["checks"][0]["witness"] == {"label": "boom"}
