"""CLI subcommands: exit codes, file outputs, JSON mode, determinism."""

from __future__ import annotations

import json

import pytest

from mapsched.cli import run

TRIANGLE_DOC = {"reducers": [[0, 1], [0, 2], [1, 2]]}
UNIT3_DOC = {"kind": "a2a", "q": 2, "sizes": [1, 1, 1]}


@pytest.fixture()
def fixtures(tmp_path):
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps(UNIT3_DOC))
    schema = tmp_path / "schema.json"
    schema.write_text(json.dumps(TRIANGLE_DOC))
    return tmp_path, inst, schema


def test_validate_triangle_ok(fixtures, capsys):
    _, inst, schema = fixtures
    assert run(["validate", "--instance", str(inst), "--schema", str(schema)]) == 0
    assert "valid: True" in capsys.readouterr().out


def test_validate_missing_pair_exits_4(fixtures, capsys):
    tmp, inst, _ = fixtures
    partial = tmp / "partial.json"
    partial.write_text(json.dumps({"reducers": [[0, 1], [0, 2]]}))
    assert run(["validate", "--instance", str(inst), "--schema", str(partial), "--json"]) == 4
    doc = json.loads(capsys.readouterr().out)
    assert doc["valid"] is False
    assert [1, 2] in doc["uncovered_pairs"]


def test_validate_warns_on_empty_reducers(fixtures, capsys):
    tmp, inst, _ = fixtures
    padded = tmp / "padded.json"
    padded.write_text(json.dumps({"reducers": [[0, 1], [], [0, 2], [1, 2]]}))
    assert run(["validate", "--instance", str(inst), "--schema", str(padded)]) == 0
    assert "empty reducers" in capsys.readouterr().err


def test_solve_infeasible_exits_3(tmp_path):
    inst = tmp_path / "bad.json"
    inst.write_text(json.dumps({"kind": "a2a", "q": 4, "sizes": [3, 2]}))
    assert run(["solve", "--instance", str(inst)]) == 3


def test_solve_writes_schema_and_reports(tmp_path, capsys):
    inst = tmp_path / "i.json"
    inst.write_text(json.dumps({"kind": "a2a", "q": 3, "sizes": [1, 1, 1, 1]}))
    out = tmp_path / "s.json"
    assert run(["solve", "--instance", str(inst), "--out", str(out), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "optimal" and doc["z"] == 3 and doc["lower_bound"] == 2
    assert json.loads(out.read_text()) == doc["schema"]


def test_solve_heuristic_exits_2(tmp_path, capsys):
    inst = tmp_path / "i.json"
    inst.write_text(json.dumps({"kind": "a2a", "q": 4, "sizes": [1] * 6}))
    assert run(["solve", "--instance", str(inst), "--method", "heuristic", "--json"]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "feasible_only" and doc["z"] == 3


def test_unknown_flag_exits_1(capsys):
    assert run(["solve", "--instance", "x.json", "--frobnicate"]) == 1
    err = capsys.readouterr().err
    assert "usage:" in err


def test_missing_instance_file_exits_1(capsys):
    assert run(["solve", "--instance", "/nonexistent/i.json"]) == 1


def test_gen_requires_seed(tmp_path, capsys):
    code = run(["gen", "--kind", "a2a", "--m", "3", "--dist", "constant:1", "--q", "2"])
    assert code == 1
    assert "--seed" in capsys.readouterr().err


def test_gen_solve_simulate_pipeline(tmp_path, capsys):
    inst = tmp_path / "i.json"
    schema = tmp_path / "s.json"
    report = tmp_path / "r.json"
    assert run(["gen", "--kind", "x2y", "--m", "2", "--n", "2", "--dist", "constant:1",
                "--q", "2", "--seed", "5", "--out", str(inst)]) == 0
    assert run(["solve", "--instance", str(inst), "--out", str(schema)]) == 0
    capsys.readouterr()
    assert run(["simulate", "--instance", str(inst), "--schema", str(schema),
                "--report", str(report), "--json"]) == 0
    stdout_doc = json.loads(capsys.readouterr().out)
    assert stdout_doc == json.loads(report.read_text())
    assert stdout_doc["bytes_shipped"] == 8 and stdout_doc["outputs_produced"] == 4


def test_sweep_writes_csv(tmp_path):
    inst = tmp_path / "i.json"
    inst.write_text(json.dumps({"kind": "a2a", "q": 2, "sizes": [1, 1, 1, 1]}))
    out = tmp_path / "curve.csv"
    assert run(["sweep", "--instance", str(inst), "--q", "2,3,4", "--method", "exact",
                "--csv", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "q,z,cost,method,status"
    assert [line.split(",")[1] for line in lines[1:]] == ["6", "3", "1"]


def test_oracle_subcommand(tmp_path, capsys):
    inst = tmp_path / "i.json"
    inst.write_text(json.dumps({"kind": "a2a", "q": 3, "sizes": [1, 1, 1, 1]}))
    assert run(["oracle", "--instance", str(inst), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["min_z"] == 3 and len(doc["witness"]["reducers"]) == 3


def test_oracle_guard_exits_1(tmp_path, capsys):
    inst = tmp_path / "i.json"
    inst.write_text(json.dumps({"kind": "a2a", "q": 2, "sizes": [1] * 9}))
    assert run(["oracle", "--instance", str(inst)]) == 1


def test_json_mode_emits_only_json(fixtures, capsys):
    _, inst, schema = fixtures
    assert run(["validate", "--instance", str(inst), "--schema", str(schema), "--json"]) == 0
    out = capsys.readouterr().out
    json.loads(out)  # the whole stdout is one document
    assert out.endswith("\n")


def test_repeated_runs_are_byte_identical(tmp_path, capsys):
    args = ["gen", "--kind", "a2a", "--m", "6", "--dist", "uniform:1:3", "--q", "6",
            "--seed", "42", "--json"]
    assert run(args) == 0
    first = capsys.readouterr().out
    assert run(args) == 0
    assert capsys.readouterr().out == first

    inst = tmp_path / "i.json"
    inst.write_text(first)
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    assert run(["solve", "--instance", str(inst), "--out", str(out_a), "--json"]) == 0
    stdout_a = capsys.readouterr().out
    assert run(["solve", "--instance", str(inst), "--out", str(out_b), "--json"]) == 0
    stdout_b = capsys.readouterr().out
    assert stdout_a == stdout_b
    assert out_a.read_bytes() == out_b.read_bytes()
