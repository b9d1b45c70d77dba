import json
from pathlib import Path

import pytest

from hspsim.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_laws_simon(capsys):
    code, out = run(capsys, "laws", "--config", CONFIGS / "simon_z2sq.json")
    assert code == 0 and out["pass"]


def test_laws_s3_flags_noncommutative(capsys):
    code, out = run(capsys, "laws", "--config", CONFIGS / "s3_a3.json")
    assert code == 0
    assert out["pairs"][0]["commutative"] is False


def test_laws_boolean_census(capsys):
    code, out = run(capsys, "laws", "--config", CONFIGS / "z6_by_2.json", "--semiring", "boolean")
    assert code == 0
    assert out["pairs"][0]["character_census"]["count"] == 1


def test_corrupted_cayley_table_is_config_error(tmp_path, capsys):
    bad = {"group": {"cayley": {"elements": ["a", "b"], "table": [[0, 1], [1, 1]]}},
           "subgroup_generators": []}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _ = run(capsys, "laws", "--config", path)
    assert code == 1
    path.write_text("{not json")
    assert run(capsys, "laws", "--config", path)[0] == 1
    path.write_text(json.dumps({"group": {"orders": [4]}, "bogus": 1}))
    assert run(capsys, "laws", "--config", path)[0] == 1


def test_dist_simon(capsys):
    code, out = run(capsys, "dist", "--config", CONFIGS / "simon_z2sq.json")
    assert code == 0
    assert [r["prob"] for r in out["rows"]] == [0.25] * 4
    assert out["max_discrepancy"] <= 1e-12
    code, sv = run(capsys, "dist", "--config", CONFIGS / "simon_z2sq.json", "--state-vector")
    assert code == 0 and sv["method"] == "state_vector"


def test_dist_whole_group(capsys):
    code, out = run(capsys, "dist", "--config", CONFIGS / "whole_group.json")
    assert code == 0 and len(out["rows"]) == 1 and out["rows"][0]["prob"] == 1.0


def test_dist_real_z3_exits_3(capsys):
    code, out = run(capsys, "dist", "--config", CONFIGS / "z3_trivial.json")
    assert code == 3 and out["enough_classical_states"] is False


def test_dist_boolean_exits_3(capsys):
    code, _ = run(capsys, "dist", "--config", CONFIGS / "z6_by_2.json", "--semiring", "boolean")
    assert code == 3


def test_run_z6(capsys, tmp_path):
    t = tmp_path / "t.jsonl"
    code, out = run(capsys, "run", "--config", CONFIGS / "z6_by_2.json", "--transcript", t)
    assert code == 0 and out["success"] and out["recovered"] == ["0", "2", "4"]
    lines = [json.loads(x) for x in t.read_text().splitlines()]
    assert len(lines) == out["samples"]


def test_run_dlog_and_order(capsys):
    for cfg in ("dlog_p5.json", "order_15.json"):
        code, out = run(capsys, "run", "--config", CONFIGS / cfg)
        assert code == 0 and out["success"]


def test_simon_random(capsys):
    code, out = run(capsys, "simon", "16", "--z", "random", "--seed", "7")
    assert code == 0 and out["success"] and out["z_true"] == out["z_recovered"]


def test_simon_oracle_file(capsys, tmp_path):
    good = tmp_path / "f.json"
    good.write_text(json.dumps(["00", "01", "01", "00"]))
    code, out = run(capsys, "simon", "2", "--oracle", good)
    assert code == 0 and out["z_recovered"] == "11"
    good.write_text(json.dumps(["00", "01", "10", "00"]))
    assert run(capsys, "simon", "2", "--oracle", good)[0] == 4


def test_promise_violation_in_config(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"group": {"orders": [2, 2]}, "subgroup_generators": ["11"],
                                "label_bits": 2, "labeling": ["00", "01", "10", "00"]}))
    assert run(capsys, "dist", "--config", path)[0] == 4


def test_nonabelian_s3(capsys):
    code, out = run(capsys, "nonabelian", "--config", CONFIGS / "s3_a3.json")
    assert code == 0
    nonzero = sorted({r["rho"] for r in out["rows"] if r["prob"] > 1e-12})
    assert nonzero == ["sign", "trivial"]
    assert all(abs(r["prob"] - r["closed_form"]) < 1e-12 for r in out["rows"] if r["prob"] > 0)


@pytest.mark.parametrize("argv", [
    ["dist", "--config", CONFIGS / "dlog_p5.json"],
    ["run", "--config", CONFIGS / "z6_by_2.json", "--seed", "3"],
    ["laws", "--config", CONFIGS / "simon_z2sq.json"],
    ["simon", "10", "--seed", "2"],
    ["nonabelian", "--config", CONFIGS / "s3_a3.json"],
])
def test_outputs_are_byte_identical(argv, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main([str(x) for x in argv] + ["--out", str(a)])
    main([str(x) for x in argv] + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
