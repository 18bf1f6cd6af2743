"""End-to-end command-line runs over temp files."""
import json

import pytest

from slotswapper.cli import main
from slotswapper.formats import (
    load_pool,
    load_schedule,
    save_flows,
    save_schedule,
    save_topology,
)

from conftest import make_flows, make_mesh


@pytest.fixture
def files(tmp_path, sched_a):
    save_topology(make_mesh(), tmp_path / "topo.json")
    save_flows(make_flows(), tmp_path / "flows.json")
    save_schedule(sched_a, tmp_path / "sched_a.json")
    return tmp_path


def test_validate_ok(files, capsys):
    code = main(
        [
            "validate",
            str(files / "sched_a.json"),
            str(files / "flows.json"),
            str(files / "topo.json"),
        ]
    )
    assert code == 0
    assert capsys.readouterr().out.strip() == "ok"


def test_validate_reports_violations(files, capsys, sched_a):
    broken = sched_a.copy()
    broken.swap_cells((1, 1), (5, 2))  # puts flow 1 hop 2 before hop 1
    save_schedule(broken, files / "broken.json")
    code = main(
        [
            "validate",
            str(files / "broken.json"),
            str(files / "flows.json"),
            str(files / "topo.json"),
        ]
    )
    assert code == 1
    assert "HopOrderViolation" in capsys.readouterr().out


def test_schedule_base_writes_feasible_schedule(files, capsys):
    out = files / "base.json"
    code = main(
        [
            "schedule-base",
            "--topology",
            str(files / "topo.json"),
            "--flows",
            str(files / "flows.json"),
            "--channels",
            "2",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    schedule = load_schedule(out)
    assert schedule.placed_count == 9
    assert main(
        ["validate", str(out), str(files / "flows.json"), str(files / "topo.json")]
    ) == 0


def test_schedule_base_infeasible_exits_2(files, tmp_path, capsys):
    code = main(
        [
            "schedule-base",
            "--topology",
            str(files / "topo.json"),
            "--flows",
            str(files / "flows.json"),
            "--channels",
            "1",
            "--out",
            str(tmp_path / "never.json"),
        ]
    )
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_randomize_writes_pool(files, capsys):
    out = files / "pool"
    code = main(
        [
            "randomize",
            "--base",
            str(files / "sched_a.json"),
            "--flows",
            str(files / "flows.json"),
            "--topology",
            str(files / "topo.json"),
            "--count",
            "5",
            "--seed",
            "11",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    pool = load_pool(out)
    assert len(pool) == 6
    assert pool.seed == 11


def _make_pool(files):
    main(
        [
            "randomize",
            "--base",
            str(files / "sched_a.json"),
            "--flows",
            str(files / "flows.json"),
            "--topology",
            str(files / "topo.json"),
            "--count",
            "5",
            "--seed",
            "11",
            "--out",
            str(files / "pool"),
        ]
    )
    return files / "pool"


def test_select_prints_deterministic_indices(files, capsys):
    pool_dir = _make_pool(files)
    capsys.readouterr()
    assert main(["select", "--pool", str(pool_dir), "--seed", "3", "--hyper-periods", "8"]) == 0
    first = capsys.readouterr().out
    assert main(["select", "--pool", str(pool_dir), "--seed", "3", "--hyper-periods", "8"]) == 0
    assert capsys.readouterr().out == first
    indices = [int(line) for line in first.split()]
    assert len(indices) == 8
    assert all(0 <= i < 6 for i in indices)


def test_entropy_prints_bits_and_per_slot_csv(files, capsys):
    pool_dir = _make_pool(files)
    per_slot = files / "slots.csv"
    capsys.readouterr()
    code = main(
        ["entropy", "--pool", str(pool_dir), "--exact", "--per-slot", str(per_slot)]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "upper bound:" in out and "exact:" in out
    lines = per_slot.read_text().strip().splitlines()
    assert lines[0] == "slot,bits"
    assert len(lines) == 9  # header + 8 slots


def test_attack_static_json(files, capsys):
    capsys.readouterr()
    code = main(
        [
            "attack",
            "--static",
            str(files / "sched_a.json"),
            "--flows",
            str(files / "flows.json"),
            "--victim",
            "4",
            "--hyper-periods",
            "16",
        ]
    )
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["target_flow"] == 2
    assert doc["estimated_hyper_period"] == 8
    assert doc["success_rate"] == 1.0
    assert [1, 2] in doc["plan"]


def test_attack_pool_lowers_success(files, capsys):
    pool_dir = _make_pool(files)
    capsys.readouterr()
    code = main(
        [
            "attack",
            "--pool",
            str(pool_dir),
            "--flows",
            str(files / "flows.json"),
            "--victim",
            "4",
            "--hyper-periods",
            "50",
            "--seed",
            "9",
        ]
    )
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert 0.0 <= doc["success_rate"] <= 1.0


def test_generate_then_schedule(tmp_path, capsys):
    topo = tmp_path / "t.json"
    flows = tmp_path / "f.json"
    code = main(
        [
            "generate",
            "--nodes",
            "20",
            "--flow-count",
            "4",
            "--hyper-period",
            "64",
            "--seed",
            "5",
            "--out-topology",
            str(topo),
            "--out-flows",
            str(flows),
        ]
    )
    assert code == 0
    out = tmp_path / "base.json"
    code = main(
        ["schedule-base", "--topology", str(topo), "--flows", str(flows), "--out", str(out)]
    )
    assert code == 0
    assert main(["validate", str(out), str(flows), str(topo)]) == 0


def test_sweep_writes_csv(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "profile": "A",
                "nodes": 12,
                "flows": [3],
                "channels": [2],
                "hyper_period": 32,
                "alpha": 0.5,
                "pool_size": 4,
                "instances": 2,
                "seed": 7,
                "attack_hyper_periods": 40,
            }
        )
    )
    out = tmp_path / "results.csv"
    code = main(["sweep", "--config", str(cfg), "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("profile,")
    assert len(lines) == 3  # header + 2 instance rows


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
