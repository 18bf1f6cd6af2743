"""Parameter sweeps: topology profile x flow count x channel count grids.

Each grid cell draws its own deterministic random stream from the sweep seed,
builds a topology and workload, schedules it, grows a randomization pool,
and scores unpredictability (upper-bound entropy over the pool) plus a
static-knowledge jammer (plan recorded from the base schedule, replayed
against the switching pool). Every generated schedule passes a feasibility
gate inline; a gate failure aborts the sweep because it would invalidate
every downstream number.

Cells whose topology, routing, or base schedule cannot exist are recorded as
skipped rows rather than aborting, since infeasibility of a random workload
is an expected outcome, not an error.
"""
from __future__ import annotations

import csv
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterator, Sequence, Union

from .adversary import ScheduleSelector, jam_success_rate, make_plan, observe
from .entropy import empirical_distribution, schedule_entropy_upper
from .errors import DegreeInfeasibleError, InfeasibleScheduleError, RouteInfeasibleError
from .feasibility import validate
from .model import FlowSet, build_conflict_list
from .protocol import SchedulePool
from .randomizer import _build_state, _rebuild_schedule, state_violation
from .scheduler import generate_base
from .topology import DEFAULT_PERIODS, generate_flows, generate_topology
from ._kernels import run_pass

PROFILES = {"A": (2, 4), "B": (3, 6), "C": (3, 8)}

RESULT_COLUMNS = [
    "profile",
    "n_flows",
    "m",
    "instance",
    "entropy_bits",
    "jam_success",
    "runtime_ms",
    "status",
]


@dataclass(frozen=True)
class ExperimentConfig:
    profile: str
    nodes: int = 100
    flows: tuple[int, ...] = (10, 20, 30, 40)
    channels: tuple[int, ...] = (1, 2, 3, 4)
    hyper_period: int = 1024
    alpha: float = 0.4
    pool_size: int = 1000
    instances: int = 20
    seed: int = 0
    workers: int = 1
    attack_hyper_periods: int = 200

    def __post_init__(self):
        if self.profile not in PROFILES:
            raise ValueError(f"unknown profile {self.profile!r}; expected one of {sorted(PROFILES)}")
        if self.instances < 1 or self.pool_size < 1 or self.workers < 1:
            raise ValueError("instances, pool_size and workers must be >= 1")
        if self.hyper_period < 1 or self.attack_hyper_periods < 1:
            raise ValueError("hyper_period and attack_hyper_periods must be >= 1")
        if not self.flows or not self.channels:
            raise ValueError("flows and channels grids must be nonempty")

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        known = {f.name for f in cls.__dataclass_fields__.values()}  # type: ignore[attr-defined]
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        doc = dict(doc)
        for key in ("flows", "channels"):
            if key in doc:
                doc[key] = tuple(doc[key])
        return cls(**doc)

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> "ExperimentConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def cells(self) -> Iterator[tuple[int, int, int]]:
        for n_flows in self.flows:
            for m in self.channels:
                for instance in range(1, self.instances + 1):
                    yield (n_flows, m, instance)


def _cell_rng(config: ExperimentConfig, n_flows: int, m: int, instance: int) -> random.Random:
    return random.Random(f"{config.seed}/{config.profile}/{n_flows}/{m}/{instance}")


def _pin_hyper_period(flows: FlowSet, hyper_period: int) -> FlowSet:
    if flows.hyper_period == hyper_period:
        return flows
    pinned = replace(flows.flows[0], period=hyper_period, deadline=hyper_period)
    return FlowSet((pinned,) + flows.flows[1:])


def _gated_pool(base, flows, conflicts, count: int, seed: int) -> SchedulePool:
    """build_pool with the inline feasibility gate on every member."""
    master = random.Random(seed)
    state0, txs = _build_state(base, flows, conflicts)
    problem = state_violation(state0)
    if problem:
        raise RuntimeError(f"base schedule failed the feasibility gate: {problem}")
    members = [base.copy()]
    for i in range(count):
        child = random.Random(master.getrandbits(64))
        state = state0.clone()
        run_pass(state, child.randrange)
        problem = state_violation(state)
        if problem:
            raise RuntimeError(
                f"randomized schedule {i + 1} failed the feasibility gate: {problem}"
            )
        members.append(_rebuild_schedule(state, txs))
    return SchedulePool(tuple(members), seed=seed)


def run_cell(config: ExperimentConfig, n_flows: int, m: int, instance: int) -> dict:
    """One grid cell: build, randomize, gate, and score. Returns a result row."""
    rng = _cell_rng(config, n_flows, m, instance)
    row = {
        "profile": config.profile,
        "n_flows": n_flows,
        "m": m,
        "instance": instance,
        "entropy_bits": None,
        "jam_success": None,
        "runtime_ms": None,
        "status": "ok",
    }
    start = time.perf_counter()
    try:
        degree_min, degree_max = PROFILES[config.profile]
        graph = generate_topology(config.nodes, degree_min, degree_max, rng)
        periods = tuple(p for p in DEFAULT_PERIODS if config.hyper_period % p == 0)
        if not periods:
            periods = (config.hyper_period,)
        flows = generate_flows(graph, n_flows, config.alpha, rng, periods=periods)
        flows = _pin_hyper_period(flows, config.hyper_period)
        conflicts = build_conflict_list(graph)
        base = generate_base(flows, m)
    except DegreeInfeasibleError:
        row["status"] = "degree_infeasible"
        return row
    except RouteInfeasibleError:
        row["status"] = "route_infeasible"
        return row
    except InfeasibleScheduleError:
        row["status"] = "infeasible"
        return row

    pool = _gated_pool(base, flows, conflicts, config.pool_size, rng.getrandbits(64))
    # spot-check the inline gate against the reference validator
    for spot in (pool[0], pool[1]):
        if validate(spot, flows, conflicts):
            raise RuntimeError("feasibility gate and reference validator disagree")

    row["entropy_bits"] = schedule_entropy_upper(empirical_distribution(pool))

    victim = flows.by_id(1).source
    trace = observe(base, None, 1, victim)
    plan = make_plan(trace, config.hyper_period, target_flow=1)
    row["jam_success"] = jam_success_rate(
        plan,
        pool,
        flows,
        ScheduleSelector(seed=rng.getrandbits(32)),
        config.attack_hyper_periods,
        victim,
    )
    row["runtime_ms"] = (time.perf_counter() - start) * 1e3
    return row


def _run_cell_job(args: tuple) -> dict:
    return run_cell(*args)


def run_experiment(config: ExperimentConfig) -> list[dict]:
    """All grid cells, in deterministic (flows, channels, instance) order."""
    jobs = [(config, n, m, i) for n, m, i in config.cells()]
    if config.workers == 1:
        return [run_cell(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=config.workers) as executor:
        return list(executor.map(_run_cell_job, jobs))


def write_results(rows: Sequence[dict], path: Union[str, Path]) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=RESULT_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if row.get(k) is None else row[k]) for k in RESULT_COLUMNS})
