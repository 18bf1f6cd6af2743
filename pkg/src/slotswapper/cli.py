"""Command-line front end.

One subcommand per pipeline stage, so the whole protocol can be driven from
a shell: generate a topology and workload, build the base schedule, grow a
randomized pool, replay the selection stream, score entropy, run the jammer,
or sweep a whole parameter grid to CSV.

Exit codes: 0 success, 1 validation violations found, 2 on any domain error
(infeasible workload, malformed file, oversized exact-entropy instance).
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import random
import sys

from . import __version__
from .adversary import estimate_hyper_period, jam_success_rate, make_plan, observe
from .entropy import (
    empirical_distribution,
    schedule_entropy_exact,
    schedule_entropy_upper,
    slot_entropy_upper,
)
from .errors import SlotSwapperError
from .experiment import ExperimentConfig, run_experiment, write_results
from .feasibility import validate
from .formats import (
    load_flows,
    load_pool,
    load_schedule,
    load_topology,
    save_flows,
    save_pool,
    save_schedule,
    save_topology,
)
from .model import build_conflict_list
from .protocol import ScheduleSelector, build_pool, select_schedule
from .scheduler import generate_base
from .topology import DEFAULT_PERIODS, generate_flows, generate_topology


def _cmd_validate(args) -> int:
    schedule = load_schedule(args.schedule)
    flows = load_flows(args.flows)
    graph = load_topology(args.topology)
    reports = validate(schedule, flows, build_conflict_list(graph))
    if not reports:
        print("ok")
        return 0
    for r in reports:
        print(f"{r.kind}: {r.message}")
    return 1


def _cmd_schedule_base(args) -> int:
    flows = load_flows(args.flows)
    load_topology(args.topology)  # existence and format check; routes carry the graph info
    schedule = generate_base(flows, args.channels)
    save_schedule(schedule, args.out)
    print(f"wrote {schedule.placed_count} transmissions over {schedule.hyper_period} slots to {args.out}")
    return 0


def _cmd_randomize(args) -> int:
    base = load_schedule(args.base)
    flows = load_flows(args.flows)
    graph = load_topology(args.topology)
    pool = build_pool(base, flows, build_conflict_list(graph), args.count, args.seed)
    save_pool(pool, args.out)
    print(f"wrote base plus {args.count} randomized schedules to {args.out}")
    return 0


def _cmd_select(args) -> int:
    pool = load_pool(args.pool)
    for h in range(1, args.hyper_periods + 1):
        print(select_schedule(pool, args.seed, h))
    return 0


def _cmd_entropy(args) -> int:
    pool = load_pool(args.pool)
    dist = empirical_distribution(pool)
    print(f"upper bound: {schedule_entropy_upper(dist):.6f} bits")
    if args.exact:
        print(f"exact: {schedule_entropy_exact(pool):.6f} bits")
    if args.per_slot:
        with open(args.per_slot, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["slot", "bits"])
            for slot in range(1, pool.hyper_period + 1):
                writer.writerow([slot, f"{slot_entropy_upper(dist, slot):.6f}"])
        print(f"per-slot entropy written to {args.per_slot}")
    return 0


def _cmd_attack(args) -> int:
    flows = load_flows(args.flows)
    if args.pool:
        source = load_pool(args.pool)
        selector = ScheduleSelector(seed=args.seed)
    else:
        source = load_schedule(args.static)
        selector = None

    target = args.target_flow
    if target is None:
        touching = sorted(
            f.id for f in flows.flows if any(e.touches(args.victim) for e in f.route)
        )
        if not touching:
            raise SlotSwapperError(f"no flow passes node {args.victim}")
        target = touching[0]

    trace = observe(source, selector, args.hyper_periods, args.victim)
    estimate = estimate_hyper_period(trace)
    result = {
        "victim": args.victim,
        "target_flow": target,
        "observed_hyper_periods": args.hyper_periods,
        "estimated_hyper_period": estimate,
        "plan": [],
        "success_rate": 0.0,
    }
    if estimate is not None:
        plan = make_plan(trace, estimate, target)
        result["plan"] = sorted([s, c] for s, c in plan.cells)
        result["success_rate"] = jam_success_rate(
            plan, source, flows, selector, args.hyper_periods, args.victim
        )
    print(json.dumps(result, indent=2))
    return 0


def _cmd_sweep(args) -> int:
    config = ExperimentConfig.from_json(args.config)
    if args.workers is not None:
        config = dataclasses.replace(config, workers=args.workers)
    rows = run_experiment(config)
    write_results(rows, args.out)
    skipped = sum(1 for r in rows if r["status"] != "ok")
    print(f"wrote {len(rows)} rows to {args.out} ({skipped} skipped)")
    return 0


def _cmd_generate(args) -> int:
    rng = random.Random(args.seed)
    graph = generate_topology(args.nodes, args.degree_min, args.degree_max, rng)
    periods = tuple(p for p in DEFAULT_PERIODS if args.hyper_period % p == 0) or (
        args.hyper_period,
    )
    flows = generate_flows(graph, args.flow_count, args.alpha, rng, periods=periods)
    save_topology(graph, args.out_topology)
    save_flows(flows, args.out_flows)
    print(
        f"wrote {len(graph.edges)}-edge topology to {args.out_topology} "
        f"and {args.flow_count} flows to {args.out_flows}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slotswapper",
        description="schedule randomization for real-time TDMA mesh networks",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a schedule against its flow set")
    p.add_argument("schedule", help="schedule file (.json or .csv)")
    p.add_argument("flows", help="flow set file")
    p.add_argument("topology", help="topology file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("schedule-base", help="build the deterministic base schedule")
    p.add_argument("--topology", required=True, help="topology file")
    p.add_argument("--flows", required=True, help="flow set file")
    p.add_argument("--channels", type=int, default=2, help="channel count")
    p.add_argument("--out", required=True, help="output schedule file (.json or .csv)")
    p.set_defaults(func=_cmd_schedule_base)

    p = sub.add_parser("randomize", help="grow a pool of randomized schedules")
    p.add_argument("--base", required=True, help="base schedule file")
    p.add_argument("--flows", required=True, help="flow set file")
    p.add_argument("--topology", required=True, help="topology file")
    p.add_argument("--count", type=int, required=True, help="number of randomized variants")
    p.add_argument("--seed", type=int, required=True, help="randomization seed")
    p.add_argument("--out", required=True, help="output pool directory")
    p.set_defaults(func=_cmd_randomize)

    p = sub.add_parser("select", help="print the per-hyper-period schedule indices")
    p.add_argument("--pool", required=True, help="pool directory")
    p.add_argument("--seed", type=int, required=True, help="selection seed")
    p.add_argument("--hyper-periods", type=int, required=True, help="number of draws")
    p.set_defaults(func=_cmd_select)

    p = sub.add_parser("entropy", help="measure schedule unpredictability over a pool")
    p.add_argument("--pool", required=True, help="pool directory")
    p.add_argument("--exact", action="store_true", help="also compute exact joint entropy")
    p.add_argument("--per-slot", help="write per-slot entropy CSV to this path")
    p.set_defaults(func=_cmd_entropy)

    p = sub.add_parser("attack", help="simulate the schedule-inferring jammer")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pool", help="pool directory (randomized defense)")
    group.add_argument("--static", help="single schedule file (no defense)")
    p.add_argument("--flows", required=True, help="flow set file (attack ground truth)")
    p.add_argument("--victim", type=int, required=True, help="node the attacker camps on")
    p.add_argument("--hyper-periods", type=int, required=True, help="observation/evaluation length")
    p.add_argument("--target-flow", type=int, help="flow id to disrupt (default: lowest through victim)")
    p.add_argument("--seed", type=int, default=0, help="selection seed for pool sources")
    p.set_defaults(func=_cmd_attack)

    p = sub.add_parser("sweep", help="run a parameter-grid experiment to CSV")
    p.add_argument("--config", required=True, help="JSON config file")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--workers", type=int, help="override worker count from the config")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("generate", help="generate a random topology and flow set")
    p.add_argument("--nodes", type=int, default=100, help="node count")
    p.add_argument("--degree-min", type=int, default=2, help="degree floor")
    p.add_argument("--degree-max", type=int, default=4, help="degree cap")
    p.add_argument("--flow-count", type=int, default=10, help="number of flows")
    p.add_argument("--alpha", type=float, default=0.4, help="sensor pool fraction")
    p.add_argument("--hyper-period", type=int, default=1024, help="target hyper-period")
    p.add_argument("--seed", type=int, default=0, help="generation seed")
    p.add_argument("--out-topology", required=True, help="output topology file")
    p.add_argument("--out-flows", required=True, help="output flow set file")
    p.set_defaults(func=_cmd_generate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SlotSwapperError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
