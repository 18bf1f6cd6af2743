#!/usr/bin/env python3
"""Time the randomization kernels against each other.

Builds one experiment-scale instance per channel count (100-node mesh,
20 flows, 1024-slot hyper-period) and times full randomization passes on
the compiled kernel and the pure-Python twin. Both run the exact same
draws, so the numbers differ only in interpreter overhead.

Usage: python benchmarks/bench_backends.py [--passes N] [--seed S]
"""
import argparse
import random
import time
from dataclasses import replace

from slotswapper._kernels import swap_py
from slotswapper.model import FlowSet, build_conflict_list
from slotswapper.randomizer import _build_state
from slotswapper.scheduler import generate_base
from slotswapper.topology import generate_flows, generate_topology

try:
    from slotswapper._kernels import swap_cy
except ImportError:
    swap_cy = None

HP = 1024


def build_instance(m: int, seed: str):
    for attempt in range(10):
        rng = random.Random(f"{seed}/{m}/{attempt}")
        graph = generate_topology(100, 2, 4, rng)
        flows = generate_flows(graph, 20, 0.4, rng)
        if flows.hyper_period != HP:
            pinned = replace(flows.flows[0], period=HP, deadline=HP)
            flows = FlowSet((pinned,) + flows.flows[1:])
        try:
            base = generate_base(flows, m)
        except Exception:
            continue
        return base, flows, build_conflict_list(graph)
    raise RuntimeError(f"no schedulable instance for m={m}")


def time_kernel(kernel, state0, passes: int, seed: int) -> float:
    master = random.Random(seed)
    start = time.perf_counter()
    for _ in range(passes):
        child = random.Random(master.getrandbits(64))
        state = state0.clone()
        kernel(state, child.randrange)
    return (time.perf_counter() - start) / passes


def main() -> int:
    parser = argparse.ArgumentParser(description="randomization kernel benchmark")
    parser.add_argument("--passes", type=int, default=50, help="passes per measurement")
    parser.add_argument("--seed", type=int, default=0, help="draw seed")
    args = parser.parse_args()

    print(f"{'m':>3} {'transmissions':>14} {'python':>12} {'compiled':>12} {'speedup':>9}")
    for m in (1, 2, 4):
        base, flows, conflicts = build_instance(m, "bench")
        state0, _ = _build_state(base, flows, conflicts)
        txs = state0.tx_slot.shape[0]
        py = time_kernel(swap_py.run_pass, state0, args.passes, args.seed)
        if swap_cy is None:
            print(f"{m:>3} {txs:>14} {py * 1e3:>10.2f}ms {'n/a':>12} {'n/a':>9}")
            continue
        cy = time_kernel(swap_cy.run_pass, state0, args.passes, args.seed)
        print(
            f"{m:>3} {txs:>14} {py * 1e3:>10.2f}ms {cy * 1e3:>10.2f}ms {py / cy:>8.1f}x"
        )
    if swap_cy is None:
        print("compiled kernel unavailable; install with Cython to compare")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
