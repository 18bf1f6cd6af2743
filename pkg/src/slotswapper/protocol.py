"""Schedule pool management and online per-hyper-period selection.

A pool is the base schedule plus `count` randomized variants. At runtime each
node draws the pool index for hyper-period h from a PRNG stream derived from
a shared seed, so all nodes switch schedules in lockstep without exchanging
messages: the draw is a pure function of (seed, h) and nodes can join
mid-stream and still agree.

`node_slot_table` projects one schedule onto a single node, which is what a
constrained mote actually stores; `footprint` and `pool_capacity` size pools
against a node's table memory.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Literal

from .model import ConflictList, FlowSet, Schedule
from .randomizer import _build_state, _rebuild_schedule
from ._kernels import run_pass


@dataclass(frozen=True)
class SchedulePool:
    """Immutable ordered collection of same-shape schedules; index 0 is the base."""

    schedules: tuple[Schedule, ...]
    seed: int | None = None

    def __post_init__(self):
        if not self.schedules:
            raise ValueError("a pool holds at least the base schedule")
        hp = self.schedules[0].hyper_period
        m = self.schedules[0].channel_count
        for s in self.schedules:
            if s.hyper_period != hp or s.channel_count != m:
                raise ValueError("pool schedules must share hyper-period and channel count")

    def __len__(self) -> int:
        return len(self.schedules)

    def __getitem__(self, i: int) -> Schedule:
        return self.schedules[i]

    def __iter__(self) -> Iterator[Schedule]:
        return iter(self.schedules)

    @property
    def hyper_period(self) -> int:
        return self.schedules[0].hyper_period

    @property
    def channel_count(self) -> int:
        return self.schedules[0].channel_count


def build_pool(
    base: Schedule,
    flows: FlowSet,
    conflicts: ConflictList,
    count: int,
    seed: int,
) -> SchedulePool:
    """Base plus `count` independently randomized variants (pool size count+1).

    Each variant runs one full randomization pass over the base with its own
    child stream drawn from `seed`, so pools are reproducible and variants
    are statistically independent of each other.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    master = random.Random(seed)
    state0, txs = _build_state(base, flows, conflicts)
    out = [base.copy()]
    for _ in range(count):
        child = random.Random(master.getrandbits(64))
        state = state0.clone()
        run_pass(state, child.randrange)
        out.append(_rebuild_schedule(state, txs))
    return SchedulePool(tuple(out), seed=seed)


def select_schedule(pool: SchedulePool, seed: int, hyper_period_index: int) -> int:
    """Pool index for hyper-period `hyper_period_index` (1-indexed).

    Pure function of (pool size, seed, index): every node evaluates it
    locally and lands on the same schedule with no coordination.
    """
    if hyper_period_index < 1:
        raise ValueError("hyper-period indices are 1-indexed")
    return random.Random(f"{seed}:{hyper_period_index}").randrange(len(pool))


class ScheduleSelector:
    """Stateful view of the selection stream: one draw per hyper-period."""

    def __init__(self, seed: int, first_hyper_period: int = 1):
        if first_hyper_period < 1:
            raise ValueError("hyper-period indices are 1-indexed")
        self.seed = seed
        self.next_hyper_period = first_hyper_period

    def next_index(self, pool: SchedulePool) -> int:
        idx = select_schedule(pool, self.seed, self.next_hyper_period)
        self.next_hyper_period += 1
        return idx

    def next_schedule(self, pool: SchedulePool) -> Schedule:
        return pool[self.next_index(pool)]


Role = Literal["send", "receive"]


@dataclass(frozen=True)
class NodeSlotTable:
    """One node's projection of one schedule: the cells it takes part in."""

    node: int
    entries: tuple[tuple[int, int, Role, int], ...]  # (slot, channel, role, peer)


def node_slot_table(schedule: Schedule, node: int) -> NodeSlotTable:
    entries = []
    for slot, ch, tx in schedule.occupied():
        if tx.edge.sender == node:
            entries.append((slot, ch, "send", tx.edge.receiver))
        elif tx.edge.receiver == node:
            entries.append((slot, ch, "receive", tx.edge.sender))
    return NodeSlotTable(node, tuple(entries))


def footprint(pool: SchedulePool, node: int, entry_factor: int = 2) -> int:
    """Slot-info entries `node` must store for the whole pool.

    `entry_factor` counts stored records per scheduled cell (dedicated plus
    retry entry by default).
    """
    if entry_factor < 1:
        raise ValueError("entry_factor must be >= 1")
    return sum(
        len(node_slot_table(s, node).entries) * entry_factor for s in pool
    )


def pool_capacity(capacity: int, entries_per_schedule: int) -> int:
    """Largest pool size whose per-node tables fit in `capacity` entries."""
    if entries_per_schedule < 1:
        raise ValueError("entries_per_schedule must be >= 1")
    if capacity < 0:
        raise ValueError("capacity must be >= 0")
    return capacity // entries_per_schedule
