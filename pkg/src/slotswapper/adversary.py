"""Schedule-inferring selective-jamming adversary simulation.

The adversary camps next to a victim node and logs every transmission the
victim takes part in: absolute slot, channel, and the two endpoints (it can
see the air, not flow labels). From a long enough trace of a static schedule
it recovers the hyper-period by folding: the smallest period whose complete
windows all look identical. It then jams the recorded cells and succeeds
against an instance when it hits the instance's first victim-adjacent cell,
cutting the data off before it leaves the victim's neighborhood.

`jam_success_rate` scores a fixed single-placement plan against the live
schedule source with simulator ground truth: the fraction of hyper-periods
in which every instance of the target flow has its first victim-adjacent
cell inside the plan.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .model import FlowSet, Schedule
from .protocol import SchedulePool, ScheduleSelector

Source = Union[Schedule, SchedulePool]


@dataclass(frozen=True)
class ObservationTrace:
    """Victim-adjacent cells seen over a contiguous observation run."""

    victim: int
    total_slots: int
    events: tuple[tuple[int, int, int, int], ...]  # (abs_slot, channel, sender, receiver)


@dataclass(frozen=True)
class AttackPlan:
    """Cells to jam, relative to the attacker's period estimate.

    `target_flow` is the flow whose delivery the attacker wants to stop;
    success is judged against that flow's instances.
    """

    cells: frozenset[tuple[int, int]]  # (slot within period, channel)
    estimated_hyper_period: int
    target_flow: int

    def __post_init__(self):
        if not self.cells:
            raise ValueError("an attack plan needs at least one cell")
        if self.estimated_hyper_period < 1:
            raise ValueError("estimated hyper-period must be positive")


def _schedule_for(source: Source, selector: Optional[ScheduleSelector]) -> Schedule:
    if isinstance(source, Schedule):
        return source
    if selector is None:
        raise ValueError("a pool source needs a selector")
    return source[selector.next_index(source)]


def observe(
    source: Source,
    selector: Optional[ScheduleSelector],
    hyper_periods: int,
    victim: int,
) -> ObservationTrace:
    """Record the victim-adjacent cells of `hyper_periods` consecutive periods.

    A static source (plain schedule) repeats itself; a pool source follows
    the selector, drawing one member per hyper-period exactly like the
    network under observation would.
    """
    if hyper_periods < 1:
        raise ValueError("hyper_periods must be >= 1")
    hp = source.hyper_period
    events = []
    for h in range(hyper_periods):
        schedule = _schedule_for(source, selector)
        for slot, ch, tx in schedule.occupied():
            if tx.edge.touches(victim):
                events.append((h * hp + slot, ch, tx.edge.sender, tx.edge.receiver))
    return ObservationTrace(victim, hyper_periods * hp, tuple(events))


def estimate_hyper_period(trace: ObservationTrace) -> Optional[int]:
    """Smallest period whose complete trace windows are all identical.

    Returns None (unknown) when the trace is empty or no period up to half
    the trace length repeats; a trailing partial window is ignored.
    """
    if not trace.events:
        return None
    for period in range(1, trace.total_slots // 2 + 1):
        windows = trace.total_slots // period
        if windows < 2:
            break
        folded: list[set] = [set() for _ in range(windows)]
        for abs_slot, ch, snd, rcv in trace.events:
            w = (abs_slot - 1) // period
            if w >= windows:
                continue  # partial tail
            folded[w].add(((abs_slot - 1) % period + 1, ch, snd, rcv))
        if all(f == folded[0] for f in folded[1:]):
            return period
    return None


def make_plan(trace: ObservationTrace, period: int, target_flow: int) -> AttackPlan:
    """Single-placement plan: jam the cells of the first complete window."""
    cells = frozenset(
        ((abs_slot - 1) % period + 1, ch)
        for abs_slot, ch, _, _ in trace.events
        if abs_slot <= period
    )
    return AttackPlan(cells=cells, estimated_hyper_period=period, target_flow=target_flow)


def _first_victim_cells(
    schedule: Schedule, flows: FlowSet, target_flow: int, victim: int
) -> Optional[dict[int, tuple[int, int]]]:
    """instance -> earliest victim-adjacent cell of the target flow, or None
    when some instance never touches the victim (unjammable by this model)."""
    flow = flows.by_id(target_flow)
    out: dict[int, tuple[int, int]] = {}
    for j in range(1, flows.instance_count(flow) + 1):
        best = None
        for hop in range(1, flow.hops + 1):
            if not flow.route[hop - 1].touches(victim):
                continue
            cell = schedule.locate(target_flow, j, hop)
            if cell is not None and (best is None or cell[0] < best[0]):
                best = cell
        if best is None:
            return None
        out[j] = best
    return out


def jam_success_rate(
    plan: AttackPlan,
    source: Source,
    flows: FlowSet,
    selector: Optional[ScheduleSelector],
    hyper_periods: int,
    victim: int,
) -> float:
    """Fraction of hyper-periods the plan fully disrupts the target flow.

    A hyper-period counts as a success when every instance of the target
    flow has its first victim-adjacent cell inside the plan. Ground truth
    comes from the simulated schedules, not from the trace.
    """
    if hyper_periods < 1:
        raise ValueError("hyper_periods must be >= 1")
    cache: dict[int, Optional[dict[int, tuple[int, int]]]] = {}

    def cells_of(schedule: Schedule):
        key = id(schedule)
        if key not in cache:
            cache[key] = _first_victim_cells(schedule, flows, plan.target_flow, victim)
        return cache[key]

    hits = 0
    for _ in range(hyper_periods):
        schedule = _schedule_for(source, selector)
        firsts = cells_of(schedule)
        if firsts is not None and all(cell in plan.cells for cell in firsts.values()):
            hits += 1
    return hits / hyper_periods
