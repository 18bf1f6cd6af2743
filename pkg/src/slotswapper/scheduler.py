"""Deterministic base-schedule construction.

Earliest-deadline-first list scheduling over the hyper-period: each slot, the
released instances whose next hop is ready (predecessor placed in an earlier
slot) compete in (deadline, flow id) order; a hop places on the lowest unused
channel unless some already-placed transmission of the slot shares one of its
nodes, in which case it waits for a later slot. There is no backtracking; a
laxity check turns guaranteed misses into an early, slot-attributed error.

The result is a pure function of the flow set and channel count, which makes
it a reproducible anchor for the randomization pool.
"""
from __future__ import annotations

from .errors import InfeasibleScheduleError
from .model import FlowSet, Schedule, Transmission


def generate_base(flows: FlowSet, channel_count: int) -> Schedule:
    """Build a feasible schedule, or raise InfeasibleScheduleError.

    Args:
        flows: flow set to place; defines the hyper-period.
        channel_count: parallel channels per slot.

    Raises:
        InfeasibleScheduleError: some instance cannot meet its deadline under
            this (greedy, non-backtracking) policy.
    """
    hp = flows.hyper_period
    schedule = Schedule(hp, channel_count)
    instances = list(flows.iter_instances())
    flow_of = {fi: flows.by_id(fi.flow_id) for fi in instances}
    next_hop = {fi: 1 for fi in instances}
    last_slot = {fi: 0 for fi in instances}

    for slot in range(1, hp + 1):
        for fi in instances:
            flow = flow_of[fi]
            remaining = flow.hops - next_hop[fi] + 1
            if remaining <= 0 or fi.release > slot:
                continue
            if fi.deadline - slot + 1 < remaining:
                raise InfeasibleScheduleError(
                    f"flow {fi.flow_id} instance {fi.index} cannot fit {remaining} "
                    f"remaining hops before deadline {fi.deadline} (at slot {slot})",
                    slot=slot,
                )
        ready = [
            fi
            for fi in instances
            if next_hop[fi] <= flow_of[fi].hops
            and fi.release <= slot
            and last_slot[fi] < slot
        ]
        ready.sort(key=lambda fi: (fi.deadline, fi.flow_id))
        slot_edges = []
        free_channel = 1
        for fi in ready:
            if free_channel > channel_count:
                break
            flow = flow_of[fi]
            edge = flow.route[next_hop[fi] - 1]
            if any(edge.shares_endpoint(e) for e in slot_edges):
                continue
            schedule.place(
                slot, free_channel, Transmission(fi.flow_id, fi.index, next_hop[fi], edge)
            )
            slot_edges.append(edge)
            free_channel += 1
            next_hop[fi] += 1
            last_slot[fi] = slot

    for fi in instances:
        if next_hop[fi] <= flow_of[fi].hops:
            raise InfeasibleScheduleError(
                f"flow {fi.flow_id} instance {fi.index} still has unplaced hops "
                f"at the end of the hyper-period",
                slot=hp,
            )
    return schedule
