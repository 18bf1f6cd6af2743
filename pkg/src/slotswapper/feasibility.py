"""Schedule feasibility checks.

A schedule is feasible for a flow set when every hop of every flow instance is
placed exactly once inside its release/deadline window, consecutive hops of an
instance occupy strictly increasing slots, no two transmissions in one slot
share an endpoint node, and no cell holds more than one transmission.

Every check is pure: it reads the schedule and returns a (possibly empty) list
of reports in a deterministic order. `validate` is the aggregate gate; an
empty result means feasible.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import ConflictList, FlowSet, Schedule, deadline_slot, release_slot

TRANSMISSION_CONFLICT = "TransmissionConflict"
CHANNEL_COLLISION = "ChannelCollision"
DEADLINE_MISS = "DeadlineMiss"
RELEASE_VIOLATION = "ReleaseViolation"
HOP_ORDER_VIOLATION = "HopOrderViolation"
MISSING_HOP = "MissingHop"


@dataclass(frozen=True)
class ViolationReport:
    kind: str
    message: str
    slot: Optional[int] = None
    channel: Optional[int] = None
    flow_id: Optional[int] = None
    instance: Optional[int] = None
    hop: Optional[int] = None


def check_no_conflict(schedule: Schedule) -> list[ViolationReport]:
    """One report per pair of same-slot transmissions sharing an endpoint."""
    out = []
    for slot in range(1, schedule.hyper_period + 1):
        cells = schedule.slot_cells(slot)
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                ca, ta = cells[i]
                cb, tb = cells[j]
                if ta.edge.shares_endpoint(tb.edge):
                    out.append(
                        ViolationReport(
                            TRANSMISSION_CONFLICT,
                            f"slot {slot}: {ta.edge.sender}->{ta.edge.receiver} (ch {ca}) "
                            f"and {tb.edge.sender}->{tb.edge.receiver} (ch {cb}) share a node",
                            slot=slot,
                            channel=ca,
                            flow_id=ta.flow_id,
                            instance=ta.instance,
                            hop=ta.hop,
                        )
                    )
    return out


def check_no_collision(schedule: Schedule) -> list[ViolationReport]:
    """One report per quarantined duplicate (slot, channel) row.

    The grid itself holds at most one transmission per cell, so collisions can
    only enter through deserialized files; the loader parks such rows in
    `extra_cells`. Quarantined rows take part in no other check.
    """
    out = []
    for slot, channel, tx in schedule.extra_cells:
        out.append(
            ViolationReport(
                CHANNEL_COLLISION,
                f"cell ({slot}, {channel}) holds more than one transmission",
                slot=slot,
                channel=channel,
                flow_id=tx.flow_id,
                instance=tx.instance,
                hop=tx.hop,
            )
        )
    return out


def check_deadlines(schedule: Schedule, flows: FlowSet) -> list[ViolationReport]:
    """Release and deadline window reports for every placed hop."""
    out = []
    for flow in flows.flows:
        for j in range(1, flows.instance_count(flow) + 1):
            rel = release_slot(flow, j)
            dead = deadline_slot(flow, j)
            for hop in range(1, flow.hops + 1):
                cell = schedule.locate(flow.id, j, hop)
                if cell is None:
                    continue
                slot, channel = cell
                if slot < rel:
                    out.append(
                        ViolationReport(
                            RELEASE_VIOLATION,
                            f"flow {flow.id} instance {j} hop {hop} at slot {slot} "
                            f"precedes release {rel}",
                            slot=slot,
                            channel=channel,
                            flow_id=flow.id,
                            instance=j,
                            hop=hop,
                        )
                    )
                if slot > dead:
                    out.append(
                        ViolationReport(
                            DEADLINE_MISS,
                            f"flow {flow.id} instance {j} hop {hop} at slot {slot} "
                            f"exceeds deadline {dead}",
                            slot=slot,
                            channel=channel,
                            flow_id=flow.id,
                            instance=j,
                            hop=hop,
                        )
                    )
    return out


def check_flow_order(schedule: Schedule, flows: FlowSet) -> list[ViolationReport]:
    """Hop completeness and strict slot ordering within each instance."""
    out = []
    for flow in flows.flows:
        for j in range(1, flows.instance_count(flow) + 1):
            slots: list[Optional[int]] = []
            for hop in range(1, flow.hops + 1):
                cell = schedule.locate(flow.id, j, hop)
                if cell is None:
                    out.append(
                        ViolationReport(
                            MISSING_HOP,
                            f"flow {flow.id} instance {j} hop {hop} is not scheduled",
                            flow_id=flow.id,
                            instance=j,
                            hop=hop,
                        )
                    )
                    slots.append(None)
                else:
                    tx = schedule.cell(*cell)
                    assert tx is not None
                    if tx.edge != flow.route[hop - 1]:
                        out.append(
                            ViolationReport(
                                MISSING_HOP,
                                f"flow {flow.id} instance {j} hop {hop} carries edge "
                                f"{tx.edge.sender}->{tx.edge.receiver}, expected "
                                f"{flow.route[hop - 1].sender}->{flow.route[hop - 1].receiver}",
                                slot=cell[0],
                                channel=cell[1],
                                flow_id=flow.id,
                                instance=j,
                                hop=hop,
                            )
                        )
                    slots.append(cell[0])
            for hop in range(2, flow.hops + 1):
                a, b = slots[hop - 2], slots[hop - 1]
                if a is not None and b is not None and b <= a:
                    out.append(
                        ViolationReport(
                            HOP_ORDER_VIOLATION,
                            f"flow {flow.id} instance {j}: hop {hop} at slot {b} does not "
                            f"follow hop {hop - 1} at slot {a}",
                            slot=b,
                            flow_id=flow.id,
                            instance=j,
                            hop=hop,
                        )
                    )
    return out


def validate(
    schedule: Schedule, flows: FlowSet, conflicts: ConflictList
) -> list[ViolationReport]:
    """Aggregate feasibility gate; an empty list means the schedule is feasible.

    Args:
        schedule: grid to check; must span the flow set's hyper-period.
        flows: the flow set the schedule claims to serve.
        conflicts: link conflict structure of the underlying graph (kept in
            the signature so callers hand over the same object the swap layer
            uses; endpoint sharing itself is edge-local).

    Returns:
        All violation reports, collisions first, then conflicts, window
        violations, and ordering/completeness, each group in scan order.

    Raises:
        ValueError: the grid holds a transmission naming a flow, instance, or
            hop that the flow set does not declare. That is a caller
            mismatch, not a schedule property, so it is not a report.
    """
    del conflicts  # endpoint sharing is intrinsic to the edges themselves
    for slot, channel, tx in schedule.occupied():
        try:
            flow = flows.by_id(tx.flow_id)
        except KeyError:
            raise ValueError(f"cell ({slot}, {channel}): unknown flow {tx.flow_id}")
        if not 1 <= tx.instance <= flows.instance_count(flow):
            raise ValueError(
                f"cell ({slot}, {channel}): flow {flow.id} has no instance {tx.instance}"
            )
        if not 1 <= tx.hop <= flow.hops:
            raise ValueError(f"cell ({slot}, {channel}): flow {flow.id} has no hop {tx.hop}")
    reports = check_no_collision(schedule)
    reports += check_no_conflict(schedule)
    reports += check_deadlines(schedule, flows)
    reports += check_flow_order(schedule, flows)
    return reports
