"""Feasibility-preserving schedule randomization.

One randomization pass walks every flow instance of the hyper-period in tick
order and gives each hop one uniform chance to trade cells with another cell
of its live window. A candidate survives when:

  * the pairwise check passes: on multiple channels the two transmissions'
    edges must not share a node (`tr_conf`); on a single channel the occupant
    must belong to a different flow;
  * both moved transmissions stay inside their release/deadline windows
    (`dead_pr`) and keep strict hop order within their instances (`flow_pr`);
  * neither mover lands in a slot where a non-moving transmission shares one
    of its nodes (`swap_is_safe`).

`eligible_list` exposes the first two layers, which is the classical
candidate set; `sched_gen` additionally applies `swap_is_safe` so every
output schedule passes the full validator. The identity choice (keep the
hop where it is) is always available and is drawn from the same uniform
pick as the real candidates.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from ._kernels import run_pass
from .model import ConflictList, Flow, FlowSet, Schedule, Transmission

Cell = tuple[int, int]


def hop_window(schedule: Schedule, flow: Flow, instance: int, hop: int) -> Cell:
    """Slot range (lb, ub) hop may occupy given its neighbors' current cells."""
    from .model import deadline_slot, release_slot

    if not 1 <= hop <= flow.hops:
        raise ValueError(f"flow {flow.id} has no hop {hop}")
    if hop == 1:
        lb = release_slot(flow, instance)
    else:
        prev = schedule.locate(flow.id, instance, hop - 1)
        if prev is None:
            raise ValueError(f"flow {flow.id} instance {instance} hop {hop - 1} is unplaced")
        lb = prev[0] + 1
    if hop == flow.hops:
        ub = deadline_slot(flow, instance)
    else:
        nxt = schedule.locate(flow.id, instance, hop + 1)
        if nxt is None:
            raise ValueError(f"flow {flow.id} instance {instance} hop {hop + 1} is unplaced")
        ub = nxt[0] - 1
    return (lb, ub)


def _movers(schedule: Schedule, src: Cell, dst: Cell) -> tuple[Transmission, Transmission | None]:
    tx = schedule.cell(*src)
    if tx is None:
        raise ValueError(f"source cell {src} is empty")
    return tx, schedule.cell(*dst)


def tr_conf(schedule: Schedule, src: Cell, dst: Cell, conflicts: ConflictList) -> bool:
    """True when the two cells' transmissions' edges share a node.

    This is the pairwise exclusion test between the mover and the displaced
    occupant; an empty destination never conflicts, and the identity exchange
    conflicts with itself by convention (src == dst is reported True so the
    identity choice is handled separately by `sched_gen`).
    """
    if src == dst:
        return True
    tx, occ = _movers(schedule, src, dst)
    if occ is None:
        return False
    return conflicts.conflicting(tx.edge, occ.edge)


def dead_pr(schedule: Schedule, src: Cell, dst: Cell, flows: FlowSet) -> bool:
    """True when both moved transmissions stay inside their instance windows."""
    from .model import deadline_slot, release_slot

    tx, occ = _movers(schedule, src, dst)
    flow = flows.by_id(tx.flow_id)
    if not release_slot(flow, tx.instance) <= dst[0] <= deadline_slot(flow, tx.instance):
        return False
    if occ is not None:
        oflow = flows.by_id(occ.flow_id)
        if not release_slot(oflow, occ.instance) <= src[0] <= deadline_slot(oflow, occ.instance):
            return False
    return True


def flow_pr(schedule: Schedule, src: Cell, dst: Cell, flows: FlowSet) -> bool:
    """True when both moved transmissions keep strict slot order in their instances.

    Neighbor hops are read at their current cells; the two moved cells are
    assumed to belong to different instances, which any candidate drawn from
    a hop's live window satisfies.
    """

    def ordered(tx: Transmission, new_slot: int) -> bool:
        flow = flows.by_id(tx.flow_id)
        if tx.hop > 1:
            prev = schedule.locate(tx.flow_id, tx.instance, tx.hop - 1)
            if prev is not None and new_slot <= prev[0]:
                return False
        if tx.hop < flow.hops:
            nxt = schedule.locate(tx.flow_id, tx.instance, tx.hop + 1)
            if nxt is not None and new_slot >= nxt[0]:
                return False
        return True

    tx, occ = _movers(schedule, src, dst)
    if not ordered(tx, dst[0]):
        return False
    if occ is not None and not ordered(occ, src[0]):
        return False
    return True


def swap_is_safe(schedule: Schedule, src: Cell, dst: Cell, conflicts: ConflictList) -> bool:
    """True when neither mover would share a node with a non-moving transmission.

    `tr_conf` only compares the two movers with each other; this guard scans
    the rest of both destination slots. It is the extra filter that makes the
    randomization pass feasibility-preserving on multi-channel grids.
    """
    tx, occ = _movers(schedule, src, dst)
    for ch, other in schedule.slot_cells(dst[0]):
        if (dst[0], ch) == dst or (dst[0], ch) == src:
            continue
        if conflicts.conflicting(tx.edge, other.edge):
            return False
    if occ is not None:
        for ch, other in schedule.slot_cells(src[0]):
            if (src[0], ch) == src or (src[0], ch) == dst:
                continue
            if conflicts.conflicting(occ.edge, other.edge):
                return False
    return True


def eligible_list(
    schedule: Schedule,
    src: Cell,
    window: tuple[int, int],
    channel_count: int,
    conflicts: ConflictList,
    flows: FlowSet,
) -> list[Cell]:
    """Swap candidates for the transmission at `src`, ascending (slot, channel).

    A cell of the window qualifies when the pairwise check, the window check,
    and the order check all pass. The source cell itself is excluded. On a
    single channel the pairwise check degenerates to "occupant belongs to a
    different flow", because swapped transmissions never share a slot there.
    """
    if channel_count != schedule.channel_count:
        raise ValueError("channel_count does not match the schedule")
    tx = schedule.cell(*src)
    if tx is None:
        raise ValueError(f"source cell {src} is empty")
    lb, ub = window
    out: list[Cell] = []
    for slot in range(lb, ub + 1):
        for ch in range(1, channel_count + 1):
            dst = (slot, ch)
            if dst == src:
                continue
            occ = schedule.cell(slot, ch)
            if channel_count == 1:
                if occ is not None and occ.flow_id == tx.flow_id:
                    continue
            elif occ is not None and tr_conf(schedule, src, dst, conflicts):
                continue
            if not dead_pr(schedule, src, dst, flows):
                continue
            if not flow_pr(schedule, src, dst, flows):
                continue
            out.append(dst)
    return out


@dataclass
class _SwapState:
    """Array form of one schedule, shaped for the kernels.

    grid maps (slot, channel) to a transmission index or -1; tx_* and the
    per-instance arrays describe the flow structure. Only grid, tx_slot and
    tx_chan mutate during a pass; clone() copies exactly those three.
    """

    hyper_period: int
    channel_count: int
    grid: np.ndarray
    tx_slot: np.ndarray
    tx_chan: np.ndarray
    tx_edge: np.ndarray
    tx_inst: np.ndarray
    tx_hop: np.ndarray
    inst_flow: np.ndarray
    inst_release: np.ndarray
    inst_deadline: np.ndarray
    inst_nhops: np.ndarray
    hop_tx: np.ndarray
    max_hops: int
    visit: np.ndarray
    conflict: np.ndarray
    edge_count: int

    def clone(self) -> "_SwapState":
        out = _SwapState.__new__(_SwapState)
        out.__dict__.update(self.__dict__)
        out.grid = self.grid.copy()
        out.tx_slot = self.tx_slot.copy()
        out.tx_chan = self.tx_chan.copy()
        return out


def _build_state(
    base: Schedule, flows: FlowSet, conflicts: ConflictList
) -> tuple[_SwapState, list[Transmission]]:
    from .model import deadline_slot, release_slot

    hp = flows.hyper_period
    if base.hyper_period != hp:
        raise ValueError("schedule hyper-period does not match the flow set")
    m = base.channel_count

    flow_ord = {f.id: i for i, f in enumerate(flows.sorted_by_id())}
    instances = list(flows.iter_instances())
    inst_index = {(fi.flow_id, fi.index): q for q, fi in enumerate(instances)}
    max_hops = max(f.hops for f in flows.flows)

    edge_index: dict = {}
    for f in flows.flows:
        for e in f.route:
            if e not in edge_index:
                edge_index[e] = len(edge_index)
    E = len(edge_index)
    conflict = np.zeros(E * E, dtype=np.uint8)
    edges = list(edge_index)
    for i, a in enumerate(edges):
        for j, b in enumerate(edges):
            # diagonal included: distinct flows may share a directed edge,
            # and two transmissions on one edge always share its nodes
            if ConflictList.conflicting(a, b):
                conflict[i * E + j] = 1

    txs: list[Transmission] = []
    grid = np.full(hp * m, -1, dtype=np.int32)
    Q = len(instances)
    hop_tx = np.full(Q * max_hops, -1, dtype=np.int32)
    tx_slot, tx_chan, tx_edge, tx_inst, tx_hop = [], [], [], [], []
    for slot, ch, tx in base.occupied():
        flow = flows.by_id(tx.flow_id)
        if tx.edge != flow.route[tx.hop - 1]:
            raise ValueError(f"transmission at ({slot}, {ch}) does not match its route hop")
        t = len(txs)
        txs.append(tx)
        grid[(slot - 1) * m + ch - 1] = t
        q = inst_index[(tx.flow_id, tx.instance)]
        hop_tx[q * max_hops + tx.hop - 1] = t
        tx_slot.append(slot)
        tx_chan.append(ch)
        tx_edge.append(edge_index[tx.edge])
        tx_inst.append(q)
        tx_hop.append(tx.hop)
    for q, fi in enumerate(instances):
        flow = flows.by_id(fi.flow_id)
        for h in range(1, flow.hops + 1):
            if hop_tx[q * max_hops + h - 1] < 0:
                raise ValueError(
                    f"flow {fi.flow_id} instance {fi.index} hop {h} is unplaced; "
                    "randomization requires a complete schedule"
                )

    visit: list[int] = []
    by_id = flows.sorted_by_id()
    for tick in range(1, hp + 1):
        for f in by_id:
            if tick % f.period == 0:
                visit.append(inst_index[(f.id, tick // f.period)])

    i32 = lambda seq: np.asarray(seq, dtype=np.int32)
    state = _SwapState(
        hyper_period=hp,
        channel_count=m,
        grid=grid,
        tx_slot=i32(tx_slot),
        tx_chan=i32(tx_chan),
        tx_edge=i32(tx_edge),
        tx_inst=i32(tx_inst),
        tx_hop=i32(tx_hop),
        inst_flow=i32([flow_ord[fi.flow_id] for fi in instances]),
        inst_release=i32([fi.release for fi in instances]),
        inst_deadline=i32([fi.deadline for fi in instances]),
        inst_nhops=i32([flows.by_id(fi.flow_id).hops for fi in instances]),
        hop_tx=hop_tx,
        max_hops=max_hops,
        visit=i32(visit),
        conflict=conflict,
        edge_count=E,
    )
    del conflicts  # semantics are edge-local; the matrix above is E x E over route edges
    return state, txs


def state_violation(state: _SwapState) -> str | None:
    """Vectorized feasibility re-check of a swap state; None when clean.

    Re-derives every schedule property from the arrays (grid consistency,
    windows, hop order, slot conflicts). Sweeps run it on each generated
    schedule as a cheap inline gate; the object-level validator remains the
    reference oracle and the two are tied together by tests.
    """
    hp, m = state.hyper_period, state.channel_count
    T = state.tx_slot.shape[0]
    flat = (state.tx_slot.astype(np.int64) - 1) * m + state.tx_chan - 1
    if int((state.grid >= 0).sum()) != T or not np.array_equal(
        state.grid[flat], np.arange(T, dtype=np.int32)
    ):
        return "grid and transmission arrays disagree"
    rel = state.inst_release[state.tx_inst]
    dead = state.inst_deadline[state.tx_inst]
    if (state.tx_slot < rel).any():
        return "release violation"
    if (state.tx_slot > dead).any():
        return "deadline miss"
    H = state.max_hops
    hop_grid = state.hop_tx.reshape(-1, H)
    mask = hop_grid >= 0
    slots = np.where(mask, state.tx_slot[np.clip(hop_grid, 0, None)], 0)
    bad_order = mask[:, 1:] & mask[:, :-1] & (slots[:, 1:] <= slots[:, :-1])
    if bad_order.any():
        return "hop order violation"
    grid2 = state.grid.reshape(hp, m)
    E = state.edge_count
    for c1 in range(m):
        for c2 in range(c1 + 1, m):
            t1, t2 = grid2[:, c1], grid2[:, c2]
            both = (t1 >= 0) & (t2 >= 0)
            if not both.any():
                continue
            e1 = state.tx_edge[t1[both]].astype(np.int64)
            e2 = state.tx_edge[t2[both]].astype(np.int64)
            if state.conflict[e1 * E + e2].any():
                return "transmission conflict"
    return None


def _rebuild_schedule(state: _SwapState, txs: list[Transmission]) -> Schedule:
    out = Schedule(state.hyper_period, state.channel_count)
    for t, tx in enumerate(txs):
        out.place(int(state.tx_slot[t]), int(state.tx_chan[t]), tx)
    return out


def _coerce_rng(rng: "random.Random | int") -> random.Random:
    return random.Random(rng) if isinstance(rng, int) else rng


def sched_gen(
    base: Schedule,
    flows: FlowSet,
    conflicts: ConflictList,
    rng: "random.Random | int",
) -> Schedule:
    """One full randomization pass over a copy of `base`.

    Every hop of every instance gets one uniform draw over its surviving
    candidates plus the identity choice. The output serves exactly the same
    transmissions and is feasible whenever `base` is.
    """
    state, txs = _build_state(base, flows, conflicts)
    run_pass(state, _coerce_rng(rng).randrange)
    return _rebuild_schedule(state, txs)
