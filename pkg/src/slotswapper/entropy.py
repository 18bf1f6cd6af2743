"""Schedule unpredictability metrics over a pool.

The per-cell view treats every (slot, channel) cell as a random variable over
"which transmission occupies it, or idle", with probabilities estimated by
counting across the pool. Summing the marginal Shannon entropies per channel
gives a slot's upper-bound entropy, and summing over slots the schedule's;
ignoring inter-cell correlation can only overestimate, hence "upper".

The exact figure is the joint entropy of the whole-schedule outcome. Its
support grows with the grid, so `schedule_entropy_exact` only accepts small
instances (hyper-period <= 16, channels <= 2, flows <= 4) and raises
InstanceTooLargeError beyond that guard.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import InstanceTooLargeError
from .model import Schedule
from .protocol import SchedulePool

PoolLike = Union[SchedulePool, Sequence[Schedule]]

EXACT_MAX_HYPER_PERIOD = 16
EXACT_MAX_CHANNELS = 2
EXACT_MAX_FLOWS = 4


def _members(pool: PoolLike) -> tuple[Schedule, ...]:
    members = tuple(pool)
    if not members:
        raise ValueError("cannot measure an empty pool")
    hp = members[0].hyper_period
    m = members[0].channel_count
    for s in members:
        if s.hyper_period != hp or s.channel_count != m:
            raise ValueError("pool schedules must share hyper-period and channel count")
    return members


@dataclass(frozen=True)
class SlotDistribution:
    """Per-cell occupancy counts across a pool.

    counts[cell, k] counts pool members whose cell holds outcome k, where
    cell = (slot-1)*channel_count + (channel-1); outcomes 0..len(outcomes)-1
    are (flow, instance, hop) triples and the final column is idle.
    """

    hyper_period: int
    channel_count: int
    pool_size: int
    outcomes: tuple[tuple[int, int, int], ...]
    counts: np.ndarray

    def cell_probabilities(self, slot: int, channel: int) -> dict:
        """Outcome -> probability for one cell; idle keyed as None."""
        row = self.counts[(slot - 1) * self.channel_count + (channel - 1)]
        out = {}
        for k, c in enumerate(row):
            if c:
                key = None if k == len(self.outcomes) else self.outcomes[k]
                out[key] = c / self.pool_size
        return out


def empirical_distribution(pool: PoolLike) -> SlotDistribution:
    members = _members(pool)
    hp = members[0].hyper_period
    m = members[0].channel_count
    outcome_index: dict[tuple[int, int, int], int] = {}
    for s in members:
        for _, _, tx in s.occupied():
            key = (tx.flow_id, tx.instance, tx.hop)
            if key not in outcome_index:
                outcome_index[key] = len(outcome_index)
    n_out = len(outcome_index)
    counts = np.zeros((hp * m, n_out + 1), dtype=np.int64)
    for s in members:
        cells, kinds = [], []
        for slot, ch, tx in s.occupied():
            cells.append((slot - 1) * m + (ch - 1))
            kinds.append(outcome_index[(tx.flow_id, tx.instance, tx.hop)])
        np.add.at(counts, (np.asarray(cells, dtype=np.intp), np.asarray(kinds, dtype=np.intp)), 1)
    counts[:, n_out] = len(members) - counts[:, :n_out].sum(axis=1)
    return SlotDistribution(
        hyper_period=hp,
        channel_count=m,
        pool_size=len(members),
        outcomes=tuple(outcome_index),
        counts=counts,
    )


def _entropy_bits(counts: np.ndarray, total: int) -> float:
    nz = counts[counts > 0].astype(np.float64)
    if nz.size <= 1:
        return 0.0
    p = nz / total
    return float(-(p * np.log2(p)).sum())


def slot_entropy_upper(dist: SlotDistribution, slot: int) -> float:
    """Sum of the slot's per-channel marginal entropies, in bits."""
    if not 1 <= slot <= dist.hyper_period:
        raise ValueError(f"slot {slot} outside 1..{dist.hyper_period}")
    base = (slot - 1) * dist.channel_count
    return sum(
        _entropy_bits(dist.counts[base + c], dist.pool_size)
        for c in range(dist.channel_count)
    )


def schedule_entropy_upper(dist: SlotDistribution) -> float:
    """Upper-bound schedule entropy: per-cell marginals summed over the grid."""
    return sum(
        _entropy_bits(dist.counts[i], dist.pool_size) for i in range(dist.counts.shape[0])
    )


def schedule_entropy_exact(pool: PoolLike) -> float:
    """Joint entropy of the whole-schedule outcome across the pool, in bits.

    Raises:
        InstanceTooLargeError: the instance exceeds the tractable guard
            (hyper-period <= 16, channels <= 2, flows <= 4).
    """
    members = _members(pool)
    hp = members[0].hyper_period
    m = members[0].channel_count
    flow_ids = {tx.flow_id for s in members for _, _, tx in s.occupied()}
    if hp > EXACT_MAX_HYPER_PERIOD or m > EXACT_MAX_CHANNELS or len(flow_ids) > EXACT_MAX_FLOWS:
        raise InstanceTooLargeError(
            f"exact entropy supports hyper-period <= {EXACT_MAX_HYPER_PERIOD}, "
            f"channels <= {EXACT_MAX_CHANNELS}, flows <= {EXACT_MAX_FLOWS}; "
            f"got ({hp}, {m}, {len(flow_ids)})"
        )
    outcomes = Counter(
        tuple((slot, ch, tx.flow_id, tx.instance, tx.hop) for slot, ch, tx in s.occupied())
        for s in members
    )
    counts = np.asarray(sorted(outcomes.values()), dtype=np.int64)
    return _entropy_bits(counts, len(members))
