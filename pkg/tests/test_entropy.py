import math
import random
from collections import Counter

import pytest

from slotswapper.entropy import (
    SlotDistribution,
    empirical_distribution,
    schedule_entropy_exact,
    schedule_entropy_upper,
    slot_entropy_upper,
)
from slotswapper.errors import InstanceTooLargeError
from slotswapper.model import Edge, Flow, FlowSet, Schedule, Transmission, build_conflict_list
from slotswapper.protocol import build_pool
from slotswapper.randomizer import sched_gen


def dict_entropy_oracle(pool):
    """Independent per-cell reference: Counter-based, no numpy."""
    members = list(pool)
    total = 0.0
    for slot in range(1, members[0].hyper_period + 1):
        for ch in range(1, members[0].channel_count + 1):
            c = Counter()
            for s in members:
                tx = s.cell(slot, ch)
                c[None if tx is None else (tx.flow_id, tx.instance, tx.hop)] += 1
            for n in c.values():
                p = n / len(members)
                total -= p * math.log2(p)
    return total


def test_empirical_distribution_two_member_pool(sched_a, sched_b):
    dist = empirical_distribution([sched_a, sched_b])
    assert dist.pool_size == 2
    assert dist.cell_probabilities(1, 1) == {(1, 1, 1): 0.5, None: 0.5}
    assert dist.cell_probabilities(3, 1) == {None: 1.0}
    assert dist.cell_probabilities(1, 2) == {(2, 1, 1): 0.5, (3, 1, 1): 0.5}
    assert dist.counts.sum() == 2 * 16  # every cell column sums to the pool size


def test_slot_entropy_two_member_pool(sched_a, sched_b):
    dist = empirical_distribution([sched_a, sched_b])
    per_slot = [slot_entropy_upper(dist, s) for s in range(1, 9)]
    assert per_slot == [2.0, 2.0, 1.0, 1.0, 2.0, 2.0, 1.0, 1.0]
    assert schedule_entropy_upper(dist) == 12.0
    with pytest.raises(ValueError):
        slot_entropy_upper(dist, 9)


def test_identical_pool_has_zero_entropy(sched_a):
    dist = empirical_distribution([sched_a] * 8)
    assert schedule_entropy_upper(dist) == 0.0
    assert schedule_entropy_exact([sched_a] * 8) == 0.0


def test_upper_matches_independent_oracle(sched_a, sched_b, flows3, conflicts):
    pool = build_pool(sched_a, flows3, conflicts, count=15, seed=3)
    dist = empirical_distribution(pool)
    assert abs(schedule_entropy_upper(dist) - dict_entropy_oracle(pool)) < 1e-9
    two = [sched_a, sched_b]
    assert abs(schedule_entropy_upper(empirical_distribution(two)) - 12.0) < 1e-9


def test_schedule_upper_is_sum_of_slots(sched_a, flows3, conflicts):
    pool = build_pool(sched_a, flows3, conflicts, count=9, seed=5)
    dist = empirical_distribution(pool)
    total = sum(slot_entropy_upper(dist, s) for s in range(1, dist.hyper_period + 1))
    assert abs(schedule_entropy_upper(dist) - total) < 1e-12


def test_exact_two_member_pool(sched_a, sched_b):
    assert schedule_entropy_exact([sched_a, sched_b]) == 1.0
    # duplicates shift the weights: {a, a, b} has H = log2(3) - 2/3
    h = schedule_entropy_exact([sched_a, sched_a, sched_b])
    assert abs(h - (math.log2(3) - 2 / 3)) < 1e-12


def test_exact_joint_counter_identity(sched_a, flows3, conflicts):
    # the joint entropy equals a whole-outcome Counter computed independently
    pool = build_pool(sched_a, flows3, conflicts, count=12, seed=8)
    members = list(pool)
    c = Counter(
        tuple(sorted((s_, ch, t.flow_id, t.instance, t.hop) for s_, ch, t in s.occupied()))
        for s in members
    )
    expected = -sum(
        (n / len(members)) * math.log2(n / len(members)) for n in c.values()
    )
    assert abs(schedule_entropy_exact(pool) - expected) < 1e-12


def test_exact_never_exceeds_upper(sched_a, flows3, conflicts):
    rng = random.Random(99)
    for _ in range(40):
        pool = build_pool(
            sched_a, flows3, conflicts, count=rng.randrange(3, 32), seed=rng.getrandbits(32)
        )
        upper = schedule_entropy_upper(empirical_distribution(pool))
        exact = schedule_entropy_exact(pool)
        assert exact <= upper + 1e-9


def test_exact_is_order_invariant(sched_a, flows3, conflicts):
    pool = list(build_pool(sched_a, flows3, conflicts, count=9, seed=1))
    shuffled = list(pool)
    random.Random(0).shuffle(shuffled)
    assert schedule_entropy_exact(pool) == schedule_entropy_exact(shuffled)
    assert schedule_entropy_upper(empirical_distribution(pool)) == schedule_entropy_upper(
        empirical_distribution(shuffled)
    )


def test_exact_guard():
    f = Flow(1, 0, 1, 32, 32, (Edge(0, 1),))
    s = Schedule(32, 1)
    s.place(1, 1, Transmission(1, 1, 1, f.route[0]))
    with pytest.raises(InstanceTooLargeError):
        schedule_entropy_exact([s, s])
    wide = Schedule(8, 4)
    with pytest.raises(InstanceTooLargeError):
        schedule_entropy_exact([wide, wide])


def test_empty_pool_rejected():
    with pytest.raises(ValueError):
        empirical_distribution([])
