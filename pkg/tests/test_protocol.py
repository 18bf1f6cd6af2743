import random

import pytest
from scipy.stats import chisquare

from slotswapper.feasibility import validate
from slotswapper.protocol import (
    NodeSlotTable,
    SchedulePool,
    ScheduleSelector,
    build_pool,
    footprint,
    node_slot_table,
    pool_capacity,
    select_schedule,
)


def test_build_pool_size_and_feasibility(sched_a, flows3, conflicts):
    pool = build_pool(sched_a, flows3, conflicts, count=24, seed=9)
    assert len(pool) == 25
    assert pool[0] == sched_a
    for s in pool:
        assert validate(s, flows3, conflicts) == []


def test_build_pool_zero_count(sched_a, flows3, conflicts):
    pool = build_pool(sched_a, flows3, conflicts, count=0, seed=1)
    assert len(pool) == 1 and pool[0] == sched_a


def test_build_pool_reproducible(sched_a, flows3, conflicts):
    a = build_pool(sched_a, flows3, conflicts, count=10, seed=33)
    b = build_pool(sched_a, flows3, conflicts, count=10, seed=33)
    assert a.schedules == b.schedules
    c = build_pool(sched_a, flows3, conflicts, count=10, seed=34)
    assert c.schedules != a.schedules


def test_pool_shape_validation(sched_a):
    from slotswapper.model import Schedule

    with pytest.raises(ValueError):
        SchedulePool(())
    with pytest.raises(ValueError):
        SchedulePool((sched_a, Schedule(4, 2)))


def test_select_schedule_degenerate(sched_a, flows3, conflicts):
    pool = build_pool(sched_a, flows3, conflicts, count=0, seed=0)
    assert all(select_schedule(pool, 5, h) == 0 for h in range(1, 50))
    with pytest.raises(ValueError):
        select_schedule(pool, 5, 0)


def test_selectors_stay_synchronized(sched_a, flows3, conflicts):
    pool = build_pool(sched_a, flows3, conflicts, count=7, seed=2)
    a = ScheduleSelector(seed=123)
    b = ScheduleSelector(seed=123)
    seq_a = [a.next_index(pool) for _ in range(10_000)]
    seq_b = [b.next_index(pool) for _ in range(10_000)]
    assert seq_a == seq_b
    assert len(set(seq_a)) == len(pool)  # every schedule gets used


def test_selector_joins_mid_stream(sched_a, flows3, conflicts):
    pool = build_pool(sched_a, flows3, conflicts, count=7, seed=2)
    a = ScheduleSelector(seed=9)
    head = [a.next_index(pool) for _ in range(500)]
    late = ScheduleSelector(seed=9, first_hyper_period=301)
    tail = [late.next_index(pool) for _ in range(200)]
    assert head[300:] == tail


def test_selection_is_uniform(sched_a, flows3, conflicts):
    pool = build_pool(sched_a, flows3, conflicts, count=24, seed=4)
    counts = [0] * len(pool)
    for h in range(1, 10_001):
        counts[select_schedule(pool, 777, h)] += 1
    assert chisquare(counts).pvalue > 0.01


def test_different_seeds_diverge(sched_a, flows3, conflicts):
    pool = build_pool(sched_a, flows3, conflicts, count=9, seed=0)
    seq1 = [select_schedule(pool, 1, h) for h in range(1, 200)]
    seq2 = [select_schedule(pool, 2, h) for h in range(1, 200)]
    assert seq1 != seq2


def test_node_slot_table(sched_a):
    t1 = node_slot_table(sched_a, 1)
    assert t1 == NodeSlotTable(1, ((1, 1, "send", 2),))
    ap = node_slot_table(sched_a, 0)
    assert [(e[0], e[2]) for e in ap.entries] == [
        (3, "receive"),
        (6, "receive"),
        (7, "receive"),
        (8, "receive"),
    ]
    # node 2 both sends and receives
    roles = {e[2] for e in node_slot_table(sched_a, 2).entries}
    assert roles == {"send", "receive"}
    assert node_slot_table(sched_a, 6).entries == ()  # linkless node


def test_node_tables_cover_schedule(sched_a):
    # every occupied cell appears exactly once as a send and once as a receive
    sends, receives = [], []
    for node in range(7):
        for slot, ch, role, _peer in node_slot_table(sched_a, node).entries:
            (sends if role == "send" else receives).append((slot, ch))
    assert sorted(sends) == sorted(receives)
    assert sorted(sends) == [(s, c) for s, c, _ in sched_a.occupied()]


def test_footprint(sched_a, flows3, conflicts):
    pool = build_pool(sched_a, flows3, conflicts, count=4, seed=0)
    # flow 1's source sends once per schedule; factor 2 stores two entries
    assert footprint(pool, 1) == 2 * len(pool)
    assert footprint(pool, 1, entry_factor=1) == len(pool)
    assert footprint(pool, 6) == 0
    with pytest.raises(ValueError):
        footprint(pool, 1, entry_factor=0)


def test_pool_capacity():
    assert pool_capacity(2000, 80) == 25
    assert pool_capacity(79, 80) == 0
    with pytest.raises(ValueError):
        pool_capacity(2000, 0)
    with pytest.raises(ValueError):
        pool_capacity(-1, 10)
