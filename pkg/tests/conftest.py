"""Shared fixtures: a small mesh with an access point, three flows, and two
hand-verified feasible schedules over their common 8-slot hyper-period."""
import sys

import pytest

from slotswapper.model import (
    Edge,
    Flow,
    FlowSet,
    NetworkGraph,
    Schedule,
    Transmission,
    build_conflict_list,
)

AP = 0


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance verdict lines after the capture-managed output,
    so a plain `pytest` run always shows one line per release gate."""
    mod = sys.modules.get("test_acceptance") or sys.modules.get(
        "tests.test_acceptance"
    )
    lines = getattr(mod, "VERDICT_LINES", None)
    if lines:
        terminalreporter.section("acceptance gates")
        for line in lines:
            terminalreporter.write_line(line)

# slot, channel, flow, instance, hop, sender, receiver
SCHED_A_CELLS = [
    (1, 1, 1, 1, 1, 1, 2),
    (1, 2, 2, 1, 1, 4, 5),
    (3, 2, 2, 1, 2, 5, AP),
    (4, 1, 3, 1, 1, 2, 3),
    (5, 1, 2, 2, 1, 4, 5),
    (5, 2, 1, 1, 2, 2, 3),
    (6, 2, 1, 1, 3, 3, AP),
    (7, 2, 2, 2, 2, 5, AP),
    (8, 1, 3, 1, 2, 3, AP),
]

SCHED_B_CELLS = [
    (1, 2, 3, 1, 1, 2, 3),
    (2, 1, 1, 1, 1, 1, 2),
    (2, 2, 2, 1, 1, 4, 5),
    (3, 2, 1, 1, 2, 2, 3),
    (4, 1, 2, 1, 2, 5, AP),
    (5, 1, 1, 1, 3, 3, AP),
    (6, 1, 2, 2, 1, 4, 5),
    (7, 2, 3, 1, 2, 3, AP),
    (8, 1, 2, 2, 2, 5, AP),
]


def make_mesh() -> NetworkGraph:
    edges = tuple(Edge(*uv) for uv in [(1, 2), (2, 3), (2, 4), (3, AP), (4, 5), (5, AP)])
    # node 6 exists but has no links
    return NetworkGraph(node_count=7, edges=edges, access_points=frozenset({AP}))


def make_flows() -> FlowSet:
    f1 = Flow(1, 1, AP, 8, 8, (Edge(1, 2), Edge(2, 3), Edge(3, AP)))
    f2 = Flow(2, 4, AP, 4, 4, (Edge(4, 5), Edge(5, AP)))
    f3 = Flow(3, 2, AP, 8, 8, (Edge(2, 3), Edge(3, AP)))
    return FlowSet((f1, f2, f3))


def make_schedule(cells, hyper_period=8, channels=2) -> Schedule:
    s = Schedule(hyper_period, channels)
    for slot, ch, fid, inst, hop, u, v in cells:
        s.place(slot, ch, Transmission(fid, inst, hop, Edge(u, v)))
    return s


@pytest.fixture
def mesh():
    return make_mesh()


@pytest.fixture
def conflicts(mesh):
    return build_conflict_list(mesh)


@pytest.fixture
def flows3():
    return make_flows()


@pytest.fixture
def sched_a():
    return make_schedule(SCHED_A_CELLS)


@pytest.fixture
def sched_b():
    return make_schedule(SCHED_B_CELLS)
