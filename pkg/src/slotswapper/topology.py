"""Random mesh topologies and flow sets for experiments.

Graphs are connected, undirected, and degree-bounded; the access point is the
highest-degree node (lowest id on ties), mirroring a gateway placed at the
densest spot. Flows run from sensor nodes to the access point along a
deterministic shortest path, so a (graph, seed) pair always yields the same
workload.
"""
from __future__ import annotations

import random
from collections import deque
from typing import Sequence

from .errors import DegreeInfeasibleError, RouteInfeasibleError
from .model import Edge, Flow, FlowSet, NetworkGraph

DEFAULT_HOP_RANGE = (2, 8)
DEFAULT_PERIODS = (128, 256, 512, 1024)


def _try_build_edges(
    node_count: int, degree_min: int, degree_max: int, rng: random.Random
) -> set[tuple[int, int]] | None:
    degree = [0] * node_count
    links: set[tuple[int, int]] = set()

    def connect(u: int, v: int) -> None:
        links.add((min(u, v), max(u, v)))
        degree[u] += 1
        degree[v] += 1

    # random spanning tree under the degree cap
    order = list(range(node_count))
    rng.shuffle(order)
    for i, u in enumerate(order[1:], start=1):
        hosts = [v for v in order[:i] if degree[v] < degree_max]
        if not hosts:
            return None
        connect(u, rng.choice(hosts))

    # raise every degree to the floor
    for _ in range(50 * node_count):
        low = [u for u in range(node_count) if degree[u] < degree_min]
        if not low:
            break
        u = rng.choice(low)
        partners = [
            v
            for v in range(node_count)
            if v != u and degree[v] < degree_max and (min(u, v), max(u, v)) not in links
        ]
        if not partners:
            return None
        under = [v for v in partners if degree[v] < degree_min]
        connect(u, rng.choice(under or partners))
    if any(d < degree_min for d in degree):
        return None

    # sprinkle extra edges for density variety, still inside the cap
    for _ in range(rng.randrange(0, node_count + 1)):
        u = rng.randrange(node_count)
        if degree[u] >= degree_max:
            continue
        partners = [
            v
            for v in range(node_count)
            if v != u and degree[v] < degree_max and (min(u, v), max(u, v)) not in links
        ]
        if partners:
            connect(u, rng.choice(partners))
    return links


def generate_topology(
    node_count: int, degree_min: int, degree_max: int, rng: random.Random
) -> NetworkGraph:
    """Connected graph with all degrees in [degree_min, degree_max].

    The access point is the highest-degree node. Raises
    DegreeInfeasibleError when the bounds admit no such graph (or none was
    found within the retry budget).
    """
    if node_count < 2:
        raise DegreeInfeasibleError("need at least two nodes")
    if not 1 <= degree_min <= degree_max:
        raise DegreeInfeasibleError(
            f"invalid degree bounds [{degree_min}, {degree_max}]"
        )
    if degree_min > node_count - 1:
        raise DegreeInfeasibleError(
            f"degree floor {degree_min} is unreachable with {node_count} nodes"
        )
    if degree_min == degree_max and (node_count * degree_min) % 2 == 1:
        raise DegreeInfeasibleError(
            f"no {degree_min}-regular graph exists on {node_count} nodes"
        )

    for _ in range(20):
        links = _try_build_edges(node_count, degree_min, degree_max, rng)
        if links is not None:
            edges = tuple(Edge(*l) for l in sorted(links))
            graph = NetworkGraph(node_count, edges, frozenset())
            ap = max(range(node_count), key=lambda v: (graph.degree(v), -v))
            return NetworkGraph(node_count, edges, frozenset({ap}))
    raise DegreeInfeasibleError(
        f"could not satisfy degree bounds [{degree_min}, {degree_max}] "
        f"on {node_count} nodes"
    )


def shortest_route(graph: NetworkGraph, source: int, destination: int) -> tuple[Edge, ...]:
    """Deterministic BFS shortest path as directed edges; lowest-id ties win."""
    if source == destination:
        raise ValueError("source and destination must differ")
    adjacency: dict[int, list[int]] = {v: [] for v in range(graph.node_count)}
    for e in graph.edges:
        adjacency[e.sender].append(e.receiver)
        adjacency[e.receiver].append(e.sender)
    for v in adjacency:
        adjacency[v].sort()
    parent: dict[int, int] = {source: -1}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u == destination:
            break
        for v in adjacency[u]:
            if v not in parent:
                parent[v] = u
                queue.append(v)
    if destination not in parent:
        raise RouteInfeasibleError(f"no path from {source} to {destination}")
    path = [destination]
    while path[-1] != source:
        path.append(parent[path[-1]])
    path.reverse()
    return tuple(Edge(a, b) for a, b in zip(path, path[1:]))


def generate_flows(
    graph: NetworkGraph,
    count: int,
    alpha: float,
    rng: random.Random,
    hop_range: tuple[int, int] = DEFAULT_HOP_RANGE,
    periods: Sequence[int] = DEFAULT_PERIODS,
) -> FlowSet:
    """`count` sensor-to-access-point flows with implicit deadlines.

    A fraction `alpha` of the non-gateway nodes form the sensor pool; each
    flow picks a pool node whose shortest path to the access point has a hop
    count inside `hop_range`, and a random period. Raises
    RouteInfeasibleError when the pool offers no such source.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if not 0 < alpha <= 1:
        raise ValueError("alpha must be in (0, 1]")
    if not graph.access_points:
        raise ValueError("graph has no access point")
    ap = min(graph.access_points)
    sensors = [v for v in range(graph.node_count) if v != ap]
    pool_size = max(1, round(alpha * len(sensors)))
    pool = sorted(rng.sample(sensors, pool_size))
    lo, hi = hop_range
    usable: dict[int, tuple[Edge, ...]] = {}
    for v in pool:
        try:
            route = shortest_route(graph, v, ap)
        except RouteInfeasibleError:
            continue
        if lo <= len(route) <= hi:
            usable[v] = route
    if not usable:
        raise RouteInfeasibleError(
            f"no sensor in the pool reaches the access point in {lo}..{hi} hops"
        )
    sources = sorted(usable)
    flows = []
    for fid in range(1, count + 1):
        src = rng.choice(sources)
        period = rng.choice(list(periods))
        flows.append(Flow(fid, src, ap, period, period, usable[src]))
    return FlowSet(tuple(flows))
