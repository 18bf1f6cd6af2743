"""Core domain model: mesh topology, periodic flows, and the slotted schedule grid.

Slots and channels are 1-indexed throughout; a schedule covers slots
1..hyper_period on channels 1..channel_count. Channel numbers here are logical
offsets; `physical_channel` maps a logical offset to the on-air channel for a
given absolute slot number.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional


class Edge(NamedTuple):
    """One directed link transmission: sender -> receiver."""

    sender: int
    receiver: int

    def touches(self, node: int) -> bool:
        return node == self.sender or node == self.receiver

    def shares_endpoint(self, other: "Edge") -> bool:
        return (
            self.sender == other.sender
            or self.sender == other.receiver
            or self.receiver == other.sender
            or self.receiver == other.receiver
        )

    def link_key(self) -> tuple[int, int]:
        """Orientation-independent identity of the underlying link."""
        a, b = self.sender, self.receiver
        return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class NetworkGraph:
    """Undirected mesh topology with designated access points.

    Edges are stored in a fixed orientation (as given); endpoint tests never
    depend on orientation.
    """

    node_count: int
    edges: tuple[Edge, ...]
    access_points: frozenset[int]

    def __post_init__(self):
        if self.node_count < 1:
            raise ValueError("node_count must be positive")
        seen: set[tuple[int, int]] = set()
        for e in self.edges:
            if not (0 <= e.sender < self.node_count and 0 <= e.receiver < self.node_count):
                raise ValueError(f"edge {e} references a node outside 0..{self.node_count - 1}")
            if e.sender == e.receiver:
                raise ValueError(f"self-loop edge {e}")
            key = e.link_key()
            if key in seen:
                raise ValueError(f"duplicate link {key}")
            seen.add(key)
        for ap in self.access_points:
            if not 0 <= ap < self.node_count:
                raise ValueError(f"access point {ap} outside 0..{self.node_count - 1}")

    def neighbors(self, node: int) -> tuple[int, ...]:
        out = []
        for e in self.edges:
            if e.sender == node:
                out.append(e.receiver)
            elif e.receiver == node:
                out.append(e.sender)
        return tuple(sorted(out))

    def degree(self, node: int) -> int:
        return len(self.neighbors(node))


class ConflictList:
    """Per-edge adjacency over a graph's links.

    Two transmissions conflict when their edges share any endpoint: a node
    cannot take part in two transmissions in one slot, whether as sender or
    receiver. The predicate is orientation-independent.
    """

    def __init__(self, edges: tuple[Edge, ...]):
        self.edges = edges
        self._index = {e.link_key(): i for i, e in enumerate(edges)}
        self._sets: list[frozenset[int]] = []
        for i, a in enumerate(edges):
            self._sets.append(
                frozenset(j for j, b in enumerate(edges) if j != i and a.shares_endpoint(b))
            )

    def __len__(self) -> int:
        return len(self.edges)

    def index_of(self, edge: Edge) -> int:
        try:
            return self._index[edge.link_key()]
        except KeyError:
            raise KeyError(f"edge {edge} is not a link of the graph") from None

    def conflicts_of(self, edge: Edge) -> tuple[Edge, ...]:
        """All graph links sharing an endpoint with `edge`, in storage order."""
        return tuple(self.edges[j] for j in sorted(self._sets[self.index_of(edge)]))

    @staticmethod
    def conflicting(a: Edge, b: Edge) -> bool:
        return a.shares_endpoint(b)


def build_conflict_list(graph: NetworkGraph) -> ConflictList:
    return ConflictList(graph.edges)


@dataclass(frozen=True)
class Flow:
    """A periodic multi-hop flow with an implicit-or-tighter relative deadline.

    The route is a chain of directed edges from source to destination; each
    hop takes one slot, so the hop count can never exceed the deadline.
    """

    id: int
    source: int
    destination: int
    period: int
    deadline: int
    route: tuple[Edge, ...]

    def __post_init__(self):
        if self.period < 1:
            raise ValueError(f"flow {self.id}: period must be positive")
        if not 1 <= self.deadline <= self.period:
            raise ValueError(f"flow {self.id}: deadline must satisfy 1 <= deadline <= period")
        if not self.route:
            raise ValueError(f"flow {self.id}: empty route")
        if len(self.route) > self.deadline:
            raise ValueError(f"flow {self.id}: {len(self.route)} hops cannot fit deadline {self.deadline}")
        if self.route[0].sender != self.source:
            raise ValueError(f"flow {self.id}: route must start at the source")
        if self.route[-1].receiver != self.destination:
            raise ValueError(f"flow {self.id}: route must end at the destination")
        for a, b in zip(self.route, self.route[1:]):
            if a.receiver != b.sender:
                raise ValueError(f"flow {self.id}: route hops {a} -> {b} do not chain")

    @property
    def hops(self) -> int:
        return len(self.route)


def release_slot(flow: Flow, instance: int) -> int:
    """First slot in which instance `instance` (1-indexed) may transmit."""
    if instance < 1:
        raise ValueError("instance numbers are 1-indexed")
    return (instance - 1) * flow.period + 1


def deadline_slot(flow: Flow, instance: int) -> int:
    """Last slot by which every hop of the instance must have completed."""
    if instance < 1:
        raise ValueError("instance numbers are 1-indexed")
    return (instance - 1) * flow.period + flow.deadline


@dataclass(frozen=True)
class FlowInstance:
    """One periodic activation of a flow, with its absolute slot window."""

    flow_id: int
    index: int
    release: int
    deadline: int

    @classmethod
    def of(cls, flow: Flow, index: int) -> "FlowInstance":
        return cls(flow.id, index, release_slot(flow, index), deadline_slot(flow, index))


def hyper_period(flows: "FlowSet | tuple[Flow, ...] | list[Flow]") -> int:
    seq = flows.flows if isinstance(flows, FlowSet) else tuple(flows)
    if not seq:
        raise ValueError("hyper-period of an empty flow set is undefined")
    return math.lcm(*(f.period for f in seq))


@dataclass(frozen=True)
class FlowSet:
    """An id-unique collection of flows sharing one hyper-period."""

    flows: tuple[Flow, ...]

    def __post_init__(self):
        ids = [f.id for f in self.flows]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate flow ids")
        if not self.flows:
            raise ValueError("flow set must not be empty")

    @property
    def hyper_period(self) -> int:
        return hyper_period(self.flows)

    def by_id(self, flow_id: int) -> Flow:
        for f in self.flows:
            if f.id == flow_id:
                return f
        raise KeyError(f"no flow with id {flow_id}")

    def instance_count(self, flow: Flow) -> int:
        return self.hyper_period // flow.period

    def iter_instances(self) -> Iterator[FlowInstance]:
        """All instances in (flow order, instance index) order."""
        for f in self.flows:
            for j in range(1, self.instance_count(f) + 1):
                yield FlowInstance.of(f, j)

    def sorted_by_id(self) -> tuple[Flow, ...]:
        return tuple(sorted(self.flows, key=lambda f: f.id))


def physical_channel(asn: int, logical_channel: int, channel_count: int) -> int:
    """On-air channel for absolute slot `asn`: (asn + logical) mod channel_count."""
    if channel_count < 1:
        raise ValueError("channel_count must be positive")
    return (asn + logical_channel) % channel_count


@dataclass(frozen=True)
class Transmission:
    """One hop of one flow instance, carried over a directed edge."""

    flow_id: int
    instance: int
    hop: int
    edge: Edge


class Schedule:
    """A hyper_period x channel_count grid of at most one transmission per cell.

    Maintains a reverse index from (flow, instance, hop) to its cell so swap
    predicates can locate neighbor hops in O(1). `extra_cells` quarantines
    duplicate (slot, channel) rows found while loading a schedule file; the
    grid itself cannot represent such a collision.
    """

    def __init__(self, hyper_period: int, channel_count: int):
        if hyper_period < 1 or channel_count < 1:
            raise ValueError("hyper_period and channel_count must be positive")
        self.hyper_period = hyper_period
        self.channel_count = channel_count
        self._grid: list[Optional[Transmission]] = [None] * (hyper_period * channel_count)
        self._by_hop: dict[tuple[int, int, int], tuple[int, int]] = {}
        self.extra_cells: list[tuple[int, int, Transmission]] = []

    def _idx(self, slot: int, channel: int) -> int:
        if not 1 <= slot <= self.hyper_period:
            raise ValueError(f"slot {slot} outside 1..{self.hyper_period}")
        if not 1 <= channel <= self.channel_count:
            raise ValueError(f"channel {channel} outside 1..{self.channel_count}")
        return (slot - 1) * self.channel_count + (channel - 1)

    def cell(self, slot: int, channel: int) -> Optional[Transmission]:
        return self._grid[self._idx(slot, channel)]

    def place(self, slot: int, channel: int, tx: Transmission) -> None:
        i = self._idx(slot, channel)
        if self._grid[i] is not None:
            raise ValueError(f"cell ({slot}, {channel}) is already occupied")
        key = (tx.flow_id, tx.instance, tx.hop)
        if key in self._by_hop:
            raise ValueError(f"hop {key} is already placed")
        self._grid[i] = tx
        self._by_hop[key] = (slot, channel)

    def clear(self, slot: int, channel: int) -> Optional[Transmission]:
        i = self._idx(slot, channel)
        tx = self._grid[i]
        if tx is not None:
            self._grid[i] = None
            del self._by_hop[(tx.flow_id, tx.instance, tx.hop)]
        return tx

    def locate(self, flow_id: int, instance: int, hop: int) -> Optional[tuple[int, int]]:
        return self._by_hop.get((flow_id, instance, hop))

    def swap_cells(self, a: tuple[int, int], b: tuple[int, int]) -> None:
        """Exchange the contents of two cells; either side may be empty."""
        if a == b:
            return
        ta = self.clear(*a)
        tb = self.clear(*b)
        if tb is not None:
            self.place(a[0], a[1], tb)
        if ta is not None:
            self.place(b[0], b[1], ta)

    def occupied(self) -> Iterator[tuple[int, int, Transmission]]:
        """Occupied cells in (slot, channel) order."""
        m = self.channel_count
        for i, tx in enumerate(self._grid):
            if tx is not None:
                yield (i // m + 1, i % m + 1, tx)

    def slot_cells(self, slot: int) -> list[tuple[int, Transmission]]:
        base = (slot - 1) * self.channel_count
        return [
            (c + 1, tx)
            for c, tx in enumerate(self._grid[base : base + self.channel_count])
            if tx is not None
        ]

    @property
    def placed_count(self) -> int:
        return len(self._by_hop)

    def copy(self) -> "Schedule":
        out = Schedule(self.hyper_period, self.channel_count)
        out._grid = list(self._grid)
        out._by_hop = dict(self._by_hop)
        out.extra_cells = list(self.extra_cells)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Schedule):
            return NotImplemented
        return (
            self.hyper_period == other.hyper_period
            and self.channel_count == other.channel_count
            and self._grid == other._grid
            and self.extra_cells == other.extra_cells
        )

    def __repr__(self) -> str:
        return (
            f"Schedule(hyper_period={self.hyper_period}, channels={self.channel_count}, "
            f"placed={self.placed_count})"
        )
