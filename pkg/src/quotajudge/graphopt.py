"""Exact rational max-flow and a gain-maximising subgraph selector.

Everything here runs on ``fractions.Fraction`` capacities, so cuts and gains
are exact — no float tolerance anywhere.  The selector solves the classic
project-selection problem: pick a vertex subset maximising (number of edges
inside the subset) minus (total vertex cost), via a unit-supply min cut.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .model import DataError, UsageError


@dataclass(frozen=True)
class FlowResult:
    value: Fraction
    min_cut: frozenset[int]  # source side, canonical: residual-reachable set


class FlowNetwork:
    """A directed flow network; ``cap=None`` marks an effectively infinite arc."""

    def __init__(self, n_nodes: int, source: int, sink: int):
        if not (0 <= source < n_nodes and 0 <= sink < n_nodes) or source == sink:
            raise DataError("source and sink must be distinct nodes in range")
        self.n_nodes = n_nodes
        self.source = source
        self.sink = sink
        self._arcs: list[list] = []  # [to, cap, flow] with paired reverse arcs
        self._adj: list[list[int]] = [[] for _ in range(n_nodes)]
        self._infinite: list[int] = []

    def add_arc(self, u: int, v: int, cap: Fraction | None) -> None:
        if not (0 <= u < self.n_nodes and 0 <= v < self.n_nodes):
            raise DataError("arc endpoint out of range")
        if cap is not None and cap < 0:
            raise DataError("negative capacity")
        i = len(self._arcs)
        self._arcs.append([v, cap, Fraction(0)])
        self._arcs.append([u, Fraction(0), Fraction(0)])
        self._adj[u].append(i)
        self._adj[v].append(i + 1)
        if cap is None:
            self._infinite.append(i)

    def max_flow(self) -> FlowResult:
        """Edmonds–Karp with exact arithmetic; the cut is the residual source side.

        Solving mutates the arc flows, so each network is good for one call.
        """
        if getattr(self, "_solved", False):
            raise UsageError("max_flow already ran on this network")
        self._solved = True
        finite_total = sum(
            (a[1] for a in self._arcs if a[1] is not None), start=Fraction(0)
        )
        surrogate = finite_total + 1
        for i in self._infinite:
            self._arcs[i][1] = surrogate

        arcs, adj = self._arcs, self._adj
        total = Fraction(0)
        while True:
            parent_arc = [-1] * self.n_nodes
            parent_arc[self.source] = -2
            queue = deque([self.source])
            while queue:
                u = queue.popleft()
                if u == self.sink:
                    break
                for i in adj[u]:
                    to, cap, flow = arcs[i]
                    if parent_arc[to] == -1 and cap - flow > 0:
                        parent_arc[to] = i
                        queue.append(to)
            if parent_arc[self.sink] == -1:
                break
            bottleneck = None
            v = self.sink
            while v != self.source:
                i = parent_arc[v]
                room = arcs[i][1] - arcs[i][2]
                bottleneck = room if bottleneck is None else min(bottleneck, room)
                v = arcs[i ^ 1][0]
            v = self.sink
            while v != self.source:
                i = parent_arc[v]
                arcs[i][2] += bottleneck
                arcs[i ^ 1][2] -= bottleneck
                v = arcs[i ^ 1][0]
            total += bottleneck

        self._assert_conservation()
        reachable = {self.source}
        queue = deque([self.source])
        while queue:
            u = queue.popleft()
            for i in adj[u]:
                to, cap, flow = arcs[i]
                if to not in reachable and cap - flow > 0:
                    reachable.add(to)
                    queue.append(to)
        return FlowResult(total, frozenset(reachable))

    def _assert_conservation(self) -> None:
        balance = [Fraction(0)] * self.n_nodes
        for u in range(self.n_nodes):
            for i in self._adj[u]:
                if i % 2 == 0:  # forward arcs only
                    balance[u] -= self._arcs[i][2]
                    balance[self._arcs[i][0]] += self._arcs[i][2]
        for node, b in enumerate(balance):
            if node not in (self.source, self.sink):
                assert b == 0, f"flow conservation violated at node {node}"


@dataclass(frozen=True)
class GainGraph:
    """Undirected multigraph with a non-negative rational cost per vertex.

    Selecting a vertex subset earns one unit per edge whose endpoints are
    both selected and pays each selected vertex's cost.
    """

    costs: tuple[Fraction, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.costs)
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DataError("edge endpoint out of range")
            if u == v:
                raise DataError("self-loops are not allowed")

    @classmethod
    def build(cls, costs: Sequence, edges: Iterable[tuple[int, int]]) -> "GainGraph":
        return cls(tuple(Fraction(c) for c in costs), tuple(edges))


def subset_gain(g: GainGraph, subset: frozenset[int]) -> Fraction:
    inside = sum(1 for u, v in g.edges if u in subset and v in subset)
    return Fraction(inside) - sum((g.costs[v] for v in subset), start=Fraction(0))


def max_gain_subgraph(g: GainGraph) -> tuple[Fraction, frozenset[int]]:
    """Best achievable gain and a subset attaining it (empty set gives 0).

    Project selection: a unit-supply node per edge feeds both endpoints
    through unbounded arcs, each vertex drains into the sink at its cost, and
    the min cut separates the paying choices from the earning ones.
    """
    for c in g.costs:
        if c < 0:
            raise DataError("vertex costs must be non-negative")
    n_edges = len(g.edges)
    n_vertices = len(g.costs)
    if n_edges == 0:
        return Fraction(0), frozenset()
    source, sink = 0, 1
    sel0, vert0 = 2, 2 + n_edges
    net = FlowNetwork(2 + n_edges + n_vertices, source, sink)
    for i, (u, v) in enumerate(g.edges):
        net.add_arc(source, sel0 + i, Fraction(1))
        net.add_arc(sel0 + i, vert0 + u, None)
        net.add_arc(sel0 + i, vert0 + v, None)
    for v, cost in enumerate(g.costs):
        net.add_arc(vert0 + v, sink, cost)
    result = net.max_flow()
    best = Fraction(n_edges) - result.value
    chosen = frozenset(
        v for v in range(n_vertices) if (vert0 + v) in result.min_cut
    )
    assert subset_gain(g, chosen) == best, "cut does not match its claimed gain"
    assert best >= 0
    return best, chosen


def wmds_decide(g: GainGraph) -> bool:
    """Can any subset earn strictly more than it pays?

    Callers must have preprocessed the trivial wins away: no negative costs
    (a negative-cost vertex alone would win) and no edge whose endpoints both
    cost zero (that pair would win).
    """
    for c in g.costs:
        if c < 0:
            raise UsageError("preprocess negative-cost vertices before deciding")
    for u, v in g.edges:
        if g.costs[u] == 0 and g.costs[v] == 0:
            raise UsageError("preprocess zero-zero edges before deciding")
    best, _ = max_gain_subgraph(g)
    return best > 0
