"""Refuel-graph preprocessing.

For every vertex this computes the set of vertices reachable on one full
tank together with the minimum fuel needed, by running one Dijkstra per
source truncated at the tank capacity.  The search and the DP baseline both
run on this derived graph, so the cost is paid once per (graph, capacity)
pair and can be cached on disk.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .core import FuelGraph


@dataclass(frozen=True)
class ReachGraph:
    """Tankful transitions: arcs (u -> v, d) with 0 < d <= q_max.

    d is the unconstrained shortest fuel distance from u to v.  succ and
    pred are sorted by vertex id for deterministic iteration.
    """

    n: int
    q_max: float
    succ: tuple[tuple[tuple[int, float], ...], ...]
    pred: tuple[tuple[tuple[int, float], ...], ...]
    _dist: tuple[dict[int, float], ...] = field(repr=False)

    def distance(self, u: int, v: int) -> float | None:
        """Minimum fuel from u to v, or None when it exceeds the tank."""
        return self._dist[u].get(v)

    def indegree(self, v: int) -> int:
        return len(self.pred[v])

    def edge_count(self) -> int:
        return sum(len(s) for s in self.succ)


def _truncated_dijkstra(graph: FuelGraph, source: int, q_max: float) -> list[tuple[int, float]]:
    dist: dict[int, float] = {source: 0.0}
    heap: list[tuple[float, int]] = [(0.0, source)]
    out: list[tuple[int, float]] = []
    done: set[int] = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        if d > q_max:
            break  # all remaining entries are at least this far
        done.add(u)
        if u != source:
            out.append((u, d))
        for v, w in graph.succ[u]:
            nd = d + w
            if nd <= q_max and nd < dist.get(v, float("inf")):
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    out.sort()
    return out


def compute_reachable_sets(graph: FuelGraph, q_max: float) -> ReachGraph:
    """Build the refuel graph for a tank capacity.

    A settled vertex whose distance exceeds q_max is discarded and never
    expanded.  Empty reach sets are valid (capacity below the smallest edge
    fuel yields an edgeless refuel graph).
    """
    if not (q_max > 0):
        raise ValueError("q_max must be positive")
    succ = tuple(tuple(_truncated_dijkstra(graph, u, q_max)) for u in range(graph.n))
    pred: list[list[tuple[int, float]]] = [[] for _ in range(graph.n)]
    for u, entries in enumerate(succ):
        for v, d in entries:
            pred[v].append((u, d))
    dist = tuple({v: d for v, d in entries} for entries in succ)
    return ReachGraph(
        n=graph.n,
        q_max=float(q_max),
        succ=succ,
        pred=tuple(tuple(sorted(p)) for p in pred),
        _dist=dist,
    )
