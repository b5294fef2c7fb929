"""Admissible cost-to-go estimates.

An exhaustive backward Dijkstra from the goal over edge fuel (ignoring tank
capacity and prices) gives the minimum fuel d(v) still to be burned from
each vertex.  Multiplying the unavoidable purchase d(v) - q by the global
minimum price then lower-bounds any completion cost.  Contexts depend only
on (graph, goal) and can be cached across queries that share a goal.
"""

from __future__ import annotations

import heapq
import math
import threading
from dataclasses import dataclass

from .core import FuelGraph, Label


@dataclass(frozen=True)
class HeuristicContext:
    goal: int
    d_to_goal: tuple[float, ...]
    c_min: float


def build_heuristic(graph: FuelGraph, goal: int) -> HeuristicContext:
    """Backward Dijkstra from the goal; c_min over finite non-goal prices.

    Vertices that cannot reach the goal get distance +inf.  When every
    non-goal vertex is non-refuellable, c_min degenerates to 0 so the
    estimate becomes the trivial (still admissible) zero heuristic.
    """
    dist = [math.inf] * graph.n
    dist[goal] = 0.0
    heap: list[tuple[float, int]] = [(0.0, goal)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for u, w in graph.pred[v]:
            nd = d + w
            if nd < dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    finite_prices = [p for v, p in enumerate(graph.price) if v != goal and math.isfinite(p)]
    c_min = min(finite_prices) if finite_prices else 0.0
    return HeuristicContext(goal=goal, d_to_goal=tuple(dist), c_min=c_min)


def h_for(ctx: HeuristicContext, v: int, q: float) -> float:
    """Estimate for being at v with q fuel; +inf if the goal is unreachable."""
    d = ctx.d_to_goal[v]
    if math.isinf(d):
        return math.inf
    return max((d - q) * ctx.c_min, 0.0)


def h_value(ctx: HeuristicContext, l: Label) -> float:
    return h_for(ctx, l.v, l.q)


class HeuristicCache:
    """Goal-keyed context cache with no eviction.

    Keys are (graph content hash, goal).  Concurrent readers are fine; the
    first builder wins and duplicate builds are discarded.
    """

    def __init__(self):
        self._store: dict[tuple[str, int], HeuristicContext] = {}
        self._lock = threading.Lock()

    def get_or_build(self, graph: FuelGraph, goal: int) -> tuple[HeuristicContext, bool]:
        """Return (context, hit). hit is True when no Dijkstra was run."""
        key = (graph.content_hash(), goal)
        ctx = self._store.get(key)
        if ctx is not None:
            return ctx, True
        built = build_heuristic(graph, goal)
        with self._lock:
            ctx = self._store.setdefault(key, built)
        return ctx, ctx is not built

    def clear(self):
        with self._lock:
            self._store.clear()


DEFAULT_CACHE = HeuristicCache()


def heuristic_cache_get(cache: HeuristicCache, graph: FuelGraph, goal: int) -> HeuristicContext:
    """Fetch the context for (graph, goal), building and storing on a miss."""
    ctx, _ = cache.get_or_build(graph, goal)
    return ctx
