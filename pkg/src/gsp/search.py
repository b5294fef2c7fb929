"""Best-first label search over the refuel graph.

Labels (vertex, cost, fuel, stops) are popped in f = g + h order from a
priority queue.  Expanding a label buys fuel at its vertex following the
optimal refuelling rule: fill the tank when the next stop is pricier, buy
exactly the hop's deficit otherwise, and always buy just enough to arrive
empty at the goal.  Per-vertex frontier sets prune dominated labels both
when children are generated and again when labels are popped.

Two variants share the loop: the bounded mode enforces the stop limit and
uses three-way dominance; the unbounded mode drops the limit and prunes
with the scalarized rule that prices the fuel gap at the local vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heappop, heappush
from itertools import count
from time import perf_counter

from .core import (
    Infeasible,
    Instance,
    Label,
    SearchStats,
    Solution,
    SolveTimeout,
    dominates,
    scalarized_dominates,
)
from .heuristic import DEFAULT_CACHE, HeuristicCache, HeuristicContext, build_heuristic, h_for
from .reach import ReachGraph, compute_reachable_sets


@dataclass
class SearchOptions:
    """Solver switches.

    use_heuristic off gives the no-heuristic mode (h identically 0).
    use_cache reuses goal-keyed heuristic contexts across solves.
    disable_dominance is for testing pruning safety only and is rejected in
    unbounded mode, where pruning is what guarantees termination.
    """

    use_heuristic: bool = True
    use_cache: bool = False
    unbounded_stops: bool = False
    disable_dominance: bool = False


class Frontier:
    """Per-vertex sets of mutually non-dominated labels.

    Insertion appends without removing stored labels that the newcomer
    dominates; stale entries never change pruning answers (dominance is
    transitive) and are swept out lazily by compact().
    """

    def __init__(self, graph_prices: tuple[float, ...], unbounded: bool = False):
        self._labels: list[list[Label]] = [[] for _ in graph_prices]
        self._price = graph_prices
        self.unbounded = unbounded

    def labels(self, v: int) -> tuple[Label, ...]:
        return tuple(self._labels[v])

    def _beats(self, stored: Label, l: Label) -> bool:
        if self.unbounded and math.isfinite(self._price[l.v]):
            return scalarized_dominates(l, stored, self._price[l.v])
        return dominates(stored, l)

    def dominated(self, l: Label) -> bool:
        return any(self._beats(stored, l) for stored in self._labels[l.v])

    def insert(self, l: Label):
        self._labels[l.v].append(l)

    def compact(self, v: int):
        """Drop stored labels dominated by an earlier-kept one."""
        kept: list[Label] = []
        for l in self._labels[v]:
            if not any(self._beats(k, l) for k in kept):
                kept.append(l)
        self._labels[v] = kept


def check_for_prune(frontier: Frontier, l: Label, mode: str | None = None) -> bool:
    """True when some stored label at l's vertex dominates l.

    mode overrides the frontier's own relation: "bounded" for three-way
    dominance, "unbounded" for the scalarized rule.  Never mutates the
    frontier.
    """
    if mode is None:
        return frontier.dominated(l)
    if mode not in ("bounded", "unbounded"):
        raise ValueError(f"unknown dominance mode {mode!r}")
    saved = frontier.unbounded
    frontier.unbounded = mode == "unbounded"
    try:
        return frontier.dominated(l)
    finally:
        frontier.unbounded = saved


def refuel_amount(c_here: float, c_next: float, q: float, d: float, q_max: float,
                  into_goal: bool) -> tuple[float, float]:
    """Amount to buy and resulting arrival fuel for one hop.

    Returns (amount, arrival_fuel).  Into the goal the purchase tops the
    tank to exactly the hop distance, so the goal is reached empty even
    when the local price beats the goal's.
    """
    if into_goal or c_here >= c_next:
        return d - q, 0.0
    return q_max - q, q_max - d


def expand(l: Label, reach: ReachGraph, inst: Instance,
           ctx: HeuristicContext | None = None) -> list[Label]:
    """Children of l: one purchase at l's vertex, one tankful hop.

    No child is created when the required purchase would be non-positive
    (such itineraries are subsumed by the refuel graph's transitive
    distances from the previous stop), when the target cannot refuel and is
    not the goal, or when the heuristic proves the goal unreachable from
    the target.
    """
    price = inst.graph.price
    c_here = price[l.v]
    children: list[Label] = []
    for v2, d in reach.succ[l.v]:
        into_goal = v2 == inst.goal
        if not into_goal:
            if math.isinf(price[v2]):
                continue
            if ctx is not None and math.isinf(ctx.d_to_goal[v2]):
                continue
        a, arrive = refuel_amount(c_here, price[v2], l.q, d, inst.q_max, into_goal)
        if a <= 0.0:
            continue
        children.append(Label(v2, l.g + a * c_here, arrive, l.k + 1, l, a))
    return children


def _coast_children(root: Label, reach: ReachGraph, inst: Instance,
                    ctx: HeuristicContext | None) -> list[Label]:
    """Free moves on the initial fuel, no purchase and no stop used.

    Only the start label can coast: later labels arrive with exactly the
    fuel their last purchase provided, and driving further on it is already
    covered by the previous stop's direct reach arcs.
    """
    price = inst.graph.price
    children: list[Label] = []
    for v2, d in reach.succ[root.v]:
        if d > root.q:
            continue
        if v2 != inst.goal:
            if math.isinf(price[v2]):
                continue
            if ctx is not None and math.isinf(ctx.d_to_goal[v2]):
                continue
        children.append(Label(v2, root.g, root.q - d, root.k, root, 0.0))
    return children


def _reconstruct(goal_label: Label, reach: ReachGraph) -> Solution:
    chain: list[Label] = []
    l: Label | None = goal_label
    while l is not None:
        chain.append(l)
        l = l.parent
    chain.reverse()
    route: list[tuple[int, float]] = [(chain[0].v, 0.0)]
    stops: list[tuple[int, float]] = []
    for lab in chain[1:]:
        d = reach.distance(lab.parent.v, lab.v)
        route.append((lab.v, d))
        if lab.refuel_at_parent > 0.0:
            stops.append((lab.parent.v, lab.refuel_at_parent))
    return Solution(
        stops=tuple(stops),
        route=tuple(route),
        total_cost=goal_label.g,
        arrival_fuel=tuple(lab.q for lab in chain),
    )


def rfastar_solve(
    inst: Instance,
    opts: SearchOptions | None = None,
    *,
    reach: ReachGraph | None = None,
    heuristic_cache: HeuristicCache | None = None,
    deadline: float | None = None,
    label_sink: list[Label] | None = None,
) -> tuple[Solution | Infeasible, SearchStats]:
    """Solve one instance; returns (Solution or Infeasible, stats).

    The refuel graph is computed on demand when not supplied.  label_sink,
    when given, receives every generated label (a testing hook).  deadline
    is a perf_counter timestamp; crossing it raises SolveTimeout carrying
    the partial stats.
    """
    opts = opts or SearchOptions()
    if opts.unbounded_stops and opts.disable_dominance:
        raise ValueError("dominance pruning cannot be disabled in unbounded mode")
    stats = SearchStats()
    if reach is None:
        reach = compute_reachable_sets(inst.graph, inst.q_max)

    ctx: HeuristicContext | None = None
    if opts.use_heuristic:
        t0 = perf_counter()
        if opts.use_cache:
            cache = heuristic_cache if heuristic_cache is not None else DEFAULT_CACHE
            ctx, hit = cache.get_or_build(inst.graph, inst.goal)
            stats.heuristic_build_time = 0.0 if hit else perf_counter() - t0
        else:
            ctx = build_heuristic(inst.graph, inst.goal)
            stats.heuristic_build_time = perf_counter() - t0

    t_search = perf_counter()
    price = inst.graph.price
    frontier = Frontier(price, unbounded=opts.unbounded_stops)
    heap: list[tuple[float, float, int, int, Label]] = []
    seq = count()

    def push(lbl: Label):
        h = h_for(ctx, lbl.v, lbl.q) if ctx is not None else 0.0
        heappush(heap, (lbl.g + h, -lbl.q, lbl.k, next(seq), lbl))

    root = Label(inst.start, 0.0, inst.q0, 0)
    if ctx is not None and math.isinf(ctx.d_to_goal[inst.start]):
        stats.search_time = perf_counter() - t_search
        return Infeasible(), stats
    stats.labels_generated += 1
    if label_sink is not None:
        label_sink.append(root)
    push(root)
    if inst.q0 > 0.0 and inst.start != inst.goal:
        for child in _coast_children(root, reach, inst, ctx):
            stats.labels_generated += 1
            if label_sink is not None:
                label_sink.append(child)
            push(child)

    while heap:
        if deadline is not None and perf_counter() > deadline:
            stats.search_time = perf_counter() - t_search
            raise SolveTimeout(stats)
        _, _, _, _, lbl = heappop(heap)
        if not opts.disable_dominance and frontier.dominated(lbl):
            stats.labels_pruned += 1
            continue
        frontier.insert(lbl)
        if lbl.v == inst.goal:
            stats.search_time = perf_counter() - t_search
            return _reconstruct(lbl, reach), stats
        if not opts.unbounded_stops and lbl.k >= inst.k_max:
            continue
        if math.isinf(price[lbl.v]):
            continue
        stats.labels_expanded += 1
        for child in expand(lbl, reach, inst, ctx):
            stats.labels_generated += 1
            if label_sink is not None:
                label_sink.append(child)
            if not opts.disable_dominance and frontier.dominated(child):
                stats.labels_pruned += 1
                continue
            push(child)

    stats.search_time = perf_counter() - t_search
    return Infeasible(), stats


def rfastar_solve_unbounded(
    inst: Instance,
    opts: SearchOptions | None = None,
    **kwargs,
) -> tuple[Solution | Infeasible, SearchStats]:
    """Variant without a stop limit, pruning with the scalarized rule."""
    opts = opts or SearchOptions()
    forced = SearchOptions(
        use_heuristic=opts.use_heuristic,
        use_cache=opts.use_cache,
        unbounded_stops=True,
        disable_dominance=False,
    )
    return rfastar_solve(inst, forced, **kwargs)


def refuel_schedule_for_route(
    vertices: tuple[int, ...],
    hop_fuels: tuple[float, ...],
    inst: Instance,
) -> tuple[float, tuple[float, ...]]:
    """Apply the fill-up / fill-enough rule along a fixed stop sequence.

    Returns (total cost, purchase amounts per stop).  Amounts are clamped
    at zero; a zero amount marks a visit the rule would not actually stop
    at.  The arrive-empty rule applies at the last stop of the route; a
    mid-route visit of the goal vertex is an ordinary stop.  Search labels
    terminate on their first goal arrival, so for any stop sequence the
    search can realise this matches expand() exactly.
    """
    price = inst.graph.price
    fuel = inst.q0
    cost = 0.0
    last = len(hop_fuels) - 1
    amounts: list[float] = []
    for i, d in enumerate(hop_fuels):
        here = vertices[i]
        a, _ = refuel_amount(price[here], price[vertices[i + 1]], fuel, d,
                             inst.q_max, i == last)
        a = max(a, 0.0)
        amounts.append(a)
        cost += a * price[here]
        fuel = fuel + a - d
    return cost, tuple(amounts)
