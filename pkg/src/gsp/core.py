"""Core domain types shared by every solver.

A problem instance is a directed graph of fuel stations (per-vertex price,
per-edge fuel consumption), a start and goal vertex, a tank capacity and a
limit on the number of refuelling stops.  Partial solutions are labels; full
solutions are refuel schedules that can be replayed and priced independently
of the solver that produced them.

All fuel and money quantities are 64-bit floats and comparisons are exact,
with no epsilon.  Run-time values are sums and products of input values, so
exactness holds whenever the inputs are integers or short decimals; integral
inputs are the recommended usage.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

NON_REFUELLABLE = math.inf
"""Price sentinel for vertices where no fuel can be bought."""


class InvalidInstance(ValueError):
    """A graph or instance violates a structural invariant."""


class SolutionError(ValueError):
    """Base class for refuel-schedule replay failures."""


class TankExceeded(SolutionError):
    """A refuel pushed the tank above its capacity."""


class FuelNegative(SolutionError):
    """A hop consumed more fuel than the tank held."""


class TooManyStops(SolutionError):
    """The schedule uses more refuelling stops than allowed."""


class BadEndpoints(SolutionError):
    """The route does not start at the start vertex or end at the goal."""


class InvalidSolution(SolutionError):
    """The solution object itself is malformed."""


class SolveTimeout(Exception):
    """Cooperative per-solve deadline expired.

    Carries the statistics gathered up to the point of interruption so that
    benchmark rows can report partial work.
    """

    def __init__(self, stats: "SearchStats"):
        super().__init__("solve deadline exceeded")
        self.stats = stats


@dataclass(frozen=True)
class FuelGraph:
    """Directed graph of fuel stations.

    price[v] is money per fuel unit at v (math.inf marks vertices where
    refuelling is impossible).  Edges carry strictly positive fuel
    consumption.  At most one arc is stored per ordered pair; duplicates are
    collapsed to the minimum fuel at construction.  Instances are immutable
    and safe to share between concurrent solver runs.
    """

    n: int
    price: tuple[float, ...]
    edges: tuple[tuple[int, int, float], ...]
    names: tuple[str, ...]
    succ: tuple[tuple[tuple[int, float], ...], ...] = field(repr=False)
    pred: tuple[tuple[tuple[int, float], ...], ...] = field(repr=False)

    @classmethod
    def build(
        cls,
        prices: list[float],
        edges: list[tuple[int, int, float]],
        names: list[str] | None = None,
        undirected: bool = False,
    ) -> "FuelGraph":
        n = len(prices)
        if n == 0:
            raise InvalidInstance("graph needs at least one vertex")
        for i, p in enumerate(prices):
            if not (p >= 0.0):  # also rejects NaN
                raise InvalidInstance(f"price of vertex {i} must be >= 0 or inf")
        if names is None:
            names = [f"v{i}" for i in range(n)]
        if len(names) != n or len(set(names)) != n:
            raise InvalidInstance("vertex names must be unique, one per vertex")

        arcs: dict[tuple[int, int], float] = {}
        for u, v, fuel in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInstance(f"edge ({u}, {v}) references an unknown vertex")
            if u == v:
                raise InvalidInstance(f"self-loop at vertex {u}")
            if not (fuel > 0.0):
                raise InvalidInstance(f"edge ({u}, {v}) fuel must be > 0")
            pairs = [(u, v), (v, u)] if undirected else [(u, v)]
            for key in pairs:
                old = arcs.get(key)
                if old is None or fuel < old:
                    arcs[key] = float(fuel)

        sorted_arcs = tuple(sorted((u, v, d) for (u, v), d in arcs.items()))
        out: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        rev: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for u, v, d in sorted_arcs:
            out[u].append((v, d))
            rev[v].append((u, d))
        return cls(
            n=n,
            price=tuple(float(p) for p in prices),
            edges=sorted_arcs,
            names=tuple(names),
            succ=tuple(tuple(a) for a in out),
            pred=tuple(tuple(sorted(a)) for a in rev),
        )

    def content_hash(self) -> str:
        """Stable digest of the graph content, used as a cache key."""
        blob = repr((self.n, self.price, self.edges, self.names)).encode()
        return hashlib.sha256(blob).hexdigest()

    def name_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}


@dataclass(frozen=True)
class Instance:
    """One routing problem: graph, endpoints, tank and stop budgets.

    q0 is the fuel already in the tank at the start vertex; the default 0
    matches the base formulation where the robot must refuel before moving.
    """

    graph: FuelGraph
    start: int
    goal: int
    q_max: float
    k_max: int
    q0: float = 0.0

    def __post_init__(self):
        if not (0 <= self.start < self.graph.n):
            raise InvalidInstance(f"start vertex {self.start} out of range")
        if not (0 <= self.goal < self.graph.n):
            raise InvalidInstance(f"goal vertex {self.goal} out of range")
        if not (self.q_max > 0):
            raise InvalidInstance("q_max must be positive")
        if not (isinstance(self.k_max, int) and self.k_max >= 1):
            raise InvalidInstance("k_max must be an integer >= 1")
        if not (0.0 <= self.q0 <= self.q_max):
            raise InvalidInstance("q0 must lie in [0, q_max]")


@dataclass(frozen=True, eq=False)
class Label:
    """Partial solution: at vertex v with cost g, fuel q on arrival, k stops.

    q is the fuel remaining when arriving at v, before any purchase there.
    Parent links form an append-only chain back to the initial label and are
    used only for path reconstruction; refuel_at_parent is the amount bought
    at the parent's vertex when this label was generated.
    """

    v: int
    g: float
    q: float
    k: int
    parent: "Label | None" = None
    refuel_at_parent: float = 0.0

    def key(self) -> tuple[int, float, float, int]:
        return (self.v, self.g, self.q, self.k)


@dataclass(frozen=True)
class Infeasible:
    """First-class result: no schedule satisfies the instance constraints."""


@dataclass(frozen=True)
class Solution:
    """A full refuel schedule.

    stops are (vertex, amount bought) in visiting order, every amount
    strictly positive.  route lists the refuel-graph hops as (vertex, fuel
    distance from the previous vertex), starting with (start, 0).
    arrival_fuel traces the tank content on arrival at each route vertex.
    """

    stops: tuple[tuple[int, float], ...]
    route: tuple[tuple[int, float], ...]
    total_cost: float
    arrival_fuel: tuple[float, ...]


@dataclass
class SearchStats:
    """Work counters shared by all solvers; times are in seconds."""

    labels_generated: int = 0
    labels_expanded: int = 0
    labels_pruned: int = 0
    dp_states_computed: int = 0
    heuristic_build_time: float = 0.0
    search_time: float = 0.0


def dominates(l: Label, l2: Label) -> bool:
    """Weak dominance at a shared vertex: cheaper, fuller and fewer stops.

    Equal labels dominate each other, so the first-arrived label wins ties.
    Raises ValueError when the labels sit at different vertices.
    """
    if l.v != l2.v:
        raise ValueError(f"labels at different vertices: {l.v} vs {l2.v}")
    return l.g <= l2.g and l.q >= l2.q and l.k <= l2.k


def scalarized_dominates(l: Label, l2: Label, c_v: float) -> bool:
    """Stop-count-free pruning rule for the unbounded variant.

    True when l2 plus buying the fuel gap q(l) - q(l2) at the local price
    c_v is no more expensive than l, i.e. l can be discarded in favour of
    l2.  c_v must be the finite price at the shared vertex; callers fall
    back to plain dominance where no fuel is sold.
    """
    if l.v != l2.v:
        raise ValueError(f"labels at different vertices: {l.v} vs {l2.v}")
    if not math.isfinite(c_v):
        raise ValueError("scalarized dominance needs a finite vertex price")
    return l2.g + (l.q - l2.q) * c_v <= l.g


def validate_solution(inst: Instance, sol: Solution, reach=None) -> float:
    """Replay a schedule hop by hop and return the recomputed total cost.

    Hops are priced with the refuel graph's minimum-fuel distances.  Raises
    TankExceeded, FuelNegative, TooManyStops or BadEndpoints naming the
    first violation, and InvalidSolution for malformed schedules.
    """
    from .reach import compute_reachable_sets

    if reach is None:
        reach = compute_reachable_sets(inst.graph, inst.q_max)
    if not sol.route:
        raise InvalidSolution("route is empty")
    names = inst.graph.names
    if sol.route[0][0] != inst.start:
        raise BadEndpoints(
            f"route starts at {names[sol.route[0][0]]}, expected {names[inst.start]}"
        )
    if sol.route[-1][0] != inst.goal:
        raise BadEndpoints(
            f"route ends at {names[sol.route[-1][0]]}, expected {names[inst.goal]}"
        )
    if len(sol.stops) > inst.k_max:
        raise TooManyStops(f"{len(sol.stops)} stops exceed the limit {inst.k_max}")
    for j, (v, amount) in enumerate(sol.stops):
        if not (amount > 0.0):
            raise InvalidSolution(f"stop {j} at {names[v]} buys a non-positive amount")

    fuel = inst.q0
    cost = 0.0
    next_stop = 0
    verts = [v for v, _ in sol.route]
    for i, v in enumerate(verts):
        if next_stop < len(sol.stops) and sol.stops[next_stop][0] == v:
            amount = sol.stops[next_stop][1]
            if math.isinf(inst.graph.price[v]):
                raise InvalidSolution(f"stop {next_stop} at non-refuellable {names[v]}")
            fuel += amount
            cost += amount * inst.graph.price[v]
            if fuel > inst.q_max:
                raise TankExceeded(
                    f"stop {next_stop} at {names[v]}: tank {fuel} exceeds {inst.q_max}"
                )
            next_stop += 1
        if i + 1 < len(verts):
            d = reach.distance(v, verts[i + 1])
            if d is None:
                raise FuelNegative(
                    f"hop {i} {names[v]}->{names[verts[i + 1]]}: "
                    "no tankful transition exists"
                )
            fuel -= d
            if fuel < 0.0:
                raise FuelNegative(
                    f"hop {i} {names[v]}->{names[verts[i + 1]]}: fuel drops to {fuel}"
                )
    if next_stop != len(sol.stops):
        raise InvalidSolution(
            f"stop {next_stop} at {names[sol.stops[next_stop][0]]} "
            "does not match the route order"
        )
    return cost
