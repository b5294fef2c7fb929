"""Graph, solution and reach-cache files.

Graphs are JSON documents:

    {"directed": false,
     "vertices": [{"id": "o", "price": 2}, {"id": "t", "price": null}],
     "edges": [{"from": "o", "to": "a", "fuel": 2}]}

A null price marks a vertex where refuelling is impossible.  Undirected
files are expanded to two arcs on ingestion and always written back in
directed form, so parse(write(g)) reproduces g exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .core import NON_REFUELLABLE, FuelGraph, Instance, SearchStats, Solution
from .reach import ReachGraph


class ParseError(ValueError):
    """The file is not valid JSON."""


class SchemaError(ValueError):
    """The JSON is well-formed but violates the graph schema."""


def parse_graph(text: str) -> FuelGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    directed = doc.get("directed", True)
    if not isinstance(directed, bool):
        raise SchemaError("directed must be a boolean")
    vertices = doc.get("vertices")
    edges = doc.get("edges")
    if not isinstance(vertices, list) or not vertices:
        raise SchemaError("vertices must be a non-empty list")
    if not isinstance(edges, list):
        raise SchemaError("edges must be a list")

    names: list[str] = []
    prices: list[float] = []
    index: dict[str, int] = {}
    for i, entry in enumerate(vertices):
        if not isinstance(entry, dict) or "id" not in entry:
            raise SchemaError(f"vertices[{i}] must be an object with an id")
        vid = str(entry["id"])
        if vid in index:
            raise SchemaError(f"vertices[{i}].id duplicates {vid!r}")
        price = entry.get("price")
        if price is None:
            p = NON_REFUELLABLE
        elif isinstance(price, (int, float)) and not isinstance(price, bool) and price >= 0:
            p = float(price)
        else:
            raise SchemaError(f"vertices[{i}].price must be >= 0 or null")
        index[vid] = i
        names.append(vid)
        prices.append(p)

    arcs: list[tuple[int, int, float]] = []
    for i, entry in enumerate(edges):
        if not isinstance(entry, dict):
            raise SchemaError(f"edges[{i}] must be an object")
        for key in ("from", "to", "fuel"):
            if key not in entry:
                raise SchemaError(f"edges[{i}].{key} is missing")
        for key in ("from", "to"):
            if str(entry[key]) not in index:
                raise SchemaError(f"edges[{i}].{key} references unknown vertex {entry[key]!r}")
        fuel = entry["fuel"]
        if not isinstance(fuel, (int, float)) or isinstance(fuel, bool) or not fuel > 0:
            raise SchemaError(f"edges[{i}].fuel must be > 0")
        u, v = index[str(entry["from"])], index[str(entry["to"])]
        if u == v:
            raise SchemaError(f"edges[{i}] is a self-loop at {entry['from']!r}")
        arcs.append((u, v, float(fuel)))

    return FuelGraph.build(prices, arcs, names=names, undirected=not directed)


def write_graph(graph: FuelGraph) -> str:
    doc = {
        "directed": True,
        "vertices": [
            {"id": graph.names[v],
             "price": None if math.isinf(graph.price[v]) else graph.price[v]}
            for v in range(graph.n)
        ],
        "edges": [
            {"from": graph.names[u], "to": graph.names[v], "fuel": d}
            for u, v, d in graph.edges
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def load_graph(path: str | Path) -> FuelGraph:
    return parse_graph(Path(path).read_text())


def save_graph(graph: FuelGraph, path: str | Path):
    Path(path).write_text(write_graph(graph))


def solution_to_json(graph: FuelGraph, sol: Solution, stats: SearchStats | None = None) -> str:
    doc = {
        "cost": sol.total_cost,
        "stops": [{"vertex": graph.names[v], "amount": a} for v, a in sol.stops],
        "route": [graph.names[v] for v, _ in sol.route],
        "stats": stats.__dict__ if stats is not None else {},
    }
    return json.dumps(doc, indent=2) + "\n"


def solution_from_json(graph: FuelGraph, text: str) -> tuple[Solution, float]:
    """Rebuild a Solution from its JSON form; returns (solution, stated cost).

    Hop distances are not stored in the file; validation replays hops with
    refuel-graph distances, so zeros are used as placeholders.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    index = graph.name_index()
    try:
        stops = tuple((index[s["vertex"]], float(s["amount"])) for s in doc["stops"])
        route = tuple((index[v], 0.0) for v in doc["route"])
        cost = float(doc["cost"])
    except (KeyError, TypeError) as e:
        raise SchemaError(f"solution document is malformed: {e}") from None
    sol = Solution(stops=stops, route=route, total_cost=cost, arrival_fuel=())
    return sol, cost


def save_reach_cache(reach: ReachGraph, graph: FuelGraph, path: str | Path):
    doc = {
        "graph_hash": graph.content_hash(),
        "q_max": reach.q_max,
        "succ": [[[v, d] for v, d in entries] for entries in reach.succ],
    }
    Path(path).write_text(json.dumps(doc) + "\n")


def load_reach_cache(graph: FuelGraph, q_max: float, path: str | Path) -> ReachGraph | None:
    """Return the cached reach graph when it matches (graph, q_max)."""
    p = Path(path)
    if not p.exists():
        return None
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError:
        return None
    if doc.get("graph_hash") != graph.content_hash() or doc.get("q_max") != q_max:
        return None
    succ = tuple(tuple((int(v), float(d)) for v, d in entries) for entries in doc["succ"])
    pred: list[list[tuple[int, float]]] = [[] for _ in range(graph.n)]
    for u, entries in enumerate(succ):
        for v, d in entries:
            pred[v].append((u, d))
    dist = tuple({v: d for v, d in entries} for entries in succ)
    return ReachGraph(
        n=graph.n,
        q_max=float(q_max),
        succ=succ,
        pred=tuple(tuple(sorted(p_)) for p_ in pred),
        _dist=dist,
    )


def resolve_instance(
    graph: FuelGraph,
    start: str,
    goal: str,
    q_max: float,
    k_max: int,
    q0: float = 0.0,
) -> Instance:
    index = graph.name_index()
    if start not in index:
        raise SchemaError(f"unknown start vertex {start!r}")
    if goal not in index:
        raise SchemaError(f"unknown goal vertex {goal!r}")
    return Instance(graph, index[start], index[goal], float(q_max), int(k_max), float(q0))
