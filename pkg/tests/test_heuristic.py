import math

import pytest

from gsp import (
    FuelGraph,
    HeuristicCache,
    Label,
    build_heuristic,
    h_value,
    heuristic_cache_get,
    rfastar_solve,
)
from gsp.heuristic import h_for
from gsp.search import SearchOptions

from conftest import A, B, O, T, random_instance, worked_example, worked_example_graph


def test_worked_example_context():
    ctx = build_heuristic(worked_example_graph(), T)
    assert ctx.d_to_goal == (7.0, 5.0, 5.0, 0.0)
    assert ctx.c_min == 1.0


def test_h_of_known_labels():
    ctx = build_heuristic(worked_example_graph(), T)
    assert h_value(ctx, Label(B, 10.0, 0.0, 1)) == 5.0
    assert h_value(ctx, Label(A, 12.0, 4.0, 1)) == 1.0
    assert h_value(ctx, Label(T, 15.0, 0.0, 2)) == 0.0
    assert h_value(ctx, Label(T, 0.0, 6.0, 0)) == 0.0


def test_unreachable_vertex_gets_infinite_estimate():
    g = FuelGraph.build([1.0, 1.0, 1.0], [(0, 1, 1.0), (2, 1, 1.0)])
    ctx = build_heuristic(g, 0)
    assert math.isinf(ctx.d_to_goal[2])
    assert math.isinf(h_for(ctx, 2, 0.0))


def test_all_non_refuellable_degenerates_to_zero():
    g = FuelGraph.build([math.inf, math.inf, 2.0], [(0, 2, 1.0), (1, 2, 1.0)],
                        undirected=True)
    ctx = build_heuristic(g, 2)
    assert ctx.c_min == 0.0
    assert h_for(ctx, 0, 0.0) == 0.0


def test_estimate_is_nonnegative_and_monotone_in_fuel():
    ctx = build_heuristic(worked_example_graph(), T)
    for v in range(4):
        values = [h_for(ctx, v, q / 2) for q in range(0, 17)]
        assert all(val >= 0.0 for val in values)
        assert values == sorted(values, reverse=True)


def test_surplus_fuel_floors_at_zero():
    ctx = build_heuristic(worked_example_graph(), T)
    assert h_for(ctx, B, 6.0) == 0.0  # 5 fuel needed, 6 at hand


class TestCache:
    def test_hit_skips_the_dijkstra(self):
        cache = HeuristicCache()
        g = worked_example_graph()
        ctx1, hit1 = cache.get_or_build(g, T)
        ctx2, hit2 = cache.get_or_build(g, T)
        assert not hit1 and hit2
        assert ctx1 is ctx2

    def test_cached_solve_reports_zero_build_time(self):
        cache = HeuristicCache()
        inst = worked_example()
        opts = SearchOptions(use_cache=True)
        _, first = rfastar_solve(inst, opts, heuristic_cache=cache)
        _, second = rfastar_solve(inst, opts, heuristic_cache=cache)
        assert first.heuristic_build_time > 0.0
        assert second.heuristic_build_time == 0.0

    def test_distinct_goals_get_distinct_contexts(self):
        cache = HeuristicCache()
        g = worked_example_graph()
        ctx_t = heuristic_cache_get(cache, g, T)
        ctx_o = heuristic_cache_get(cache, g, O)
        assert ctx_t.goal != ctx_o.goal
        assert ctx_t.d_to_goal != ctx_o.d_to_goal

    def test_cache_disabled_rebuilds_every_time(self):
        inst = worked_example()
        _, s1 = rfastar_solve(inst, SearchOptions(use_cache=False))
        _, s2 = rfastar_solve(inst, SearchOptions(use_cache=False))
        assert s1.heuristic_build_time > 0.0
        assert s2.heuristic_build_time > 0.0


@pytest.mark.parametrize("seed", range(6))
def test_identical_context_regardless_of_cache_path(seed):
    inst = random_instance(seed)
    direct = build_heuristic(inst.graph, inst.goal)
    cached = heuristic_cache_get(HeuristicCache(), inst.graph, inst.goal)
    assert direct == cached
