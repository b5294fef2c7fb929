import math

import pytest

from gsp import (
    FuelGraph,
    Infeasible,
    Instance,
    brute_force_solve,
    compute_reachable_sets,
    dp_solve,
    gas_values,
    rfastar_solve,
    validate_solution,
)
from gsp.dp import build_layers

from conftest import A, B, O, T, random_instance, worked_example


class TestGasValues:
    def test_worked_example_levels(self, wx, wx_reach):
        g = wx.graph
        assert gas_values(wx_reach, g, A, goal=T) == [0.0, 4.0]  # fill-up from o
        assert gas_values(wx_reach, g, B, goal=T) == [0.0]  # no cheaper predecessor
        assert gas_values(wx_reach, g, T, goal=T) == [0.0]  # goal arrivals are empty

    def test_vertex_without_predecessors(self):
        g = FuelGraph.build([1.0, 2.0], [(0, 1, 1.0)])
        reach = compute_reachable_sets(g, 2.0)
        assert gas_values(reach, g, 0) == [0.0]

    def test_levels_are_sorted_and_deduplicated(self):
        inst = random_instance(3)
        reach = compute_reachable_sets(inst.graph, inst.q_max)
        for v in range(inst.graph.n):
            levels = gas_values(reach, inst.graph, v, goal=inst.goal)
            assert levels == sorted(set(levels))
            assert levels[0] == 0.0


class TestDpSolve:
    def test_worked_example_cost_and_cells(self, wx, wx_reach):
        result, stats = dp_solve(wx, reach=wx_reach)
        assert result.total_cost == 15.0
        table, layers = build_layers(wx, wx_reach)
        assert layers[1][table.state(A, 4.0)] == 12.0
        assert layers[1][table.state(B, 0.0)] == 10.0
        assert layers[2][table.state(T, 0.0)] == 15.0
        assert stats.dp_states_computed == wx.k_max * table.size

    def test_degenerate_start_equals_goal(self, wx):
        inst = Instance(wx.graph, O, O, 6.0, 2)
        result, _ = dp_solve(inst)
        assert result.total_cost == 0.0

    def test_single_stop_budget_is_infeasible(self):
        result, _ = dp_solve(worked_example(k_max=1))
        assert isinstance(result, Infeasible)

    def test_solution_replays_to_reported_cost(self, wx, wx_reach):
        result, _ = dp_solve(wx, reach=wx_reach)
        assert validate_solution(wx, result, wx_reach) == result.total_cost

    @pytest.mark.parametrize("seed", range(20))
    def test_agrees_with_search_and_oracle(self, seed):
        inst = random_instance(seed)
        reach = compute_reachable_sets(inst.graph, inst.q_max)
        dp_result, _ = dp_solve(inst, reach=reach)
        search_result, _ = rfastar_solve(inst, reach=reach)
        oracle_result = brute_force_solve(inst, reach=reach)
        if isinstance(dp_result, Infeasible):
            assert isinstance(search_result, Infeasible)
            assert isinstance(oracle_result, Infeasible)
        else:
            assert dp_result.total_cost == search_result.total_cost
            assert dp_result.total_cost == oracle_result.total_cost
            assert validate_solution(inst, dp_result, reach) == dp_result.total_cost

    @pytest.mark.parametrize("seed", range(8))
    def test_state_count_bound(self, seed):
        inst = random_instance(seed)
        reach = compute_reachable_sets(inst.graph, inst.q_max)
        _, stats = dp_solve(inst, reach=reach)
        bound = inst.k_max * sum(
            len(gas_values(reach, inst.graph, v, goal=inst.goal))
            for v in range(inst.graph.n)
        )
        assert stats.dp_states_computed <= bound

    @pytest.mark.parametrize("seed", range(8))
    def test_level_sets_bounded_by_indegree(self, seed):
        inst = random_instance(seed)
        reach = compute_reachable_sets(inst.graph, inst.q_max)
        for v in range(inst.graph.n):
            levels = gas_values(reach, inst.graph, v, goal=inst.goal)
            assert len(levels) <= reach.indegree(v) + 1

    @pytest.mark.parametrize("seed", range(8))
    def test_monotone_in_stop_budget(self, seed):
        inst = random_instance(seed)
        reach = compute_reachable_sets(inst.graph, inst.q_max)
        table, layers = build_layers(inst, reach)
        goal_state = table.state(inst.goal, 0.0)
        best = math.inf
        bests = []
        for layer in layers:
            best = min(best, float(layer[goal_state]))
            bests.append(best)
        assert bests == sorted(bests, reverse=True)

    def test_initial_fuel_matches_oracle(self):
        for seed in range(6):
            inst = random_instance(seed, with_q0=True)
            dp_result, _ = dp_solve(inst)
            oracle_result = brute_force_solve(inst)
            if isinstance(dp_result, Infeasible):
                assert isinstance(oracle_result, Infeasible)
            else:
                assert dp_result.total_cost == oracle_result.total_cost
