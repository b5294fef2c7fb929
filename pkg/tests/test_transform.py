import pytest

from gsp import (
    Infeasible,
    Instance,
    apply_initial_fuel_transform,
    brute_force_solve,
    rfastar_solve,
)
from gsp.transform import TransformInapplicable

from conftest import random_instance, worked_example


def test_empty_tank_is_rejected():
    with pytest.raises(TransformInapplicable):
        apply_initial_fuel_transform(worked_example())


def test_full_tank_is_rejected():
    with pytest.raises(TransformInapplicable):
        apply_initial_fuel_transform(worked_example(q0=6.0))


def test_construction_shape():
    inst = worked_example(q0=2.0)
    out = apply_initial_fuel_transform(inst)
    g = out.graph
    assert g.n == inst.graph.n + 1
    assert out.start == inst.graph.n
    assert out.k_max == inst.k_max + 1
    assert out.q0 == 0.0
    assert g.price[out.start] == 0.0
    assert g.succ[out.start] == ((inst.start, inst.q_max - inst.q0),)


def test_pseudo_stop_fills_up_for_free():
    inst = worked_example(q0=2.0)
    out = apply_initial_fuel_transform(inst)
    result, _ = rfastar_solve(out)
    vertex, amount = result.stops[0]
    assert vertex == out.start
    assert amount == inst.q_max
    assert result.arrival_fuel[1] == inst.q0  # delivered exactly q0 at o


def test_worked_example_costs_agree():
    inst = worked_example(q0=2.0)
    native, _ = rfastar_solve(inst)
    transformed, _ = rfastar_solve(apply_initial_fuel_transform(inst))
    oracle = brute_force_solve(inst)
    assert native.total_cost == transformed.total_cost == oracle.total_cost


@pytest.mark.parametrize("seed", range(15))
def test_native_transformed_and_oracle_agree(seed):
    inst = random_instance(seed, with_q0=True)
    native, _ = rfastar_solve(inst)
    transformed, _ = rfastar_solve(apply_initial_fuel_transform(inst))
    oracle = brute_force_solve(inst)
    if isinstance(native, Infeasible):
        assert isinstance(transformed, Infeasible)
        assert isinstance(oracle, Infeasible)
    else:
        assert native.total_cost == transformed.total_cost
        assert native.total_cost == oracle.total_cost


def test_pseudo_vertex_name_avoids_collisions():
    from gsp import FuelGraph

    g = FuelGraph.build([1.0, 1.0], [(0, 1, 2.0)], names=["vp", "t"])
    inst = Instance(g, 0, 1, 4.0, 1, q0=1.0)
    out = apply_initial_fuel_transform(inst)
    assert len(set(out.graph.names)) == out.graph.n
