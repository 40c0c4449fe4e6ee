import math

import numpy as np
import pytest

from src.control import (
    RdeParams,
    combined_robustness,
    conditional_rob,
    depth_battery,
    dist_aoi,
    liveness_rob,
    mission_formula,
    monitor_robustness,
    neighbors,
    safety_rob,
)
from src.logic import And, Atom, Interval, Trace, desugar, robustness
from src.world import GridWorld, MissionState, SensorModel, sense


def _belief(p):
    return np.array([[p]])


def _state(world, position=(0, 0), battery=100.0, dwell=0, radius=1):
    sensor = SensorModel(radius=radius)
    state = MissionState.initial(world, sensor, position, battery=battery)
    sense(world, sensor, state)
    state.dwell = dwell
    return state


@pytest.mark.parametrize("p, expected", [(0.9, 40.0), (0.5, 0.0), (1.0, 50.0), (0.2, 0.0)])
def test_dist_aoi(p, expected):
    assert dist_aoi((0, 0), _belief(p), 0.5) == pytest.approx(expected)


def test_depth_battery_examples():
    assert depth_battery((45, 0), 100, 10, 1, (0, 0)) == 45.0
    assert depth_battery((0, 0), 10, 10, 1, (0, 0)) == 0.0
    assert depth_battery((50, 0), 20, 10, 1, (0, 0)) == 0.0


def test_params_validation():
    for bad in (dict(beta=0.0), dict(lam=1.0), dict(rho=0), dict(dwell_limit=0), dict(speed=0),
                dict(tau=0), dict(alpha=0), dict(b_min=-1.0), dict(ra_weight=-0.1)):
        with pytest.raises(ValueError):
            RdeParams(**bad)


def test_b_min_defaults_to_twice_the_diagonal():
    world = GridWorld(likelihood=np.zeros((40, 40)))
    assert RdeParams().resolve_b_min(world) == pytest.approx(2 * math.hypot(40, 40))
    assert RdeParams(b_min=5.0, speed=2.0).resolve_b_min(world) == 5.0


def test_safety_equals_depth_battery_on_random_inputs():
    rng = np.random.default_rng(3)
    world = GridWorld(likelihood=rng.random((8, 8)), home=(2, 3))
    params = RdeParams(b_min=10.0)
    for _ in range(1000):
        state = _state(world, battery=float(rng.uniform(0, 60)))
        cell = (int(rng.integers(8)), int(rng.integers(8)))
        assert safety_rob(cell, state, params, world) == depth_battery(cell, state.battery, 10.0, 1.0, world.home)


def test_safety_at_home_with_full_battery():
    world = GridWorld(likelihood=np.zeros((5, 5)))
    state = _state(world, battery=2000.0)
    assert safety_rob((0, 0), state, RdeParams(b_min=50.0), world) == 1950.0


def test_liveness_mirrors_dist_aoi():
    grid = np.array([[0.9, 0.5, 1.0]])
    world = GridWorld(likelihood=grid)
    state = _state(world, radius=2)
    params = RdeParams()
    assert [liveness_rob((x, 0), state, params) for x in range(3)] == pytest.approx([40.0, 0.0, 50.0])


def test_conditional_is_vacuous_below_dwell_limit():
    world = GridWorld(likelihood=np.array([[0.0, 0.75]]))
    params = RdeParams(dwell_limit=10)
    assert conditional_rob((1, 0), _state(world, dwell=0), params) == math.inf
    assert conditional_rob((1, 0), _state(world, dwell=10), params) == pytest.approx(25.0)
    assert conditional_rob((0, 0), _state(world, dwell=10), params) == 0.0


def test_combined_is_min_of_clauses():
    grid = np.zeros((1, 50))
    grid[0, 45] = 0.9
    world = GridWorld(likelihood=grid)
    state = _state(world, position=(45, 0), battery=100.0)
    state.belief[0, 45] = 0.9
    params = RdeParams(b_min=10.0)
    assert combined_robustness((45, 0), state, params, world) == pytest.approx(40.0)


def test_infeasible_return_zeroes_combined():
    world = GridWorld(likelihood=np.ones((1, 30)))
    state = _state(world, battery=12.0)
    state.belief[:] = 1.0
    assert combined_robustness((25, 0), state, RdeParams(b_min=10.0), world) == 0.0


def test_neighbors_counts():
    world = GridWorld(likelihood=np.zeros((5, 5)))
    assert len(neighbors((2, 2), world)) == 8
    assert neighbors((0, 0), world) == [(1, 0), (0, 1), (1, 1)]
    assert neighbors((0, 0), GridWorld(likelihood=np.zeros((1, 1)))) == []


def test_properties_over_random_states():
    rng = np.random.default_rng(11)
    params = RdeParams(b_min=8.0)
    bound = (1 - params.beta) * 100
    for _ in range(200):
        world = GridWorld(likelihood=rng.random((6, 6)), home=(int(rng.integers(6)), int(rng.integers(6))))
        state = _state(world, position=(int(rng.integers(6)), int(rng.integers(6))),
                       battery=float(rng.uniform(0, 40)), dwell=int(rng.integers(0, 15)), radius=2)
        for cell in world.cells():
            live = liveness_rob(cell, state, params)
            assert 0.0 <= live <= bound
            assert combined_robustness(cell, state, params, world) <= live
            assert safety_rob(cell, state, params, world) >= 0.0


def test_raising_candidate_belief_never_lowers_robustness():
    rng = np.random.default_rng(12)
    params = RdeParams(b_min=5.0)
    world = GridWorld(likelihood=rng.random((5, 5)))
    for _ in range(200):
        state = _state(world, battery=30.0, dwell=int(rng.integers(0, 12)), radius=4)
        cell = (int(rng.integers(5)), int(rng.integers(5)))
        before = combined_robustness(cell, state, params, world)
        state.belief[cell[1], cell[0]] = min(1.0, state.belief[cell[1], cell[0]] + float(rng.uniform(0, 0.5)))
        assert combined_robustness(cell, state, params, world) >= before


def test_mission_formula_shape():
    f = mission_formula()
    assert isinstance(f, And)
    assert str(f) == "((G[1,1] bat & F[1,1] aoi) & (stuck -> (aoi | X aoi)))"


FIXTURE_GRIDS = [
    np.array(
        [
            [0.0, 0.1, 0.2, 0.3, 0.4],
            [0.5, 0.6, 0.7, 0.8, 0.9],
            [1.0, 0.9, 0.8, 0.7, 0.6],
            [0.5, 0.4, 0.3, 0.2, 0.1],
            [0.0, 0.55, 0.95, 0.45, 0.75],
        ]
    ),
    np.zeros((5, 5)),
    np.pad(np.ones((1, 1)), 2, constant_values=0.2),
]


def _generic_mission_value(cell, state, params, world):
    """Mission formula over the two-sample decision trace, evaluated by the generic monitor."""
    b_min = params.resolve_b_min(world)
    bat = depth_battery(cell, state.battery, b_min, params.speed, world.home)
    aoi_now = dist_aoi(state.position, state.belief, params.beta)
    aoi_next = dist_aoi(cell, state.belief, params.beta)
    stuck = math.inf if state.dwell >= params.dwell_limit else -math.inf
    trace = Trace(length=2, distances={"bat": [bat, bat], "aoi": [aoi_now, aoi_next], "stuck": [stuck, stuck]})
    return robustness(desugar(mission_formula()), trace, 0)


@pytest.mark.parametrize("grid", FIXTURE_GRIDS)
@pytest.mark.parametrize("dwell", [0, 9, 10, 14])
@pytest.mark.parametrize("battery", [3.0, 12.0, 60.0])
def test_closed_form_matches_generic_monitor(grid, dwell, battery):
    world = GridWorld(likelihood=grid, home=(1, 1))
    params = RdeParams(b_min=4.0, dwell_limit=10)
    state = _state(world, position=(2, 3), battery=battery, dwell=dwell, radius=4)
    for cell in world.cells():
        expected = _generic_mission_value(cell, state, params, world)
        assert combined_robustness(cell, state, params, world) == expected
        assert monitor_robustness(cell, state, params, world) == expected


def test_until_bound_of_mission_clause():
    f = mission_formula()
    always_bat = f.left.left
    assert always_bat.interval == Interval(1, 1)
    assert always_bat.child == Atom("bat")
