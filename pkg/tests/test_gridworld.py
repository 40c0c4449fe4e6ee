import math

import numpy as np
import pytest

from src.control import RdeParams, update_cache_and_dwell
from src.world import (
    GridWorld,
    MissionState,
    SensorModel,
    euclidean_distance,
    octile_distance,
    sense,
)


def _world(width=5, height=5, value=0.2, home=(0, 0)):
    return GridWorld(likelihood=np.full((height, width), value), home=home)


def test_euclidean_distance_examples():
    assert euclidean_distance((0, 0), (0, 0)) == 0
    assert euclidean_distance((0, 0), (3, 4)) == 5
    assert euclidean_distance((1, 1), (2, 2)) == math.sqrt(2)


def test_octile_distance_bounds_euclidean():
    assert octile_distance((0, 0), (3, 1)) == pytest.approx(2 + math.sqrt(2))
    for a, b in [((0, 0), (5, 2)), ((3, 3), (0, 7)), ((1, 4), (1, 4))]:
        assert octile_distance(a, b) >= euclidean_distance(a, b)


def test_likelihood_out_of_range_rejected():
    with pytest.raises(ValueError):
        GridWorld(likelihood=np.array([[0.0, 1.2]]))


def test_home_must_be_inside_grid():
    with pytest.raises(ValueError):
        _world(home=(5, 0))


def test_world_is_immutable_and_indexed_by_y_x():
    grid = np.zeros((3, 4))
    grid[2, 1] = 0.9
    world = GridWorld(likelihood=grid)
    assert (world.width, world.height) == (4, 3)
    assert world.value((1, 2)) == 0.9
    with pytest.raises(ValueError):
        world.likelihood[0, 0] = 0.5
    grid[0, 0] = 0.7
    assert world.value((0, 0)) == 0.0


def test_with_home_copies_world():
    world = _world()
    moved = world.with_home((3, 2))
    assert moved.home == (3, 2)
    assert world.home == (0, 0)
    assert np.array_equal(moved.likelihood, world.likelihood)


def test_aoi_mask_uses_truth_threshold():
    world = GridWorld(likelihood=np.array([[0.69, 0.7, 0.95]]), aoi_threshold_truth=0.7)
    assert world.aoi_mask().tolist() == [[False, True, True]]
    assert world.aoi_mask(0.9).tolist() == [[False, False, True]]


def test_sensor_model_validation():
    with pytest.raises(ValueError):
        SensorModel(radius=-1)
    with pytest.raises(ValueError):
        SensorModel(prior=1.5)


@pytest.mark.parametrize(
    "position, radius, expected",
    [((2, 2), 0, 1), ((2, 2), 1, 9), ((0, 0), 1, 4), ((2, 2), 2, 25), ((4, 0), 2, 9)],
)
def test_sense_chebyshev_ball(position, radius, expected):
    world = _world()
    sensor = SensorModel(radius=radius, prior=0.1)
    state = MissionState.initial(world, sensor, position, battery=10)
    newly = sense(world, sensor, state)
    assert len(newly) == expected
    assert int(state.sensed.sum()) == expected


def test_sense_sets_truth_on_sensed_cells_and_prior_elsewhere():
    grid = np.arange(25, dtype=float).reshape(5, 5) / 25.0
    world = GridWorld(likelihood=grid)
    sensor = SensorModel(radius=1, prior=0.05)
    state = MissionState.initial(world, sensor, (1, 1), battery=10)
    sense(world, sensor, state)
    assert np.array_equal(state.belief[state.sensed], grid[state.sensed])
    assert np.all(state.belief[~state.sensed] == 0.05)


def test_sense_is_idempotent_for_stationary_uav():
    world = GridWorld(likelihood=np.full((5, 5), 0.6))
    sensor = SensorModel(radius=1)
    state = MissionState.initial(world, sensor, (2, 2), battery=10)
    first = sense(world, sensor, state)
    belief, sensed = state.belief.copy(), state.sensed.copy()
    second = sense(world, sensor, state)
    assert len(first) == 9
    assert second == []
    assert np.array_equal(belief, state.belief)
    assert np.array_equal(sensed, state.sensed)


def test_sensing_leaves_caching_to_the_planner():
    grid = np.zeros((3, 3))
    grid[0, 2] = 0.8
    grid[1, 1] = 0.9
    world = GridWorld(likelihood=grid)
    sensor = SensorModel(radius=1)
    state = MissionState.initial(world, sensor, (1, 1), battery=10)
    newly = sense(world, sensor, state)
    assert state.cached == []
    update_cache_and_dwell(state, newly, RdeParams(lam=0.3))
    assert state.cached == [((2, 0), 0.8)]


def test_sense_returns_row_major_order():
    world = _world()
    sensor = SensorModel(radius=1)
    state = MissionState.initial(world, sensor, (1, 1), battery=10)
    newly = sense(world, sensor, state)
    assert newly == sorted(newly, key=lambda c: (c[1], c[0]))


def test_noisy_sensor_needs_rng_and_stays_in_range():
    world = GridWorld(likelihood=np.full((4, 4), 0.95))
    sensor = SensorModel(radius=1, noise_std=0.3)
    state = MissionState.initial(world, sensor, (1, 1), battery=10)
    with pytest.raises(ValueError):
        sense(world, sensor, state)
    sense(world, sensor, state, rng=np.random.default_rng(0))
    sensed = state.belief[state.sensed]
    assert np.all((sensed >= 0.0) & (sensed <= 1.0))


def test_initial_state_marks_start_visited():
    world = _world()
    state = MissionState.initial(world, SensorModel(), (3, 1), battery=50)
    assert state.is_visited((3, 1))
    assert state.visited.sum() == 1
    assert state.dwell == 0 and state.cached == []
