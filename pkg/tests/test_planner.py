import math

import numpy as np
import pytest

from src.control import (
    EmptyCacheError,
    RdeParams,
    conditional_rob,
    make_rng,
    pop_cached_point,
    rde_run,
    update_cache_and_dwell,
)
from src.world import GridWorld, MissionState, SensorModel, corpus_map_params, generate_synthetic_map, sense


def test_uniform_zero_map_walks_until_dwell_limit_then_goes_home(check_flight):
    world = GridWorld(likelihood=np.zeros((10, 10)), home=(4, 4))
    params = RdeParams()
    trajectory = rde_run(world, params, SensorModel(radius=1), make_rng(0), steps=500)
    kinds = [e.kind for e in trajectory.events]
    assert kinds[0] == "start"
    assert kinds[-2:] == ["go_home", "mission_end"]
    assert set(kinds[1:-2]) == {"mcmc_walk"}
    assert trajectory.events[-2].trigger == "stall"
    assert trajectory.stalls == 1
    walked = [row for row in trajectory.rows if row.event == "mcmc_walk"]
    assert params.dwell_limit - 1 <= len(walked) < 2 * params.dwell_limit
    check_flight(trajectory, world, params)


def test_frontier_fallback_sweeps_a_featureless_map(check_flight):
    world = GridWorld(likelihood=np.zeros((10, 10)), home=(4, 4))
    params = RdeParams(frontier_fallback=True)
    sensor = SensorModel(radius=1)
    trajectory = rde_run(world, params, sensor, make_rng(0), steps=500)
    fallbacks = [e for e in trajectory.events if e.kind == "frontier_move"]
    assert fallbacks and all(e.trigger == "stall" for e in fallbacks)
    assert trajectory.events[-2].kind == "go_home"
    assert trajectory.events[-2].trigger == "stall"
    seen = np.zeros(world.shape, dtype=bool)
    for cell in trajectory.cells:
        rows, cols = world.window(cell, sensor.radius)
        seen[rows, cols] = True
    assert seen.all()
    check_flight(trajectory, world, params)


@pytest.mark.parametrize("name", ["three_blobs", "five_blobs"])
def test_background_launch_keeps_exploring(name, check_flight):
    base = generate_synthetic_map(**corpus_map_params(name))
    params = RdeParams()
    for seed in range(10):
        rng = make_rng(seed)
        start = (int(rng.integers(base.width)), int(rng.integers(base.height)))
        world = base.with_home(start)
        trajectory = rde_run(world, params, SensorModel(radius=2), make_rng(seed), steps=2000, start=start)
        assert len(trajectory) > params.dwell_limit
        assert trajectory.events[1].kind in ("mcmc_move", "mcmc_walk")
        check_flight(trajectory, world, params)


def test_blob_next_to_start_attracts_first_decision(check_flight):
    grid = np.zeros((15, 15))
    grid[4:11, 5:12] = 0.95
    grid[7, 6] = 0.0
    world = GridWorld(likelihood=grid, home=(6, 7))
    params = RdeParams()
    trajectory = rde_run(world, params, SensorModel(radius=2), make_rng(3), steps=300)
    first = trajectory.events[1]
    assert first.kind == "mcmc_move"
    assert world.value(first.cell) == 0.95
    assert first.robustness >= params.rho
    for event in trajectory.events:
        if event.kind == "mcmc_move":
            assert event.robustness >= params.rho or event.robustness > event.origin_robustness
    check_flight(trajectory, world, params)


def test_fixed_seed_is_reproducible():
    world = generate_synthetic_map(20, 20, blobs=2, radius_min=2, radius_max=3, seed=5).with_home((3, 4))
    params = RdeParams()
    sensor = SensorModel(radius=2)
    a = rde_run(world, params, sensor, make_rng(42), steps=400)
    b = rde_run(world, params, sensor, make_rng(42), steps=400)
    assert a.to_frame().to_csv(index=False) == b.to_frame().to_csv(index=False)
    assert a.events == b.events


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("literal", [False, True])
def test_invariants_on_small_synthetic_runs(seed, literal, check_flight):
    world = generate_synthetic_map(20, 20, blobs=3, radius_min=2, radius_max=3, seed=seed)
    rng = make_rng(seed)
    start = (int(rng.integers(20)), int(rng.integers(20)))
    world = world.with_home(start)
    params = RdeParams(literal_sigma=literal, dwell_limit=5)
    trajectory = rde_run(world, params, SensorModel(radius=2), make_rng(seed), steps=400, start=start)
    check_flight(trajectory, world, params)


def test_tight_budget_respects_reserve(check_flight):
    world = generate_synthetic_map(20, 20, blobs=3, radius_min=2, radius_max=3, seed=8).with_home((10, 10))
    params = RdeParams(b_min=5.0, rho=10.0)
    trajectory = rde_run(world, params, SensorModel(radius=1), make_rng(1), steps=40)
    check_flight(trajectory, world, params)
    assert trajectory.rows[-1].battery >= 5.0 - 1e-9


def test_single_step_budget_ends_at_launch():
    world = GridWorld(likelihood=np.full((6, 6), 0.9), home=(2, 2))
    trajectory = rde_run(world, RdeParams(), SensorModel(), make_rng(0), steps=1)
    assert [r.event for r in trajectory.rows] == ["start", "mission_end"]
    assert trajectory.events[1].trigger == "reserve"


def test_csv_export_columns():
    world = GridWorld(likelihood=np.zeros((4, 4)))
    frame = rde_run(world, RdeParams(), SensorModel(), make_rng(0), steps=50).to_frame()
    assert list(frame.columns) == ["t", "x", "y", "battery", "robustness", "event"]


def _state(grid, position=(0, 0), radius=1):
    world = GridWorld(likelihood=np.asarray(grid, dtype=float))
    sensor = SensorModel(radius=radius)
    state = MissionState.initial(world, sensor, position, battery=100.0)
    newly = sense(world, sensor, state)
    return world, state, newly


def test_dwell_resets_on_likely_cell():
    _, state, newly = _state([[0.8, 0.0]])
    state.dwell = 4
    update_cache_and_dwell(state, newly, RdeParams(lam=0.3))
    assert state.dwell == 0


def test_dwell_reaches_limit_and_activates_conditional():
    world, state, newly = _state(np.zeros((3, 3)))
    params = RdeParams(lam=0.3, dwell_limit=10)
    for _ in range(10):
        update_cache_and_dwell(state, [], params)
    assert state.dwell == 10
    assert conditional_rob((1, 1), state, params) == 0.0


def test_cache_gains_sensed_cell_and_drops_it_once_visited():
    world, state, newly = _state([[0.0, 0.6, 0.1]])
    params = RdeParams(lam=0.3)
    update_cache_and_dwell(state, newly, params)
    assert state.cached == [((1, 0), 0.6)]
    state.position = (1, 0)
    state.mark_visited((1, 0))
    update_cache_and_dwell(state, [], params)
    assert state.cached == []


def test_pop_cached_point_prefers_likelihood_then_distance():
    _, state, _ = _state(np.zeros((5, 5)))
    state.cached = [((4, 4), 0.6), ((3, 3), 0.9)]
    assert pop_cached_point(state) == (3, 3)
    assert state.cached == [((4, 4), 0.6)]

    state.cached = [((4, 4), 0.7), ((1, 1), 0.7)]
    assert pop_cached_point(state) == (1, 1)

    state.position = (2, 2)
    state.cached = [((3, 2), 0.7), ((2, 1), 0.7)]
    assert pop_cached_point(state) == (2, 1)


def test_pop_from_empty_cache():
    _, state, _ = _state(np.zeros((2, 2)))
    with pytest.raises(EmptyCacheError):
        pop_cached_point(state)
    with pytest.raises(LookupError):
        pop_cached_point(state)


def test_stalls_with_cache_jump_to_cached_points(check_flight):
    grid = np.zeros((12, 12))
    grid[1, 1] = 0.6
    grid[10, 10] = 0.6
    world = GridWorld(likelihood=grid, home=(5, 5))
    params = RdeParams(alpha=2, rho=30.0)
    trajectory = rde_run(world, params, SensorModel(radius=6), make_rng(0), steps=200)
    counts = trajectory.event_counts()
    assert counts["cached_jump"] >= 1
    check_flight(trajectory, world, params)
    assert not math.isnan(trajectory.events[1].origin_robustness)
