from pathlib import Path
import sys

import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the full golden experiments")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full 100-trial golden runs, enabled with --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def _check_flight(trajectory, world, params):
    from src.world import euclidean_distance

    rows = trajectory.rows
    assert rows[0].event == "start"
    assert rows[-1].event == "mission_end"
    assert [e.kind for e in trajectory.events].count("mission_end") == 1
    assert trajectory.events[-1].kind == "mission_end"
    assert trajectory.safety_violations == 0
    assert trajectory.ended_at_home
    assert [r.t for r in rows] == list(range(len(rows)))

    for prev, row in zip(rows, rows[1:]):
        step = max(abs(prev.x - row.x), abs(prev.y - row.y))
        assert step <= 1
        if step == 1:
            assert row.battery == pytest.approx(prev.battery - euclidean_distance(prev.cell, row.cell) / params.speed)
        else:
            assert row.event == "mission_end" and row.battery == prev.battery

    for row in rows:
        assert row.battery >= 0.0
        assert row.battery >= euclidean_distance(row.cell, world.home) / params.speed - 1e-9

    for event in trajectory.events:
        if event.kind == "mcmc_move":
            assert event.robustness > params.rho or event.robustness > event.origin_robustness

    # exploration targets are never cells the UAV has already occupied
    for event in trajectory.events:
        if event.kind in ("mcmc_move", "mcmc_walk", "cached_jump", "frontier_move"):
            assert event.cell not in {row.cell for row in rows[: event.step + 1]}
    assert trajectory.stall_resolutions() == trajectory.stalls


@pytest.fixture
def check_flight():
    """Assert the battery, adjacency and event invariants every finished flight must hold."""
    return _check_flight
