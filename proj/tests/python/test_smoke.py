import os
import pathlib

import numpy as np
import pytest

import firefront

SCENARIOS = pathlib.Path(
    os.environ.get(
        "FIREFRONT_SCENARIO_DIR",
        pathlib.Path(__file__).resolve().parents[2] / "scenarios",
    )
)

TINY_SCENARIO = """
[grid]
nx = 21
ny = 21
x0 = -1.05
y0 = -1.05
dx = 0.1
dy = 0.1
[wind]
ux = 0.2
uy = 0.1
[front]
center = [0, 0]
radius = 0.35
[time]
t0 = 0
tf = 0.1
dt = 0.05
[truth]
p = [3, 0.4, 0.4, 0.5, 0.5, 0.5, 0.02, 0.02]
"""


@pytest.fixture(scope="module")
def tiny(tmp_path_factory):
    path = tmp_path_factory.mktemp("scenario") / "tiny.toml"
    path.write_text(TINY_SCENARIO)
    return firefront.load_scenario(str(path))


def test_load_bundled_scenario():
    s = firefront.load_scenario(str(SCENARIOS / "nowind_flat.toml"))
    assert s.grid.nx == 101 and s.grid.ny == 101
    assert s.tf == 0.5
    assert len(s.truth) == 8
    lo, hi = s.bounds
    assert len(lo) == 8 and len(hi) == 8
    assert s.initial_phi.shape == (101, 101)


def test_load_missing_scenario_raises_valueerror():
    with pytest.raises(ValueError):
        firefront.load_scenario("/no/such/scenario.toml")


def test_simulate_shapes_and_initial_front(tiny):
    times, phi = firefront.simulate(tiny)
    assert phi.shape == (len(times), 21, 21)
    assert times[0] == tiny.t0 and times[-1] == tiny.tf
    assert np.array_equal(phi[0], tiny.initial_phi)
    # burnt area grows
    burnt = [(frame >= 0).sum() for frame in phi]
    assert burnt == sorted(burnt)


def test_measurements_are_sign_rasters(tiny):
    times, meas = firefront.generate_measurements(tiny)
    assert meas.shape[0] == len(times)
    assert set(np.unique(meas)) == {-1.0, 1.0}


def test_evaluate_truth_scores_perfectly(tiny):
    times, meas = firefront.generate_measurements(tiny)
    res = firefront.evaluate(tiny, tiny.truth, times, meas)
    assert res["J"] == 0
    assert all(row["ssi"] == 1.0 for row in res["similarity"])


def test_estimate_runs_within_budget(tiny):
    times, meas = firefront.generate_measurements(tiny)
    rep = firefront.estimate(tiny, times, meas, seed=3, max_evals=25)
    assert rep["evaluations"] <= 25
    assert rep["J"] >= 0
    assert len(rep["p_hat"]) == 8
    assert rep["trace"], "expected a nonempty search trace"
    assert rep["stop"] in {"mesh_tol", "step_tol", "fval_tol", "max_iter", "time_budget"}


def test_forecast_zero_horizon_redistances(tiny):
    times, meas = firefront.generate_measurements(tiny)
    ftimes, phi = firefront.forecast(tiny, tiny.truth, meas[0], 0.0)
    assert list(ftimes) == [tiny.t0]
    assert np.array_equal(phi[0] >= 0, meas[0] >= 0)


def test_signed_distance_from_mask():
    mask = np.zeros((5, 7))
    mask[2, 3] = 1
    phi = firefront.signed_distance_from_mask(mask)
    assert phi.shape == (5, 7)
    assert phi[2, 3] == 0.5
    assert phi[2, 4] == -0.5
    assert np.all((phi > 0) == (mask > 0))


def test_extract_contours_circle():
    n = 41
    y, x = np.mgrid[0:n, 0:n] * 0.05 - 1.0
    phi = 0.6 - np.hypot(x, y)
    lines = firefront.extract_contours(phi, x0=-1.025, y0=-1.025, dx=0.05, dy=0.05)
    assert len(lines) == 1
    pts, closed = lines[0]
    assert closed
    radii = np.hypot(pts[:, 0], pts[:, 1])
    assert np.abs(radii - 0.6).max() < 0.05


def test_similarity_and_relative_error():
    a = np.ones((4, 4))
    a[0, 0] = -1
    scores = firefront.similarity(a, a)
    assert scores["ssi"] == 1.0 and scores["jsc"] == 1.0 and scores["ks"] == 1.0
    assert firefront.relative_error([1.0, 1.0], [1.0, 1.0]) == 0.0
    with pytest.raises(ValueError):
        firefront.relative_error([1.0], [1.0, 2.0])


def test_minimize_python_objective():
    calls = []

    def objective(x):
        calls.append(1)
        return (x[0] - 0.3) ** 2 + (x[1] + 0.2) ** 2

    res = firefront.minimize(objective, [-1.0, -1.0], [1.0, 1.0], seed=1, tol=1e-6)
    assert abs(res["x"][0] - 0.3) < 1e-3
    assert abs(res["x"][1] + 0.2) < 1e-3
    assert res["evaluations"] == len(calls)

    # threaded polling must serialize callbacks through the interpreter
    res2 = firefront.minimize(
        objective, [-1.0, -1.0], [1.0, 1.0], seed=1, tol=1e-4, parallel_poll=True
    )
    assert abs(res2["x"][0] - 0.3) < 1e-2
