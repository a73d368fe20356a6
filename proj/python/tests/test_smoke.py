import json

import numpy as np
import pytest

import hermweb as hw


def bump_metric(points=32):
    grid = hw.Grid(2, [1, 1, points, points])
    x2 = grid.coordinates()[:, 2].reshape(grid.shape)
    g = np.zeros((2, 2) + tuple(grid.shape), dtype=complex)
    g[0, 0] = 1 + 0.5 * np.cos(2 * np.pi * x2)
    g[1, 1] = 1
    return grid, hw.Metric(grid, g)


def test_flat_metric_is_ricci_flat_and_kahler():
    grid = hw.Grid(2, [8, 8, 8, 8])
    g = hw.Metric.identity(grid)
    assert hw.ricci_norm(g) == 0.0
    report = hw.classify(g, 1e-10)
    assert report.kahler and report.balanced and report.astheno_kahler_vacuous


def test_conformal_flatten_kills_ricci():
    _, g = bump_metric()
    assert hw.ricci_norm(g) > 1.0
    assert hw.ricci_norm(hw.conformal_flatten(g)) <= 1e-10


def test_chern_ricci_array_shape():
    grid, g = bump_metric(16)
    ric = hw.chern_ricci(g)
    assert ric.shape == (2, 2, 1, 1, 16, 16)
    assert np.abs(ric - np.conj(np.swapaxes(ric, 0, 1))).max() < 1e-12


def test_solve_ma2_returns_ricci_flat_metric():
    grid, g = bump_metric(64)
    F = hw.ricci_potential(g)
    sol = hw.solve_ma2(g, F, tol=1e-10)
    assert sol["residual"] <= 1e-10
    assert hw.ricci_norm(sol["metric"]) <= 1e-6
    assert abs(np.mean(sol["phi"])) < 1e-12


def test_solver_failure_is_raised():
    grid, g = bump_metric(64)
    with pytest.raises(hw.SolverFailure):
        hw.solve_ma2(g, hw.ricci_potential(g), tol=1e-10, max_iter=1)


def test_expression_round_trip_and_errors():
    e = hw.parse_expr("1 + 0.5*cos(2*pi*x1)", 2)
    assert hw.parse_expr(str(e), 2) == e
    with pytest.raises(hw.ParseError):
        hw.parse_expr("cos(", 2)
    grid = hw.Grid(2, [8, 1, 1, 1])
    with pytest.raises(hw.DomainError):
        hw.evaluate(hw.parse_expr("1/x1", 2), grid)


def test_examples():
    assert hw.yoshihara_check(1000)["passed"]
    assert hw.flat_volume_descent_check()["passed"]
    assert hw.hopf_check(hw.hopf_sample(2, 10, 3), 2)["passed"]
    assert hw.nakamura_check(hw.nakamura_sample([0.1], 10, 3))["passed"]


def test_run_command_exit_codes(tmp_path):
    spec = tmp_path / "flat.spec"
    spec.write_text("[manifold]\nn = 2\ngrid = 8,8,1,1\n[metric]\ng11 = 1\ng22 = 1\n")
    code, text = hw.run_command("classify", spec=str(spec))
    assert code == 0
    flags = json.loads(text)["results"]["classification"]
    assert all(flags[k]["flag"] for k in ("kahler", "balanced", "gauduchon"))
    code, _ = hw.run_command("classify", spec=str(tmp_path / "missing.spec"))
    assert code == 1
