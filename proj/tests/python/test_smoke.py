import math

import numpy as np
import pytest

import nnlif


@pytest.fixture
def grid():
    return nnlif.Grid(-4.0, 1.0, 2.0, 300)


def test_grid(grid):
    assert grid.cells == 300
    assert grid.reset_index == 250
    assert grid.spacing == pytest.approx(0.02)
    nodes = grid.nodes()
    assert nodes.shape == (301,)
    assert nodes[250] == pytest.approx(1.0)


def test_bad_input_raises_value_error():
    with pytest.raises(ValueError):
        nnlif.Grid(-4.0, 1.0, 2.0, 7)
    with pytest.raises(ValueError):
        nnlif.ModelParams(a0=0.0)
    with pytest.raises(ValueError):
        nnlif.parse_scenario("bogus = 1")


def test_gaussian_ic_mass(grid):
    p = nnlif.gaussian_ic(0.0, 0.5, grid)
    assert p[0] == 0.0 and p[-1] == 0.0
    assert nnlif.total_mass(p, grid) == pytest.approx(1.0, rel=1e-14)
    assert grid.spacing * p[1:-1].sum() == pytest.approx(1.0, rel=1e-14)


def test_semi_implicit_step_conserves_mass(grid):
    params = nnlif.ModelParams(b=0.5)
    state = nnlif.make_state(nnlif.gaussian_ic(0.0, 0.5, grid), grid, params)
    cfg = nnlif.StepConfig(1e-3)
    for _ in range(200):
        state = nnlif.semi_implicit_step(state, cfg, grid, params)
    assert state.t == pytest.approx(0.2)
    assert abs(nnlif.total_mass(state.p, grid) - 1.0) < 1e-12
    assert np.all(state.p[1:-1] > 0.0)
    assert state.n_rate == pytest.approx(nnlif.firing_rate(state.p[-2], grid, params))


def test_stationary_rates(grid):
    roots = nnlif.find_stationary_rates(nnlif.ModelParams(b=1.5), grid)
    assert len(roots) == 2
    assert roots[0] == pytest.approx(0.1924, abs=1e-2)
    linear = nnlif.find_stationary_rates(nnlif.ModelParams(), grid)
    assert len(linear) == 1
    # linear root is the inverse of the unit-rate stationary mass
    unit = nnlif.stationary_density(1.0, grid, nnlif.ModelParams())
    assert linear[0] == pytest.approx(1.0 / (grid.spacing * unit[1:-1].sum()), rel=1e-8)


def test_discrete_profile_is_a_fixed_point(grid):
    params = nnlif.ModelParams()
    prof = nnlif.discrete_stationary(0.12, grid, params)
    state = nnlif.make_state(prof.p_inf, grid, params)
    nxt = nnlif.semi_implicit_step(state, nnlif.StepConfig(1e-3), grid, params)
    assert np.max(np.abs(nxt.p - state.p)) < 1e-10
    rep = nnlif.entropy_dissipation(prof.p_inf, prof, 0.12, grid, params)
    assert rep.s == 0.0 and rep.bulk == 0.0 and rep.boundary == 0.0


def test_run_scenario_linear():
    cfg = nnlif.parse_scenario(
        """
        t_end = 1.0
        [ic]
        v0 = 0
        sigma0 = 0.5
        [outputs]
        rate_every = 10
        entropy = true
        snapshot_times = [0.5]
        """
    )
    out = nnlif.run_scenario(cfg)
    assert out["stop_reason"] == "completed"
    assert out["steps"] == 1000
    assert out["t"].shape == out["rate"].shape == (101,)
    assert np.all(np.diff(out["entropy"]) <= 1e-10)
    assert np.all(out["bulk"] <= 0.0) and np.all(out["boundary"] <= 0.0)
    assert len(out["snapshots"]) == 1
    assert abs(out["final_mass"] - 1.0) < 1e-12


def test_variant_run_and_oscillation_report():
    cfg = nnlif.parse_scenario(
        """
        b = -4
        v_ext = 10
        v_min = 0
        n = 60
        tau = 2e-3
        t_end = 4
        ic.v0 = 1
        ic.sigma0 = 0.0003
        variant.d = 0.1
        variant.gamma = 0.025
        variant.r0 = 0.2
        """
    )
    out = nnlif.run_scenario(cfg)
    total = out["mass"] + out["r"]
    assert np.max(np.abs(total - total[0])) < 1e-11
    rep = nnlif.oscillation_report(out["t"], out["rate"])
    assert rep["sustained"]
    assert rep["spacing_spread"] < 0.1


def test_refractory_update():
    assert nnlif.refractory_update(0.2, 0.0, 0.025, 0.002) == pytest.approx(0.184)
    assert nnlif.refractory_update(0.0, 5.0, 0.025, 0.002) == pytest.approx(0.01)


def test_temporal_convergence_orders():
    cfg = nnlif.parse_scenario("b = 0.5\nn = 96\ntau = 5e-3\nt_end = 0.5\nic.sigma0 = 0.5\n")
    rows = nnlif.convergence_order(cfg, "time", 3)
    assert len(rows) == 3
    for row in rows[:-1]:
        assert math.isclose(row["order_linf"], 1.0, abs_tol=0.05)
    assert rows[-1]["order_l1"] is None


def test_numerical_failure_is_runtime_error(grid):
    params = nnlif.ModelParams(a0=1.0, a1=0.5)
    with pytest.raises(RuntimeError):
        nnlif.firing_rate(200.0, grid, params)
