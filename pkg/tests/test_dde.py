import math

import numpy as np
import pytest

from halfcavity.analytic import amplitude_series
from halfcavity.core import ConfigInvalid, Params
from halfcavity.dde import IntegratorConfig, integrate, max_deviation

from oracles import window2_closed_form


def test_exponential_before_return():
    tr = integrate(Params(1.0, 1.0, 0.3), IntegratorConfig(t_max=1.0))
    assert tr.values[0] == 1 + 0j
    assert np.max(np.abs(tr.values - np.exp(-0.5 * tr.times))) <= 1e-10


def test_matches_closed_form_at_two_delays():
    tr = integrate(Params(1.0, 1.0, 0.0), IntegratorConfig(t_max=2.0))
    assert tr.times[-1] == 2.0
    assert tr.values[-1] == pytest.approx(window2_closed_form(1, 1, 0, 2.0), abs=1e-10)


def test_zero_delay_drive_cancels_decay():
    tr = integrate(Params(1.0, 0.0, 0.0), IntegratorConfig(t_max=5.0))
    assert np.all(tr.values == 1 + 0j)


def test_zero_delay_general_phase_routes_to_closed_form():
    p = Params(2.0, 0.0, 1.0)
    tr = integrate(p, IntegratorConfig(t_max=3.0, steps_per_delay=64))
    assert len(tr.grid) == 65
    assert np.allclose(tr.values, amplitude_series(p, tr.times), atol=1e-15)


@pytest.mark.parametrize("p", [Params(1.0, 1.0, 0.0), Params(0.1, 1.0, math.pi)])
def test_default_resolution_error(p):
    assert max_deviation(p, IntegratorConfig(t_max=4.0)) < 1e-8


def test_fourth_order_convergence():
    rng = np.random.default_rng(11)
    for _ in range(6):
        u = rng.uniform(0.3, 6.0)
        p = Params(1.0, u, rng.uniform(0, 2 * math.pi))
        coarse = max_deviation(p, IntegratorConfig(t_max=4 * u, steps_per_delay=32))
        fine = max_deviation(p, IntegratorConfig(t_max=4 * u, steps_per_delay=64))
        assert 12.0 <= coarse / fine <= 20.0


def test_coarse_grid_much_worse_than_default():
    p = Params(1.0, 1.0, 0.0)
    coarse = max_deviation(p, IntegratorConfig(t_max=4.0, steps_per_delay=16))
    fine = max_deviation(p, IntegratorConfig(t_max=4.0))
    assert coarse > 1e3 * fine


def test_trace_bounds_and_lipschitz():
    p = Params(1.7, 2.0, 0.9)
    cfg = IntegratorConfig(t_max=8.0, steps_per_delay=256)
    tr = integrate(p, cfg)
    h = p.t_delay / cfg.steps_per_delay
    bound = p.gamma * h * (1 + math.exp(0.5 * p.u) * p.u)
    assert np.all(np.abs(tr.values) <= 1 + 1e-9)
    assert np.all(np.abs(np.diff(tr.values)) <= bound)


def test_deterministic():
    p = Params(0.7, 1.3, 2.1)
    cfg = IntegratorConfig(t_max=5.0, steps_per_delay=128)
    assert np.array_equal(integrate(p, cfg).values, integrate(p, cfg).values)


def test_trace_ends_on_first_node_past_tmax():
    tr = integrate(Params(1.0, 1.0, 0.0), IntegratorConfig(t_max=1.01, steps_per_delay=16))
    assert tr.times[-1] == pytest.approx(17 / 16)


@pytest.mark.parametrize(
    "cfg",
    [
        IntegratorConfig(t_max=1.0, steps_per_delay=8),
        IntegratorConfig(t_max=0.0),
        IntegratorConfig(t_max=float("nan")),
        IntegratorConfig(t_max=1.0, steps_per_delay=32.5),
    ],
)
def test_config_invalid(cfg):
    with pytest.raises(ConfigInvalid):
        integrate(Params(1, 1, 0), cfg)


def test_max_deviation_limits_series_length():
    with pytest.raises(ConfigInvalid):
        max_deviation(Params(1, 1, 0), IntegratorConfig(t_max=13.0, steps_per_delay=16))
