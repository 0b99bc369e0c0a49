import math

import numpy as np
import pytest

from halfcavity.core import (
    NegativeDelay,
    NonFiniteField,
    NonPositiveGamma,
    Params,
    TimeGrid,
    ConfigInvalid,
    dimensionless,
    open_axis,
    trig,
    validate_params,
)


def test_validate_accepts_good_params():
    p = Params(1.0, 1.0, 0.0)
    assert validate_params(p) is p


@pytest.mark.parametrize(
    "p, exc",
    [
        (Params(-1.0, 1.0, 0.0), NonPositiveGamma),
        (Params(1.0, float("nan"), 0.0), NonFiniteField),
        (Params(1.0, 1.0, float("inf")), NonFiniteField),
        (Params(float("inf"), 1.0, 0.0), NonFiniteField),
        (Params(1.0, -0.5, 0.0), NegativeDelay),
    ],
)
def test_validate_rejects(p, exc):
    with pytest.raises(exc):
        validate_params(p)


def test_zero_gamma_only_on_trivial_path():
    p = Params(0.0, 1.0, 0.0)
    assert validate_params(p).trivial
    with pytest.raises(NonPositiveGamma):
        validate_params(p, allow_trivial=False)


def test_dimensionless():
    assert dimensionless(Params(2.0, 0.5, 0.0)) == 1.0
    assert dimensionless(Params(1.0, 0.0, 0.0)) == 0.0
    assert dimensionless(Params(1.0, 2 * math.log(2), 0.0)) == pytest.approx(1.3862943611, abs=1e-10)


def test_trig_is_periodic():
    for phi in (0.3, 1.0, -2.0, 5.5):
        c0, s0 = trig(phi)
        c1, s1 = trig(phi + 2 * math.pi)
        assert c0 == pytest.approx(c1, rel=1e-12, abs=1e-15)
        assert s0 == pytest.approx(s1, rel=1e-12, abs=1e-15)


def test_time_grid_exact_endpoints_and_spacing():
    g = TimeGrid(0.1, 0.7, 7)
    pts = g.points()
    assert pts[0] == 0.1 and pts[-1] == 0.7
    assert np.all(np.diff(pts) > 0)
    assert np.allclose(np.diff(pts), 0.1, atol=1e-15)
    assert np.array_equal(pts, TimeGrid(0.1, 0.7, 7).points())


@pytest.mark.parametrize("args", [(0.0, 0.0, 5), (1.0, 0.5, 5), (0.0, 1.0, 1), (-1.0, 1.0, 3)])
def test_time_grid_rejects(args):
    with pytest.raises(ConfigInvalid):
        TimeGrid(*args)


def test_open_axis_excludes_zero():
    ax = open_axis(3.0, 300)
    assert ax[0] == pytest.approx(0.01) and ax[-1] == 3.0 and len(ax) == 300
