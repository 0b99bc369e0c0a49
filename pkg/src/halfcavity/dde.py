"""Fixed-step RK4 integration of the delayed emission equation.

The step is ``h = t_d / steps_per_delay`` so that ``t - t_d`` of every full
step lands on a stored node.  Half-step delayed values are interpolated
with a 4-point Lagrange stencil kept inside one delay interval, because
the solution has kinks at the breakpoints ``n * t_d``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .analytic import amplitude_series
from .core import ConfigInvalid, Params, TimeGrid, trig, validate_params

MAX_SERIES_DELAYS = 12


class Method(enum.Enum):
    RK4_STEPS = "rk4_steps"


@dataclass(frozen=True)
class IntegratorConfig:
    t_max: float
    steps_per_delay: int = 1024
    method: Method = Method.RK4_STEPS

    def validate(self) -> "IntegratorConfig":
        if not (isinstance(self.t_max, (int, float)) and math.isfinite(self.t_max) and self.t_max > 0):
            raise ConfigInvalid(f"t_max must be a finite positive number, got {self.t_max!r}")
        if int(self.steps_per_delay) != self.steps_per_delay or self.steps_per_delay < 16:
            raise ConfigInvalid(f"steps_per_delay must be an integer >= 16, got {self.steps_per_delay!r}")
        if not isinstance(self.method, Method):
            raise ConfigInvalid(f"unknown method {self.method!r}")
        return self


@dataclass(frozen=True)
class AmplitudeTrace:
    grid: TimeGrid
    values: np.ndarray

    @property
    def times(self) -> np.ndarray:
        return self.grid.points()


def _lagrange_midpoint_weights(offset: int) -> tuple[float, float, float, float]:
    """Weights of the cubic through nodes 0..3 evaluated at ``offset + 0.5``."""
    x = offset + 0.5
    nodes = (0.0, 1.0, 2.0, 3.0)
    weights = []
    for i, xi in enumerate(nodes):
        w = 1.0
        for j, xj in enumerate(nodes):
            if j != i:
                w *= (x - xj) / (xi - xj)
        weights.append(w)
    return tuple(weights)


_MID_WEIGHTS = {off: _lagrange_midpoint_weights(off) for off in (0, 1, 2)}


def _delayed_midpoint(history: list[complex], j: int, n: int) -> complex:
    # stencil restricted to the smooth piece [m n, (m+1) n] holding [j, j+1]
    m = j // n
    start = min(max(j - 1, m * n), (m + 1) * n - 3)
    w = _MID_WEIGHTS[j - start]
    return (w[0] * history[start] + w[1] * history[start + 1]
            + w[2] * history[start + 2] + w[3] * history[start + 3])


def integrate(p: Params, cfg: IntegratorConfig) -> AmplitudeTrace:
    """Integrate ``eps(t)`` from ``eps(0) = 1`` up to the first node at or beyond ``cfg.t_max``.

    With ``t_delay == 0`` there is no history to look up and the trace is
    sampled from the analytic closed form on ``steps_per_delay + 1`` nodes.
    """
    validate_params(p)
    cfg.validate()
    n = int(cfg.steps_per_delay)
    if p.t_delay == 0.0:
        grid = TimeGrid(0.0, float(cfg.t_max), n + 1)
        return AmplitudeTrace(grid, np.asarray(amplitude_series(p, grid.points()), dtype=complex))

    td = p.t_delay
    h = td / n
    n_steps = max(1, math.ceil(cfg.t_max * n / td - 1e-9))
    decay = -0.5 * p.gamma
    feed = 0.5 * p.gamma * complex(*trig(p.phi))
    half = 0.5 * h
    sixth = h / 6.0

    ys: list[complex] = [1.0 + 0.0j]
    for k in range(n_steps):
        y = ys[k]
        j = k - n
        if j < 0:
            # the reflected field has not returned yet: Theta(t - t_d) = 0 on the whole step
            k1 = decay * y
            k2 = decay * (y + half * k1)
            k3 = decay * (y + half * k2)
            k4 = decay * (y + h * k3)
        else:
            d0 = feed * ys[j]
            dm = feed * _delayed_midpoint(ys, j, n)
            d1 = feed * ys[j + 1]
            k1 = decay * y + d0
            k2 = decay * (y + half * k1) + dm
            k3 = decay * (y + half * k2) + dm
            k4 = decay * (y + h * k3) + d1
        ys.append(y + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4))

    grid = TimeGrid(0.0, n_steps * td / n, n_steps + 1)
    return AmplitudeTrace(grid, np.array(ys, dtype=complex))


def max_deviation(p: Params, cfg: IntegratorConfig) -> float:
    """Largest ``|eps_rk4 - eps_series|`` over the integration grid."""
    validate_params(p)
    cfg.validate()
    if p.t_delay > 0 and cfg.t_max > MAX_SERIES_DELAYS * p.t_delay:
        raise ConfigInvalid(f"t_max must not exceed {MAX_SERIES_DELAYS} delays for the series oracle")
    trace = integrate(p, cfg)
    exact = amplitude_series(p, trace.times)
    return float(np.max(np.abs(trace.values - exact)))
