"""Shared types, parameter validation and grid helpers.

A half-cavity is described by three numbers: the bare emission rate
``gamma`` (1/time), the atom-mirror-atom round-trip delay ``t_delay``
(time) and the round-trip phase ``phi`` (radians).  Angles are kept
unreduced; every trigonometric evaluation goes through :func:`trig` so
that ``phi`` and ``phi + 2*pi`` give the same numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


class HalfCavityError(ValueError):
    """Base class for all domain errors raised by this package."""


class NonPositiveGamma(HalfCavityError):
    pass


class NegativeDelay(HalfCavityError):
    pass


class NonFiniteField(HalfCavityError):
    pass


class NonFiniteTime(HalfCavityError):
    pass


class TimeOutOfWindow(HalfCavityError):
    pass


class DegenerateDelay(HalfCavityError):
    pass


class ConfigInvalid(HalfCavityError):
    pass


@dataclass(frozen=True)
class Params:
    """Physical parameters ``(gamma, t_delay, phi)`` of the atom-mirror system."""

    gamma: float
    t_delay: float
    phi: float

    @property
    def u(self) -> float:
        return dimensionless(self)

    @property
    def trivial(self) -> bool:
        """True when ``gamma == 0``: no coupling, the amplitude stays 1."""
        return self.gamma == 0.0

    @classmethod
    def from_u(cls, u: float, phi: float, gamma: float = 1.0) -> "Params":
        return cls(gamma=gamma, t_delay=u / gamma, phi=phi)


def validate_params(p: Params, allow_trivial: bool = True) -> Params:
    """Return ``p`` unchanged if it is physically admissible.

    ``gamma == 0`` is accepted only with ``allow_trivial`` (frozen dynamics).
    """
    for name in ("gamma", "t_delay", "phi"):
        value = getattr(p, name)
        if not isinstance(value, (int, float, np.floating, np.integer)) or not math.isfinite(value):
            raise NonFiniteField(f"{name} must be a finite real, got {value!r}")
    if p.gamma < 0 or (p.gamma == 0 and not allow_trivial):
        raise NonPositiveGamma(f"gamma must be > 0, got {p.gamma}")
    if p.t_delay < 0:
        raise NegativeDelay(f"t_delay must be >= 0, got {p.t_delay}")
    return p


def dimensionless(p: Params) -> float:
    """Delay in units of the bare lifetime, ``u = gamma * t_delay``."""
    return float(p.gamma * p.t_delay)


def reduce_angle(phi: float) -> float:
    """Map ``phi`` into ``[-pi, pi]``."""
    return math.remainder(phi, TWO_PI)


def trig(phi: float) -> tuple[float, float]:
    """``(cos phi, sin phi)`` evaluated on the reduced angle."""
    r = reduce_angle(phi)
    return math.cos(r), math.sin(r)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid ``t_start .. t_end`` (both included) with ``n_points`` nodes."""

    t_start: float
    t_end: float
    n_points: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t_start) and math.isfinite(self.t_end)):
            raise NonFiniteTime("grid bounds must be finite")
        if self.t_start < 0 or self.t_end <= self.t_start:
            raise ConfigInvalid(f"need 0 <= t_start < t_end, got [{self.t_start}, {self.t_end}]")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ConfigInvalid(f"n_points must be an integer >= 2, got {self.n_points}")

    @property
    def step(self) -> float:
        return (self.t_end - self.t_start) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        # each node from its index, no accumulation
        k = np.arange(self.n_points, dtype=float)
        pts = self.t_start + k * (self.t_end - self.t_start) / (self.n_points - 1)
        pts[-1] = self.t_end
        return pts

    def __len__(self) -> int:
        return self.n_points


def uniform_axis(start: float, stop: float, n: int) -> np.ndarray:
    """Closed uniform axis with both end points exact (like :meth:`TimeGrid.points`)."""
    if n < 2:
        raise ConfigInvalid(f"axis needs at least 2 points, got {n}")
    k = np.arange(n, dtype=float)
    pts = start + k * (stop - start) / (n - 1)
    pts[-1] = stop
    return pts


def open_axis(stop: float, n: int) -> np.ndarray:
    """Uniform axis over ``(0, stop]``: ``stop * j / n`` for ``j = 1..n``."""
    if n < 1 or not stop > 0:
        raise ConfigInvalid(f"need n >= 1 and stop > 0, got n={n}, stop={stop}")
    pts = stop * np.arange(1, n + 1, dtype=float) / n
    pts[-1] = stop
    return pts
