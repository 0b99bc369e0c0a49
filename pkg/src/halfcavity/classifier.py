"""Markovian / non-Markovian verdicts on the window ``[0, 2 t_d]``.

Before the photon returns, ``|eps|`` is a pure exponential decay, so the
verdict is decided on ``[t_d, 2 t_d]`` where it is equivalent to the convex
quadratic ``p(x)`` being non-negative on ``[0, t_d]``.  That happens iff one
of three closed-form conditions holds:

* COND_I   -- no real root: ``e^{u/2} < 2 |sin phi|``
* COND_II  -- ``c0 >= 0``, real roots, both ``<= 0``
* COND_III -- ``c0 >= 0``, real roots, both ``>= t_d``

All verdicts here describe the window only; the full-time threshold can
only be lower.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analytic import abs2_derivative, poly_analysis
from .core import (
    ConfigInvalid,
    DegenerateDelay,
    NonPositiveGamma,
    Params,
    TWO_PI,
    open_axis,
    trig,
    uniform_axis,
    validate_params,
)

WINDOW = "window-[0,2t_d]"
SCAN_POSITIVE_SLACK = 1e-12
THRESHOLD_SCAN_POINTS = 512
PROBE_HALVINGS = 30


class Condition(enum.Enum):
    COND_I = "i"
    COND_II = "ii"
    COND_III = "iii"
    SCAN = "scan"
    NONE = "none"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a window classification.

    ``witness_x`` is an ``x = t - t_d`` in ``[0, t_d]`` where ``d|eps|^2/dt > 0``;
    it is set exactly when the verdict is non-Markovian.
    ``extremal_derivative`` is only filled by the brute-force scan.
    """

    markovian: bool
    satisfied_condition: Condition
    witness_x: float | None = None
    extremal_derivative: float | None = None
    window: str = WINDOW


def classify(p: Params) -> Verdict:
    validate_params(p)
    if p.gamma <= 0:
        raise NonPositiveGamma("classify needs gamma > 0")
    if p.t_delay == 0:
        # no return trip: |eps| = exp(-gamma (1 - cos phi) t / 2) is monotone
        return Verdict(True, Condition.COND_I)

    td = p.t_delay
    u = p.gamma * td
    _, s = trig(p.phi)
    poly = poly_analysis(p)

    if math.exp(0.5 * u) < 2.0 * abs(s):
        return Verdict(True, Condition.COND_I)
    if poly.delta == 0.0 and poly.c0 >= 0.0:
        # tangent parabola, p = c2 (x - x0)^2 >= 0: closure of COND_I
        return Verdict(True, Condition.COND_I)
    if poly.c0 >= 0.0 and poly.roots is not None:
        x_minus, x_plus = poly.roots
        if x_plus <= 0.0:
            return Verdict(True, Condition.COND_II)
        if x_minus >= td:
            return Verdict(True, Condition.COND_III)
    return Verdict(False, Condition.NONE, witness_x=_negative_point(poly, td))


def _negative_point(poly, td: float) -> float:
    x = min(max(poly.vertex, 0.0), td)
    if poly(x) < 0:
        return x
    xs = np.linspace(0.0, td, 257)
    return float(xs[np.argmin(poly(xs))])


def classify_bruteforce(p: Params, n_scan: int = 4096) -> Verdict:
    """Dense-sampling oracle: non-Markovian iff some sampled ``d|eps|^2/dt`` exceeds ``1e-12``.

    Samples ``n_scan`` points on each of ``[0, t_d]`` and ``[t_d, 2 t_d]`` using
    the exact derivative; no quadratic analysis is involved.
    """
    validate_params(p)
    if p.gamma <= 0:
        raise NonPositiveGamma("classify_bruteforce needs gamma > 0")
    if p.t_delay == 0:
        raise DegenerateDelay("classify_bruteforce needs t_delay > 0")
    if n_scan < 64:
        raise ConfigInvalid(f"n_scan must be >= 64, got {n_scan}")
    td = p.t_delay
    early = np.linspace(0.0, td, n_scan, endpoint=False)
    late = np.linspace(td, 2.0 * td, n_scan)
    d_early = abs2_derivative(p, early)
    d_late = abs2_derivative(p, late)
    i = int(np.argmax(d_late))
    extremal = max(float(d_late[i]), float(np.max(d_early)))
    if extremal > SCAN_POSITIVE_SLACK:
        return Verdict(False, Condition.NONE, witness_x=float(late[i] - td), extremal_derivative=extremal)
    return Verdict(True, Condition.SCAN, extremal_derivative=extremal)


@dataclass(frozen=True)
class ThresholdPoint:
    """Threshold ``u_star`` in ``gamma * t_d`` at fixed phase.

    ``u_star == 0`` means non-Markovian for every scanned ``u``; a phase that
    stays Markovian up to ``u_max`` reports ``u_star == u_max`` with zero
    crossings.  ``crossings`` counts Markovian-to-NM transitions in the scan.
    """

    phi: float
    u_star: float
    crossings: int


def _markovian_at(u: float, phi: float) -> bool:
    return classify(Params(1.0, u, phi)).markovian


def threshold_at(phi: float, tol: float = 1e-10, u_max: float = 3.0) -> ThresholdPoint:
    if not tol > 0 or not u_max > 0:
        raise ConfigInvalid("tol and u_max must be positive")
    us = open_axis(u_max, THRESHOLD_SCAN_POINTS)
    flags = [_markovian_at(u, phi) for u in us]

    # near phi = 2 n pi the threshold (~phi^2) can sit below the first scan node;
    # stop well before e^{u/2} rounds to 1, which fakes c0 = 0
    if not flags[0]:
        probe = us[0]
        for _ in range(PROBE_HALVINGS):
            probe *= 0.5
            if _markovian_at(probe, phi):
                us = np.concatenate(([probe], us))
                flags = [True] + flags
                break

    crossings = [k for k in range(len(flags) - 1) if flags[k] and not flags[k + 1]]
    if not any(flags):
        return ThresholdPoint(phi, 0.0, 0)
    if not crossings:
        return ThresholdPoint(phi, float(u_max), 0)

    lo, hi = float(us[crossings[0]]), float(us[crossings[0] + 1])
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _markovian_at(mid, phi):
            lo = mid
        else:
            hi = mid
    return ThresholdPoint(phi, 0.5 * (lo + hi), len(crossings))


@dataclass(frozen=True)
class RegionMap:
    """Verdict grid; ``cells[i][j]`` belongs to ``(phi_axis[i], u_axis[j])``."""

    phi_axis: np.ndarray
    u_axis: np.ndarray
    cells: list[list[Verdict]]

    def markovian(self) -> np.ndarray:
        return np.array([[c.markovian for c in row] for row in self.cells], dtype=bool)

    def column_thresholds(self) -> np.ndarray:
        """Largest Markovian ``u`` per phase (0 when none)."""
        mask = self.markovian()
        out = np.zeros(len(self.phi_axis))
        for i, row in enumerate(mask):
            idx = np.flatnonzero(row)
            if idx.size:
                out[i] = self.u_axis[idx[-1]]
        return out


def _classify_row(args: tuple[float, np.ndarray]) -> list[Verdict]:
    phi, us = args
    return [classify(Params(1.0, float(u), phi)) for u in us]


def _map_rows(fn, items, jobs: int | None):
    jobs = resolve_jobs(jobs)
    if jobs <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def resolve_jobs(jobs: int | None) -> int:
    env = os.environ.get("HALFCAVITY_JOBS")
    if env:
        return max(1, int(env))
    if jobs is None:
        return 1
    return max(1, int(jobs))


def region_map(phi_points: int, u_points: int, u_max: float = 3.0, jobs: int | None = None) -> RegionMap:
    """Classify a uniform ``phi in [0, 2 pi]`` by ``u in (0, u_max]`` grid (``gamma = 1``)."""
    if phi_points < 2 or u_points < 2:
        raise ConfigInvalid("grid sizes must be >= 2")
    phis = uniform_axis(0.0, TWO_PI, phi_points)
    us = open_axis(u_max, u_points)
    rows = _map_rows(_classify_row, [(float(phi), us) for phi in phis], jobs)
    return RegionMap(phis, us, rows)


def _threshold_task(args: tuple[float, float, float]) -> ThresholdPoint:
    return threshold_at(*args)


def threshold_curve(phis, tol: float = 1e-10, u_max: float = 3.0, jobs: int | None = None) -> list[ThresholdPoint]:
    return _map_rows(_threshold_task, [(float(phi), tol, u_max) for phi in phis], jobs)
