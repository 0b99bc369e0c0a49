"""Exact excitation amplitude of an atom in front of a mirror.

With the field initially in vacuum the excited-state amplitude obeys

    d eps/dt = -(gamma/2) eps(t) + (gamma/2) e^{i phi} eps(t - t_d) Theta(t - t_d),

whose solution for ``eps(0) = 1`` is the finite series

    eps(t) = e^{-gamma t/2} sum_n z^n (t - n t_d)^n / n!,   z = (gamma/2) e^{gamma t_d/2} e^{i phi},

running over ``n * t_d <= t`` (``Theta(0) = 1``).  Note the growth factor is
``e^{gamma t_d / 2}``: without ``gamma`` in the exponent the series would
not solve the equation above nor reproduce the two-term closed form on
``[t_d, 2 t_d]``.

On ``[t_d, 2 t_d]``, writing ``x = t - t_d``,

    d|eps|^2/dt = -(gamma/4) e^{-gamma (x + t_d)} p(x),   p(x) = c2 x^2 + c1 x + c0,

so Markovianity on the window is the statement ``p >= 0`` on ``[0, t_d]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DegenerateDelay,
    NonFiniteTime,
    NonPositiveGamma,
    Params,
    TimeOutOfWindow,
    reduce_angle,
    trig,
    validate_params,
)

# above this u the series terms are combined with the decay factor in log space
LOG_DOMAIN_U = 30.0


def _as_times(t) -> tuple[np.ndarray, bool]:
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteTime("time must be finite")
    if np.any(arr < 0):
        raise TimeOutOfWindow("time must be >= 0")
    return arr, arr.ndim == 0


def _unwrap(values: np.ndarray, scalar: bool):
    if scalar:
        return complex(values) if np.iscomplexobj(values) else float(values)
    return values


def amplitude_series(p: Params, t):
    """Excited-state amplitude ``eps(t)``.

    Parameters
    ----------
    p : Params
        System parameters.  ``gamma == 0`` gives ``eps == 1``; ``t_delay == 0``
        uses the closed form of the reduced ODE.
    t : float or array_like
        Times, finite and non-negative.

    Returns
    -------
    complex or np.ndarray
        Same shape as ``t``.
    """
    validate_params(p)
    times, scalar = _as_times(t)
    if p.trivial:
        return _unwrap(np.ones_like(times, dtype=complex), scalar)

    g, td = p.gamma, p.t_delay
    phase = reduce_angle(p.phi)
    if td == 0.0:
        rate = 0.5 * g * (1.0 - complex(*trig(p.phi)))
        return _unwrap(np.exp(-rate * times), scalar)

    u = g * td
    n_max = int(math.floor(float(np.max(times)) / td)) if times.size else 0
    acc = np.zeros_like(times, dtype=complex)
    if u <= LOG_DOMAIN_U:
        z = 0.5 * g * math.exp(0.5 * u) * complex(math.cos(phase), math.sin(phase))
        for n in range(n_max + 1):
            s = times - n * td
            live = s >= 0
            term = np.where(live, (z * np.where(live, s, 0.0)) ** n, 0.0) / math.factorial(n)
            acc += term
        return _unwrap(np.exp(-0.5 * g * times) * acc, scalar)

    # log-domain: |term| = exp(n log(g s / 2) + n u/2 - g t/2 - log n!)
    with np.errstate(divide="ignore"):
        for n in range(n_max + 1):
            s = times - n * td
            live = s >= 0
            if n == 0:
                log_mag = -0.5 * g * times
            else:
                log_mag = n * np.log(0.5 * g * np.where(live, s, 0.0)) + n * 0.5 * u - 0.5 * g * times
                log_mag -= math.lgamma(n + 1)
            term = np.exp(log_mag + 1j * n * phase)
            acc += np.where(live, term, 0.0)
    return _unwrap(acc, scalar)


def amplitude_window2(p: Params, t):
    """Two-term closed form of ``eps(t)``, valid for ``t_d <= t <= 2 t_d``."""
    validate_params(p)
    times, scalar = _as_times(t)
    td = p.t_delay
    if td <= 0:
        raise DegenerateDelay("the second delay window needs t_delay > 0")
    if np.any(times < td) or np.any(times > 2 * td):
        raise TimeOutOfWindow(f"t must lie in [{td}, {2 * td}]")
    g = p.gamma
    c, s = trig(p.phi)
    a = 0.5 * g * math.exp(0.5 * g * td) * complex(c, s)
    vals = np.exp(-0.5 * g * times) * (1.0 + a * (times - td))
    return _unwrap(vals, scalar)


def abs2_derivative(p: Params, t):
    """Time derivative of ``|eps(t)|^2``.

    For ``t >= t_d`` this is ``-gamma |eps|^2 + gamma Re[e^{i phi} eps(t - t_d) eps*(t)]``;
    at the breakpoint ``t = t_d`` this is the right derivative.  Before the
    first return of the photon it reduces to ``-gamma e^{-gamma t}``.
    """
    validate_params(p)
    times, scalar = _as_times(t)
    g, td = p.gamma, p.t_delay
    if p.trivial:
        return _unwrap(np.zeros_like(times), scalar)
    late = times >= td
    out = -g * np.exp(-g * times)
    if np.any(late):
        tl = times[late] if times.ndim else times
        eps = amplitude_series(p, tl)
        eps_delayed = amplitude_series(p, tl - td)
        rot = complex(*trig(p.phi))
        val = -g * np.abs(eps) ** 2 + g * np.real(rot * eps_delayed * np.conj(eps))
        if times.ndim:
            out[late] = val
        else:
            out = np.asarray(val)
    return _unwrap(out, scalar)


@dataclass(frozen=True)
class PolyAnalysis:
    """Quadratic ``p(x) = c2 x^2 + c1 x + c0`` governing ``d|eps|^2/dt`` on ``[t_d, 2 t_d]``.

    ``roots`` is ``(x_minus, x_plus)`` when ``delta >= 0``, else ``None``.
    """

    c2: float
    c1: float
    c0: float
    delta: float
    roots: tuple[float, float] | None

    def __call__(self, x):
        return (self.c2 * x + self.c1) * x + self.c0

    @property
    def vertex(self) -> float:
        return -self.c1 / (2.0 * self.c2)


def poly_analysis(p: Params) -> PolyAnalysis:
    validate_params(p)
    if p.gamma <= 0:
        raise NonPositiveGamma("poly_analysis needs gamma > 0")
    if p.t_delay == 0:
        raise DegenerateDelay("poly_analysis needs t_delay > 0")
    g = p.gamma
    u = g * p.t_delay
    c, s = trig(p.phi)
    half = math.exp(0.5 * u)
    full = math.exp(u)
    c2 = g * g * full
    c1 = -2.0 * g * half * (half - 2.0 * c)
    c0 = 4.0 * (1.0 - half * c)
    reduced = full - 4.0 * s * s
    delta = 4.0 * g * g * full * reduced
    roots = None
    if delta >= 0:
        root = math.sqrt(reduced)
        scale = 1.0 / (g * half)
        roots = (scale * (half - 2.0 * c - root), scale * (half - 2.0 * c + root))
    return PolyAnalysis(c2=c2, c1=c1, c0=c0, delta=delta, roots=roots)
