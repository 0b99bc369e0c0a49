"""Qubit channel induced by the emission dynamics, and a trace-distance witness.

In the basis ``(|g>, |e>)`` a state evolves as

    rho_ee -> |eps|^2 rho_ee
    rho_gg -> rho_gg + (1 - |eps|^2) rho_ee
    rho_ge -> eps* rho_ge

i.e. an amplitude-damping channel with a complex, possibly non-monotone
amplitude.  The ground population picks up whatever leaves the excited
level, which keeps the trace at one for every input (mixed ones included).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .analytic import amplitude_series
from .core import ConfigInvalid, HalfCavityError, Params, validate_params

STATE_SLACK = 1e-12
AMPLITUDE_SLACK = 1e-9
WITNESS_THRESHOLD = 1e-10


class InvalidState(HalfCavityError):
    pass


class AmplitudeTooLarge(HalfCavityError):
    pass


@dataclass(frozen=True)
class QubitState:
    rho_gg: float
    rho_ee: float
    rho_ge: complex = 0j

    def __post_init__(self) -> None:
        check_state(self.rho_gg, self.rho_ee, self.rho_ge)

    @property
    def rho_eg(self) -> complex:
        return complex(self.rho_ge).conjugate()

    def matrix(self) -> np.ndarray:
        return np.array([[self.rho_gg, self.rho_ge], [self.rho_eg, self.rho_ee]], dtype=complex)

    @classmethod
    def ground(cls) -> "QubitState":
        return cls(1.0, 0.0)

    @classmethod
    def excited(cls) -> "QubitState":
        return cls(0.0, 1.0)

    @classmethod
    def plus(cls) -> "QubitState":
        return cls(0.5, 0.5, 0.5 + 0j)

    @classmethod
    def minus(cls) -> "QubitState":
        return cls(0.5, 0.5, -0.5 + 0j)


def check_state(rho_gg: float, rho_ee: float, rho_ge: complex) -> None:
    values = (rho_gg, rho_ee, complex(rho_ge).real, complex(rho_ge).imag)
    if not all(math.isfinite(v) for v in values):
        raise InvalidState("state entries must be finite")
    if abs(rho_gg + rho_ee - 1.0) > STATE_SLACK:
        raise InvalidState(f"trace is {rho_gg + rho_ee!r}, expected 1")
    if rho_gg < -STATE_SLACK or rho_ee < -STATE_SLACK:
        raise InvalidState("populations must be non-negative")
    if rho_gg * rho_ee - abs(rho_ge) ** 2 < -STATE_SLACK:
        raise InvalidState("state is not positive semidefinite")


def _apply(rho_gg, rho_ee, rho_ge, eps):
    # works elementwise on numpy arrays as well as on scalars
    keep = np.abs(eps) ** 2
    new_ee = keep * rho_ee
    return rho_gg + (rho_ee - new_ee), new_ee, np.conj(eps) * rho_ge


def _distance(d_ee, d_ge):
    # eigenvalues of a traceless Hermitian 2x2 difference are +-sqrt(d^2 + |c|^2)
    return np.sqrt(d_ee * d_ee + np.abs(d_ge) ** 2)


def evolve(rho0: QubitState, eps: complex) -> QubitState:
    eps = complex(eps)
    if not (math.isfinite(eps.real) and math.isfinite(eps.imag)):
        raise AmplitudeTooLarge(f"amplitude must be finite, got {eps!r}")
    if abs(eps) > 1.0 + AMPLITUDE_SLACK:
        raise AmplitudeTooLarge(f"|eps| = {abs(eps)!r} exceeds 1")
    gg, ee, ge = _apply(rho0.rho_gg, rho0.rho_ee, complex(rho0.rho_ge), eps)
    return QubitState(float(gg), float(ee), complex(ge))


def trace_distance(a: QubitState, b: QubitState) -> float:
    return float(_distance(a.rho_ee - b.rho_ee, complex(a.rho_ge) - complex(b.rho_ge)))


class Probe(enum.Enum):
    PLUS_MINUS = "plus_minus"
    E_G = "e_g"

    def pair(self) -> tuple[QubitState, QubitState]:
        if self is Probe.PLUS_MINUS:
            return QubitState.plus(), QubitState.minus()
        return QubitState.excited(), QubitState.ground()


@dataclass(frozen=True)
class WitnessReport:
    nm_measure: float
    markovian: bool


def probe_distances(p: Params, probe: Probe, times: np.ndarray) -> np.ndarray:
    """Trace distance of the evolved probe pair at each time."""
    eps = np.asarray(amplitude_series(p, times), dtype=complex)
    a, b = probe.pair()
    a_gg, a_ee, a_ge = _apply(a.rho_gg, a.rho_ee, complex(a.rho_ge), eps)
    b_gg, b_ee, b_ge = _apply(b.rho_gg, b.rho_ee, complex(b.rho_ge), eps)
    return _distance(a_ee - b_ee, a_ge - b_ge)


def blp_witness(p: Params, probe: Probe = Probe.PLUS_MINUS, n_steps: int = 4096) -> WitnessReport:
    """Accumulated growth of the probe-pair trace distance over ``[0, 2 t_d]``.

    Sums the positive increments of ``D`` on ``n_steps`` uniform steps.  For
    the ``|+>, |->`` pair ``D(t) = |eps(t)|``, so the measure vanishes exactly
    when ``|eps|`` never grows in the window.
    """
    validate_params(p)
    if int(n_steps) != n_steps or n_steps < 256:
        raise ConfigInvalid(f"n_steps must be an integer >= 256, got {n_steps!r}")
    if p.trivial or p.t_delay == 0:
        return WitnessReport(0.0, True)
    times = np.linspace(0.0, 2.0 * p.t_delay, int(n_steps) + 1)
    dist = probe_distances(p, probe, times)
    measure = float(np.sum(np.maximum(0.0, np.diff(dist))))
    return WitnessReport(measure, measure <= WITNESS_THRESHOLD)
