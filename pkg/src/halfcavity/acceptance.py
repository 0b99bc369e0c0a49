"""Acceptance criteria, runnable from the CLI (``verify``) and from pytest.

Every criterion is deterministic: random samples come from fixed seeds, and
reports carry no timings, so two runs give byte-identical text.  Runtime
budgets are still enforced and show up as ``over budget`` in the detail.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analytic import abs2_derivative, amplitude_series
from .channel import Probe, QubitState, blp_witness, evolve, trace_distance
from .classifier import classify, classify_bruteforce, region_map, threshold_at
from .core import TWO_PI, Params, open_axis, uniform_axis
from .dde import IntegratorConfig, max_deviation

LN4 = 2.0 * math.log(2.0)
BOUNDARY_EXCLUSION = 1e-9


@dataclass(frozen=True)
class Profile:
    name: str
    oracle_samples: int
    nm_samples: int
    no_threshold_u: int
    map_shape: tuple[int, int]
    equivalence_grid: int
    derivative_samples: int
    channel_samples: int
    witness_grid: int


PROFILES = {
    "full": Profile("full", 50, 200, 100, (361, 300), 101, 1000, 10_000, 41),
    "fast": Profile("fast", 12, 200, 100, (73, 60), 21, 1000, 10_000, 21),
}


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    elapsed: float
    budget: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        note = "" if self.elapsed <= self.budget else " [over budget]"
        return f"[{status}] {self.number}. {self.name}: {self.detail}{note}"


def _random_params(rng: np.random.Generator, u_low: float, u_high: float) -> Params:
    # u in (u_low, u_high]
    u = u_high - (u_high - u_low) * rng.random()
    gamma = float(np.exp(rng.uniform(np.log(0.2), np.log(5.0))))
    return Params(gamma, u / gamma, float(rng.uniform(0.0, TWO_PI)))


def oracle_agreement(prof: Profile) -> tuple[bool, str]:
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(prof.oracle_samples):
        p = _random_params(rng, 0.0, 6.0)
        worst = max(worst, max_deviation(p, IntegratorConfig(t_max=4.0 * p.t_delay)))
    return worst <= 1e-8, f"max |eps_series - eps_rk4| = {worst:.3e} over {prof.oracle_samples} draws (tol 1e-8)"


def threshold_landmark(prof: Profile) -> tuple[bool, str]:
    tp = threshold_at(math.pi / 2)
    err = abs(tp.u_star - LN4)
    rng = np.random.default_rng(2)
    missed = 0
    for _ in range(prof.nm_samples):
        u = 6.0 - (6.0 - (LN4 + 1e-6)) * rng.random()
        if classify(Params(1.0, u, float(rng.uniform(0.0, TWO_PI)))).markovian:
            missed += 1
    ok = err <= 1e-9 and missed == 0
    return ok, (f"|u*(pi/2) - 2 ln 2| = {err:.3e} (tol 1e-9); "
                f"{missed}/{prof.nm_samples} Markovian points above 2 ln 2")


def no_threshold_line(prof: Profile) -> tuple[bool, str]:
    us = np.linspace(1e-3, 3.0, prof.no_threshold_u)
    bad = sum(classify(Params(1.0, float(u), phi)).markovian for phi in (0.0, TWO_PI) for u in us)
    return bad == 0, f"{bad}/{2 * len(us)} Markovian verdicts on phi in {{0, 2pi}}"


def figure_map(prof: Profile) -> tuple[bool, str]:
    n_phi, n_u = prof.map_shape
    rmap = region_map(n_phi, n_u, 3.0)
    mask = rmap.markovian()
    symmetric = bool(np.array_equal(mask, mask[::-1]))
    crossings = max(int(np.sum(row[:-1] & ~row[1:])) for row in mask)
    thresholds = rmap.column_thresholds()
    du = rmap.u_axis[1] - rmap.u_axis[0]
    dphi = rmap.phi_axis[1] - rmap.phi_axis[0]
    top = float(thresholds.max())
    at_max = rmap.phi_axis[thresholds == top]
    lower = at_max[at_max < math.pi]
    upper = at_max[at_max > math.pi]
    located = (lower.size > 0 and upper.size > 0
               and abs(float(lower.mean()) - math.pi / 2) <= dphi
               and abs(float(upper.mean()) - 3 * math.pi / 2) <= dphi)
    ok = symmetric and crossings <= 1 and abs(top - LN4) <= du and located
    return ok, (f"symmetric={symmetric}, max crossings per column={crossings}, "
                f"max grid threshold={top:.4f} (2 ln 2 = {LN4:.4f}, du={du:.4f}), "
                f"argmax centred at pi/2 and 3pi/2={located}")


def _equivalence_grid(n: int):
    return uniform_axis(0.0, TWO_PI, n), open_axis(3.0, n)


def criterion_equivalence(prof: Profile) -> tuple[bool, str]:
    phis, us = _equivalence_grid(prof.equivalence_grid)
    disagree = excluded = 0
    for phi in phis:
        for u in us:
            p = Params(1.0, float(u), float(phi))
            brute = classify_bruteforce(p, 4096)
            if abs(brute.extremal_derivative) < BOUNDARY_EXCLUSION:
                excluded += 1
                continue
            if brute.markovian != classify(p).markovian:
                disagree += 1
    cells = len(phis) * len(us)
    return disagree == 0, f"{disagree} disagreements over {cells - excluded} cells ({excluded} boundary cells excluded)"


def derivative_correctness(prof: Profile) -> tuple[bool, str]:
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(prof.derivative_samples):
        p = _random_params(rng, 0.05, 6.0)
        td = p.t_delay
        # keep the stencil clear of the kink at t_d
        margin = 2e-6 * max(1.0, 2.0 * td)
        t = float(rng.uniform(td + margin, 2 * td - margin))
        h = 1e-6 * max(1.0, t)
        fd = (abs(amplitude_series(p, t + h)) ** 2 - abs(amplitude_series(p, t - h)) ** 2) / (2 * h)
        worst = max(worst, abs(abs2_derivative(p, t) - fd))
    return worst <= 1e-5, f"max |exact - centred FD| = {worst:.3e} over {prof.derivative_samples} points (tol 1e-5)"


def _random_state(rng: np.random.Generator) -> QubitState:
    # uniform in the Bloch ball, one in ten on the surface (pure states)
    v = rng.normal(size=3)
    radius = 1.0 if rng.random() < 0.1 else rng.random() ** (1.0 / 3.0)
    v *= radius / np.linalg.norm(v)
    x, y, z = v
    return QubitState(0.5 * (1 - z), 0.5 * (1 + z), complex(0.5 * x, -0.5 * y))


def channel_properties(prof: Profile) -> tuple[bool, str]:
    rng = np.random.default_rng(7)
    trace_err = 0.0
    min_det = math.inf
    probe_err = 0.0
    plus, minus = QubitState.plus(), QubitState.minus()
    for _ in range(prof.channel_samples):
        eps = math.sqrt(rng.random()) * complex(np.exp(1j * rng.uniform(0.0, TWO_PI)))
        out = evolve(_random_state(rng), eps)
        trace_err = max(trace_err, abs(out.rho_gg + out.rho_ee - 1.0))
        min_det = min(min_det, out.rho_gg * out.rho_ee - abs(out.rho_ge) ** 2)
        probe_err = max(probe_err, abs(trace_distance(evolve(plus, eps), evolve(minus, eps)) - abs(eps)))
    ok = trace_err <= 1e-12 and min_det >= -1e-12 and probe_err <= 1e-12
    return ok, (f"trace error {trace_err:.1e}, min det {min_det:.1e}, "
                f"probe |D - |eps|| {probe_err:.1e} over {prof.channel_samples} states")


def witness_equivalence(prof: Profile) -> tuple[bool, str]:
    phis, us = _equivalence_grid(prof.witness_grid)
    disagree = excluded = 0
    for phi in phis:
        for u in us:
            p = Params(1.0, float(u), float(phi))
            if abs(classify_bruteforce(p, 4096).extremal_derivative) < BOUNDARY_EXCLUSION:
                excluded += 1
                continue
            if blp_witness(p, Probe.PLUS_MINUS, 4096).markovian != classify(p).markovian:
                disagree += 1
    cells = len(phis) * len(us)
    return disagree == 0, f"{disagree} disagreements over {cells - excluded} cells ({excluded} boundary cells excluded)"


def bisect_root(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    f_lo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (f(mid) > 0) == (f_lo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def threshold_at_pi(prof: Profile) -> tuple[bool, str]:
    # boundary of condition (iii) at phi = pi: x_minus = 2 e^{-u/2} / gamma meets t_d
    oracle = bisect_root(lambda u: u * math.exp(0.5 * u) - 2.0, 0.0, 3.0, 1e-12)
    tp = threshold_at(math.pi)
    err = abs(tp.u_star - oracle)
    return err <= 1e-9, f"u*(pi) = {tp.u_star:.12f}, root of u e^(u/2) = 2: {oracle:.12f}, diff {err:.1e} (tol 1e-9)"


CRITERIA: list[tuple[int, str, Callable[[Profile], tuple[bool, str]], float]] = [
    (1, "oracle agreement", oracle_agreement, 5.0),
    (2, "threshold landmark 2 ln 2", threshold_landmark, 2.0),
    (3, "no-threshold line phi = 2n pi", no_threshold_line, 1.0),
    (4, "region map reproduction", figure_map, 30.0),
    (5, "closed-interval criterion equivalence", criterion_equivalence, 60.0),
    (6, "derivative correctness", derivative_correctness, 2.0),
    (7, "channel properties", channel_properties, 2.0),
    (8, "witness equivalence", witness_equivalence, 30.0),
    (9, "derived threshold at phi = pi", threshold_at_pi, 2.0),
]


def run_criterion(number: int, profile: str = "full") -> CriterionResult:
    prof = PROFILES[profile]
    for num, name, fn, budget in CRITERIA:
        if num == number:
            start = time.perf_counter()
            ok, detail = fn(prof)
            elapsed = time.perf_counter() - start
            return CriterionResult(num, name, ok and elapsed <= budget, detail, elapsed, budget)
    raise KeyError(number)


def run_all(profile: str = "full") -> list[CriterionResult]:
    return [run_criterion(num, profile) for num, *_ in CRITERIA]


def format_report(results: list[CriterionResult], profile: str) -> str:
    lines = [f"halfcavity acceptance ({profile})"]
    lines += [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n"
