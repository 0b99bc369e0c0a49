import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from halfcavity.analytic import amplitude_series
from halfcavity.channel import (
    AmplitudeTooLarge,
    InvalidState,
    Probe,
    QubitState,
    blp_witness,
    evolve,
    probe_distances,
    trace_distance,
)
from halfcavity.classifier import classify, classify_bruteforce
from halfcavity.core import ConfigInvalid, Params


@st.composite
def states(draw):
    theta = draw(st.floats(0.0, math.pi))
    az = draw(st.floats(0.0, 2 * math.pi))
    r = draw(st.floats(0.0, 1.0))
    x, y, z = r * math.sin(theta) * math.cos(az), r * math.sin(theta) * math.sin(az), r * math.cos(theta)
    return QubitState(0.5 * (1 - z), 0.5 * (1 + z), complex(0.5 * x, -0.5 * y))


amplitudes = st.builds(
    lambda m, a: m * complex(math.cos(a), math.sin(a)),
    st.floats(0.0, 1.0),
    st.floats(0.0, 2 * math.pi),
)


def brute_trace_distance(a: QubitState, b: QubitState) -> float:
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(a.matrix() - b.matrix()))))


def test_ground_state_untouched():
    for eps in (0.0, 0.3 + 0.4j, 1.0):
        assert evolve(QubitState.ground(), eps) == QubitState.ground()


def test_excited_state_decays():
    out = evolve(QubitState.excited(), 0.5j)
    assert out.rho_gg == pytest.approx(0.75) and out.rho_ee == pytest.approx(0.25)
    assert out.rho_ge == 0


def test_identity_at_unit_amplitude():
    assert evolve(QubitState.plus(), 1.0) == QubitState.plus()


def test_coherence_picks_up_conjugate_amplitude():
    eps = 0.6 - 0.3j
    out = evolve(QubitState.plus(), eps)
    assert out.rho_ge == pytest.approx(0.5 * eps.conjugate())


def test_mixed_state_keeps_unit_trace():
    out = evolve(QubitState(0.3, 0.7, 0.1 + 0.2j), 0.4)
    assert out.rho_gg + out.rho_ee == pytest.approx(1.0, abs=1e-15)
    assert out.rho_gg == pytest.approx(0.3 + 0.7 * (1 - 0.16))


@pytest.mark.parametrize(
    "args",
    [(0.6, 0.6, 0j), (1.2, -0.2, 0j), (0.5, 0.5, 0.6 + 0j), (float("nan"), 1.0, 0j)],
)
def test_invalid_states(args):
    with pytest.raises(InvalidState):
        QubitState(*args)


def test_amplitude_too_large():
    with pytest.raises(AmplitudeTooLarge):
        evolve(QubitState.plus(), 1.01)


def test_trace_distance_examples():
    a = QubitState(0.2, 0.8, 0.1 + 0.3j)
    assert trace_distance(a, a) == 0
    assert trace_distance(QubitState.excited(), QubitState.ground()) == pytest.approx(1.0)
    eps = 0.3 + 0.5j
    d = trace_distance(evolve(QubitState.plus(), eps), evolve(QubitState.minus(), eps))
    assert d == pytest.approx(abs(eps), abs=1e-15)
    assert d == pytest.approx(
        brute_trace_distance(evolve(QubitState.plus(), eps), evolve(QubitState.minus(), eps)), abs=1e-14)


@settings(max_examples=300, deadline=None)
@given(states(), amplitudes)
def test_evolve_preserves_trace_and_positivity(rho, eps):
    out = evolve(rho, eps)
    assert abs(out.rho_gg + out.rho_ee - 1) <= 1e-12
    assert out.rho_gg * out.rho_ee - abs(out.rho_ge) ** 2 >= -1e-12
    assert np.all(np.linalg.eigvalsh(out.matrix()) >= -1e-12)


@settings(max_examples=200, deadline=None)
@given(states(), states())
def test_closed_form_distance_matches_eigenvalues(a, b):
    assert trace_distance(a, b) == pytest.approx(brute_trace_distance(a, b), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(0.0, 2 * math.pi))
def test_probe_distance_is_amplitude_modulus(u, phi):
    p = Params(1.0, u, phi)
    ts = np.linspace(0, 2 * u, 101)
    assert np.allclose(probe_distances(p, Probe.PLUS_MINUS, ts), np.abs(amplitude_series(p, ts)), atol=1e-12, rtol=0)
    assert np.allclose(probe_distances(p, Probe.E_G, ts), np.abs(amplitude_series(p, ts)) ** 2, atol=1e-12, rtol=0)


def test_witness_examples():
    rep = blp_witness(Params(1.0, 1.0, math.pi / 2), Probe.PLUS_MINUS)
    assert rep.nm_measure == 0 and rep.markovian
    rep = blp_witness(Params(1.0, 1.0, 0.0), Probe.PLUS_MINUS)
    assert rep.nm_measure > 0 and not rep.markovian
    assert blp_witness(Params(0.0, 1.0, 0.3)).nm_measure == 0


def test_witness_measure_is_growth_of_modulus():
    # for the |+>,|-> pair the measure is the total rise of |eps| over the window
    p = Params(1.0, 1.0, 0.0)
    ts = np.linspace(0, 2.0, 4097)
    rise = np.sum(np.maximum(0, np.diff(np.abs(amplitude_series(p, ts)))))
    assert blp_witness(p, Probe.PLUS_MINUS, 4096).nm_measure == pytest.approx(rise, rel=1e-12)


def test_witness_rejects_coarse_grid():
    with pytest.raises(ConfigInvalid):
        blp_witness(Params(1, 1, 0), n_steps=100)


def test_witness_agrees_with_classifier_on_grid():
    for phi in np.linspace(0, 2 * math.pi, 17):
        for u in 3.0 * np.arange(1, 18) / 17:
            p = Params(1.0, u, phi)
            if abs(classify_bruteforce(p, 4096).extremal_derivative) < 1e-9:
                continue
            for probe in Probe:
                assert blp_witness(p, probe).markovian == classify(p).markovian


def test_markovian_points_never_increase_distance():
    for phi, u in [(math.pi / 2, 1.0), (math.pi, 1.0), (0.5, 0.01), (2.0, 0.5)]:
        p = Params(1.0, u, phi)
        assert classify(p).markovian
        ts = np.linspace(0, 2 * u, 2049)
        for probe in Probe:
            assert np.all(np.diff(probe_distances(p, probe, ts)) <= 1e-12)
