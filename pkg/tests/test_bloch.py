"""Tests for the Bloch-vector core.

Covers:
- regime classification and modified rates
- the equations of motion (hand-checked values)
- closed-form propagation vs the RK4 oracle in every regime
- semigroup property, X decoupling, contraction, decay envelope
- cancellation-safe behavior across the critical boundary
- dephasing-free limit (rotation at 2*omega, conserved purity)
- input validation
"""

import math

import numpy as np
import pytest

from chiraldyn import (
    BlochState,
    RegimeKind,
    SystemParams,
    bloch_rhs,
    classify_regime,
    propagate_analytic,
    sample_trajectory,
    slowest_decay_rate,
    steady_state,
)
from chiraldyn.density import purity
from chiraldyn.rk4 import integrate_final

ORACLE_DT = 1e-5
ORACLE_TOL = 1e-8


def random_ball_state(rng, radius=1.0):
    v = rng.normal(size=3)
    v *= radius * rng.uniform(0.0, 1.0) ** (1.0 / 3.0) / np.linalg.norm(v)
    return BlochState(*v)


def random_params(rng, i):
    """Cycle through the three regimes, including near-boundary draws."""
    omega = rng.uniform(0.1, 5.0)
    mode = i % 4
    if mode == 0:
        gamma = omega * rng.uniform(0.0, 0.95)
    elif mode == 1:
        gamma = rng.uniform(1.05 * omega, 10.0)
    elif mode == 2:
        gamma = omega
    else:
        gamma = omega * (1.0 + rng.choice([-1.0, 1.0]) * 1e-7)
    return SystemParams(omega=omega, gamma=gamma)


# ----------------------------------------------------------------------
# regime classification
# ----------------------------------------------------------------------

@pytest.mark.parametrize(
    "omega,gamma,kind,rate",
    [
        (1.0, 0.5, RegimeKind.UNDERDAMPED, 2.0 * math.sqrt(0.75)),
        (1.0, 1.0, RegimeKind.CRITICAL, 0.0),
        (1.0, 1.5, RegimeKind.OVERDAMPED, 2.0 * math.sqrt(1.25)),
    ],
)
def test_classify_regime(omega, gamma, kind, rate):
    regime = classify_regime(SystemParams(omega, gamma))
    assert regime.kind is kind
    assert regime.rate == pytest.approx(rate, abs=1e-12)


def test_classify_regime_band_is_relative():
    # 1 part in 1e-7 off the boundary still counts as critical
    assert classify_regime(SystemParams(2.0, 2.0 * (1 + 1e-7))).kind is RegimeKind.CRITICAL
    assert classify_regime(SystemParams(2.0, 2.0 * (1 + 1e-5))).kind is RegimeKind.OVERDAMPED


# ----------------------------------------------------------------------
# equations of motion
# ----------------------------------------------------------------------

@pytest.mark.parametrize(
    "state,omega,gamma,expected",
    [
        ((1.0, 0.0, 0.0), 1.0, 0.5, (-2.0, 0.0, 0.0)),
        ((0.0, 0.0, 1.0), 1.0, 0.0, (0.0, 2.0, 0.0)),
        ((0.3, 0.4, 0.5), 2.0, 0.25, (-0.3, 1.6, -1.6)),
    ],
)
def test_bloch_rhs(state, omega, gamma, expected):
    got = bloch_rhs(BlochState(*state), SystemParams(omega, gamma))
    np.testing.assert_allclose(got, expected, atol=1e-14)


# ----------------------------------------------------------------------
# closed-form propagation
# ----------------------------------------------------------------------

def test_propagate_identity_at_t0():
    rng = np.random.default_rng(7)
    for i in range(20):
        state = random_ball_state(rng)
        params = random_params(rng, i)
        out = propagate_analytic(state, params, 0.0)
        assert out == state


def test_propagate_free_rotation_half_period():
    # gamma = 0: Z rotates as cos(2*omega*t); t = pi/2 flips |R> to |L>
    out = propagate_analytic(BlochState(0, 0, 1), SystemParams(1.0, 0.0), math.pi / 2)
    np.testing.assert_allclose(out.as_array(), [0.0, 0.0, -1.0], atol=1e-12)


def test_propagate_overdamped_matches_rk4():
    state = BlochState(0.0, 0.6, 0.8)
    params = SystemParams(1.0, 1.5)
    got = propagate_analytic(state, params, 0.5).as_array()
    ref = integrate_final(state, params, 0.5, ORACLE_DT)
    np.testing.assert_allclose(got, ref, atol=1e-10)


def test_propagate_matches_rk4_all_regimes():
    rng = np.random.default_rng(11)
    for i in range(40):
        state = random_ball_state(rng)
        params = random_params(rng, i)
        t = rng.uniform(0.01, 10.0)
        got = propagate_analytic(state, params, t).as_array()
        ref = integrate_final(state, params, t, ORACLE_DT)
        dev = np.max(np.abs(got - ref))
        assert dev < ORACLE_TOL, (
            f"deviation {dev:.3e} at omega={params.omega}, gamma={params.gamma}, t={t}"
        )


def test_semigroup_property():
    rng = np.random.default_rng(13)
    for i in range(40):
        state = random_ball_state(rng)
        params = random_params(rng, i)
        t1, t2 = rng.uniform(0.0, 5.0, size=2)
        two_hops = propagate_analytic(propagate_analytic(state, params, t1), params, t2)
        one_hop = propagate_analytic(state, params, t1 + t2)
        np.testing.assert_allclose(
            two_hops.as_array(), one_hop.as_array(), atol=1e-10, rtol=0
        )


def test_x_component_decouples_exactly():
    rng = np.random.default_rng(17)
    for i in range(40):
        state = random_ball_state(rng)
        params = random_params(rng, i)
        t = rng.uniform(0.0, 10.0)
        out = propagate_analytic(state, params, t)
        # to floating rounding (math.exp and np.exp may differ in the last ulp)
        assert out.x == pytest.approx(state.x * math.exp(-4.0 * params.gamma * t), rel=1e-15, abs=0)


def test_regime_boundary_continuity():
    # states a hair to either side of gamma = omega must match the critical branch
    base = BlochState(0.3, -0.5, 0.7)
    for t in (0.5, 2.0, 10.0):
        states = [
            propagate_analytic(base, SystemParams(1.0, g), t).as_array()
            for g in (1.0 - 1e-6, 1.0, 1.0 + 1e-6)
        ]
        for a in states:
            for b in states:
                assert np.max(np.abs(a - b)) < 1e-5


def test_norm_contraction_along_trajectories():
    rng = np.random.default_rng(19)
    for i in range(20):
        state = random_ball_state(rng)
        params = random_params(rng, i)
        samples = sample_trajectory(state, params, np.linspace(0.0, 10.0, 400))
        norms = np.sum(samples * samples, axis=1)
        assert np.all(np.diff(norms) <= 1e-12)


def test_decay_envelope_away_from_critical():
    # |r(t)| <= 10 |r0| exp(-lambda t); near critical damping the decay carries
    # a polynomial factor, so draws stay outside |omega-gamma| < 0.1*max.
    rng = np.random.default_rng(23)
    times = np.linspace(0.0, 10.0, 300)
    for i in range(30):
        omega = rng.uniform(0.1, 5.0)
        if i % 2 == 0:
            gamma = omega * rng.uniform(0.05, 0.9)
        else:
            gamma = rng.uniform(1.1 * omega, 10.0)
        params = SystemParams(omega, gamma)
        state = random_ball_state(rng)
        r0 = math.sqrt(state.norm_squared())
        if r0 < 1e-6:
            continue
        lam = slowest_decay_rate(params)
        samples = sample_trajectory(state, params, times)
        norms = np.sqrt(np.sum(samples * samples, axis=1))
        bound = 10.0 * r0 * np.exp(-lam * times)
        assert np.all(norms <= bound), (
            f"envelope violated at omega={omega}, gamma={gamma}"
        )


def test_dephasing_free_dynamics_conserve_purity_and_rotate():
    params = SystemParams(1.3, 0.0)
    state = BlochState(0.4, 0.5, -0.2)
    times = np.linspace(0.0, 12.0, 200)
    samples = sample_trajectory(state, params, times)
    # purity constant
    for row in samples:
        assert abs(purity(BlochState(*row)) - purity(state)) < 1e-12
    # X frozen
    np.testing.assert_allclose(samples[:, 0], state.x, atol=1e-14, rtol=0)
    # (Y, Z) rotates at angular frequency 2*omega
    theta = 2.0 * params.omega * times
    expected_y = state.y * np.cos(theta) + state.z * np.sin(theta)
    expected_z = state.z * np.cos(theta) - state.y * np.sin(theta)
    np.testing.assert_allclose(samples[:, 1], expected_y, atol=1e-12, rtol=0)
    np.testing.assert_allclose(samples[:, 2], expected_z, atol=1e-12, rtol=0)


# ----------------------------------------------------------------------
# fixed points and decay rates
# ----------------------------------------------------------------------

@pytest.mark.parametrize("omega,gamma", [(1.0, 0.5), (2.0, 10.0)])
def test_steady_state_is_fully_mixed(omega, gamma):
    assert steady_state(SystemParams(omega, gamma)) == BlochState(0.0, 0.0, 0.0)


def test_steady_state_rejects_zero_gamma():
    with pytest.raises(ValueError, match="gamma"):
        steady_state(SystemParams(1.0, 0.0))


@pytest.mark.parametrize(
    "omega,gamma,expected",
    [
        (1.0, 0.5, 1.0),
        (1.0, 1.5, 0.7639320225002102),
        (1.0, 10.0, 0.10025125786760114),
    ],
)
def test_slowest_decay_rate(omega, gamma, expected):
    assert slowest_decay_rate(SystemParams(omega, gamma)) == pytest.approx(expected, abs=1e-12)


def test_slowest_decay_rate_rejects_zero_gamma():
    with pytest.raises(ValueError, match="gamma"):
        slowest_decay_rate(SystemParams(1.0, 0.0))


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------

def test_propagate_rejects_negative_time():
    with pytest.raises(ValueError, match="t must be >= 0"):
        propagate_analytic(BlochState(0, 0, 1), SystemParams(1.0, 0.5), -0.1)


def test_propagate_rejects_zero_omega():
    with pytest.raises(ValueError, match="omega"):
        propagate_analytic(BlochState(0, 0, 1), SystemParams(0.0, 0.5), 1.0)


def test_bloch_state_rejects_norm_above_one():
    with pytest.raises(ValueError, match="unphysical"):
        BlochState(0.8, 0.8, 0.8)


def test_bloch_state_rejects_non_finite():
    with pytest.raises(ValueError, match="finite"):
        BlochState(math.nan, 0.0, 0.0)


def test_system_params_reject_negative_rates():
    with pytest.raises(ValueError, match="gamma"):
        SystemParams(1.0, -0.5)
    with pytest.raises(ValueError, match="omega"):
        SystemParams(-1.0, 0.5)
