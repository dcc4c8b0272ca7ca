"""Bloch-vector dynamics of a tunneling two-level system under pure dephasing.

The state of the two-level system in the left/right-localized basis is the
real Bloch vector (X, Y, Z) with X = 2 Re rho_LR, Y = 2 Im rho_LR and
Z = rho_RR - rho_LL. With tunneling frequency omega and dephasing rate gamma
(both dimensionless) the equations of motion are

    dX/dt = -4*gamma*X
    dY/dt = -4*gamma*Y + 2*omega*Z
    dZ/dt = -2*omega*Y

X decouples and decays as X0*exp(-4*gamma*t). The (Y, Z) block is a damped
oscillator with characteristic exponents -2*gamma +/- sqrt(k)/... where
k = 4*(omega**2 - gamma**2). Its exact solution, valid in every damping
regime, is

    Y(t) = exp(-2*gamma*t) * [Y0*C(k,t) + (2*omega*Z0 - 2*gamma*Y0)*S(k,t)]
    Z(t) = exp(-2*gamma*t) * [Z0*C(k,t) + (2*gamma*Z0 - 2*omega*Y0)*S(k,t)]

with C = cos(s*t), S = sin(s*t)/s and s = sqrt(k) when tunneling dominates
(omega > gamma), C = cosh(sb*t), S = sinh(sb*t)/sb with sb = sqrt(-k) when
dephasing dominates, and the removable-singularity limit C = 1, S = t at
critical damping. Near the critical boundary C and S are evaluated by a
truncated Taylor series in q = k*t**2 so the branch switch is
cancellation-safe to ~1e-10.

All rates and times are dimensionless throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# Construction tolerance on |r|^2 <= 1 for physical states.
STATE_NORM_TOL = 1e-12

# Relative half-width of the critical-damping band: the dynamics are treated
# as critically damped when |omega - gamma| <= CRITICAL_BAND * max(omega, gamma).
CRITICAL_BAND = 1e-6


@dataclass(frozen=True)
class BlochState:
    """Bloch vector (x, y, z); |r|^2 <= 1 + 1e-12 with equality for pure states."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name, v in (("x", self.x), ("y", self.y), ("z", self.z)):
            if not math.isfinite(v):
                raise ValueError(f"Bloch component {name} must be finite, got {v}")
        if self.norm_squared() > 1.0 + STATE_NORM_TOL:
            raise ValueError(
                f"unphysical Bloch state: x^2+y^2+z^2 = {self.norm_squared()!r} > 1"
            )

    def norm_squared(self) -> float:
        return self.x * self.x + self.y * self.y + self.z * self.z

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class SystemParams:
    """Tunneling frequency omega >= 0 and dephasing rate gamma >= 0."""

    omega: float
    gamma: float

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega >= 0.0):
            raise ValueError(f"omega must be >= 0 and finite, got {self.omega}")
        if not (math.isfinite(self.gamma) and self.gamma >= 0.0):
            raise ValueError(f"gamma must be >= 0 and finite, got {self.gamma}")


class RegimeKind(Enum):
    UNDERDAMPED = "underdamped"
    CRITICAL = "critical"
    OVERDAMPED = "overdamped"


@dataclass(frozen=True)
class Regime:
    """Damping regime and its modified rate: s = 2*sqrt(omega^2-gamma^2) when
    underdamped, sb = 2*sqrt(gamma^2-omega^2) when overdamped, 0 at critical."""

    kind: RegimeKind
    rate: float


def classify_regime(params: SystemParams) -> Regime:
    """Classify the damping regime of the (Y, Z) oscillator.

    Underdamped for omega - gamma > eps, overdamped for gamma - omega > eps,
    critical in between, with eps = 1e-6 * max(omega, gamma).
    """
    om, ga = params.omega, params.gamma
    eps = CRITICAL_BAND * max(om, ga)
    if om - ga > eps:
        return Regime(RegimeKind.UNDERDAMPED, 2.0 * math.sqrt((om - ga) * (om + ga)))
    if ga - om > eps:
        return Regime(RegimeKind.OVERDAMPED, 2.0 * math.sqrt((ga - om) * (ga + om)))
    return Regime(RegimeKind.CRITICAL, 0.0)


def _bloch_derivatives(x, y, z, omega, gamma):
    """Right-hand side of the Bloch equations for scalar components.

    Shared by bloch_rhs and (after numba jitting) the RK4 oracle, so the
    equations of motion live in exactly one place.
    """
    return (
        -4.0 * gamma * x,
        -4.0 * gamma * y + 2.0 * omega * z,
        -2.0 * omega * y,
    )


def bloch_rhs(state: BlochState, params: SystemParams) -> np.ndarray:
    """Time derivative (dX/dt, dY/dt, dZ/dt) at the given state."""
    return np.array(_bloch_derivatives(state.x, state.y, state.z, params.omega, params.gamma))


def _cs_factors(omega: float, gamma: float, t):
    """Oscillation factors (C, S) of the (Y, Z) block, without the envelope.

    t may be a scalar or an ndarray. Near critical damping both factors are
    evaluated by a Taylor series in q = k*t^2 (terms through q^4, truncation
    below 1e-12 across the band) to avoid the 0/0 of sin(s*t)/s.
    """
    k = 4.0 * (omega - gamma) * (omega + gamma)
    eps = CRITICAL_BAND * max(omega, gamma)
    if abs(omega - gamma) <= eps:
        q = k * t * t
        c = 1.0 + q * (-1.0 / 2 + q * (1.0 / 24 + q * (-1.0 / 720 + q / 40320)))
        s = t * (1.0 + q * (-1.0 / 6 + q * (1.0 / 120 + q * (-1.0 / 5040 + q / 362880))))
        return c, s
    if omega > gamma:
        sf = math.sqrt(k)
        return np.cos(sf * t), np.sin(sf * t) / sf
    sb = math.sqrt(-k)
    arg = sb * t
    if np.max(arg) < 350.0:
        return np.cosh(arg), np.sinh(arg) / sb
    # Deep overdamped at long times: fold the (later) envelope split in here
    # would overflow cosh; use bounded exponentials instead.
    grow = np.exp(np.minimum(arg, 700.0))
    decay = np.exp(-arg)
    return 0.5 * (grow + decay), 0.5 * (grow - decay) / sb


def _propagate_components(x0, y0, z0, omega: float, gamma: float, t):
    """Closed-form (X, Y, Z) at time(s) t for scalar initial components."""
    c, s = _cs_factors(omega, gamma, t)
    env = np.exp(-2.0 * gamma * t)
    x = x0 * np.exp(-4.0 * gamma * t)
    y = env * (y0 * c + (2.0 * omega * z0 - 2.0 * gamma * y0) * s)
    z = env * (z0 * c + (2.0 * gamma * z0 - 2.0 * omega * y0) * s)
    return x, y, z


def _require_propagation_args(params: SystemParams, t) -> None:
    if params.omega <= 0.0:
        raise ValueError(f"omega must be > 0 to propagate, got {params.omega}")
    if np.any(np.asarray(t) < 0.0):
        raise ValueError("t must be >= 0")


def propagate_analytic(state0: BlochState, params: SystemParams, t: float) -> BlochState:
    """Exact solution of the Bloch equations at time t >= 0.

    Requires omega > 0 (the dynamics below reduce to trivial decay at
    omega = 0, which is out of scope).
    """
    _require_propagation_args(params, t)
    x, y, z = _propagate_components(
        state0.x, state0.y, state0.z, params.omega, params.gamma, float(t)
    )
    return BlochState(float(x), float(y), float(z))


def sample_trajectory(state0: BlochState, params: SystemParams, times) -> np.ndarray:
    """Closed-form states at an array of times; returns shape (len(times), 3)."""
    _require_propagation_args(params, times)
    ts = np.atleast_1d(np.asarray(times, dtype=float))
    x, y, z = _propagate_components(state0.x, state0.y, state0.z, params.omega, params.gamma, ts)
    return np.column_stack([x, y, z])


def steady_state(params: SystemParams) -> BlochState:
    """Long-time stationary state, the fully mixed (0, 0, 0); requires gamma > 0."""
    if params.gamma <= 0.0:
        raise ValueError(
            "gamma must be > 0: without dephasing the rotation is undamped and "
            "no unique stationary state exists"
        )
    return BlochState(0.0, 0.0, 0.0)


def slowest_decay_rate(params: SystemParams) -> float:
    """Decay rate of the slowest mode: 2*gamma, or 2*gamma - sb when overdamped.

    Positive whenever gamma > 0 and omega > 0; used by envelope bounds.
    """
    if params.gamma <= 0.0:
        raise ValueError("gamma must be > 0: nothing decays without dephasing")
    regime = classify_regime(params)
    if regime.kind is RegimeKind.OVERDAMPED:
        return 2.0 * params.gamma - regime.rate
    return 2.0 * params.gamma
