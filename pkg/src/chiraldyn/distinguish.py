"""Pure-vs-mixed distinguishability through the population difference Z.

Pair an initially pure state (X0p, Y0p, Z0) with the maximally random mixed
state (0, 0, Z0) carrying the same well populations. Because X and Z are
decoupled, the population-difference gap depends only on Y0p:

    dZ(t) = Z_pure(t) - Z_mixed(t) = -2*omega*Y0p * exp(-2*gamma*t) * S(k, t)

with S the sin/sinh factor of the Bloch propagator; explicitly
-(2*omega*Y0p/s)*exp(-2*gamma*t)*sin(s*t) when tunneling dominates and
-(omega*Y0p/sb)*[exp((sb-2*gamma)*t) - exp(-(sb+2*gamma)*t)] when dephasing
dominates. With no imaginary coherence (Y0p = 0) the two preparations are
indistinguishable by population measurements at any time and any gamma.

In the dephasing-dominant regime |dZ| has a single extremum at
t_max = ln[(sb+2*gamma)/(2*gamma-sb)]/(2*sb); in the tunneling-dominant
regime the first stationary point of the damped oscillation lies at
arctan(s/(2*gamma))/s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import (
    BlochState,
    Regime,
    RegimeKind,
    SystemParams,
    _cs_factors,
    _require_propagation_args,
    classify_regime,
)


@dataclass(frozen=True)
class StatePair:
    """A pure state and the zero-coherence mixed state with the same z."""

    pure: BlochState
    mixed: BlochState

    def __post_init__(self):
        if abs(self.pure.norm_squared() - 1.0) > 1e-12:
            raise ValueError("pure member must have |r| = 1")
        if self.mixed.x != 0.0 or self.mixed.y != 0.0:
            raise ValueError("mixed member must have zero coherences")
        if self.pure.z != self.mixed.z:
            raise ValueError("pair must share the same initial population difference")


def make_pair(y0_pure: float, z0: float, x_sign: int = 1) -> StatePair:
    """Build the pure/mixed pair for given initial Y0p and shared Z0.

    X0p = x_sign * sqrt(1 - Y0p^2 - Z0^2); requires y0_pure^2 + z0^2 <= 1.
    """
    if x_sign not in (1, -1):
        raise ValueError(f"x_sign must be +1 or -1, got {x_sign}")
    residue = 1.0 - y0_pure * y0_pure - z0 * z0
    if residue < -1e-12:
        raise ValueError(
            f"no pure state exists: y0_pure^2 + z0^2 = {y0_pure**2 + z0**2!r} > 1"
        )
    x0 = x_sign * math.sqrt(max(0.0, residue))
    return StatePair(pure=BlochState(x0, y0_pure, z0), mixed=BlochState(0.0, 0.0, z0))


def delta_z(params: SystemParams, y0_pure: float, t: float) -> float:
    """Population-difference gap dZ(t) between the pair members."""
    _require_propagation_args(params, t)
    _, s = _cs_factors(params.omega, params.gamma, float(t))
    return float(-2.0 * params.omega * y0_pure * math.exp(-2.0 * params.gamma * t) * s)


def _delta_z_samples(params: SystemParams, y0_pure: float, times: np.ndarray) -> np.ndarray:
    _require_propagation_args(params, times)
    _, s = _cs_factors(params.omega, params.gamma, times)
    return -2.0 * params.omega * y0_pure * np.exp(-2.0 * params.gamma * times) * s


def _require_regime(params: SystemParams, kind: RegimeKind) -> Regime:
    regime = classify_regime(params)
    if regime.kind is not kind:
        raise ValueError(
            f"requires the {kind.value} regime, got {regime.kind.value} "
            f"(omega={params.omega}, gamma={params.gamma})"
        )
    return regime


def t_max_overdamped(params: SystemParams) -> float:
    """Time of the single |dZ| extremum in the dephasing-dominant regime."""
    regime = _require_regime(params, RegimeKind.OVERDAMPED)
    sb, two_gamma = regime.rate, 2.0 * params.gamma
    return math.log((sb + two_gamma) / (two_gamma - sb)) / (2.0 * sb)


def first_extremum_underdamped(params: SystemParams) -> float:
    """First stationary point of the damped dZ oscillation, arctan(s/2*gamma)/s.

    At gamma = 0 this is the quarter period pi/(2*s).
    """
    regime = _require_regime(params, RegimeKind.UNDERDAMPED)
    s = regime.rate
    if params.gamma == 0.0:
        return math.pi / (2.0 * s)
    return math.atan(s / (2.0 * params.gamma)) / s


def extremum_time(params: SystemParams) -> float:
    """First |dZ| extremum in any regime; the limits agree at 1/(2*gamma)."""
    kind = classify_regime(params).kind
    if kind is RegimeKind.OVERDAMPED:
        return t_max_overdamped(params)
    if kind is RegimeKind.UNDERDAMPED:
        return first_extremum_underdamped(params)
    return 1.0 / (2.0 * params.gamma)


def delta_z_curve(
    params: SystemParams, y0_pure: float, t_end: float, n_samples: int
) -> np.ndarray:
    """Uniform samples of the normalized gap dZ(t)/Y0p on [0, t_end].

    Returns an (n_samples, 2) array of (t, dZ/Y0p) rows. Y0p = 0 is rejected:
    the curve is identically zero and the normalization meaningless.
    """
    if y0_pure == 0.0:
        raise ValueError("y0_pure must be nonzero; the curve is identically zero")
    if n_samples < 2:
        raise ValueError(f"n_samples must be >= 2, got {n_samples}")
    times = np.linspace(0.0, t_end, n_samples)
    values = _delta_z_samples(params, y0_pure, times) / y0_pure
    return np.column_stack([times, values])
