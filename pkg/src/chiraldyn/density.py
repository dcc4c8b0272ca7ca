"""Density-matrix view of the two-level system: conversions, purity, decay rate.

The 2x2 density matrix in the {|L>, |R>} basis is stored by its independent
elements rho_ll, rho_rr (real populations) and rho_lr (complex coherence);
rho_rl is the conjugate of rho_lr and is never stored, so hermiticity holds
by construction. The Bloch map is

    rho_ll = (1 - Z)/2,  rho_rr = (1 + Z)/2,  rho_lr = (X + iY)/2

and the purity Tr(rho^2) = (1 + X^2 + Y^2 + Z^2)/2 lies in [1/2, 1]. Under
pure dephasing the purity obeys d/dt Tr(rho^2) = -4*gamma*(X^2 + Y^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bloch import STATE_NORM_TOL, BlochState, SystemParams, bloch_rhs

# Tolerances on trace and positivity at construction (double precision).
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian 2x2 density matrix: populations rho_ll, rho_rr and coherence rho_lr."""

    rho_ll: float
    rho_rr: float
    rho_lr: complex

    def __post_init__(self):
        if not (0.0 <= self.rho_ll <= 1.0 and 0.0 <= self.rho_rr <= 1.0):
            raise ValueError(
                f"populations must lie in [0, 1], got rho_ll={self.rho_ll}, rho_rr={self.rho_rr}"
            )
        if abs(self.rho_ll + self.rho_rr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace must be 1, got {self.rho_ll + self.rho_rr!r}")
        det = self.rho_ll * self.rho_rr - abs(self.rho_lr) ** 2
        if det < -POSITIVITY_TOL:
            raise ValueError(f"matrix is not positive semidefinite (det = {det!r})")

    @property
    def rho_rl(self) -> complex:
        return self.rho_lr.conjugate()


def bloch_to_density(state: BlochState) -> DensityMatrix:
    """Density matrix of a Bloch state; rejects |r| > 1 at construction."""
    return DensityMatrix(
        rho_ll=(1.0 - state.z) / 2.0,
        rho_rr=(1.0 + state.z) / 2.0,
        rho_lr=complex(state.x, state.y) / 2.0,
    )


def density_to_bloch(rho: DensityMatrix) -> BlochState:
    """Exact inverse of bloch_to_density."""
    return BlochState(
        x=2.0 * rho.rho_lr.real,
        y=2.0 * rho.rho_lr.imag,
        z=rho.rho_rr - rho.rho_ll,
    )


def purity(state: BlochState) -> float:
    """Tr(rho^2) = (1 + |r|^2)/2, in [1/2, 1]; 1 iff the state is pure."""
    return 0.5 * (1.0 + state.norm_squared())


def purity_rate(state: BlochState, params: SystemParams) -> float:
    """Instantaneous purity decay rate -4*gamma*(X^2 + Y^2), always <= 0."""
    return -4.0 * params.gamma * (state.x * state.x + state.y * state.y)


def density_rhs(rho: DensityMatrix, params: SystemParams) -> tuple[float, float, complex]:
    """Element-wise master equation: returns (d rho_ll, d rho_rr, d rho_rl)/dt.

    d rho_ll/dt = -Im(2*omega*rho_rl)
    d rho_rr/dt = +Im(2*omega*rho_rl)
    d rho_rl/dt = -4*gamma*rho_rl + i*omega*(rho_ll - rho_rr)
    """
    om, ga = params.omega, params.gamma
    rho_rl = rho.rho_rl
    pump = (2.0 * om * rho_rl).imag
    d_rl = -4.0 * ga * rho_rl + 1j * om * (rho.rho_ll - rho.rho_rr)
    return (-pump, pump, d_rl)


def _consistency_gap(rho: DensityMatrix, params: SystemParams) -> float:
    """Max deviation between density_rhs and bloch_rhs through the conversions.

    Diagnostic used by tests; zero up to rounding for every physical state.
    """
    d_ll, d_rr, d_rl = density_rhs(rho, params)
    dx_blo, dy_blo, dz_blo = bloch_rhs(density_to_bloch(rho), params)
    d_lr = d_rl.conjugate()
    return max(
        abs(2.0 * d_lr.real - dx_blo),
        abs(2.0 * d_lr.imag - dy_blo),
        abs((d_rr - d_ll) - dz_blo),
    )


def is_physical_bloch(x: float, y: float, z: float) -> bool:
    """True when (x, y, z) is inside the Bloch ball within the construction tolerance."""
    return (
        math.isfinite(x)
        and math.isfinite(y)
        and math.isfinite(z)
        and x * x + y * y + z * z <= 1.0 + STATE_NORM_TOL
    )
