"""Fixed-step classical RK4 integrator of the Bloch equations.

This is the brute-force oracle used to validate every closed-form result:
it only ever evaluates the Bloch right-hand side (shared with bloch_rhs) and
never touches the analytic branch formulas. Fixed step keeps order-of-
convergence checks deterministic; the stability guard dt*max(4*gamma,
2*omega) < 0.5 keeps RK4 well inside its stability region for the stiffest
mode. The final step is shortened so the trajectory lands exactly on t_end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from . import bloch
from .bloch import BlochState, SystemParams, _bloch_derivatives

_rhs = numba.njit(cache=True)(_bloch_derivatives)


@numba.njit(cache=True)
def _rk4_step(x, y, z, omega, gamma, h):
    k1x, k1y, k1z = _rhs(x, y, z, omega, gamma)
    k2x, k2y, k2z = _rhs(x + 0.5 * h * k1x, y + 0.5 * h * k1y, z + 0.5 * h * k1z, omega, gamma)
    k3x, k3y, k3z = _rhs(x + 0.5 * h * k2x, y + 0.5 * h * k2y, z + 0.5 * h * k2z, omega, gamma)
    k4x, k4y, k4z = _rhs(x + h * k3x, y + h * k3y, z + h * k3z, omega, gamma)
    six = h / 6.0
    return (
        x + six * (k1x + 2.0 * (k2x + k3x) + k4x),
        y + six * (k1y + 2.0 * (k2y + k3y) + k4y),
        z + six * (k1z + 2.0 * (k2z + k3z) + k4z),
    )


@numba.njit(cache=True)
def _rk4_record(x, y, z, omega, gamma, times):
    states = np.empty((times.shape[0], 3))
    states[0, 0], states[0, 1], states[0, 2] = x, y, z
    for i in range(times.shape[0] - 1):
        h = times[i + 1] - times[i]
        x, y, z = _rk4_step(x, y, z, omega, gamma, h)
        states[i + 1, 0], states[i + 1, 1], states[i + 1, 2] = x, y, z
    return states


@numba.njit(cache=True)
def _rk4_endpoint(x, y, z, omega, gamma, t_end, dt, n_steps):
    for i in range(n_steps - 1):
        x, y, z = _rk4_step(x, y, z, omega, gamma, dt)
    h_last = t_end - (n_steps - 1) * dt
    return _rk4_step(x, y, z, omega, gamma, h_last)


@dataclass(frozen=True)
class Trajectory:
    """RK4 samples at every step point: times (n,), states (n, 3), step dt."""

    times: np.ndarray
    states: np.ndarray
    params: SystemParams
    dt: float

    @property
    def initial_state(self) -> np.ndarray:
        return self.states[0]

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def _check_step(params: SystemParams, t_end: float, dt: float) -> None:
    if dt <= 0.0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if t_end <= 0.0:
        raise ValueError(f"t_end must be > 0, got {t_end}")
    if dt > t_end:
        raise ValueError(f"dt must be <= t_end, got dt={dt}, t_end={t_end}")
    stiffness = dt * max(4.0 * params.gamma, 2.0 * params.omega)
    if stiffness >= 0.5:
        raise ValueError(
            f"dt={dt} too large for stability: dt*max(4*gamma, 2*omega) = "
            f"{stiffness} must be < 0.5; use a smaller dt"
        )


def _step_count(t_end: float, dt: float) -> int:
    # ceil with a relative guard so t_end an exact multiple of dt does not
    # pick up a spurious zero-length final step.
    return max(1, int(math.ceil(t_end / dt - 1e-9)))


def integrate(state0: BlochState, params: SystemParams, t_end: float, dt: float) -> Trajectory:
    """Integrate the Bloch equations, recording every step point from 0 to t_end."""
    _check_step(params, t_end, dt)
    n_steps = _step_count(t_end, dt)
    times = dt * np.arange(n_steps + 1)
    times[-1] = t_end
    states = _rk4_record(state0.x, state0.y, state0.z, params.omega, params.gamma, times)
    return Trajectory(times=times, states=states, params=params, dt=dt)


def integrate_final(state0: BlochState, params: SystemParams, t_end: float, dt: float) -> np.ndarray:
    """Final state only (no recording); same stepping as integrate."""
    _check_step(params, t_end, dt)
    n_steps = _step_count(t_end, dt)
    x, y, z = _rk4_endpoint(
        state0.x, state0.y, state0.z, params.omega, params.gamma, t_end, dt, n_steps
    )
    return np.array([x, y, z])


def max_deviation(traj: Trajectory) -> float:
    """Max componentwise gap between the trajectory and the closed-form solution."""
    if traj.times.shape[0] == 0:
        raise ValueError("trajectory is empty")
    state0 = BlochState(*traj.states[0])
    exact = bloch.sample_trajectory(state0, traj.params, traj.times)
    return float(np.max(np.abs(traj.states - exact)))
