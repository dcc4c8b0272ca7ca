"""Purity-decay scans over grids of initial coherences (X0, Y0).

Each grid point inside the unit disk is lifted to the pure state
(X0, Y0, +sqrt(1 - X0^2 - Y0^2)) on the upper Bloch hemisphere, propagated
for a fixed time at each dephasing rate, and scored by its purity. Points
outside the disk are marked invalid (NaN) and emitted as empty CSV fields
downstream. Purity is exactly even in X0 (only X0^2 enters the dynamics)
but not in Y0, whose sign matters through the Y-Z coupling.

The scans also expose the measurement-induced (Zeno) crossover: for a
nearly localized start, strong dephasing freezes the population and purity
at fixed t grows with gamma beyond the tunneling frequency, while a
strongly delocalized start keeps losing purity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bloch import BlochState, SystemParams, _propagate_components

# Grid points with x0^2 + y0^2 beyond this are outside the Bloch disk.
DISK_TOL = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """Scan layout: (lo, hi, n) per axis within [-1, 1], time, rates, omega."""

    x0_range: tuple[float, float, int]
    y0_range: tuple[float, float, int]
    t: float
    gamma_list: tuple[float, ...]
    omega: float = 1.0

    def __post_init__(self):
        for name, (lo, hi, n) in (("x0_range", self.x0_range), ("y0_range", self.y0_range)):
            if not (-1.0 <= lo < hi <= 1.0):
                raise ValueError(f"{name} must satisfy -1 <= lo < hi <= 1, got ({lo}, {hi})")
            if n < 2:
                raise ValueError(f"{name} needs n >= 2 points, got {n}")
        if self.t < 0.0:
            raise ValueError(f"t must be >= 0, got {self.t}")
        if self.omega <= 0.0:
            raise ValueError(f"omega must be > 0, got {self.omega}")
        if len(self.gamma_list) == 0:
            raise ValueError("gamma_list must be nonempty")
        if any(g < 0.0 for g in self.gamma_list):
            raise ValueError(f"gamma must be >= 0, got {min(self.gamma_list)}")
        object.__setattr__(self, "gamma_list", tuple(float(g) for g in self.gamma_list))

    def x_axis(self) -> np.ndarray:
        lo, hi, n = self.x0_range
        return np.linspace(lo, hi, n)

    def y_axis(self) -> np.ndarray:
        lo, hi, n = self.y0_range
        return np.linspace(lo, hi, n)


@dataclass(frozen=True)
class PurityField:
    """Purity over the grid for one gamma; values[i, j] belongs to (x0[i], y0[j]).

    Points outside the unit disk hold NaN.
    """

    spec: GridSpec
    gamma: float
    x0: np.ndarray = field(repr=False)
    y0: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)


def initial_state_on_sphere(x0: float, y0: float) -> BlochState:
    """Pure state (x0, y0, +sqrt(1 - x0^2 - y0^2)); rejects points off the disk."""
    residue = 1.0 - x0 * x0 - y0 * y0
    if residue < -DISK_TOL:
        raise ValueError(f"({x0}, {y0}) lies outside the unit disk")
    return BlochState(x0, y0, math.sqrt(max(0.0, residue)))


def _purity_grid(xs: np.ndarray, ys: np.ndarray, omega: float, gamma: float, t: float) -> np.ndarray:
    """Vectorized purity field; NaN outside the unit disk."""
    x0 = xs[:, None]
    y0 = ys[None, :]
    residue = 1.0 - x0 * x0 - y0 * y0
    inside = residue >= -DISK_TOL
    z0 = np.sqrt(np.where(inside, np.maximum(residue, 0.0), 0.0))
    x, y, z = _propagate_components(x0, y0, z0, omega, gamma, t)
    values = 0.5 * (1.0 + x * x + y * y + z * z)
    return np.where(inside, values, np.nan)


def scan(spec: GridSpec) -> list[PurityField]:
    """Purity fields at spec.t, one per gamma in spec.gamma_list."""
    xs, ys = spec.x_axis(), spec.y_axis()
    return [
        PurityField(
            spec=spec,
            gamma=g,
            x0=xs,
            y0=ys,
            values=_purity_grid(xs, ys, spec.omega, g, spec.t),
        )
        for g in spec.gamma_list
    ]


def short_time_purity(x0: float, y0: float, params: SystemParams, t: float) -> float:
    """Linearized purity 1 - 4*gamma*(x0^2 + y0^2)*t, clamped below at 1/2."""
    if x0 * x0 + y0 * y0 > 1.0 + DISK_TOL:
        raise ValueError(f"({x0}, {y0}) lies outside the unit disk")
    return max(0.5, 1.0 - 4.0 * params.gamma * (x0 * x0 + y0 * y0) * t)


def _mirror_defect(axis: np.ndarray, values: np.ndarray, name: str) -> float:
    n = axis.shape[0]
    if n % 2 == 0 or np.max(np.abs(axis + axis[::-1])) > 1e-12:
        raise ValueError(f"{name} axis must be symmetric about 0 with an odd point count")
    gap = np.abs(values - values[::-1])
    return float(np.nanmax(gap)) if np.any(~np.isnan(gap)) else 0.0


def x_symmetry_defect(field: PurityField) -> float:
    """Max |purity(x0, y0) - purity(-x0, y0)| over on-grid mirror pairs."""
    return _mirror_defect(field.x0, field.values, "x0")


def y_symmetry_defect(field: PurityField) -> float:
    """Max |purity(x0, y0) - purity(x0, -y0)|; generically nonzero for gamma, t > 0."""
    return _mirror_defect(field.y0, field.values.T, "y0")


@dataclass(frozen=True)
class ZenoCrossoverReport:
    """Purity vs gamma at fixed t for a localized and a delocalized start."""

    omega: float
    t: float
    localized_point: tuple[float, float]
    delocalized_point: tuple[float, float]
    gammas: tuple[float, ...]
    purity_localized: tuple[float, ...]
    purity_delocalized: tuple[float, ...]

    @property
    def localized_non_monotonic(self) -> bool:
        """True when the localized purity first falls then rises along gammas."""
        p = self.purity_localized
        drops = [i for i in range(len(p) - 1) if p[i + 1] < p[i]]
        rises = [i for i in range(len(p) - 1) if p[i + 1] > p[i]]
        return bool(drops and rises and min(drops) < max(rises))

    @property
    def delocalized_monotone_decreasing(self) -> bool:
        p = self.purity_delocalized
        return all(p[i + 1] <= p[i] for i in range(len(p) - 1))

    def rows(self) -> list[tuple[float, float, float]]:
        return list(zip(self.gammas, self.purity_localized, self.purity_delocalized))


def zeno_crossover_report(
    localized_point: tuple[float, float],
    delocalized_point: tuple[float, float],
    gamma_list,
    omega: float,
    t: float,
) -> ZenoCrossoverReport:
    """Tabulate purity vs gamma at fixed t for the two starting coherences."""
    from .density import purity
    from .bloch import propagate_analytic

    gammas = tuple(float(g) for g in gamma_list)
    columns: list[tuple[float, ...]] = []
    for point in (localized_point, delocalized_point):
        state0 = initial_state_on_sphere(*point)
        columns.append(
            tuple(
                purity(propagate_analytic(state0, SystemParams(omega=omega, gamma=g), t))
                for g in gammas
            )
        )
    return ZenoCrossoverReport(
        omega=omega,
        t=t,
        localized_point=tuple(localized_point),
        delocalized_point=tuple(delocalized_point),
        gammas=gammas,
        purity_localized=columns[0],
        purity_delocalized=columns[1],
    )
