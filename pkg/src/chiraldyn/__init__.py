"""Open two-level chiral system under pure dephasing.

Closed-form Bloch-vector propagators in all damping regimes, a fixed-step
RK4 oracle, pure-vs-mixed distinguishability curves, and purity-decay scans
over initial coherences, with a CLI that writes CSV data, gnuplot scripts
and rendered figures.
"""

from .bloch import (
    BlochState,
    Regime,
    RegimeKind,
    SystemParams,
    bloch_rhs,
    classify_regime,
    propagate_analytic,
    sample_trajectory,
    slowest_decay_rate,
    steady_state,
)
from .density import (
    DensityMatrix,
    bloch_to_density,
    density_rhs,
    density_to_bloch,
    purity,
    purity_rate,
)
from .distinguish import (
    StatePair,
    delta_z,
    delta_z_curve,
    extremum_time,
    first_extremum_underdamped,
    make_pair,
    t_max_overdamped,
)
from .rk4 import Trajectory, integrate, integrate_final, max_deviation
from .scan import (
    GridSpec,
    PurityField,
    ZenoCrossoverReport,
    initial_state_on_sphere,
    scan,
    short_time_purity,
    x_symmetry_defect,
    y_symmetry_defect,
    zeno_crossover_report,
)
from .validation import ValidationReport, run_validation

__version__ = "0.1.0"

__all__ = [
    "BlochState",
    "SystemParams",
    "Regime",
    "RegimeKind",
    "classify_regime",
    "bloch_rhs",
    "propagate_analytic",
    "sample_trajectory",
    "steady_state",
    "slowest_decay_rate",
    "DensityMatrix",
    "bloch_to_density",
    "density_to_bloch",
    "density_rhs",
    "purity",
    "purity_rate",
    "Trajectory",
    "integrate",
    "integrate_final",
    "max_deviation",
    "StatePair",
    "make_pair",
    "delta_z",
    "delta_z_curve",
    "t_max_overdamped",
    "first_extremum_underdamped",
    "extremum_time",
    "GridSpec",
    "PurityField",
    "initial_state_on_sphere",
    "scan",
    "short_time_purity",
    "x_symmetry_defect",
    "y_symmetry_defect",
    "ZenoCrossoverReport",
    "zeno_crossover_report",
    "ValidationReport",
    "run_validation",
    "__version__",
]
