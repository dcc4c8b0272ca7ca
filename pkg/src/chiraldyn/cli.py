"""Command-line front end.

Subcommands: solve, delta-z, tmax, purity-scan, validate. Values are
resolved flag > config-file > built-in default; the config file is TOML
with one table per subcommand plus top-level common keys. CSV output uses
full-precision decimals (shortest round-tripping repr), comma separators,
LF line endings and an empty field for invalid grid points, so identical
config and seed reproduce byte-identical files.

Exit codes: 0 success, 1 validation-suite failure, 2 bad config or
unwritable output path.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from . import validation
from .bloch import BlochState, SystemParams, classify_regime, sample_trajectory
from .density import purity
from .distinguish import delta_z, delta_z_curve, extremum_time
from .scan import GridSpec, scan

DEFAULTS = {
    "omega": 1.0,
    "gamma": 0.5,
    "seed": 0,
    "out": "out",
    "solve": {"x0": 0.0, "y0": 0.0, "z0": 1.0, "t_end": 10.0, "samples": 201},
    "delta_z": {
        "y0p": 1.0,
        "t_end": 8.0,
        "samples": 801,
        # Two panels: tunneling-dominant sweep and dephasing-dominant sweep.
        "gammas": None,
        "tunneling_gammas": [0.0, 0.05, 0.5, 1.5],
        "dephasing_gammas": [1.5, 2.5, 5.0, 10.0],
    },
    "purity_scan": {
        "gammas": [0.025, 0.25, 1.25, 2.5],
        "times": [0.1, 1.0],
        "samples": 101,
    },
    "tmax": {},
    "validate": {"samples": 200, "dt": 1e-5, "tolerance": 1e-8},
}


class ConfigError(Exception):
    """Bad or inconsistent run configuration (exit code 2)."""


def _fmt(value: float) -> str:
    return repr(float(value))


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join("" if v is None else _fmt(v) for v in row) + "\n")


def _gamma_tag(gamma: float) -> str:
    return f"{gamma:g}"


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc


def _resolve(args: argparse.Namespace, config: dict, command: str, key: str, cast=None):
    """flag > config ([command] table, then top level) > default."""
    flag = getattr(args, key, None)
    if flag is not None:
        value = flag
    elif key in config.get(command, {}):
        value = config[command][key]
    elif key in config:
        value = config[key]
    else:
        section = DEFAULTS.get(command, {})
        value = section[key] if key in section else DEFAULTS.get(key)
    if value is not None and cast is not None:
        try:
            value = cast(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {key}: {value!r}") from exc
    return value


def _resolve_local(args: argparse.Namespace, config: dict, command: str, key: str):
    """flag > [command] config table only; None when neither is set."""
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    return config.get(command, {}).get(key)


def _float_list(value) -> list[float]:
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip()]
        return [float(p) for p in parts]
    if isinstance(value, (int, float)):
        return [float(value)]
    return [float(v) for v in value]


def _ensure_out_dir(out: str) -> Path:
    path = Path(out)
    try:
        path.mkdir(parents=True, exist_ok=True)
        probe = path / ".write_probe"
        probe.touch()
        probe.unlink()
    except OSError as exc:
        raise ConfigError(f"output path {out!r} is not writable: {exc}") from exc
    return path


def _system_params(args, config, command) -> SystemParams:
    omega = _resolve(args, config, command, "omega", float)
    gamma = _resolve(args, config, command, "gamma", float)
    return SystemParams(omega=omega, gamma=gamma)


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def cmd_solve(args, config) -> int:
    params = _system_params(args, config, "solve")
    state0 = BlochState(
        _resolve(args, config, "solve", "x0", float),
        _resolve(args, config, "solve", "y0", float),
        _resolve(args, config, "solve", "z0", float),
    )
    t_end = _resolve(args, config, "solve", "t_end", float)
    samples = _resolve(args, config, "solve", "samples", int)
    if t_end <= 0.0:
        raise ConfigError(f"t_end must be > 0, got {t_end}")
    if samples < 2:
        raise ConfigError(f"samples must be >= 2, got {samples}")
    out = _ensure_out_dir(_resolve(args, config, "solve", "out"))

    times = np.linspace(0.0, t_end, samples)
    states = sample_trajectory(state0, params, times)
    purities = 0.5 * (1.0 + np.sum(states * states, axis=1))
    csv_path = out / "solve.csv"
    write_csv(
        csv_path,
        ["t", "X", "Y", "Z", "purity"],
        [(t, *row, p) for t, row, p in zip(times, states, purities)],
    )

    from . import plots

    plots.render_solve(times, states, purities, out / "solve.png")
    (out / "solve.gp").write_text(plots.gnuplot_solve(csv_path.name), encoding="ascii")
    print(f"wrote {csv_path}, solve.png, solve.gp")
    return 0


def cmd_delta_z(args, config) -> int:
    omega = _resolve(args, config, "delta_z", "omega", float)
    y0p = _resolve(args, config, "delta_z", "y0p", float)
    t_end = _resolve(args, config, "delta_z", "t_end", float)
    samples = _resolve(args, config, "delta_z", "samples", int)
    # a gamma list given explicitly (flag or [delta_z] table) replaces the
    # default two-panel layout; the global gamma default does not
    override = _resolve_local(args, config, "delta_z", "gamma")
    if override is None:
        override = config.get("delta_z", {}).get("gammas")
    if override is not None:
        panels = [_float_list(override)]
    else:
        panels = [
            _float_list(_resolve(args, config, "delta_z", "tunneling_gammas")),
            _float_list(_resolve(args, config, "delta_z", "dephasing_gammas")),
        ]
    if not any(panels) or not all(panels):
        raise ConfigError("gamma list must be nonempty")
    if y0p == 0.0:
        raise ConfigError("y0p must be nonzero (the normalized curve is undefined)")
    out = _ensure_out_dir(_resolve(args, config, "delta_z", "out"))

    panel_curves = []
    panel_csvs = []
    for panel in panels:
        curves = {}
        names = []
        for gamma in panel:
            params = SystemParams(omega=omega, gamma=gamma)
            curve = delta_z_curve(params, y0p, t_end, samples)
            curves[gamma] = curve
            name = f"delta_z_gamma_{_gamma_tag(gamma)}.csv"
            write_csv(out / name, ["t", "delta_z_over_y0p"], curve)
            names.append((gamma, name))
        panel_curves.append(curves)
        panel_csvs.append(names)

    from . import plots

    plots.render_delta_z(panel_curves, out / "delta_z.png")
    (out / "delta_z.gp").write_text(plots.gnuplot_delta_z(panel_csvs), encoding="ascii")
    n_csv = sum(len(p) for p in panel_csvs)
    print(f"wrote {n_csv} curve CSVs, delta_z.png, delta_z.gp in {out}")
    return 0


def cmd_tmax(args, config) -> int:
    params = _system_params(args, config, "tmax")
    t_star = extremum_time(params)
    magnitude = abs(delta_z(params, 1.0, t_star))
    regime = classify_regime(params).kind.value
    print(f"regime = {regime}")
    print(f"t_max = {t_star!r}")
    print(f"|dZ|/|Y0p| at t_max = {magnitude!r}")
    out_value = _resolve_local(args, config, "tmax", "out")
    if out_value is not None:
        out = _ensure_out_dir(out_value)
        write_csv(
            out / "tmax.csv",
            ["omega", "gamma", "t_max", "abs_delta_z_over_y0p"],
            [(params.omega, params.gamma, t_star, magnitude)],
        )
        print(f"wrote {out / 'tmax.csv'}")
    return 0


def cmd_purity_scan(args, config) -> int:
    omega = _resolve(args, config, "purity_scan", "omega", float)
    override = _resolve_local(args, config, "purity_scan", "gamma")
    if override is None:
        override = config.get("purity_scan", {}).get("gammas")
    gammas = _float_list(
        DEFAULTS["purity_scan"]["gammas"] if override is None else override
    )
    times = _float_list(_resolve(args, config, "purity_scan", "times"))
    grid_n = _resolve(args, config, "purity_scan", "samples", int)
    out = _ensure_out_dir(_resolve(args, config, "purity_scan", "out"))

    from . import plots

    written = 0
    for t in times:
        spec = GridSpec(
            x0_range=(-1.0, 1.0, grid_n),
            y0_range=(-1.0, 1.0, grid_n),
            t=t,
            gamma_list=tuple(gammas),
            omega=omega,
        )
        fields = scan(spec)
        names = []
        for field in fields:
            name = f"purity_gamma_{_gamma_tag(field.gamma)}_t_{t:g}.csv"
            rows = []
            for ix, x0 in enumerate(field.x0):
                for iy, y0 in enumerate(field.y0):
                    value = field.values[ix, iy]
                    rows.append((x0, y0, None if np.isnan(value) else value))
            write_csv(out / name, ["x0", "y0", "purity"], rows)
            names.append((field.gamma, name))
            written += 1
        plots.render_purity_fields(fields, t, out / f"purity_scan_t{t:g}.png")
        (out / f"purity_scan_t{t:g}.gp").write_text(
            plots.gnuplot_purity_fields(names, t, grid_n), encoding="ascii"
        )
    print(f"wrote {written} field CSVs plus figures/scripts in {out}")
    return 0


def cmd_validate(args, config) -> int:
    cases = _resolve(args, config, "validate", "samples", int)
    dt = _resolve(args, config, "validate", "dt", float)
    tolerance = _resolve(args, config, "validate", "tolerance", float)
    seed = _resolve(args, config, "validate", "seed", int)
    report = validation.run_validation(
        n_cases=cases, dt=dt, seed=seed, tolerance=tolerance
    )
    print(validation.format_report(report))
    out_value = _resolve_local(args, config, "validate", "out")
    if out_value is not None:
        out = _ensure_out_dir(out_value)
        write_csv(
            out / "validate_cases.csv",
            ["omega", "gamma", "t", "x0", "y0", "z0", "deviation"],
            [
                (c.params.omega, c.params.gamma, c.t, c.state0.x, c.state0.y, c.state0.z, c.deviation)
                for c in report.cases
            ],
        )
        print(f"wrote {out / 'validate_cases.csv'}")
    return 0 if report.passed else 1


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser, gamma_is_list: bool) -> None:
    parser.add_argument("--omega", type=float, help="tunneling frequency (> 0)")
    gamma_help = "dephasing rate (>= 0)" + (", comma-separated list" if gamma_is_list else "")
    parser.add_argument("--gamma", help=gamma_help)
    parser.add_argument("--config", help="TOML run-configuration file")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--seed", type=int, help="RNG seed (validate)")
    parser.add_argument("--samples", type=int, help="sample/case/grid count")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chiraldyn",
        description="Dephasing two-level chiral system: trajectories, "
        "distinguishability curves, purity scans, oracle validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="closed-form trajectory to CSV/figure")
    _add_common(p_solve, gamma_is_list=False)
    p_solve.add_argument("--x0", type=float, help="initial X")
    p_solve.add_argument("--y0", type=float, help="initial Y")
    p_solve.add_argument("--z0", type=float, help="initial Z")
    p_solve.add_argument("--t-end", dest="t_end", type=float, help="final time (> 0)")
    p_solve.set_defaults(handler=cmd_solve)

    p_dz = sub.add_parser("delta-z", help="pure-vs-mixed distinguishability curves")
    _add_common(p_dz, gamma_is_list=True)
    p_dz.add_argument("--y0p", type=float, help="initial imaginary coherence of the pure state")
    p_dz.add_argument("--t-end", dest="t_end", type=float, help="final time (> 0)")
    p_dz.set_defaults(handler=cmd_delta_z)

    p_tmax = sub.add_parser("tmax", help="time of the first |dZ| extremum")
    _add_common(p_tmax, gamma_is_list=False)
    p_tmax.set_defaults(handler=cmd_tmax)

    p_scan = sub.add_parser("purity-scan", help="purity over initial-coherence grids")
    _add_common(p_scan, gamma_is_list=True)
    p_scan.add_argument("--times", help="comma-separated evaluation times")
    p_scan.set_defaults(handler=cmd_purity_scan)

    p_val = sub.add_parser("validate", help="randomized analytic-vs-RK4 suite")
    _add_common(p_val, gamma_is_list=False)
    p_val.add_argument("--dt", type=float, help="oracle step size")
    p_val.add_argument("--tolerance", type=float, help="max allowed deviation")
    p_val.set_defaults(handler=cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        return args.handler(args, config)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
