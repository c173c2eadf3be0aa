"""Command-line entry points.

Subcommands: steady-state, sweep, survival-temp, couplings, validate.
Exit codes: 0 success, 1 usage/config error, 2 infeasible physics.
All diagnostics go to stderr; results go to stdout or to --out files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import steady_state
from .config import (
    ConfigSemanticError,
    ConfigSyntaxError,
    RunConfig,
    parse_config,
    resolve_config_path,
)
from .constants import TWO_PI
from .interferometer import single_photon_couplings
from .params import validate_params
from .sweep import (
    NoEntanglementError,
    SweepResult,
    survival_temperature,
    sweep,
)

USAGE_ERROR = 1
INFEASIBLE = 2


def _fail(msg: str, code: int) -> int:
    print(f"optomech: {msg}", file=sys.stderr)
    return code


def _load_config(args) -> RunConfig:
    path = resolve_config_path(args.config)
    cfg = parse_config(path)
    for w in cfg.warnings:
        print(f"optomech: warning: {w}", file=sys.stderr)
    return cfg


def _jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    env = os.environ.get("OPTOMECH_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            print(f"optomech: warning: ignoring OPTOMECH_JOBS={env!r}",
                  file=sys.stderr)
    return 1


def _fmt(x) -> str:
    """Full-precision, round-trip-exact serialisation of one field."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def render_csv(result: SweepResult) -> str:
    """Grid CSV: one row per point, axis columns in human units."""
    headers = [_axis_column(ax.parameter) for ax in result.spec.axes]
    headers += ["x_s", "stable", "E_N"]
    lines = [",".join(headers)]
    for p in result.points:
        row = [_fmt(p.inputs[ax.parameter]) for ax in result.spec.axes]
        row.append(_fmt(p.state.x_s if p.state is not None else None))
        row.append(_fmt(p.stable))
        row.append(_fmt(p.e_n))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


_AXIS_COLUMNS = {
    "delta_s_over_omega_m": "delta_s_over_omega_m",
    "delta_a": "delta_a_hz",
    "g_omega": "g_omega_hz",
    "g_kappa": "g_kappa_hz",
    "g_ratio": "g_ratio",
    "power": "power_mw",
    "temperature": "temperature_k",
}


def _axis_column(parameter: str) -> str:
    return _AXIS_COLUMNS.get(parameter, parameter)


def render_summary(result: SweepResult) -> dict:
    points = result.points
    residuals = [p.diagnostics["lyapunov_residual"] for p in points
                 if "lyapunov_residual" in p.diagnostics]
    nu_minus = [p.diagnostics["nu_minus"] for p in points
                if "nu_minus" in p.diagnostics]
    e_ns = [p.e_n for p in points if p.e_n is not None]
    summary = {
        "mode": result.spec.mode,
        "scenario": result.spec.scenario.value,
        "axes": [{"parameter": ax.parameter, "start": ax.start,
                  "stop": ax.stop, "points": ax.points,
                  "spacing": ax.spacing} for ax in result.spec.axes],
        "n_points": len(points),
        "n_feasible": sum(1 for p in points if p.feasible),
        "n_stable": sum(1 for p in points if p.stable),
        "n_entangled": sum(1 for p in points if (p.e_n or 0.0) > 0.0),
        "e_n_max": max(e_ns) if e_ns else None,
        "max_lyapunov_residual": max(residuals) if residuals else None,
        "min_symplectic_eigenvalue": min(nu_minus) if nu_minus else None,
        "optimum": None,
    }
    if result.optimum is not None:
        summary["optimum"] = {
            "coords": result.optimum.coords,
            "e_n": result.optimum.e_n,
        }
    return summary


def _cmd_sweep(args) -> int:
    cfg = _load_config(args)
    if cfg.sweep is None:
        return _fail("config has no [sweep] section", USAGE_ERROR)
    spec = cfg.sweep
    if (spec.mode == "bare-detuning" and "delta_a" not in spec.fixed
            and cfg.delta_a is not None):
        fixed = dict(spec.fixed)
        fixed["delta_a"] = cfg.delta_a / TWO_PI
        spec = spec.__class__(scenario=spec.scenario, axes=spec.axes,
                              mode=spec.mode, fixed=fixed)
    if args.grid:
        counts = _parse_grid(args.grid, len(spec.axes))
        if counts is None:
            return _fail(f"--grid {args.grid!r} does not match the "
                         f"{len(spec.axes)}-axis sweep (use e.g. 101x101)",
                         USAGE_ERROR)
        axes = tuple(ax.__class__(ax.parameter, ax.start, ax.stop, n,
                                  ax.spacing)
                     for ax, n in zip(spec.axes, counts))
        spec = spec.__class__(scenario=spec.scenario, axes=axes,
                              mode=spec.mode, fixed=spec.fixed)
    result = sweep(cfg.params, spec, jobs=_jobs(args))
    csv_text = render_csv(result)
    summary = render_summary(result)
    json_text = json.dumps(summary, indent=2, sort_keys=True) + "\n"

    out = args.out or cfg.csv_path
    if out:
        out = Path(out)
        out.write_text(csv_text)
        json_out = Path(cfg.json_path) if cfg.json_path else \
            out.with_suffix(".summary.json")
        json_out.write_text(json_text)
        print(f"wrote {out} and {json_out}", file=sys.stderr)
    else:
        sys.stdout.write(json_text if args.format == "json" else csv_text)
    if summary["n_stable"] == 0:
        return _fail("no stable points in the sweep", INFEASIBLE)
    return 0


def _parse_grid(text: str, n_axes: int):
    parts = text.lower().split("x")
    try:
        counts = [int(p) for p in parts]
    except ValueError:
        return None
    if len(counts) != n_axes or any(c < 2 for c in counts):
        return None
    return counts


def _cmd_steady_state(args) -> int:
    cfg = _load_config(args)
    if cfg.delta_a is None:
        return _fail("steady-state needs a fixed detuning "
                     "(params.delta_a_over_kappa_a or params.delta_a_hz)",
                     USAGE_ERROR)
    branch_set = steady_state.steady_states_at_bare_detuning(
        cfg.params, cfg.delta_a)
    if len(branch_set) == 0:
        return _fail("no admissible operating point", INFEASIBLE)
    print(f"# operating points at delta_a = "
          f"{cfg.delta_a / TWO_PI:.6g} Hz, "
          f"P = {cfg.params.power * 1e3:.6g} mW")
    print("branch,x_s,n_s,kappa_s_hz,delta_s_hz,stable")
    for i, b in enumerate(branch_set.branches):
        s = b.state
        print(",".join([str(i), _fmt(s.x_s), _fmt(s.n_s),
                        _fmt(s.kappa_s / TWO_PI), _fmt(s.delta_s / TWO_PI),
                        _fmt(b.stable)]))
    if cfg.sweep is not None and any(
            ax.parameter == "power" for ax in cfg.sweep.axes):
        axis = next(ax for ax in cfg.sweep.axes if ax.parameter == "power")
        scan = steady_state.classify_bistability(
            cfg.params, cfg.delta_a, axis.values() * 1e-3)
        window = "present" if scan.bistable_window_present else "absent"
        print(f"# bistability over {axis.start:.6g}..{axis.stop:.6g} mW "
              f"({axis.points} points): window {window}; "
              f"max admissible branches "
              f"{int(scan.admissible_counts.max())}")
    return 0


def _cmd_survival_temp(args) -> int:
    cfg = _load_config(args)
    if cfg.survival is None:
        return _fail("config has no [survival] section", USAGE_ERROR)
    s = cfg.survival
    if s.delta_s is None and s.delta_a is None:
        return _fail("survival needs delta_s_over_omega_m or delta_a_hz",
                     USAGE_ERROR)
    try:
        result = survival_temperature(
            cfg.params, cfg.scenario, s.t_max, mode=s.mode,
            delta_a=s.delta_a, delta_s=s.delta_s)
    except NoEntanglementError as exc:
        return _fail(str(exc), INFEASIBLE)
    if args.format == "json":
        print(json.dumps({
            "survival_temperature_k": result.temperature,
            "saturated": result.saturated,
            "e_n_low": result.e_n_low,
        }, sort_keys=True))
    else:
        tail = " (saturated: still entangled at t_max)" if result.saturated else ""
        print(f"survival temperature: {result.temperature:.4g} K{tail}")
    return 0


def _cmd_couplings(args) -> int:
    cfg = _load_config(args)
    if cfg.interferometer is None:
        return _fail("config has no [interferometer] section", USAGE_ERROR)
    rates = single_photon_couplings(cfg.interferometer)
    if args.format == "json":
        print(json.dumps({
            "g_omega_hz": rates.g_omega / TWO_PI,
            "g_kappa_hz": rates.g_kappa / TWO_PI,
            "g_omega_imag_residual": rates.g_omega_imag,
            "g_kappa_imag_residual": rates.g_kappa_imag,
        }, sort_keys=True))
    else:
        print(f"g_omega/2pi = {rates.g_omega / TWO_PI:.6g} Hz "
              f"(imag residual {rates.g_omega_imag:.3e})")
        print(f"g_kappa/2pi = {rates.g_kappa / TWO_PI:.6g} Hz "
              f"(imag residual {rates.g_kappa_imag:.3e})")
    return 0


def _cmd_validate(args) -> int:
    cfg = _load_config(args)
    issues = validate_params(cfg.params)
    for issue in issues:
        print(f"{issue.severity}: {issue.message}")
    errors = [i for i in issues if i.severity == "error"]
    if errors:
        return _fail(f"{len(errors)} error(s) in {cfg.source}", USAGE_ERROR)
    print(f"ok: {cfg.source}")
    return 0


_COMMANDS = {
    "steady-state": _cmd_steady_state,
    "sweep": _cmd_sweep,
    "survival-temp": _cmd_survival_temp,
    "couplings": _cmd_couplings,
    "validate": _cmd_validate,
}


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1; code 2 is reserved for infeasible physics
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"optomech: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="optomech",
        description="Steady states, stability, and stationary entanglement "
                    "of a dissipatively coupled optomechanical cavity.")
    sub = parser.add_subparsers(dest="command")
    for name, help_text in [
            ("steady-state", "print operating-point branches and bistability"),
            ("sweep", "evaluate a parameter grid; write CSV + JSON summary"),
            ("survival-temp", "bisect the temperature where E_N reaches 0"),
            ("couplings", "coupling rates from interferometer geometry"),
            ("validate", "check a config file")]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True,
                       help="config path or bundled name "
                            "(paper_fig2..paper_fig5)")
        p.add_argument("--out", help="output path (sweep CSV)")
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="stdout format where applicable")
        p.add_argument("--grid", help="override grid size, e.g. 101x101")
        p.add_argument("--jobs", type=int,
                       help="worker processes (or OPTOMECH_JOBS)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_usage(sys.stderr)
        return USAGE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        return _fail(str(exc), USAGE_ERROR)
    except (ConfigSyntaxError, ConfigSemanticError) as exc:
        return _fail(f"config error:\n{exc}", USAGE_ERROR)


if __name__ == "__main__":
    sys.exit(main())
