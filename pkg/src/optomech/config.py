"""Run configuration: human-unit files (TOML or JSON) parsed and validated
into the angular-unit objects the library works with.

Boundary convention: files quote ordinary frequencies in Hz (and THz for the
drive), wavelength in nm, power in mW, mass in ng, length in cm, temperature
in K. Conversion to angular units happens exactly once, here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

try:
    import tomllib  # py >= 3.11
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from .constants import C_LIGHT, TWO_PI
from .interferometer import InterferometerParams
from .linear_model import phase_for_real_amplitude
from .params import (
    PhysicalParams,
    Scenario,
    scenario_violations,
    validate_params,
)
from .sweep import MODES, SweepAxis, SweepSpec


class ConfigSyntaxError(ValueError):
    """File is not well-formed TOML/JSON (message carries line/column)."""


class ConfigSemanticError(ValueError):
    """Config parsed but violates the schema; lists every violation."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("\n".join(violations))


@dataclass(frozen=True)
class SurvivalSettings:
    t_max: float                      # K
    delta_s: float | None = None      # rad/s
    delta_a: float | None = None      # rad/s
    mode: str = "effective-detuning"


@dataclass(frozen=True)
class RunConfig:
    params: PhysicalParams
    scenario: Scenario
    delta_a: float | None = None              # fixed bare detuning, rad/s
    sweep: SweepSpec | None = None
    survival: SurvivalSettings | None = None
    interferometer: InterferometerParams | None = None
    csv_path: str | None = None
    json_path: str | None = None
    warnings: tuple[str, ...] = field(default=())
    source: str = "<memory>"


_PARAM_KEYS = {
    "wavelength_nm", "omega_d_thz", "omega_m_hz", "gamma_m_hz", "kappa_a_hz",
    "mass_ng", "length_cm", "power_mw", "temperature_k",
    "g_omega_hz", "g_kappa_hz", "delta_a_over_kappa_a", "delta_a_hz",
    "theta_rad",
}
_REQUIRED_PARAMS = (
    "omega_m_hz", "gamma_m_hz", "kappa_a_hz", "mass_ng", "length_cm",
    "power_mw", "temperature_k",
)
_AXIS_KEYS = {"parameter", "start", "stop", "points", "spacing"}
_SWEEP_KEYS = {"mode", "axes", "fixed"}
_SURVIVAL_KEYS = {"t_max_k", "delta_s_over_omega_m", "delta_a_hz", "mode"}
_IFO_KEYS = {"bs_r", "bs_t", "mem_r", "mem_t", "x_offset_rad", "lossless"}
_OUTPUT_KEYS = {"csv", "json"}
_TOP_KEYS = {"params", "scenario", "sweep", "survival", "interferometer",
             "output"}


def bundled_config_path(name: str) -> Path:
    """Path of a reference config shipped with the package."""
    if not name.endswith(".toml"):
        name += ".toml"
    ref = resources.files("optomech") / "configs" / name
    with resources.as_file(ref) as p:
        return Path(p)


def resolve_config_path(arg: str) -> Path:
    """Interpret a --config argument: an existing file, else a bundled name."""
    p = Path(arg)
    if p.exists():
        return p
    try:
        bundled = bundled_config_path(arg)
    except (FileNotFoundError, ModuleNotFoundError):
        raise FileNotFoundError(f"config not found: {arg}") from None
    if bundled.exists():
        return bundled
    raise FileNotFoundError(f"config not found: {arg}")


def parse_config(path) -> RunConfig:
    """Load and fully validate a config file (format from the extension)."""
    path = Path(path)
    text = path.read_text()
    fmt = "json" if path.suffix.lower() == ".json" else "toml"
    return parse_config_text(text, fmt=fmt, source=str(path))


def parse_config_text(text: str, fmt: str = "toml",
                      source: str = "<memory>") -> RunConfig:
    if fmt == "toml":
        try:
            raw = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigSyntaxError(f"{source}: {exc}") from exc
    elif fmt == "json":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigSyntaxError(
                f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc
    else:
        raise ValueError(f"unknown config format {fmt!r}")
    return _build(raw, source)


def _num(table: dict, key: str, problems: list[str], where: str,
         default=None):
    if key not in table:
        return default
    val = table[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        problems.append(f"{where}.{key}: expected a number, got {val!r}")
        return default
    return float(val)


def _complex_from(val, key: str, problems: list[str]) -> complex:
    if isinstance(val, (int, float)) and not isinstance(val, bool):
        return complex(val)
    if (isinstance(val, list) and len(val) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool)
                    for x in val)):
        return complex(val[0], val[1])
    problems.append(f"interferometer.{key}: expected a number or [re, im]")
    return 0j


def _check_unknown(table: dict, allowed: set, where: str,
                   problems: list[str]) -> None:
    for key in table:
        if key not in allowed:
            problems.append(f"{where}: unknown key {key!r}")


def _build(raw: dict, source: str) -> RunConfig:
    problems: list[str] = []
    warnings: list[str] = []
    if not isinstance(raw, dict):
        raise ConfigSemanticError([f"{source}: top level must be a table"])
    _check_unknown(raw, _TOP_KEYS, "top level", problems)

    ptab = raw.get("params")
    if not isinstance(ptab, dict):
        problems.append("missing required [params] table")
        ptab = {}
    _check_unknown(ptab, _PARAM_KEYS, "params", problems)
    for key in _REQUIRED_PARAMS:
        if key not in ptab:
            problems.append(f"params: missing required key {key!r}")

    wavelength = _num(ptab, "wavelength_nm", problems, "params")
    omega_d_thz = _num(ptab, "omega_d_thz", problems, "params")
    if wavelength is None and omega_d_thz is None:
        problems.append("params: one of wavelength_nm or omega_d_thz required")
    if wavelength is not None and omega_d_thz is not None:
        problems.append("params: give wavelength_nm or omega_d_thz, not both")
    if omega_d_thz is not None and omega_d_thz > 0:
        omega_d = TWO_PI * omega_d_thz * 1e12
    elif wavelength is not None and wavelength > 0:
        omega_d = TWO_PI * C_LIGHT / (wavelength * 1e-9)
    else:
        if (wavelength is not None and wavelength <= 0) or (
                omega_d_thz is not None and omega_d_thz <= 0):
            problems.append("params: drive wavelength/frequency must be positive")
        omega_d = 1.0  # placeholder; a problem was already recorded

    omega_m = TWO_PI * (_num(ptab, "omega_m_hz", problems, "params", 0.0) or 0.0)
    gamma_m = TWO_PI * (_num(ptab, "gamma_m_hz", problems, "params", 0.0) or 0.0)
    kappa_a = TWO_PI * (_num(ptab, "kappa_a_hz", problems, "params", 0.0) or 0.0)
    mass = (_num(ptab, "mass_ng", problems, "params", 0.0) or 0.0) * 1e-12
    length = (_num(ptab, "length_cm", problems, "params", 0.0) or 0.0) * 1e-2
    power = (_num(ptab, "power_mw", problems, "params", 0.0) or 0.0) * 1e-3
    temperature = _num(ptab, "temperature_k", problems, "params", 0.0) or 0.0
    g_omega = TWO_PI * (_num(ptab, "g_omega_hz", problems, "params", 0.0) or 0.0)
    g_kappa = TWO_PI * (_num(ptab, "g_kappa_hz", problems, "params", 0.0) or 0.0)

    delta_a = None
    d_over_k = _num(ptab, "delta_a_over_kappa_a", problems, "params")
    d_hz = _num(ptab, "delta_a_hz", problems, "params")
    if d_over_k is not None and d_hz is not None:
        problems.append("params: give delta_a_over_kappa_a or delta_a_hz, not both")
    elif d_over_k is not None:
        delta_a = d_over_k * kappa_a
    elif d_hz is not None:
        delta_a = TWO_PI * d_hz

    theta = _num(ptab, "theta_rad", problems, "params")
    if theta is None:
        # real-amplitude gauge for the weak-displacement cavity response
        theta = (phase_for_real_amplitude(delta_a, kappa_a)
                 if delta_a is not None and kappa_a > 0 else 0.0)

    params = PhysicalParams(
        omega_d=omega_d, omega_m=omega_m, gamma_m=gamma_m, kappa_a=kappa_a,
        mass=mass, length_L=length, g_omega=g_omega, g_kappa=g_kappa,
        power=power, temperature=temperature, theta=theta,
        omega_a=omega_d + (delta_a or 0.0))

    scenario = Scenario.for_couplings(g_omega, g_kappa)
    stab = raw.get("scenario")
    if stab is not None:
        if not isinstance(stab, dict):
            problems.append("[scenario] must be a table")
        else:
            _check_unknown(stab, {"kind"}, "scenario", problems)
            kind = stab.get("kind")
            try:
                scenario = Scenario(kind)
            except ValueError:
                problems.append(
                    f"scenario.kind: expected one of "
                    f"{[s.value for s in Scenario]}, got {kind!r}")
            else:
                warnings.extend(
                    scenario_violations(scenario, g_omega, g_kappa))

    sweep_spec = None
    stab = raw.get("sweep")
    if stab is not None:
        if not isinstance(stab, dict):
            problems.append("[sweep] must be a table")
        else:
            _check_unknown(stab, _SWEEP_KEYS, "sweep", problems)
            mode = stab.get("mode", "effective-detuning")
            if mode not in MODES:
                problems.append(f"sweep.mode: expected one of {MODES}, got {mode!r}")
            axes = []
            raw_axes = stab.get("axes", [])
            if not isinstance(raw_axes, list) or not raw_axes:
                problems.append("sweep.axes: expected a nonempty array of tables")
                raw_axes = []
            for i, ax in enumerate(raw_axes):
                if not isinstance(ax, dict):
                    problems.append(f"sweep.axes[{i}]: expected a table")
                    continue
                _check_unknown(ax, _AXIS_KEYS, f"sweep.axes[{i}]", problems)
                axes.append(SweepAxis(
                    parameter=str(ax.get("parameter", "")),
                    start=_num(ax, "start", problems, f"sweep.axes[{i}]", 0.0),
                    stop=_num(ax, "stop", problems, f"sweep.axes[{i}]", 0.0),
                    points=int(ax.get("points", 0)),
                    spacing=str(ax.get("spacing", "linear"))))
            fixed = stab.get("fixed", {})
            if not isinstance(fixed, dict):
                problems.append("sweep.fixed: expected a table")
                fixed = {}
            if mode in MODES and axes:
                sweep_spec = SweepSpec(scenario=scenario, axes=tuple(axes),
                                       mode=mode, fixed=dict(fixed))
                problems.extend(f"sweep: {p}" for p in sweep_spec.check())

    survival = None
    stab = raw.get("survival")
    if stab is not None:
        if not isinstance(stab, dict):
            problems.append("[survival] must be a table")
        else:
            _check_unknown(stab, _SURVIVAL_KEYS, "survival", problems)
            t_max = _num(stab, "t_max_k", problems, "survival")
            if t_max is None:
                problems.append("survival: missing required key 't_max_k'")
                t_max = 0.0
            ds_val = _num(stab, "delta_s_over_omega_m", problems, "survival")
            da_val = _num(stab, "delta_a_hz", problems, "survival")
            mode = stab.get("mode", "effective-detuning")
            if mode not in MODES:
                problems.append(
                    f"survival.mode: expected one of {MODES}, got {mode!r}")
            survival = SurvivalSettings(
                t_max=t_max,
                delta_s=None if ds_val is None else ds_val * omega_m,
                delta_a=None if da_val is None else TWO_PI * da_val,
                mode=mode if mode in MODES else "effective-detuning")

    ifo = None
    stab = raw.get("interferometer")
    if stab is not None:
        if not isinstance(stab, dict):
            problems.append("[interferometer] must be a table")
        else:
            _check_unknown(stab, _IFO_KEYS, "interferometer", problems)
            missing = [k for k in ("bs_r", "bs_t", "mem_r", "mem_t")
                       if k not in stab]
            for k in missing:
                problems.append(f"interferometer: missing required key {k!r}")
            if not missing:
                from .params import zero_point_fluctuation
                x_zpf = (zero_point_fluctuation(mass, omega_m)
                         if mass > 0 and omega_m > 0 else 0.0)
                ifo = InterferometerParams(
                    bs_r=_complex_from(stab["bs_r"], "bs_r", problems),
                    bs_t=_complex_from(stab["bs_t"], "bs_t", problems),
                    mem_r=_complex_from(stab["mem_r"], "mem_r", problems),
                    mem_t=_complex_from(stab["mem_t"], "mem_t", problems),
                    x_offset=_num(stab, "x_offset_rad", problems,
                                  "interferometer", 0.0),
                    omega_a=params.omega_a, length_L=length, x_zpf=x_zpf,
                    lossless=bool(stab.get("lossless", False)))
                problems.extend(f"interferometer: {p}" for p in ifo.check())

    csv_path = json_path = None
    stab = raw.get("output")
    if stab is not None:
        if not isinstance(stab, dict):
            problems.append("[output] must be a table")
        else:
            _check_unknown(stab, _OUTPUT_KEYS, "output", problems)
            csv_path = stab.get("csv")
            json_path = stab.get("json")

    for issue in validate_params(params):
        if issue.severity == "error":
            problems.append(f"params: {issue.message}")
        else:
            warnings.append(issue.message)

    if problems:
        raise ConfigSemanticError([f"{source}: {p}" for p in problems])
    return RunConfig(
        params=params, scenario=scenario, delta_a=delta_a, sweep=sweep_spec,
        survival=survival, interferometer=ifo, csv_path=csv_path,
        json_path=json_path, warnings=tuple(warnings), source=source)
