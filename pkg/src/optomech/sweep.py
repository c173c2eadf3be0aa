"""Grid evaluation of the full pipeline: operating point, stability,
stationary covariance, and logarithmic negativity.

Two steady-state modes exist. Bare-detuning mode holds Delta_a fixed and
follows the drive-connected branch of the fully self-consistent cubic (the
natural mode for power scans). Effective-detuning mode holds Delta_s fixed
and evaluates the linearization on the equilibrium-rate operating point,
which is the parameterisation the entanglement landscapes use.

Per-point evaluation is pure; grids may be fanned out over a process pool
and are assembled into pre-indexed slots, so results are deterministic and
independent of worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import linear_model, steady_state
from .constants import TWO_PI
from .entanglement import (
    ConditioningError,
    StabilityPreconditionError,
    UnphysicalCovarianceError,
    logarithmic_negativity,
    lyapunov_residual,
    physicality_check,
    solve_lyapunov,
)
from .params import PhysicalParams, Scenario, require_valid
from .steady_state import NoOperatingPointError, SteadyState

AXIS_PARAMETERS = (
    "delta_s_over_omega_m",  # dimensionless
    "delta_a",               # Hz (ordinary frequency)
    "g_omega",               # Hz
    "g_kappa",               # Hz
    "g_ratio",               # g_kappa / g_omega, dimensionless
    "power",                 # mW
    "temperature",           # K
)

MODES = ("bare-detuning", "effective-detuning")


class NoEntanglementError(RuntimeError):
    """E_N vanishes already at the low-temperature reference point."""


@dataclass(frozen=True)
class SweepAxis:
    """One swept parameter, in the human units listed in AXIS_PARAMETERS."""

    parameter: str
    start: float
    stop: float
    points: int
    spacing: str = "linear"  # or "log"

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)

    def check(self) -> list[str]:
        out = []
        if self.parameter not in AXIS_PARAMETERS:
            out.append(f"unknown axis parameter {self.parameter!r} "
                       f"(expected one of {', '.join(AXIS_PARAMETERS)})")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            out.append(f"axis {self.parameter}: range must be finite")
        if self.stop < self.start:
            out.append(f"axis {self.parameter}: range must be ordered")
        if self.points < 2:
            out.append(f"axis {self.parameter}: needs at least 2 points")
        if self.spacing not in ("linear", "log"):
            out.append(f"axis {self.parameter}: spacing must be linear or log")
        if self.spacing == "log" and self.start <= 0:
            out.append(f"axis {self.parameter}: log spacing needs start > 0")
        return out


@dataclass(frozen=True)
class SweepSpec:
    scenario: Scenario
    axes: tuple[SweepAxis, ...]
    mode: str = "effective-detuning"
    # fixed values applied before the axes, same human units as the axes
    fixed: dict = field(default_factory=dict)

    def check(self) -> list[str]:
        out = []
        if self.mode not in MODES:
            out.append(f"unknown mode {self.mode!r}")
        if not 1 <= len(self.axes) <= 2:
            out.append("sweeps take exactly 1 or 2 axes")
        for ax in self.axes:
            out.extend(ax.check())
        for key in self.fixed:
            if key not in AXIS_PARAMETERS:
                out.append(f"unknown fixed parameter {key!r}")
        return out


@dataclass(frozen=True)
class PointResult:
    """Pipeline output at one grid point. E_N is None unless stable."""

    inputs: dict
    state: SteadyState | None
    stable: bool
    e_n: float | None
    diagnostics: dict

    @property
    def feasible(self) -> bool:
        return self.state is not None


@dataclass(frozen=True)
class Optimum:
    coords: dict
    e_n: float
    index: tuple[int, ...]


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    axis_values: tuple[np.ndarray, ...]
    points: list[PointResult]   # row-major over the axes
    optimum: Optimum | None

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(v) for v in self.axis_values)

    def e_n_grid(self) -> np.ndarray:
        """E_N over the grid with NaN at unstable/infeasible points."""
        out = np.full(self.shape, np.nan)
        flat = out.reshape(-1)
        for i, p in enumerate(self.points):
            if p.e_n is not None:
                flat[i] = p.e_n
        return out


def _apply_setting(params: PhysicalParams, name: str, value: float,
                   setting: dict) -> PhysicalParams:
    """Apply one human-unit setting onto params (angular units inside)."""
    if name == "g_omega":
        return params.replace(g_omega=TWO_PI * value)
    if name == "g_kappa":
        return params.replace(g_kappa=TWO_PI * value)
    if name == "g_ratio":
        return params.replace(g_kappa=value * params.g_omega)
    if name == "power":
        return params.replace(power=value * 1e-3)
    if name == "temperature":
        return params.replace(temperature=value)
    if name == "delta_s_over_omega_m":
        setting["delta_s"] = value * params.omega_m
        return params
    if name == "delta_a":
        setting["delta_a"] = TWO_PI * value
        return params
    raise ValueError(f"unknown parameter {name!r}")


def evaluate_point(params: PhysicalParams, scenario: Scenario, mode: str,
                   delta_a: float | None = None,
                   delta_s: float | None = None,
                   inputs: dict | None = None) -> PointResult:
    """One pipeline pass: operating point -> A, D -> stability -> V -> E_N.

    Unstable points carry no E_N and are not errors; a missing operating
    point is recorded as an infeasible result.
    """
    require_valid(params)
    inputs = dict(inputs or {})
    diagnostics: dict = {}
    try:
        if mode == "effective-detuning":
            if delta_s is None:
                raise ValueError("effective-detuning mode needs delta_s")
            state = steady_state.equilibrium_operating_point(params, delta_s)
        elif mode == "bare-detuning":
            if delta_a is None:
                raise ValueError("bare-detuning mode needs delta_a")
            state = steady_state.zero_connected_state_at_bare_detuning(
                params, delta_a)
            branch_set = steady_state.steady_states_at_bare_detuning(
                params, delta_a)
            diagnostics["n_branches"] = len(branch_set)
        else:
            raise ValueError(f"unknown mode {mode!r}")
    except (NoOperatingPointError, steady_state.InadmissibleBranchError) as exc:
        diagnostics["infeasible"] = str(exc)
        return PointResult(inputs=inputs, state=None, stable=False,
                           e_n=None, diagnostics=diagnostics)

    model = linear_model.linearize(state, params)
    stable = linear_model.is_stable(model.a)
    if not stable:
        return PointResult(inputs=inputs, state=state, stable=False,
                           e_n=None, diagnostics=diagnostics)

    a_mat, d_mat = model.a, model.d
    try:
        v = solve_lyapunov(a_mat, d_mat)
    except (StabilityPreconditionError, ConditioningError) as exc:
        diagnostics["lyapunov_failed"] = str(exc)
        return PointResult(inputs=inputs, state=state, stable=stable,
                           e_n=None, diagnostics=diagnostics)
    diagnostics["lyapunov_residual"] = lyapunov_residual(a_mat, v, d_mat)
    phys = physicality_check(v)
    diagnostics["nu_minus"] = phys.nu_minus
    diagnostics["nu_plus"] = phys.nu_plus
    diagnostics["physical"] = phys.physical
    try:
        report = logarithmic_negativity(v, stable=stable)
    except UnphysicalCovarianceError as exc:
        diagnostics["unphysical_covariance"] = str(exc)
        return PointResult(inputs=inputs, state=state, stable=stable,
                           e_n=None, diagnostics=diagnostics)
    return PointResult(inputs=inputs, state=state, stable=stable,
                       e_n=report.e_n, diagnostics=diagnostics)


def _evaluate_indexed(task):
    """Worker entry point: evaluate one grid point by flat index."""
    idx, params, scenario, mode, delta_a, delta_s, inputs = task
    return idx, evaluate_point(params, scenario, mode, delta_a=delta_a,
                               delta_s=delta_s, inputs=inputs)


def _point_task(base: PhysicalParams, spec: SweepSpec, flat_idx: int,
                coords: tuple[float, ...]):
    params = base
    setting: dict = {}
    for key, val in spec.fixed.items():
        params = _apply_setting(params, key, float(val), setting)
    inputs = {}
    for ax, val in zip(spec.axes, coords):
        params = _apply_setting(params, ax.parameter, float(val), setting)
        inputs[ax.parameter] = float(val)
    return (flat_idx, params, spec.scenario, spec.mode,
            setting.get("delta_a"), setting.get("delta_s"), inputs)


def sweep(base_params: PhysicalParams, spec: SweepSpec,
          jobs: int = 1) -> SweepResult:
    """Evaluate the pipeline over the grid; deterministic regardless of jobs."""
    problems = spec.check()
    if problems:
        raise ValueError("; ".join(problems))
    axis_values = tuple(ax.values() for ax in spec.axes)
    grids = np.meshgrid(*axis_values, indexing="ij")
    coords_flat = np.stack([g.reshape(-1) for g in grids], axis=-1)
    tasks = [_point_task(base_params, spec, i, tuple(c))
             for i, c in enumerate(coords_flat)]
    results: list[PointResult | None] = [None] * len(tasks)
    if jobs > 1:
        chunk = max(1, len(tasks) // (jobs * 8))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for idx, res in pool.map(_evaluate_indexed, tasks, chunksize=chunk):
                results[idx] = res
    else:
        for task in tasks:
            idx, res = _evaluate_indexed(task)
            results[idx] = res
    out = SweepResult(spec=spec, axis_values=axis_values,
                      points=results, optimum=None)
    return replace(out, optimum=find_optimum(out))


_COUPLING_AXES = ("g_omega", "g_kappa", "g_ratio")
_DETUNING_AXES = ("delta_s_over_omega_m", "delta_a")


def find_optimum(result: SweepResult) -> Optimum | None:
    """Grid argmax of E_N over stable points.

    Ties break toward lower coupling, then lower detuning, so the optimum is
    deterministic however the grid was assembled.
    """
    axes = result.spec.axes

    def tiebreak(inputs: dict):
        key = []
        for group in (_COUPLING_AXES, _DETUNING_AXES):
            for ax in axes:
                if ax.parameter in group:
                    key.append(inputs[ax.parameter])
        return tuple(key)

    best: Optimum | None = None
    best_tie = None
    shape = result.shape
    for flat, p in enumerate(result.points):
        if p.e_n is None:
            continue
        tie = tiebreak(p.inputs)
        if (best is None or p.e_n > best.e_n
                or (p.e_n == best.e_n and tie < best_tie)):
            best = Optimum(coords=dict(p.inputs), e_n=p.e_n,
                           index=np.unravel_index(flat, shape))
            best_tie = tie
    return best


@dataclass(frozen=True)
class SurvivalTemperature:
    temperature: float     # K
    saturated: bool        # no zero crossing found below t_max
    e_n_low: float         # E_N at the low-temperature reference point

    def __float__(self) -> float:
        return self.temperature


#: low-temperature reference point for survival-temperature scans, K
T_REFERENCE = 0.010


def survival_temperature(params: PhysicalParams, scenario: Scenario,
                         t_max: float, mode: str = "effective-detuning",
                         delta_a: float | None = None,
                         delta_s: float | None = None,
                         coarse_points: int = 48,
                         rel_width: float = 0.01) -> SurvivalTemperature:
    """Temperature above which E_N stays zero, by bisection.

    Scans a coarse temperature grid up to t_max for the largest point with
    E_N > 0, then bisects the bracketing interval to the requested relative
    width. Requires E_N > 0 at the 10 mK reference; if E_N is still positive
    at t_max the result carries the saturation flag.
    """

    def e_n_at(temp: float) -> float:
        res = evaluate_point(params.replace(temperature=temp), scenario,
                             mode, delta_a=delta_a, delta_s=delta_s)
        return res.e_n if res.e_n is not None else 0.0

    e_low = e_n_at(T_REFERENCE)
    if e_low <= 0.0:
        raise NoEntanglementError(
            f"E_N = 0 already at the {T_REFERENCE * 1e3:.0f} mK reference")
    grid = np.linspace(T_REFERENCE, t_max, coarse_points)
    values = [e_n_at(t) for t in grid]
    positive = [i for i, e in enumerate(values) if e > 0.0]
    last = positive[-1]
    if last == len(grid) - 1:
        return SurvivalTemperature(temperature=t_max, saturated=True,
                                   e_n_low=e_low)
    lo, hi = float(grid[last]), float(grid[last + 1])
    while (hi - lo) > rel_width * hi:
        mid = 0.5 * (lo + hi)
        if e_n_at(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return SurvivalTemperature(temperature=0.5 * (lo + hi), saturated=False,
                               e_n_low=e_low)
