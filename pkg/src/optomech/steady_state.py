"""Classical mean-field operating points of the driven cavity + membrane.

The mean-field equations close on three variables: membrane displacement x
(zero-point units), momentum p, and the complex cavity amplitude a. At a
fixed point p = 0 and

    a_s = Gamma_s * E / (kappa_s + i Delta_s),
    x_s * w_m = g_w * n_s + 2 g_k * Delta_s * Gamma_s * |E|^2
                / (sqrt(2 kappa_a) * (kappa_s^2 + Delta_s^2)),

with the displacement-dressed rates

    Delta_s = Delta_a - g_w x_s,
    kappa_s = kappa_a - g_k x_s,
    Gamma_s = sqrt(2 kappa_a) - g_k x_s / sqrt(2 kappa_a),

and n_s = |a_s|^2. Eliminating a_s turns the fixed-point condition into a
real cubic in x_s, which is what everything here ultimately solves.
Admissible operating points require kappa_s > 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import linear_model
from .params import PhysicalParams, require_valid
from .polyroots import cubic_residual_scale, real_roots_cubic

#: relative residual every solver-produced operating point must satisfy
RESIDUAL_RTOL = 1e-8

#: drive-ramp continuation used to pick the branch connected to x_s = 0
_RAMP_STEPS = 48
_RAMP_START = 1e-6


class InadmissibleBranchError(ValueError):
    """The requested displacement gives a nonpositive effective decay."""


class NoOperatingPointError(RuntimeError):
    """No admissible operating point continuously connected to x_s = 0."""


class AdmissibilityError(ValueError):
    """Photon number beyond the dissipative closed form's domain."""


@dataclass(frozen=True)
class SteadyState:
    """Self-consistent classical operating point."""

    x_s: float          # displacement, zero-point units
    p_s: float          # momentum (0 at any fixed point)
    a_s: complex        # cavity amplitude, sqrt(photons)
    n_s: float          # photon number |a_s|^2
    delta_s: float      # effective detuning, rad/s
    kappa_s: float      # effective decay, rad/s
    gamma_big_s: float  # effective input coupling, sqrt(rad/s)
    delta_a: float      # bare detuning this point corresponds to, rad/s


@dataclass(frozen=True)
class CubicCoefficients:
    """a x^3 + b x^2 + c x + d = 0 for the steady-state displacement."""

    a: float
    b: float
    c: float
    d: float

    def residual(self, x: float) -> float:
        return ((self.a * x + self.b) * x + self.c) * x + self.d

    def scale(self, x: float) -> float:
        return cubic_residual_scale(self.a, self.b, self.c, self.d, x)


@dataclass(frozen=True)
class BranchPoint:
    state: SteadyState
    stable: bool


@dataclass(frozen=True)
class BranchSet:
    """Admissible operating points at one drive setting, ascending in x_s."""

    branches: list[BranchPoint]

    def __len__(self) -> int:
        return len(self.branches)

    @property
    def states(self) -> list[SteadyState]:
        return [b.state for b in self.branches]


def cubic_coefficients(params: PhysicalParams, delta_a: float) -> CubicCoefficients:
    """Displacement cubic at fixed bare detuning."""
    require_valid(params)
    gw, gk = params.g_omega, params.g_kappa
    wm, ka = params.omega_m, params.kappa_a
    e2 = params.drive_amplitude() ** 2
    return CubicCoefficients(
        a=2.0 * (gw * gw + gk * gk) * wm * ka,
        b=-4.0 * wm * ka * (gw * delta_a + gk * ka) - 3.0 * gw * gk * gk * e2,
        c=2.0 * wm * ka * (ka * ka + delta_a * delta_a)
          + 2.0 * gk * e2 * (gk * delta_a + 4.0 * gw * ka),
        d=-4.0 * ka * e2 * (gw * ka + gk * delta_a),
    )


def effective_detuning_cubic(params: PhysicalParams, delta_s: float) -> CubicCoefficients:
    """Displacement cubic with the effective detuning held fixed.

    Same fixed-point condition, reparameterised: Delta_s is the independent
    variable and only kappa_s, Gamma_s retain their x dependence.
    """
    require_valid(params)
    gw, gk = params.g_omega, params.g_kappa
    wm, ka = params.omega_m, params.kappa_a
    e2 = params.drive_amplitude() ** 2
    return CubicCoefficients(
        a=2.0 * ka * wm * gk * gk,
        b=-4.0 * ka * ka * wm * gk - gw * gk * gk * e2,
        c=2.0 * ka * wm * (ka * ka + delta_s * delta_s)
          + (4.0 * ka * gw * gk + 2.0 * gk * gk * delta_s) * e2,
        d=-4.0 * ka * e2 * (gw * ka + gk * delta_s),
    )


def steady_state_from_displacement(
        params: PhysicalParams, delta_a: float, x_s: float) -> SteadyState:
    """Populate the full operating point from its displacement."""
    ka, gk, gw = params.kappa_a, params.g_kappa, params.g_omega
    kappa_s = ka - gk * x_s
    if kappa_s <= 0:
        raise InadmissibleBranchError(
            f"effective decay kappa_s = {kappa_s:.6g} <= 0 at x_s = {x_s:.6g}")
    delta_s = delta_a - gw * x_s
    sq2ka = math.sqrt(2.0 * ka)
    gamma_big_s = sq2ka - gk * x_s / sq2ka
    drive = params.drive_amplitude() * cmath.exp(1j * params.theta)
    a_s = gamma_big_s * drive / (kappa_s + 1j * delta_s)
    return SteadyState(
        x_s=x_s, p_s=0.0, a_s=a_s, n_s=abs(a_s) ** 2,
        delta_s=delta_s, kappa_s=kappa_s, gamma_big_s=gamma_big_s,
        delta_a=delta_a)


def fixed_point_residual(params: PhysicalParams, delta_a: float, x_s: float) -> float:
    """Relative residual of the displacement cubic at x_s."""
    co = cubic_coefficients(params, delta_a)
    return abs(co.residual(x_s)) / co.scale(x_s)


def _admissible_roots(co: CubicCoefficients, params: PhysicalParams) -> list[float]:
    roots = real_roots_cubic(co.a, co.b, co.c, co.d)
    return [x for x in roots if params.kappa_a - params.g_kappa * x > 0]


def steady_states_at_bare_detuning(
        params: PhysicalParams, delta_a: float) -> BranchSet:
    """All admissible operating points at fixed bare detuning, stability-tagged.

    Inadmissible roots (kappa_s <= 0) are silently excluded; each surviving
    branch is tagged by the linearized-dynamics stability test.
    """
    co = cubic_coefficients(params, delta_a)
    branches = []
    for x in sorted(_admissible_roots(co, params)):
        ss = steady_state_from_displacement(params, delta_a, x)
        _check_residual(co, x)
        a_mat = linear_model.drift_matrix(ss, params)
        stable = linear_model.routh_hurwitz_stable(
            linear_model.characteristic_polynomial(a_mat))
        branches.append(BranchPoint(state=ss, stable=stable))
    return BranchSet(branches=branches)


def _check_residual(co: CubicCoefficients, x: float) -> None:
    if abs(co.residual(x)) > RESIDUAL_RTOL * co.scale(x):
        raise RuntimeError(
            f"internal error: fixed-point residual {co.residual(x):.3e} exceeds "
            f"{RESIDUAL_RTOL:g} of scale {co.scale(x):.3e} at x = {x:.6g}")


def _zero_connected_root(params: PhysicalParams, delta_s_or_a: float,
                         coeff_fn, e2_full: float) -> float:
    """Root continuously connected to x = 0 as the drive is ramped up.

    Continuation over a geometric drive ramp with nearest-root tracking; the
    monostable case short-circuits. coeff_fn(params_with_power) must return
    the CubicCoefficients at the given detuning.
    """
    if e2_full == 0.0:
        return 0.0
    co = coeff_fn(params, delta_s_or_a)
    roots = _admissible_roots(co, params)
    if len(roots) == 1:
        return roots[0]
    if not roots:
        raise NoOperatingPointError(
            "no admissible operating point at full drive")
    x = 0.0
    for s in np.geomspace(_RAMP_START, 1.0, _RAMP_STEPS):
        p_s = params.replace(power=params.power * s)
        co = coeff_fn(p_s, delta_s_or_a)
        roots = _admissible_roots(co, p_s)
        if not roots:
            raise NoOperatingPointError(
                f"zero-connected branch lost at drive fraction {s:.3g} "
                "(branch fold before full power)")
        x = min(roots, key=lambda r: abs(r - x))
    return x


def steady_state_at_effective_detuning(
        params: PhysicalParams, delta_s: float) -> SteadyState:
    """Self-consistent operating point with the effective detuning held fixed.

    Solves the displacement cubic in which kappa_s and Gamma_s keep their x
    dependence but Delta_s is pinned, picks the root continuously connected
    to x_s = 0 at zero drive, and reports the bare detuning
    Delta_a = Delta_s + g_w x_s the point corresponds to.
    """
    x = _zero_connected_root(
        params, delta_s, effective_detuning_cubic, params.drive_amplitude() ** 2)
    delta_a = delta_s + params.g_omega * x
    ss = steady_state_from_displacement(params, delta_a, x)
    co = effective_detuning_cubic(params, delta_s)
    _check_residual(co, x)
    return ss


def zero_connected_state_at_bare_detuning(
        params: PhysicalParams, delta_a: float) -> SteadyState:
    """Operating point on the branch adiabatically connected to zero drive."""
    x = _zero_connected_root(
        params, delta_a, cubic_coefficients, params.drive_amplitude() ** 2)
    ss = steady_state_from_displacement(params, delta_a, x)
    _check_residual(cubic_coefficients(params, delta_a), x)
    return ss


def equilibrium_operating_point(
        params: PhysicalParams, delta_s: float) -> SteadyState:
    """Operating point with the cavity rates frozen at membrane equilibrium.

    The static displacement is absorbed entirely into the effective detuning:
    kappa_s = kappa_a and Gamma_s = sqrt(2 kappa_a) regardless of x_s, so
    n_s = 2 kappa_a |E|^2 / (kappa_a^2 + Delta_s^2). The displacement the
    fixed-point relation would produce at these rates is reported for
    bookkeeping, together with the bare detuning it implies. This is the
    operating point the entanglement landscapes are computed on; the fully
    self-consistent alternative is steady_state_at_effective_detuning.
    """
    require_valid(params)
    ka = params.kappa_a
    sq2ka = math.sqrt(2.0 * ka)
    drive = params.drive_amplitude() * cmath.exp(1j * params.theta)
    a_s = sq2ka * drive / (ka + 1j * delta_s)
    n_s = abs(a_s) ** 2
    x_s = (params.g_omega * n_s
           + params.g_kappa * delta_s * n_s / ka) / params.omega_m
    return SteadyState(
        x_s=x_s, p_s=0.0, a_s=a_s, n_s=n_s,
        delta_s=delta_s, kappa_s=ka, gamma_big_s=sq2ka,
        delta_a=delta_s + params.g_omega * x_s)


def dissipative_closed_form(
        params: PhysicalParams, delta_a: float, n_s: float) -> float:
    """Closed-form displacement for purely dissipative coupling.

    With g_w = 0 the fixed-point condition collapses to the quadratic

        g_k w_m x^2 - 2 kappa_a w_m x + 2 g_k Delta_a n_s = 0,

    whose small root x_s = (kappa_a/g_k) [1 - sqrt(1 - u)] with
    u = 2 (g_k/kappa_a)^2 (Delta_a/w_m) n_s is the physical branch. Only
    defined for u <= 1; the evaluation uses the cancellation-free form
    u / (1 + sqrt(1 - u)).
    """
    if params.g_omega != 0.0:
        raise ValueError("closed form requires g_omega = 0")
    if n_s < 0:
        raise ValueError(f"n_s must be nonnegative, got {n_s!r}")
    gk = params.g_kappa
    if gk == 0.0:
        return 0.0
    ka, wm = params.kappa_a, params.omega_m
    u = 2.0 * (gk / ka) ** 2 * (delta_a / wm) * n_s
    if u > 1.0 + 1e-12:
        raise AdmissibilityError(
            f"n_s = {n_s:.6g} beyond the admissible bound "
            f"(kappa_a/g_k)^2 (w_m / 2 Delta_a) = {n_s / u:.6g}")
    u = min(u, 1.0)
    return (ka / gk) * u / (1.0 + math.sqrt(1.0 - u))


@dataclass(frozen=True)
class MeanTrajectory:
    times: np.ndarray
    x: np.ndarray
    p: np.ndarray
    a: np.ndarray          # complex cavity amplitude
    final: tuple[float, float, complex]
    diverged: bool


def integrate_mean_dynamics(
        params: PhysicalParams, delta_a: float,
        initial: tuple[float, float, complex],
        t_end: float, dt: float,
        max_samples: int = 2048) -> MeanTrajectory:
    """Fixed-step 4th-order integration of the mean-field equations.

    The step must resolve the fastest scale:
    dt <= 0.05 / max(kappa_a, w_m, |Delta_a|). Divergence (amplitude beyond
    an overflow guard) ends the run early with the diverged flag set instead
    of raising.
    """
    fastest = max(params.kappa_a, params.omega_m, abs(delta_a))
    if dt > 0.05 / fastest:
        raise ValueError(
            f"dt = {dt:.3g} too coarse for the fastest rate {fastest:.3g}; "
            f"need dt <= {0.05 / fastest:.3g}")
    wm, gm, ka = params.omega_m, params.gamma_m, params.kappa_a
    gw, gk = params.g_omega, params.g_kappa
    sq2ka = math.sqrt(2.0 * ka)
    drive = params.drive_amplitude() * cmath.exp(1j * params.theta)
    drive_c = drive.conjugate()

    def rhs(x, p, a):
        dx = wm * p
        dp = (gw * (a.real * a.real + a.imag * a.imag) - wm * x - gm * p
              - (2.0 * gk / sq2ka) * (drive_c * a).imag)
        da = (-(ka - gk * x + 1j * (delta_a - gw * x)) * a
              + (sq2ka - gk * x / sq2ka) * drive)
        return dx, dp, da

    n_steps = max(1, int(math.ceil(t_end / dt)))
    stride = max(1, n_steps // max_samples)
    x, p, a = float(initial[0]), float(initial[1]), complex(initial[2])
    ts = [0.0]
    xs, ps, amps = [x], [p], [a]
    diverged = False
    t = 0.0
    for i in range(n_steps):
        k1 = rhs(x, p, a)
        k2 = rhs(x + 0.5 * dt * k1[0], p + 0.5 * dt * k1[1], a + 0.5 * dt * k1[2])
        k3 = rhs(x + 0.5 * dt * k2[0], p + 0.5 * dt * k2[1], a + 0.5 * dt * k2[2])
        k4 = rhs(x + dt * k3[0], p + dt * k3[1], a + dt * k3[2])
        x += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        p += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        a += dt / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        t += dt
        if (not math.isfinite(x) or not math.isfinite(p)
                or not cmath.isfinite(a)
                or abs(x) > 1e15 or abs(a) > 1e15):
            diverged = True
            break
        if (i + 1) % stride == 0 or i == n_steps - 1:
            ts.append(t)
            xs.append(x)
            ps.append(p)
            amps.append(a)
    return MeanTrajectory(
        times=np.asarray(ts), x=np.asarray(xs), p=np.asarray(ps),
        a=np.asarray(amps, dtype=complex), final=(x, p, a), diverged=diverged)


@dataclass(frozen=True)
class BistabilityScan:
    powers: np.ndarray
    admissible_counts: np.ndarray
    stable_counts: np.ndarray
    bistable_window_present: bool


def classify_bistability(
        params: PhysicalParams, delta_a: float,
        power_grid) -> BistabilityScan:
    """Admissible-root and stable-branch counts along an ascending power grid."""
    powers = np.asarray(power_grid, dtype=float)
    if powers.size == 0:
        raise ValueError("power_grid must be nonempty")
    if np.any(np.diff(powers) < 0):
        raise ValueError("power_grid must be ascending")
    n_adm = np.empty(powers.size, dtype=int)
    n_stab = np.empty(powers.size, dtype=int)
    for i, pw in enumerate(powers):
        p_i = params.replace(power=float(pw))
        branch_set = steady_states_at_bare_detuning(p_i, delta_a)
        n_adm[i] = len(branch_set)
        n_stab[i] = sum(1 for b in branch_set.branches if b.stable)
    return BistabilityScan(
        powers=powers, admissible_counts=n_adm, stable_counts=n_stab,
        bistable_window_present=bool(np.any(n_adm >= 3)))
