"""Linearized Gaussian fluctuation dynamics around an operating point.

Quadrature basis (dx, dp, dx_a, dp_a) with vacuum variance 1/2. The drift
matrix A and diffusion matrix D define the Ornstein-Uhlenbeck dynamics
du = A u dt + noise, with symmetrized noise correlations
<n_i(t) n_j(t')>_sym = D_ij delta(t - t'). Both builders require the cavity
amplitude in the gauge where it is real and nonnegative; the gauge rotation
is applied internally from |a_s|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .polyroots import quartic_roots

QUADRATURE_BASIS = ("dx", "dp", "dx_a", "dp_a")

#: relative margin inside which a Routh-Hurwitz expression counts as violated
#: (conservative: marginal points are classified unstable, because the
#: stationary covariance solve is ill-conditioned there)
RH_REL_TOL = 1e-12


class PhaseNotFixedError(ValueError):
    """Amplitude passed with a phase; fix the gauge first."""


class SingularInputCouplingError(ValueError):
    """Effective input coupling vanished (x_s = 2 kappa_a / g_kappa)."""


def linearized_couplings(g: float, a_s: float) -> float:
    """Drive-enhanced coupling G = sqrt(2) g a_s for a real amplitude."""
    if isinstance(a_s, complex):
        if a_s.imag != 0.0:
            raise PhaseNotFixedError(
                f"a_s = {a_s!r} is complex; rotate to the real gauge first")
        a_s = a_s.real
    return math.sqrt(2.0) * g * a_s


def phase_for_real_amplitude(delta_a: float, kappa_a: float) -> float:
    """Drive phase that puts the weak-displacement cavity response on the
    positive real axis: theta = atan2(Delta_a, kappa_a)."""
    if kappa_a <= 0:
        raise ValueError(f"kappa_a must be positive, got {kappa_a!r}")
    return math.atan2(delta_a, kappa_a)


def _real_amplitude(ss) -> float:
    # gauge rotation: the linearized model is written for a_s real >= 0
    return abs(ss.a_s)


def drift_matrix(ss, params) -> np.ndarray:
    """4x4 drift matrix of the fluctuation dynamics.

    Layout (rows act on (dx, dp, dx_a, dp_a)):

        [ 0     w_m    0                0             ]
        [-w_m  -g_m    Gw + r Ds        -r ks         ]
        [ Gk - 2 r ks   0   -ks          Ds           ]
        [ Gw - 2 r Ds   0   -Ds         -ks           ]

    with r = Gk / (sqrt(2 kappa_a) Gamma_s), ks and Ds the effective decay
    and detuning of the operating point.
    """
    if ss.gamma_big_s == 0:
        raise SingularInputCouplingError(
            "Gamma_s = 0 (x_s = 2 kappa_a / g_kappa): the input coupling "
            "vanishes and the linearized model is singular")
    a_real = _real_amplitude(ss)
    g_w = linearized_couplings(params.g_omega, a_real)
    g_k = linearized_couplings(params.g_kappa, a_real)
    sq2ka = math.sqrt(2.0 * params.kappa_a)
    r = g_k / (sq2ka * ss.gamma_big_s)
    ks, ds = ss.kappa_s, ss.delta_s
    return np.array([
        [0.0, params.omega_m, 0.0, 0.0],
        [-params.omega_m, -params.gamma_m, g_w + r * ds, -r * ks],
        [g_k - 2.0 * r * ks, 0.0, -ks, ds],
        [g_w - 2.0 * r * ds, 0.0, -ds, -ks],
    ])


def diffusion_matrix(ss, params, n_th: float) -> np.ndarray:
    """4x4 symmetrized noise matrix.

    Mechanical momentum noise carries the thermal term g_m (2 n_th + 1) plus
    the dissipative-coupling feed Gk^2 / (4 kappa_a); the optical quadratures
    see vacuum input scaled by the effective coupling, Gamma_s^2 / 2; and the
    dissipative coupling correlates dp with dp_a through the shared input
    field (the only off-diagonal entry).
    """
    if ss.gamma_big_s == 0:
        raise SingularInputCouplingError(
            "Gamma_s = 0: the input coupling vanishes")
    a_real = _real_amplitude(ss)
    g_k = linearized_couplings(params.g_kappa, a_real)
    sq2ka = math.sqrt(2.0 * params.kappa_a)
    d = np.zeros((4, 4))
    d[1, 1] = params.gamma_m * (2.0 * n_th + 1.0) + g_k ** 2 / (4.0 * params.kappa_a)
    d[2, 2] = d[3, 3] = ss.gamma_big_s ** 2 / 2.0
    d[1, 3] = d[3, 1] = g_k * ss.gamma_big_s / (2.0 * sq2ka)
    return d


@dataclass(frozen=True)
class LinearizedModel:
    """Drift/diffusion pair plus the enhanced couplings that built them."""

    a: np.ndarray            # 4x4 drift matrix, rad/s
    d: np.ndarray            # 4x4 symmetric diffusion matrix, rad/s
    g_omega: float           # drive-enhanced coherent coupling, rad/s
    g_kappa: float           # drive-enhanced dissipative coupling, rad/s
    basis: tuple = field(default=QUADRATURE_BASIS)


def linearize(ss, params, n_th: float | None = None) -> LinearizedModel:
    """Build the full linearized model around an operating point."""
    if n_th is None:
        n_th = params.thermal_occupation()
    a_real = _real_amplitude(ss)
    return LinearizedModel(
        a=drift_matrix(ss, params),
        d=diffusion_matrix(ss, params, n_th),
        g_omega=linearized_couplings(params.g_omega, a_real),
        g_kappa=linearized_couplings(params.g_kappa, a_real))


def characteristic_polynomial(a: np.ndarray) -> tuple[float, float, float, float, float]:
    """Monic quartic det(sI - A) = s^4 + c1 s^3 + c2 s^2 + c3 s + c4.

    Faddeev-LeVerrier recursion: exact in the matrix entries, no
    eigendecomposition involved.
    """
    a = np.asarray(a, dtype=float)
    if a.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {a.shape}")
    eye = np.eye(4)
    m = a.copy()
    c1 = -np.trace(m)
    m = a @ (m + c1 * eye)
    c2 = -np.trace(m) / 2.0
    m = a @ (m + c2 * eye)
    c3 = -np.trace(m) / 3.0
    m = a @ (m + c3 * eye)
    c4 = -np.trace(m) / 4.0
    return (1.0, float(c1), float(c2), float(c3), float(c4))


def routh_hurwitz_stable(coeffs) -> bool:
    """Routh-Hurwitz test for the monic quartic s^4 + a3 s^3 + ... + a0.

    All six expressions must be strictly positive; each is compared with a
    relative tolerance so that marginal points are classified unstable.
    """
    lead, a3, a2, a1, a0 = coeffs
    if lead <= 0:
        raise ValueError(f"leading coefficient must be positive, got {lead!r}")
    if lead != 1.0:
        a3, a2, a1, a0 = a3 / lead, a2 / lead, a1 / lead, a0 / lead

    def positive(value: float, scale: float) -> bool:
        return value > RH_REL_TOL * max(scale, 1e-300)

    h2 = a3 * a2 - a1
    h3 = a1 * h2 - a3 * a3 * a0
    return (positive(a3, abs(a3))
            and positive(a2, abs(a2))
            and positive(a1, abs(a1))
            and positive(a0, abs(a0))
            and positive(h2, max(abs(a3 * a2), abs(a1)))
            and positive(h3, max(abs(a1 * h2), abs(a3 * a3 * a0))))


def spectral_stable(a: np.ndarray) -> tuple[bool, float]:
    """Independent stability check: sign of max Re of the quartic's roots.

    Roots come from the closed-form resolvent-cubic factorisation with a
    Newton polish (no general eigensolver). Returns (stable, margin) with
    margin = -max Re(s); the matrix is scale-normalised first so the
    classification is insensitive to the units of A.
    """
    a = np.asarray(a, dtype=float)
    scale = float(np.abs(a).max())
    if scale == 0.0:
        return False, 0.0
    _, c1, c2, c3, c4 = characteristic_polynomial(a / scale)
    roots = quartic_roots(c1, c2, c3, c4)
    max_re = max(r.real for r in roots) * scale
    return max_re < 0.0, -max_re


def is_stable(a: np.ndarray) -> bool:
    """Stability gate used by the pipeline: the Routh-Hurwitz test with its
    conservative margin handling."""
    return routh_hurwitz_stable(characteristic_polynomial(a))
