"""Stationary covariance matrix and two-mode Gaussian entanglement.

Conventions: quadratures ordered (dx, dp, dx_a, dp_a), symmetrized moments
V_ij = <u_i u_j + u_j u_i>/2, vacuum variance 1/2. Physical states have both
symplectic eigenvalues >= 1/2; a state is entangled when the smallest
symplectic eigenvalue of its partial transpose drops below 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linear_model import spectral_stable

#: Lyapunov solve must reproduce -D to this fraction of ||D|| (max norm)
LYAPUNOV_RTOL = 1e-9

#: symplectic eigenvalues may undershoot the vacuum bound by this much
#: before a state is flagged unphysical
PHYSICALITY_TOL = 1e-6


class StabilityPreconditionError(ValueError):
    """Drift matrix is not stable; no stationary covariance exists."""


class ConditioningError(RuntimeError):
    """Lyapunov system too ill-conditioned to meet the residual bound."""


class UnphysicalCovarianceError(ValueError):
    """Covariance outside the two-mode Gaussian state space."""


def solve_lyapunov(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Stationary covariance V of A V + V A^T = -D.

    The equation is vectorized to a dense 16x16 linear system and solved by
    LU elimination with partial pivoting, followed by one step of iterative
    refinement; the output is explicitly symmetrized. Residual contract:
    ||A V + V A^T + D||_max <= 1e-9 ||D||_max.
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    stable, _ = spectral_stable(a)
    if not stable:
        raise StabilityPreconditionError(
            "drift matrix has a nonnegative eigenvalue; the Lyapunov "
            "equation has no stationary solution")
    # normalise so both operator and right-hand side are O(1)
    s = float(np.abs(a).max())
    a_n = a / s
    d_n = d / s
    eye = np.eye(a.shape[0])
    m = np.kron(a_n, eye) + np.kron(eye, a_n)
    rhs = -d_n.flatten()
    try:
        v = np.linalg.solve(m, rhs)
        # one refinement step knocks the residual down near round-off
        v = v + np.linalg.solve(m, rhs - m @ v)
    except np.linalg.LinAlgError as exc:
        raise ConditioningError(f"Lyapunov system singular: {exc}") from exc
    v = v.reshape(a.shape)
    v = (v + v.T) / 2.0
    res = float(np.abs(a @ v + v @ a.T + d).max())
    bound = LYAPUNOV_RTOL * float(np.abs(d).max())
    if not math.isfinite(res) or res > bound:
        raise ConditioningError(
            f"Lyapunov residual {res:.3e} exceeds bound {bound:.3e} "
            "(marginally stable or badly scaled drift)")
    return v


def lyapunov_residual(a: np.ndarray, v: np.ndarray, d: np.ndarray) -> float:
    """Max-norm residual of A V + V A^T + D relative to ||D||_max."""
    num = float(np.abs(a @ v + v @ a.T + d).max())
    den = float(np.abs(d).max())
    return num / den if den > 0 else num


def _det2(m) -> float:
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


@dataclass(frozen=True)
class SymplecticInvariants:
    det_m: float       # mechanical block
    det_o: float       # optical block
    det_c: float       # correlation block
    det_v: float       # full 4x4 determinant
    sigma_tilde: float  # det_m + det_o - 2 det_c


def symplectic_invariants(v: np.ndarray) -> SymplecticInvariants:
    """Block determinants and the partial-transpose invariant of V."""
    v = np.asarray(v, dtype=float)
    if v.shape != (4, 4):
        raise ValueError(f"expected 4x4 covariance, got shape {v.shape}")
    det_m = _det2(v[:2, :2])
    det_o = _det2(v[2:, 2:])
    det_c = _det2(v[:2, 2:])
    return SymplecticInvariants(
        det_m=det_m, det_o=det_o, det_c=det_c,
        det_v=float(np.linalg.det(v)),
        sigma_tilde=det_m + det_o - 2.0 * det_c)


@dataclass(frozen=True)
class EntanglementReport:
    sigma: float                 # partial-transpose invariant Sigma~
    eta_minus: float             # smallest PT symplectic eigenvalue
    e_n: float                   # logarithmic negativity
    nu_minus: float              # smallest symplectic eigenvalue of V itself
    nu_plus: float               # largest symplectic eigenvalue of V
    stable: bool = True          # stability of the generating dynamics

    @property
    def entangled(self) -> bool:
        return self.e_n > 0.0


def _symplectic_pair(delta: float, det_v: float) -> tuple[float, float]:
    disc = delta * delta - 4.0 * det_v
    if disc < 0:
        if disc < -1e-12 * max(delta * delta, abs(4.0 * det_v)):
            return math.nan, math.nan
        disc = 0.0
    root = math.sqrt(disc)
    lo = (delta - root) / 2.0
    hi = (delta + root) / 2.0
    lo = max(lo, 0.0)
    return math.sqrt(lo), math.sqrt(hi)


def logarithmic_negativity(v: np.ndarray, stable: bool = True) -> EntanglementReport:
    """Two-mode logarithmic negativity E_N = max(0, -ln 2 eta-).

    eta- = 2^{-1/2} [Sigma~ - sqrt(Sigma~^2 - 4 det V)]^{1/2}. E_N > 0 means
    entangled, E_N = 0 separable. Raises when the invariants place V outside
    the two-mode state space (Sigma~^2 < 4 det V beyond round-off, or
    det V <= 0).
    """
    inv = symplectic_invariants(v)
    disc = inv.sigma_tilde ** 2 - 4.0 * inv.det_v
    tol = 1e-12 * max(inv.sigma_tilde ** 2, abs(4.0 * inv.det_v))
    if inv.det_v <= 0 or disc < -tol:
        raise UnphysicalCovarianceError(
            "invariants outside the two-mode state space: "
            f"Sigma~ = {inv.sigma_tilde:.6g}, det V = {inv.det_v:.6g}, "
            f"det V_m = {inv.det_m:.6g}, det V_o = {inv.det_o:.6g}, "
            f"det V_c = {inv.det_c:.6g}")
    disc = max(disc, 0.0)
    eta2 = (inv.sigma_tilde - math.sqrt(disc)) / 2.0
    eta_minus = math.sqrt(max(eta2, 0.0))
    if eta_minus <= 0:
        raise UnphysicalCovarianceError(
            f"eta- = {eta_minus:.6g} is not positive "
            f"(Sigma~ = {inv.sigma_tilde:.6g}, det V = {inv.det_v:.6g})")
    e_n = max(0.0, -math.log(2.0 * eta_minus))
    delta = inv.det_m + inv.det_o + 2.0 * inv.det_c
    nu_minus, nu_plus = _symplectic_pair(delta, inv.det_v)
    return EntanglementReport(
        sigma=inv.sigma_tilde, eta_minus=eta_minus, e_n=e_n,
        nu_minus=nu_minus, nu_plus=nu_plus, stable=stable)


@dataclass(frozen=True)
class PhysicalityReport:
    nu_minus: float
    nu_plus: float
    physical: bool
    threshold: float


def physicality_check(v: np.ndarray) -> PhysicalityReport:
    """Uncertainty-principle sanity gate (report-only, never raises).

    A physical two-mode Gaussian state has both symplectic eigenvalues
    >= 1/2; anything below 1/2 - 1e-6 is flagged.
    """
    inv = symplectic_invariants(v)
    delta = inv.det_m + inv.det_o + 2.0 * inv.det_c
    nu_minus, nu_plus = _symplectic_pair(delta, inv.det_v)
    threshold = 0.5 - PHYSICALITY_TOL
    physical = (math.isfinite(nu_minus) and math.isfinite(nu_plus)
                and nu_minus >= threshold and nu_plus >= threshold)
    return PhysicalityReport(
        nu_minus=nu_minus, nu_plus=nu_plus,
        physical=physical, threshold=threshold)
