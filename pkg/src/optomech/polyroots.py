"""Closed-form real-root finding for cubics and quartics.

The solvers here avoid general eigen machinery on purpose: the package only
ever meets fixed, tiny polynomials (the steady-state cubic and the 4x4
characteristic quartic), and closed-form evaluation plus one Newton polish
per root is deterministic and fast. Coefficients may span many decades, so
everything is normalised before the trigonometric/Cardano branches.
"""

from __future__ import annotations

import cmath
import math


class IndeterminateEquationError(ValueError):
    """All coefficients vanish; every x is a root."""


def _horner(coeffs, x: float) -> float:
    v = 0.0
    for c in coeffs:
        v = v * x + c
    return v


def _polish_real(coeffs, x: float) -> float:
    # one Newton step on the full polynomial (Horner for value and slope)
    d = 0.0
    v = 0.0
    for c in coeffs:
        d = d * x + v
        v = v * x + c
    if d != 0.0 and math.isfinite(v / d):
        step = v / d
        if abs(step) < 1.0 + abs(x):  # reject wild steps near multiple roots
            x = x - step
    return x


def cubic_residual_scale(a: float, b: float, c: float, d: float, x: float) -> float:
    """Magnitude scale for judging the cubic residual at x."""
    return max(abs(a * x**3), abs(b * x**2), abs(c * x), abs(d), 1e-300)


def real_roots_cubic(a: float, b: float, c: float, d: float) -> list[float]:
    """All real roots of a x^3 + b x^2 + c x + d = 0, ascending.

    Degenerate leading coefficients fall through to the quadratic/linear
    formulas. Each root is refined by a single Newton step; residuals stay
    below 1e-8 of the per-root coefficient scale (asserted in tests).
    """
    if a == 0.0 and b == 0.0 and c == 0.0:
        if d == 0.0:
            raise IndeterminateEquationError("all cubic coefficients are zero")
        return []  # constant d != 0: no roots

    # normalise magnitudes so the discriminant arithmetic stays in range
    s = max(abs(a), abs(b), abs(c), abs(d))
    a, b, c, d = a / s, b / s, c / s, d / s

    if a == 0.0:
        return _real_roots_quadratic(b, c, d)

    # monic + depressed: x = t - B/3 turns x^3 + Bx^2 + Cx + D into t^3 + pt + q
    B, C, D = b / a, c / a, d / a
    shift = B / 3.0
    p = C - B * B / 3.0
    q = 2.0 * B**3 / 27.0 - B * C / 3.0 + D

    roots: list[float]
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc > 0.0:
        # one real root (Cardano with sign-stable cube roots)
        sq = math.sqrt(disc)
        u = _cbrt(-q / 2.0 + sq)
        v = _cbrt(-q / 2.0 - sq)
        roots = [u + v - shift]
    elif disc == 0.0:
        if p == 0.0:
            roots = [-shift]  # triple root
        else:
            u = _cbrt(-q / 2.0)
            roots = [2.0 * u - shift, -u - shift]
    else:
        # three distinct real roots: trigonometric form
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        arg = min(1.0, max(-1.0, arg))
        phi = math.acos(arg) / 3.0
        roots = [m * math.cos(phi - 2.0 * math.pi * k / 3.0) - shift for k in range(3)]

    coeffs = (a, b, c, d)
    polished = []
    ok = True
    for r in roots:
        r = _polish_real(coeffs, r)
        # near-multiple roots converge only linearly: keep stepping until the
        # residual contract holds (bounded; generic roots exit immediately)
        for _ in range(8):
            if abs(_horner(coeffs, r)) <= 1e-9 * cubic_residual_scale(a, b, c, d, r):
                break
            r = _polish_real(coeffs, r)
        ok = ok and abs(_horner(coeffs, r)) <= 1e-8 * cubic_residual_scale(a, b, c, d, r)
        polished.append(r)
    if not ok:
        # widely spread roots can defeat the depressed-cubic discriminant
        # (catastrophic cancellation misclassifies 1 vs 3 real roots);
        # recompute by bracketed bisection + deflation, which is immune
        polished = _roots_by_deflation(B, C, D, coeffs)
    polished.sort()
    return polished


def _roots_by_deflation(B: float, C: float, D: float, coeffs) -> list[float]:
    """Real roots of the monic cubic x^3 + Bx^2 + Cx + D by bisection + deflation.

    A real cubic always has a real root inside the Cauchy bound; bisection on
    that bracket is immune to the discriminant cancellation, and the deflated
    quadratic decides the remaining root count robustly.
    """
    bound = 1.0 + max(abs(B), abs(C), abs(D))
    lo, hi = -bound, bound

    def monic(x):
        return ((x + B) * x + C) * x + D

    flo = monic(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = monic(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    r0 = 0.5 * (lo + hi)
    for _ in range(4):
        r0 = _polish_real(coeffs, r0)

    q1 = B + r0
    q0 = C + r0 * q1
    rest = _real_roots_quadratic(1.0, q1, q0)
    out = [r0]
    for r in rest:
        for _ in range(4):
            r = _polish_real(coeffs, r)
        a, b, c, d = coeffs
        if abs(_horner(coeffs, r)) <= 1e-8 * cubic_residual_scale(a, b, c, d, r):
            out.append(r)
    return out


def _real_roots_quadratic(b: float, c: float, d: float) -> list[float]:
    if b == 0.0:
        return [] if c == 0.0 else [-d / c]
    disc = c * c - 4.0 * b * d
    if disc < 0.0:
        return []
    if disc == 0.0:
        return [-c / (2.0 * b)]
    # cancellation-free form
    sq = math.sqrt(disc)
    q = -(c + math.copysign(sq, c)) / 2.0
    r1 = q / b
    r2 = d / q if q != 0.0 else -c / b - r1
    return sorted((r1, r2))


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def quartic_roots(a3: float, a2: float, a1: float, a0: float) -> list[complex]:
    """All four (complex) roots of the monic quartic s^4 + a3 s^3 + ... + a0.

    Ferrari's reduction through the resolvent cubic, then one complex Newton
    polish per root. Coefficients are assumed pre-scaled (the callers build
    them from normalised matrices).
    """
    # depressed quartic: s = y - a3/4 gives y^4 + p y^2 + q y + r
    sh = a3 / 4.0
    p = a2 - 6.0 * sh * sh
    q = a1 - 2.0 * a2 * sh + 8.0 * sh**3
    r = a0 - a1 * sh + a2 * sh * sh - 3.0 * sh**4

    if abs(q) <= 1e-14 * max(1.0, abs(p), math.sqrt(abs(r))):
        # biquadratic: u^2 + p u + r = 0, y = +-sqrt(u)
        us = _quadratic_complex(p, r)
        ys = []
        for u in us:
            su = cmath.sqrt(u)
            ys.extend((su, -su))
    else:
        # resolvent cubic z^3 + 2p z^2 + (p^2 - 4r) z - q^2 = 0 has a real
        # root z0 > 0 whenever q != 0
        zs = real_roots_cubic(1.0, 2.0 * p, p * p - 4.0 * r, -q * q)
        z0 = max(zs)
        z0 = max(z0, 0.0)
        alpha = math.sqrt(z0) if z0 > 0 else 0.0
        if alpha == 0.0:
            us = _quadratic_complex(p, r)
            ys = []
            for u in us:
                su = cmath.sqrt(u)
                ys.extend((su, -su))
        else:
            # factorisation (y^2 + a y + beta)(y^2 - a y + gamma) with
            # gamma - beta = q/alpha and beta + gamma = p + z0
            beta = (p + z0) / 2.0 - q / (2.0 * alpha)
            gamma = (p + z0) / 2.0 + q / (2.0 * alpha)
            ys = _quadratic_complex(alpha, beta) + _quadratic_complex(-alpha, gamma)

    coeffs = (1.0, a3, a2, a1, a0)
    out = []
    for y in ys:
        root = y - sh
        out.append(_polish_complex(coeffs, root))
    return out


def _quadratic_complex(b: float, c: float) -> list[complex]:
    # roots of y^2 + b y + c = 0 over the complex numbers
    disc = complex(b * b - 4.0 * c)
    sq = cmath.sqrt(disc)
    return [(-b + sq) / 2.0, (-b - sq) / 2.0]


def _polish_complex(coeffs, z: complex) -> complex:
    d = 0j
    v = 0j
    for c in coeffs:
        d = d * z + v
        v = v * z + c
    if d != 0:
        step = v / d
        if abs(step) < 1.0 + abs(z):
            z = z - step
    return z
