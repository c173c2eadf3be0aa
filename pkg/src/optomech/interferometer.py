"""Coupling rates from Michelson-Sagnac interferometer geometry.

The movable membrane between the interferometer's mirrors turns the whole
arrangement into one compound mirror whose complex reflectivity rho and
transmissivity tau depend on the membrane position. Differentiating the
resulting cavity resonance and linewidth with respect to that position gives
the two single-photon coupling rates: the coherent one (resonance pulled by
the membrane) and the dissipative one (linewidth pulled by the membrane).

This module is a front end: the rest of the package takes (g_omega, g_kappa)
directly, so geometry can be bypassed entirely.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

# fraction of the coupling magnitude above which a residual imaginary part
# triggers a non-physical-phase warning
IMAG_RESIDUAL_TOL = 1e-6


class DegenerateMembraneError(ValueError):
    """Membrane transmissivity is zero, so its phase is undefined."""


@dataclass(frozen=True)
class InterferometerParams:
    """Scattering description of the beam splitter and membrane.

    ``bs_r``/``bs_t`` are the beam-splitter reflectivity/transmissivity,
    ``mem_r``/``mem_t`` the membrane's; all four are complex amplitudes of
    passive (possibly lossy) elements. ``x_offset`` is the static membrane
    position expressed as an optical phase in radians; it is unrelated to the
    dynamical displacement solved elsewhere.
    """

    bs_r: complex
    bs_t: complex
    mem_r: complex
    mem_t: complex
    x_offset: float = 0.0
    omega_a: float = 0.0     # cavity resonance, rad/s
    length_L: float = 1.0    # effective cavity length, m
    x_zpf: float = 0.0       # zero-point length, m
    lossless: bool = False

    def check(self) -> list[str]:
        out = []
        if abs(self.bs_r) ** 2 + abs(self.bs_t) ** 2 > 1 + 1e-12:
            out.append("beam splitter is not passive: |R|^2 + |T|^2 > 1")
        if abs(self.mem_r) ** 2 + abs(self.mem_t) ** 2 > 1 + 1e-12:
            out.append("membrane is not passive: |R|^2 + |T|^2 > 1")
        if self.lossless:
            if abs(abs(self.bs_r) ** 2 + abs(self.bs_t) ** 2 - 1) > 1e-12:
                out.append("lossless flag set but beam splitter is lossy")
            if abs(abs(self.mem_r) ** 2 + abs(self.mem_t) ** 2 - 1) > 1e-12:
                out.append("lossless flag set but membrane is lossy")
        return out


@dataclass(frozen=True)
class EffectiveMirror:
    rho: complex   # effective reflectivity of the compound mirror
    tau: complex   # effective transmissivity


def effective_mirror(p: InterferometerParams) -> EffectiveMirror:
    """Compound-mirror amplitudes at the stored membrane offset.

    rho = -[(R^2 e^{2ix} + T^2 e^{-2ix}) Rm + 2 R T Tm] e^{-i arg Tm}
    tau = [(R T* e^{2ix} - c.c.) Rm - (|R|^2 - |T|^2) Tm] e^{-i arg Tm}
    """
    if p.mem_t == 0:
        raise DegenerateMembraneError(
            "membrane transmissivity is zero; arg(mem_t) is undefined")
    R, T, Rm, Tm = p.bs_r, p.bs_t, p.mem_r, p.mem_t
    phase = cmath.exp(-1j * cmath.phase(Tm))
    e2ix = cmath.exp(2j * p.x_offset)
    rho = -((R * R * e2ix + T * T / e2ix) * Rm + 2.0 * R * T * Tm) * phase
    cross = R * T.conjugate() * e2ix
    tau = ((cross - cross.conjugate()) * Rm
           - (abs(R) ** 2 - abs(T) ** 2) * Tm) * phase
    return EffectiveMirror(rho=rho, tau=tau)


@dataclass(frozen=True)
class CouplingRates:
    g_omega: float          # coherent single-photon coupling, rad/s
    g_kappa: float          # dissipative single-photon coupling, rad/s
    g_omega_imag: float     # residual imaginary part discarded from g_omega
    g_kappa_imag: float     # residual imaginary part discarded from g_kappa


def single_photon_couplings(p: InterferometerParams) -> CouplingRates:
    """Coherent and dissipative coupling rates from the geometry.

    g_omega = -2 (w_a x_zpf / L) [(|R|^2 - |T|^2) + tau cos(arg Tm)]
    g_kappa = -i sqrt(2) (w_a x_zpf / L) |tau| [2 R T + rho cos(arg Tm)]

    The phase conventions that would make both brackets strictly real are not
    pinned down by the scattering formulas alone, so the returned rates are
    the real parts and the discarded imaginary magnitudes are reported
    alongside (with a warning when they are not negligible).
    """
    mirror = effective_mirror(p)
    scale = p.omega_a * p.x_zpf / p.length_L
    cos_arg = math.cos(cmath.phase(p.mem_t))
    gw = -2.0 * scale * ((abs(p.bs_r) ** 2 - abs(p.bs_t) ** 2)
                         + mirror.tau * cos_arg)
    gk = -1j * math.sqrt(2.0) * scale * abs(mirror.tau) * (
        2.0 * p.bs_r * p.bs_t + mirror.rho * cos_arg)
    for name, val in (("g_omega", gw), ("g_kappa", gk)):
        mag = abs(val)
        if mag > 0 and abs(val.imag) > IMAG_RESIDUAL_TOL * mag:
            warnings.warn(
                f"{name} has a non-negligible imaginary residual "
                f"({val.imag:.3e} of magnitude {mag:.3e}); "
                "the scattering phases are not in a purely real convention",
                stacklevel=2)
    return CouplingRates(
        g_omega=gw.real, g_kappa=gk.real,
        g_omega_imag=gw.imag, g_kappa_imag=gk.imag)
