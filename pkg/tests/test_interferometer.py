import cmath
import math

import mpmath as mp
import pytest

from optomech import (
    InterferometerParams,
    effective_mirror,
    single_photon_couplings,
)
from optomech.interferometer import DegenerateMembraneError


def mirror_oracle(R, T, Rm, Tm, x):
    """Independent high-precision evaluation of the compound-mirror formulas."""
    mp.mp.dps = 40
    R, T, Rm, Tm = (mp.mpc(v) for v in (R, T, Rm, Tm))
    ph = mp.exp(-1j * mp.arg(Tm))
    rho = -((R**2 * mp.exp(2j * x) + T**2 * mp.exp(-2j * x)) * Rm
            + 2 * R * T * Tm) * ph
    cross = R * mp.conj(T) * mp.exp(2j * x)
    tau = ((cross - mp.conj(cross)) * Rm - (abs(R)**2 - abs(T)**2) * Tm) * ph
    return complex(rho), complex(tau)


def make(R, T, Rm, Tm, x=0.0, **kw):
    defaults = dict(omega_a=2e15, length_L=0.087, x_zpf=8.8e-16)
    defaults.update(kw)
    return InterferometerParams(bs_r=R, bs_t=T, mem_r=Rm, mem_t=Tm,
                                x_offset=x, **defaults)


class TestEffectiveMirror:
    def test_transparent_membrane(self):
        # Rm = 0, Tm = 1: no membrane scattering, pure beam-splitter physics
        m = effective_mirror(make(0.6, 0.8j, 0.0, 1.0, x=0.37))
        assert m.rho == pytest.approx(-2 * 0.6 * 0.8j)
        assert m.tau == pytest.approx(-(0.36 - 0.64))

    def test_pure_reflection_at_beam_splitter(self):
        m = effective_mirror(make(1.0, 0.0, 0.0, 1.0))
        assert m.rho == pytest.approx(0.0)
        assert m.tau == pytest.approx(-1.0)

    def test_balanced_splitter_against_oracle(self):
        r = 1 / math.sqrt(2)
        m = effective_mirror(make(r, r, 0.3, math.sqrt(1 - 0.09)))
        rho, tau = mirror_oracle(r, r, 0.3, math.sqrt(1 - 0.09), 0.0)
        assert m.rho == pytest.approx(rho, abs=1e-14)
        assert m.tau == pytest.approx(tau, abs=1e-14)
        assert m.rho == pytest.approx(-1.2539392014169456, rel=1e-12)

    def test_generic_point_against_oracle(self, rng):
        for _ in range(50):
            vals = rng.uniform(-1, 1, 8) / math.sqrt(2)
            R, T = complex(*vals[:2]), complex(*vals[2:4])
            Rm, Tm = complex(*vals[4:6]), complex(*vals[6:8])
            if abs(Tm) < 1e-3:
                continue
            x = rng.uniform(0, 2 * math.pi)
            m = effective_mirror(make(R, T, Rm, Tm, x=x))
            rho, tau = mirror_oracle(R, T, Rm, Tm, x)
            assert m.rho == pytest.approx(rho, abs=1e-13)
            assert m.tau == pytest.approx(tau, abs=1e-13)

    def test_membrane_independence_when_not_scattering(self):
        # Rm = 0 removes every x-dependent term
        a = effective_mirror(make(0.3j, 0.7, 0.0, cmath.exp(0.4j), x=0.123))
        b = effective_mirror(make(0.3j, 0.7, 0.0, cmath.exp(0.4j), x=2.71))
        assert a.rho == pytest.approx(b.rho)
        assert a.tau == pytest.approx(b.tau)

    def test_unitarity_preserved_for_lossless_elements(self, rng):
        # unitary 2x2 scattering: amplitude pairs (i sin, cos)
        for _ in range(100):
            a, b, x = rng.uniform(0, math.pi / 2, 3)
            m = effective_mirror(make(1j * math.sin(a), math.cos(a),
                                      1j * math.sin(b), math.cos(b), x=x))
            assert abs(m.rho) ** 2 + abs(m.tau) ** 2 == pytest.approx(
                1.0, abs=1e-9)

    def test_zero_transmissivity_rejected(self):
        with pytest.raises(DegenerateMembraneError):
            effective_mirror(make(0.5, 0.5, 1.0, 0.0))


class TestSinglePhotonCouplings:
    def test_vanishing_mechanical_scale(self):
        rates = single_photon_couplings(
            make(0.6, 0.8, 0.3, math.sqrt(0.91), x_zpf=0.0))
        assert rates.g_omega == 0.0
        assert rates.g_kappa == 0.0

    def test_balanced_splitter_with_transparent_membrane_decouples(self):
        # |R| = |T| and no membrane reflection: tau = 0 kills both couplings
        r = 1 / math.sqrt(2)
        rates = single_photon_couplings(make(r, r, 0.0, 1.0))
        assert rates.g_omega == pytest.approx(0.0, abs=1e-30)
        assert rates.g_kappa == pytest.approx(0.0, abs=1e-30)

    @pytest.mark.filterwarnings("ignore::UserWarning")
    def test_generic_point_against_oracle(self, rng):
        mp.mp.dps = 40
        for _ in range(25):
            a, b, x = rng.uniform(0.1, math.pi / 2 - 0.1, 3)
            R, T = 1j * math.sin(a), math.cos(a)
            Rm, Tm = 1j * math.sin(b), math.cos(b)
            p = make(R, T, Rm, Tm, x=x)
            rates = single_photon_couplings(p)
            rho, tau = mirror_oracle(R, T, Rm, Tm, x)
            scale = p.omega_a * p.x_zpf / p.length_L
            cosarg = math.cos(cmath.phase(Tm))
            gw = -2 * scale * ((abs(R)**2 - abs(T)**2) + tau * cosarg)
            gk = -1j * math.sqrt(2) * scale * abs(tau) * (2 * R * T + rho * cosarg)
            assert rates.g_omega == pytest.approx(gw.real, abs=1e-9)
            assert rates.g_kappa == pytest.approx(gk.real, abs=1e-9)

    @pytest.mark.filterwarnings("ignore::UserWarning")
    def test_linear_in_zero_point_length(self):
        r = 0.4
        base = make(r, math.sqrt(1 - r * r), 0.3, math.sqrt(0.91), x=0.2)
        doubled = make(r, math.sqrt(1 - r * r), 0.3, math.sqrt(0.91), x=0.2,
                       x_zpf=2 * base.x_zpf)
        g1 = single_photon_couplings(base)
        g2 = single_photon_couplings(doubled)
        assert g2.g_omega == pytest.approx(2 * g1.g_omega, rel=1e-15)
        assert g2.g_kappa == pytest.approx(2 * g1.g_kappa, rel=1e-15)

    def test_imaginary_residual_warns(self):
        # mismatched scattering phases leave a complex coupling
        with pytest.warns(UserWarning, match="imaginary residual"):
            single_photon_couplings(
                make(0.6, 0.8, 0.3 * cmath.exp(0.8j), math.sqrt(0.91)))

    def test_passivity_check(self):
        p = make(1.0, 0.5, 0.0, 1.0)
        assert any("passive" in msg for msg in p.check())
        q = make(0.6, 0.8, 0.0, 1.0, lossless=True)
        assert q.check() == []
