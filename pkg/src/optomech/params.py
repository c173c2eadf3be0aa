"""Device parameters and derived scalar quantities.

Unit conventions: every frequency, rate, and coupling stored here is angular
(rad/s). Mechanical position and momentum are dimensionless (zero-point
units); the zero-point length x_zpf only enters when converting
interferometer geometry into coupling rates. Drive power is in W, mass in kg,
cavity length in m, temperature in K.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .constants import HBAR, K_B

# Q_m below this is incompatible with the Markovian reduction of the
# mechanical Brownian noise (it assumes omega_m >> gamma_m).
HIGH_Q_THRESHOLD = 1e3


class ParameterError(ValueError):
    """A scalar argument is outside its physical domain."""


class Scenario(enum.Enum):
    """Coupling scenario: which of the two optomechanical couplings is on."""

    COHERENT = "coherent"        # g_kappa = 0
    DISSIPATIVE = "dissipative"  # g_omega = 0
    COOPERATIVE = "cooperative"  # both nonzero

    @classmethod
    def for_couplings(cls, g_omega: float, g_kappa: float) -> "Scenario":
        if g_kappa == 0.0:
            return cls.COHERENT
        if g_omega == 0.0:
            return cls.DISSIPATIVE
        return cls.COOPERATIVE


def scenario_violations(scenario: Scenario, g_omega: float, g_kappa: float) -> list[str]:
    """Consistency of (g_omega, g_kappa) with the declared scenario."""
    out = []
    if scenario is Scenario.COHERENT and g_kappa != 0.0:
        out.append(f"coherent scenario requires g_kappa = 0, got {g_kappa!r}")
    if scenario is Scenario.DISSIPATIVE and g_omega != 0.0:
        out.append(f"dissipative scenario requires g_omega = 0, got {g_omega!r}")
    if scenario is Scenario.COOPERATIVE and (g_omega == 0.0 or g_kappa == 0.0):
        out.append("cooperative scenario requires both couplings nonzero")
    return out


@dataclass(frozen=True)
class PhysicalParams:
    """All fixed constants and tunables of the device (angular units).

    ``omega_a`` defaults to ``omega_d`` when omitted; detunings are passed
    explicitly to the solvers, so the stored resonance only matters for
    bookkeeping and geometry conversions.
    """

    omega_d: float            # drive angular frequency, rad/s
    omega_m: float            # mechanical resonance, rad/s
    gamma_m: float            # mechanical damping, rad/s
    kappa_a: float            # cavity amplitude decay at membrane equilibrium, rad/s
    mass: float               # membrane effective mass, kg
    length_L: float           # effective cavity length, m
    g_omega: float            # single-photon coherent coupling, rad/s
    g_kappa: float            # single-photon dissipative coupling, rad/s
    power: float              # drive power, W
    temperature: float        # bath temperature, K
    theta: float = 0.0        # drive phase, rad
    omega_a: float = field(default=math.nan)  # cavity resonance, rad/s

    def __post_init__(self):
        if math.isnan(self.omega_a):
            object.__setattr__(self, "omega_a", self.omega_d)

    @property
    def quality_factor(self) -> float:
        return self.omega_m / self.gamma_m if self.gamma_m > 0 else math.inf

    def drive_amplitude(self) -> float:
        return drive_amplitude(self.power, self.omega_d)

    def thermal_occupation(self) -> float:
        return thermal_occupation(self.temperature, self.omega_m)

    def zero_point_fluctuation(self) -> float:
        return zero_point_fluctuation(self.mass, self.omega_m)

    def derived(self) -> "DerivedQuantities":
        return DerivedQuantities(
            drive_amplitude=self.drive_amplitude(),
            n_th=self.thermal_occupation(),
            x_zpf=self.zero_point_fluctuation(),
        )

    def replace(self, **kw) -> "PhysicalParams":
        vals = {k: getattr(self, k) for k in self.__dataclass_fields__}
        vals.update(kw)
        return PhysicalParams(**vals)


@dataclass(frozen=True)
class DerivedQuantities:
    drive_amplitude: float  # sqrt(photons/s)
    n_th: float             # mean thermal phonon number
    x_zpf: float            # zero-point length, m


def drive_amplitude(power: float, omega_d: float) -> float:
    """Drive field amplitude sqrt(P / (hbar * omega_d)) in sqrt(photons/s).

    Its square is the photon flux carried by the drive.
    """
    if omega_d <= 0:
        raise ParameterError(f"omega_d must be positive, got {omega_d!r}")
    if power < 0:
        raise ParameterError(f"power must be nonnegative, got {power!r}")
    return math.sqrt(power / (HBAR * omega_d))


def thermal_occupation(temperature: float, omega_m: float) -> float:
    """Bose-Einstein mean phonon number 1/(exp(hbar w_m / k_B T) - 1).

    Returns exactly 0 at T = 0; uses expm1 so low temperatures neither
    overflow nor lose precision.
    """
    if omega_m <= 0:
        raise ParameterError(f"omega_m must be positive, got {omega_m!r}")
    if temperature < 0:
        raise ParameterError(f"temperature must be nonnegative, got {temperature!r}")
    if temperature == 0:
        return 0.0
    x = HBAR * omega_m / (K_B * temperature)
    if x > 700:  # exp would overflow; occupation is indistinguishable from 0
        return 0.0
    return 1.0 / math.expm1(x)


def zero_point_fluctuation(mass: float, omega_m: float) -> float:
    """Ground-state position spread sqrt(hbar / (2 m w_m)) in metres."""
    if mass <= 0:
        raise ParameterError(f"mass must be positive, got {mass!r}")
    if omega_m <= 0:
        raise ParameterError(f"omega_m must be positive, got {omega_m!r}")
    return math.sqrt(HBAR / (2.0 * mass * omega_m))


@dataclass(frozen=True)
class ValidationIssue:
    severity: str   # "error" | "warning"
    message: str


def validate_params(p: PhysicalParams) -> list[ValidationIssue]:
    """Check every type invariant, aggregating all violations.

    Errors mark values outside their domain; a single warning flags a
    mechanical quality factor too low for the Markovian thermal-noise
    reduction.
    """
    issues: list[ValidationIssue] = []

    def err(cond: bool, msg: str):
        if cond:
            issues.append(ValidationIssue("error", msg))

    err(not p.omega_d > 0, f"omega_d must be positive (got {p.omega_d!r})")
    err(not p.omega_m > 0, f"omega_m must be positive (got {p.omega_m!r})")
    err(not p.kappa_a > 0, f"kappa_a must be positive (got {p.kappa_a!r})")
    err(p.gamma_m < 0, f"gamma_m must be nonnegative (got {p.gamma_m!r})")
    err(not p.mass > 0, f"mass must be positive (got {p.mass!r})")
    err(not p.length_L > 0, f"length_L must be positive (got {p.length_L!r})")
    err(p.power < 0, f"power must be nonnegative (got {p.power!r})")
    err(p.temperature < 0, f"temperature must be nonnegative (got {p.temperature!r})")
    if p.omega_m > 0 and p.gamma_m >= 0 and p.quality_factor < HIGH_Q_THRESHOLD:
        issues.append(ValidationIssue(
            "warning",
            f"mechanical quality factor {p.quality_factor:.3g} < {HIGH_Q_THRESHOLD:g}: "
            "the Markovian treatment of the thermal noise assumes omega_m >> gamma_m",
        ))
    return issues


def require_valid(p: PhysicalParams) -> None:
    """Raise ParameterError when validate_params reports any error."""
    errors = [i.message for i in validate_params(p) if i.severity == "error"]
    if errors:
        raise ParameterError("; ".join(errors))
