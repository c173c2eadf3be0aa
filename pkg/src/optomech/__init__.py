"""Solvers for the steady-state mechanics and stationary Gaussian
entanglement of an optomechanical cavity whose linewidth, as well as its
resonance, is pulled by a movable membrane.

The pipeline: physical parameters -> classical operating point(s) ->
linearized drift/diffusion matrices -> stability -> stationary covariance
(Lyapunov equation) -> logarithmic negativity. A sweep engine evaluates the
pipeline over parameter grids and temperature bisections; a CLI and TOML/JSON
configs front the whole thing.
"""

from .constants import C_LIGHT, HBAR, K_B, TWO_PI
from .entanglement import (
    EntanglementReport,
    PhysicalityReport,
    SymplecticInvariants,
    UnphysicalCovarianceError,
    logarithmic_negativity,
    lyapunov_residual,
    physicality_check,
    solve_lyapunov,
    symplectic_invariants,
)
from .interferometer import (
    CouplingRates,
    EffectiveMirror,
    InterferometerParams,
    effective_mirror,
    single_photon_couplings,
)
from .linear_model import (
    LinearizedModel,
    characteristic_polynomial,
    diffusion_matrix,
    drift_matrix,
    linearize,
    linearized_couplings,
    phase_for_real_amplitude,
    routh_hurwitz_stable,
    spectral_stable,
)
from .params import (
    DerivedQuantities,
    ParameterError,
    PhysicalParams,
    Scenario,
    drive_amplitude,
    thermal_occupation,
    validate_params,
    zero_point_fluctuation,
)
from .steady_state import (
    BranchSet,
    CubicCoefficients,
    SteadyState,
    classify_bistability,
    cubic_coefficients,
    dissipative_closed_form,
    equilibrium_operating_point,
    integrate_mean_dynamics,
    steady_state_at_effective_detuning,
    steady_state_from_displacement,
    steady_states_at_bare_detuning,
)
from .polyroots import real_roots_cubic
from .sweep import (
    PointResult,
    SurvivalTemperature,
    SweepAxis,
    SweepResult,
    SweepSpec,
    evaluate_point,
    find_optimum,
    survival_temperature,
    sweep,
)

__version__ = "0.1.0"
