"""Collapse-noise bulk heating calculations.

Effective noise coupling for non-white spectra, heating rates and bounds,
and steady-state temperatures of sphere and rod test bodies in a cryostat.
"""

from .errors import (
    CslHeatError,
    DimensionError,
    DomainError,
    ConvergenceError,
    MaterialFileError,
)
from .quantities import Constants, DEFAULT_CONSTANTS, Quantity, convert
from .spectrum import (
    White,
    GaussianCutoff,
    StepCutoff,
    TabulatedSpectrum,
    LinearDispersion,
    TabulatedDispersion,
    QuadratureSettings,
    eval_spectrum,
    eval_dispersion,
    lambda_eff,
    lambda_eff_gaussian_closed_form,
    invert_gaussian_cutoff,
    gamma_from_lambda,
)
from .heating import (
    HeatingBudget,
    BUDGET_PRESETS,
    specific_heating_rate,
    total_heating_rate,
    volumetric_heating,
    budget_volumetric_heating,
    invert_bound,
)
from .thermal import (
    PowerLawConductivity,
    TransportEnv,
    SteadyStateResult,
    q_sphere_surface,
    q_transport,
    solve_surface_temperature,
    sphere_center_temperature,
    sphere_profile,
    rod_far_temperature,
    rod_with_absorber_far_temperature,
    absorber_flux,
)
from .materials import Material, MaterialRegistry, builtin_registry, load_materials, dump_materials

__version__ = "0.1.0"
