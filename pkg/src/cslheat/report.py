"""Recompute the headline numbers of the bulk-heating analysis and compare them to the printed values."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .heating import BUDGET_PRESETS, DESIGN_BUDGET, budget_volumetric_heating, invert_bound, specific_heating_rate
from .materials import builtin_registry
from .quantities import DEFAULT_CONSTANTS, Constants, Quantity
from .spectrum import LinearDispersion, White, eval_dispersion, invert_gaussian_cutoff, lambda_eff
from .thermal import TransportEnv, gas_flux, q_sphere_surface, rod_far_temperature, sphere_center_temperature

LAMBDA_SUGGESTED = 10**-7.7  # 1/s


@dataclass(frozen=True)
class Check:
    name: str
    expected: float
    computed: float
    tolerance: float  # relative
    unit: str = ""

    @property
    def rel_error(self) -> float:
        return abs(self.computed - self.expected) / abs(self.expected)

    @property
    def passed(self) -> bool:
        return bool(math.isfinite(self.computed) and self.rel_error <= self.tolerance)


def reproduce_paper(constants: Constants = DEFAULT_CONSTANTS) -> list[Check]:
    reg = builtin_registry()
    r_c = constants.r_c
    lead, copper, torlon = reg["lead"], reg["copper"], reg["torlon 4203"]

    per_mass = specific_heating_rate(LAMBDA_SUGGESTED, r_c, constants)
    bound = invert_bound(BUDGET_PRESETS["cryostat-residual"], r_c, constants)
    earth = invert_bound(BUDGET_PRESETS["earth-unknown"], r_c, constants)
    omega = eval_dispersion(LinearDispersion(copper.sound_speed), 1.0 / r_c)

    H_lead = budget_volumetric_heating(DESIGN_BUDGET, lead.density)
    q_lead = Quantity(q_sphere_surface(0.5, H_lead), "W/m2").to("W/cm2").value

    # gas-conduction coefficient at a = 0.02, P = 1e-6 mbar, per mK of temperature difference
    env = TransportEnv.from_lab_units(1.0, 0.02, 1e-6, 0.0)
    gas_coeff = Quantity(gas_flux(1e-3, env, constants), "W/m2").to("W/cm2").value

    k = torlon.conductivity
    H_torlon = budget_volumetric_heating(DESIGN_BUDGET, torlon.density)
    sphere_gap = sphere_center_temperature(0.5, H_torlon, k, 0.0) * 1e3
    rod_gap = rod_far_temperature(0.5, H_torlon, k, 0.0) * 1e3

    c = invert_gaussian_cutoff(LAMBDA_SUGGESTED, 1e-11, copper.sound_speed, r_c).c
    white = lambda_eff(White(LAMBDA_SUGGESTED), LinearDispersion(copper.sound_speed), r_c)

    return [
        Check("specific heating at lambda=10^-7.7", 0.64e-8, per_mass, 0.10, "W/kg"),
        Check("lambda_eff bound, 1e-11 W/kg residual", 3.1e-11, bound, 0.10, "1/s"),
        Check("lambda_eff bound, Earth 3e-12 W/kg", 1e-11, earth, 0.15, "1/s"),
        Check("omega_L(1/r_c), copper", 0.4e11, omega, 0.02, "rad/s"),
        Check("lead sphere R=50 cm surface flux", 5.7e-13, q_lead, 0.02, "W/cm2"),
        Check("gas term a=0.02 P=1e-6 mbar", 4e-13, gas_coeff, 1e-12, "W/cm2/mK"),
        Check("Torlon sphere R=50 cm centre gap", 6.1, sphere_gap, 0.02, "mK"),
        Check("Torlon rod L=50 cm far-end gap", 8.6, rod_gap, 0.02, "mK"),
        Check("Gaussian cutoff v_s t_c / r_c", 4.5, c, 0.02, "1"),
        Check("white-noise lambda_eff identity", LAMBDA_SUGGESTED, white, 1e-8, "1/s"),
    ]
