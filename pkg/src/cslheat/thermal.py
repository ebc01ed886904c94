"""Steady-state heat flow for a self-heated sphere or rod at millikelvin temperatures.

All inputs and outputs are SI: lengths in m, H in W/m^3, fluxes in W/m^2,
temperatures in K, pressure in Pa.

With a power-law conductivity k(T) = k0_hat T^beta the conduction equation
integrates in closed form: for a heat integral S (W/m) carried between two
points, T_hot^(1+beta) - T_cold^(1+beta) = (1+beta) S / k0_hat. S is
R^2 H / 6 from sphere centre to surface, L^2 H / 2 along a rod heated over
its length, plus q_abs L if an absorber feeds flux q_abs into the far end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .quantities import DEFAULT_CONSTANTS, Constants
from .roots import grow_bracket, solve_increasing


def _require(cond, msg):
    if not cond:
        raise DomainError(msg)


@dataclass(frozen=True)
class PowerLawConductivity:
    """k(T) = k0_hat * T^beta, k0_hat in W m^-1 K^-(1+beta)."""

    k0_hat: float
    beta: float

    def __post_init__(self):
        _require(math.isfinite(self.k0_hat) and self.k0_hat > 0, f"k0_hat must be > 0, got {self.k0_hat!r}")
        _require(math.isfinite(self.beta) and self.beta > -1, f"beta must be > -1, got {self.beta!r}")

    def __call__(self, T):
        return self.k0_hat * T**self.beta

    def lift(self, T_cold: float, heat_integral: float) -> float:
        """Hot-side temperature when ``heat_integral`` (W/m) is conducted down to ``T_cold``."""
        p = 1.0 + self.beta
        return (T_cold**p + p * heat_integral / self.k0_hat) ** (1.0 / p)


@dataclass(frozen=True)
class TransportEnv:
    """Cryostat surroundings of a body: wall temperature, residual gas, radiation."""

    emissivity: float
    accommodation: float
    pressure: float  # Pa
    wall_temperature: float  # K

    def __post_init__(self):
        _require(0 <= self.emissivity <= 1, f"emissivity must be in [0, 1], got {self.emissivity!r}")
        _require(0 <= self.accommodation <= 1, f"accommodation must be in [0, 1], got {self.accommodation!r}")
        _require(math.isfinite(self.pressure) and self.pressure >= 0, f"pressure must be >= 0, got {self.pressure!r}")
        _require(
            math.isfinite(self.wall_temperature) and self.wall_temperature >= 0,
            f"wall temperature must be >= 0, got {self.wall_temperature!r}",
        )

    @classmethod
    def from_lab_units(cls, emissivity, accommodation, pressure_mbar, wall_temperature_mK):
        return cls(emissivity, accommodation, pressure_mbar * 100.0, wall_temperature_mK * 1e-3)


@dataclass(frozen=True)
class SteadyStateResult:
    surface_or_far_temperature: float  # K
    center_or_near_temperature: Optional[float]  # K
    flux: float  # W/m^2
    residual: float  # W/m^2


def q_sphere_surface(R: float, H: float) -> float:
    """Heat leaving unit area of a uniformly heated sphere's surface: R H / 3."""
    _require(R > 0, f"radius must be > 0, got {R!r}")
    _require(H >= 0, f"H must be >= 0, got {H!r}")
    return R * H / 3.0


def radiative_flux(T1: float, env: TransportEnv, constants: Constants = DEFAULT_CONSTANTS) -> float:
    _require(T1 >= 0, f"temperature must be >= 0, got {T1!r}")
    return constants.radiative_coeff_si * env.emissivity * (T1**4 - env.wall_temperature**4)


def gas_flux(T1: float, env: TransportEnv, constants: Constants = DEFAULT_CONSTANTS) -> float:
    _require(T1 >= 0, f"temperature must be >= 0, got {T1!r}")
    return constants.gas_coeff_si * env.accommodation * env.pressure * (T1 - env.wall_temperature)


def q_transport(T1: float, env: TransportEnv, constants: Constants = DEFAULT_CONSTANTS) -> float:
    """Net flux from a surface at ``T1`` to the walls: radiation plus residual-gas conduction."""
    return radiative_flux(T1, env, constants) + gas_flux(T1, env, constants)


def solve_surface_temperature(
    R: float,
    H: float,
    env: TransportEnv,
    k: Optional[PowerLawConductivity] = None,
    rtol: float = 1e-10,
    constants: Constants = DEFAULT_CONSTANTS,
) -> SteadyStateResult:
    """Surface temperature at which transport to the walls carries off the sphere's heat.

    If a conductivity ``k`` is given the centre temperature is filled in too.
    """
    target = q_sphere_surface(R, H)
    T2 = env.wall_temperature
    if target == 0:
        T1, residual = T2, 0.0
    else:
        if env.emissivity == 0 and env.accommodation * env.pressure == 0:
            raise DomainError("unboundable temperature: no radiative or gas transport channel")

        def balance(T):
            return q_transport(T, env, constants) - target

        hi, fhi = grow_bracket(balance, T2, 1e-3)
        T1, residual = solve_increasing(balance, T2, hi, rtol * target, flo=-target, fhi=fhi)
    Tc = sphere_center_temperature(R, H, k, T1) if k is not None else None
    return SteadyStateResult(T1, Tc, target, residual)


def sphere_center_temperature(R: float, H: float, k: PowerLawConductivity, T1: float) -> float:
    _require(R > 0, f"radius must be > 0, got {R!r}")
    _require(H >= 0, f"H must be >= 0, got {H!r}")
    _require(T1 >= 0, f"temperature must be >= 0, got {T1!r}")
    return k.lift(T1, R * R * H / 6.0)


def sphere_profile(R: float, H: float, k: PowerLawConductivity, T1: float, r: float) -> float:
    """Temperature at radius ``r`` inside the sphere."""
    _require(R > 0, f"radius must be > 0, got {R!r}")
    _require(0 <= r <= R, f"r must lie in [0, R={R!r}], got {r!r}")
    _require(H >= 0, f"H must be >= 0, got {H!r}")
    _require(T1 >= 0, f"temperature must be >= 0, got {T1!r}")
    return k.lift(T1, H * (R * R - r * r) / 6.0)


def rod_far_temperature(L: float, H: float, k: PowerLawConductivity, T_near: float) -> float:
    """Free-end temperature of a self-heated rod whose near end is held at ``T_near``."""
    return rod_with_absorber_far_temperature(L, H, 0.0, k, T_near)


def rod_with_absorber_far_temperature(
    L: float, H: float, q_abs: float, k: PowerLawConductivity, T_near: float
) -> float:
    _require(L > 0, f"length must be > 0, got {L!r}")
    _require(H >= 0, f"H must be >= 0, got {H!r}")
    _require(q_abs >= 0, f"q_abs must be >= 0, got {q_abs!r}")
    _require(T_near >= 0, f"temperature must be >= 0, got {T_near!r}")
    return k.lift(T_near, L * L * H / 2.0 + q_abs * L)


def absorber_flux(H_abs: float, V_abs: float, A_rod: float) -> float:
    """Flux into the rod when all of the absorber's heat leaves through the rod cross-section."""
    _require(A_rod > 0, f"rod area must be > 0, got {A_rod!r}")
    _require(H_abs >= 0 and V_abs >= 0, "absorber heating and volume must be >= 0")
    return H_abs * V_abs / A_rod
