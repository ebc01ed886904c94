"""Physical constants and unit-tagged scalar quantities.

Everything inside the package is computed in SI. ``Quantity`` exists for the
edges (CLI flags, reports) where values arrive or leave in laboratory units
such as cm, mK, mbar or MeV/(g s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DimensionError, DomainError


class Dimension(str, Enum):
    RATE = "rate"
    TIME = "time"
    LENGTH = "length"
    AREA = "area"
    VOLUME = "volume"
    MASS = "mass"
    DENSITY = "density"
    TEMPERATURE = "temperature"
    PRESSURE = "pressure"
    POWER = "power"
    POWER_PER_MASS = "power-per-mass"
    POWER_PER_VOLUME = "power-per-volume"
    POWER_PER_AREA = "power-per-area"
    ANGULAR_FREQUENCY = "angular-frequency"
    WAVENUMBER = "wavenumber"
    SPEED = "speed"
    CONDUCTIVITY_COEFF = "thermal-conductivity-coefficient"
    NOISE_DENSITY = "noise-spectral-density"
    DIMENSIONLESS = "dimensionless"


D = Dimension

MEV = 1.602176634e-13  # J

# unit tag -> (dimension, multiply by this to get SI)
UNITS: dict[str, tuple[Dimension, float]] = {
    "1/s": (D.RATE, 1.0),
    "s": (D.TIME, 1.0),
    "ms": (D.TIME, 1e-3),
    "us": (D.TIME, 1e-6),
    "ns": (D.TIME, 1e-9),
    "ps": (D.TIME, 1e-12),
    "m": (D.LENGTH, 1.0),
    "cm": (D.LENGTH, 1e-2),
    "mm": (D.LENGTH, 1e-3),
    "um": (D.LENGTH, 1e-6),
    "nm": (D.LENGTH, 1e-9),
    "m2": (D.AREA, 1.0),
    "cm2": (D.AREA, 1e-4),
    "m3": (D.VOLUME, 1.0),
    "cm3": (D.VOLUME, 1e-6),
    "kg": (D.MASS, 1.0),
    "g": (D.MASS, 1e-3),
    "kg/m3": (D.DENSITY, 1.0),
    "g/cm3": (D.DENSITY, 1e3),
    "K": (D.TEMPERATURE, 1.0),
    "mK": (D.TEMPERATURE, 1e-3),
    "uK": (D.TEMPERATURE, 1e-6),
    "Pa": (D.PRESSURE, 1.0),
    "mbar": (D.PRESSURE, 100.0),
    "W": (D.POWER, 1.0),
    "W/kg": (D.POWER_PER_MASS, 1.0),
    "pW/kg": (D.POWER_PER_MASS, 1e-12),
    "MeV/(g*s)": (D.POWER_PER_MASS, MEV / 1e-3),
    "W/m3": (D.POWER_PER_VOLUME, 1.0),
    "W/cm3": (D.POWER_PER_VOLUME, 1e6),
    "W/m2": (D.POWER_PER_AREA, 1.0),
    "W/cm2": (D.POWER_PER_AREA, 1e4),
    "rad/s": (D.ANGULAR_FREQUENCY, 1.0),
    "1/m": (D.WAVENUMBER, 1.0),
    "1/cm": (D.WAVENUMBER, 1e2),
    "m/s": (D.SPEED, 1.0),
    "cm/s": (D.SPEED, 1e-2),
    # k0_hat carries K^(1+beta): W m^-1 K^-(1+beta), printed in the literature as W/m
    "W/m": (D.CONDUCTIVITY_COEFF, 1.0),
    "W/cm": (D.CONDUCTIVITY_COEFF, 1e2),
    "m3/s": (D.NOISE_DENSITY, 1.0),
    "1": (D.DIMENSIONLESS, 1.0),
}


def _lookup(unit: str) -> tuple[Dimension, float]:
    try:
        return UNITS[unit]
    except KeyError:
        raise DomainError(f"unknown unit {unit!r}") from None


@dataclass(frozen=True)
class Quantity:
    """A finite real value tagged with a unit from ``UNITS``."""

    value: float
    unit: str

    def __post_init__(self):
        _lookup(self.unit)
        if not math.isfinite(self.value):
            raise DomainError(f"non-finite quantity {self.value!r} {self.unit}")
        object.__setattr__(self, "value", float(self.value))

    @property
    def dimension(self) -> Dimension:
        return UNITS[self.unit][0]

    @property
    def si(self) -> float:
        return self.value * UNITS[self.unit][1]

    def to(self, unit: str) -> Quantity:
        return convert(self, unit)

    def _check(self, other):
        if not isinstance(other, Quantity):
            return NotImplemented
        if other.dimension is not self.dimension:
            raise DimensionError(other.dimension.value, self.dimension.value)
        return other.to(self.unit)

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Quantity(self.value + other.value, self.unit)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Quantity(self.value - other.value, self.unit)

    def __neg__(self):
        return Quantity(-self.value, self.unit)

    def __mul__(self, k):
        if isinstance(k, Quantity):
            return NotImplemented
        return Quantity(self.value * k, self.unit)

    __rmul__ = __mul__

    def __truediv__(self, k):
        if isinstance(k, Quantity):
            return NotImplemented
        return Quantity(self.value / k, self.unit)

    def __format__(self, spec):
        return f"{format(self.value, spec or '.6g')} {self.unit}"

    def __str__(self):
        return format(self, "")


def convert(q: Quantity, unit: str) -> Quantity:
    """Express ``q`` in ``unit``; raises DimensionError across dimensions."""
    dim, factor = _lookup(unit)
    if dim is not q.dimension:
        raise DimensionError(q.dimension.value, dim.value)
    if unit == q.unit:
        return q
    return Quantity(q.value * UNITS[q.unit][1] / factor, unit)


def to_si(value: float, unit: str) -> float:
    return Quantity(value, unit).si


def from_si(value: float, unit: str) -> float:
    return value / _lookup(unit)[1]


@dataclass(frozen=True)
class Constants:
    """Constant set used by the heating and transport formulas.

    ``stefan_boltzmann_coeff`` and ``gas_conduction_coeff`` are kept in the
    laboratory units they are quoted in (W cm^-2 K^-4 and W cm^-2 mbar^-1 K^-1);
    the ``*_si`` properties give the SI equivalents.
    """

    hbar: float = 1.054571817e-34  # J s
    m_N: float = 1.67262e-27  # kg
    stefan_boltzmann_coeff: float = 5.67e-12  # W cm^-2 K^-4
    gas_conduction_coeff: float = 0.02  # W cm^-2 mbar^-1 K^-1
    mev_per_joule: float = 1.0 / MEV
    r_c: float = 1e-7  # m, i.e. 1e-5 cm

    @property
    def radiative_coeff_si(self) -> float:
        """W m^-2 K^-4."""
        return self.stefan_boltzmann_coeff * 1e4

    @property
    def gas_coeff_si(self) -> float:
        """W m^-2 Pa^-1 K^-1."""
        return self.gas_conduction_coeff * 1e4 / 100.0


DEFAULT_CONSTANTS = Constants()
