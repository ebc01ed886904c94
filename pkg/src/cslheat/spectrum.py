"""Noise power spectra, phonon dispersion and the effective heating coupling.

The effective coupling averages the noise spectrum against the longitudinal
phonon frequencies excited at wavenumber w/r_c, weighted by the Gaussian
correlation kernel::

    lambda_eff = 2/(3 pi^1.5) * Int d^3w exp(-w^2) w^2 lambda(omega_L(w/r_c))

Every dispersion here is isotropic, so the angular integral is done
analytically and only the radial integral

    lambda_eff = 8/(3 sqrt(pi)) * Int_0^inf dw w^4 exp(-w^2) lambda(omega_L(w/r_c))

is evaluated numerically.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import DomainError
from .quadrature import integrate

RADIAL_PREFACTOR = 8.0 / (3.0 * math.sqrt(math.pi))


def _check_nonneg(name, value):
    if not (math.isfinite(value) and value >= 0):
        raise DomainError(f"{name} must be finite and >= 0, got {value!r}")


def _check_positive(name, value):
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")


def _table(points, xname, yname):
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 2:
        raise DomainError("a table needs at least two (x, y) rows")
    if not np.all(np.isfinite(arr)):
        raise DomainError("table entries must be finite")
    x, y = arr[:, 0], arr[:, 1]
    if x[0] < 0:
        raise DomainError(f"{xname} must be >= 0")
    if np.any(np.diff(x) <= 0):
        raise DomainError(f"{xname} must be strictly increasing")
    if np.any(y < 0):
        raise DomainError(f"{yname} must be >= 0")
    return tuple(map(tuple, arr.tolist()))


# -- noise spectra -----------------------------------------------------------

@dataclass(frozen=True)
class White:
    lam: float

    def __post_init__(self):
        _check_nonneg("lambda", self.lam)

    def __call__(self, omega):
        return np.full_like(np.asarray(omega, dtype=float), self.lam)[()]

    def breakpoints(self):
        return ()

    @property
    def supremum(self):
        return self.lam


@dataclass(frozen=True)
class GaussianCutoff:
    """lambda * exp(-omega^2 t_c^2)."""

    lam: float
    t_c: float

    def __post_init__(self):
        _check_nonneg("lambda", self.lam)
        _check_nonneg("t_c", self.t_c)

    def __call__(self, omega):
        omega = np.asarray(omega, dtype=float)
        return (self.lam * np.exp(-(omega * self.t_c) ** 2))[()]

    def breakpoints(self):
        return ()

    @property
    def supremum(self):
        return self.lam


@dataclass(frozen=True)
class StepCutoff:
    """lambda below omega_c, zero above, lambda/2 exactly at the edge."""

    lam: float
    omega_c: float

    def __post_init__(self):
        _check_nonneg("lambda", self.lam)
        _check_nonneg("omega_c", self.omega_c)

    def __call__(self, omega):
        a = np.abs(np.asarray(omega, dtype=float))
        out = np.where(a < self.omega_c, self.lam, 0.0)
        out = np.where(a == self.omega_c, 0.5 * self.lam, out)
        return out[()]

    def breakpoints(self):
        return (self.omega_c,)

    @property
    def supremum(self):
        return self.lam


@dataclass(frozen=True)
class TabulatedSpectrum:
    """Piecewise-linear lambda(omega) through ``points`` = [(omega, lambda), ...].

    Below the first omega the first value is held; above the last omega the
    spectrum is zero.
    """

    points: tuple = field()

    def __post_init__(self):
        object.__setattr__(self, "points", _table(self.points, "omega", "lambda"))

    @cached_property
    def _xy(self):
        arr = np.array(self.points)
        return arr[:, 0], arr[:, 1]

    def __call__(self, omega):
        x, y = self._xy
        a = np.abs(np.asarray(omega, dtype=float))
        return np.interp(a, x, y, left=y[0], right=0.0)[()]

    def breakpoints(self):
        return tuple(p[0] for p in self.points)

    @property
    def supremum(self):
        return max(p[1] for p in self.points)

    @classmethod
    def from_file(cls, source):
        return cls(load_table(source))


NoiseSpectrum = Union[White, GaussianCutoff, StepCutoff, TabulatedSpectrum]


def eval_spectrum(s: NoiseSpectrum, omega):
    """lambda(omega) in 1/s; even in omega."""
    return s(omega)


# -- dispersion --------------------------------------------------------------

@dataclass(frozen=True)
class LinearDispersion:
    v_s: float

    def __post_init__(self):
        _check_positive("v_s", self.v_s)

    def __call__(self, q):
        return (self.v_s * np.asarray(q, dtype=float))[()]

    def breakpoints(self):
        return ()

    def wavenumbers_at(self, omega):
        return (omega / self.v_s,)


@dataclass(frozen=True)
class TabulatedDispersion:
    """Piecewise-linear omega_L(q) through ``points`` = [(q, omega), ...].

    Outside the table the end segments are extended linearly; the result is
    clamped at zero.
    """

    points: tuple = field()

    def __post_init__(self):
        pts = _table(self.points, "q", "omega")
        if any(b[1] < a[1] for a, b in zip(pts, pts[1:])):
            raise DomainError("omega must be nondecreasing in q")
        object.__setattr__(self, "points", pts)

    @cached_property
    def _xy(self):
        arr = np.array(self.points)
        return arr[:, 0], arr[:, 1]

    def __call__(self, q):
        x, y = self._xy
        q = np.asarray(q, dtype=float)
        out = np.interp(q, x, y)
        lo_slope = (y[1] - y[0]) / (x[1] - x[0])
        hi_slope = (y[-1] - y[-2]) / (x[-1] - x[-2])
        out = np.where(q < x[0], y[0] + lo_slope * (q - x[0]), out)
        out = np.where(q > x[-1], y[-1] + hi_slope * (q - x[-1]), out)
        return np.maximum(out, 0.0)[()]

    def breakpoints(self):
        return tuple(p[0] for p in self.points)

    def wavenumbers_at(self, omega):
        """Wavenumbers where omega_L crosses ``omega``; flat stretches are skipped."""
        x, y = self._xy
        out = []
        for x0, x1, y0, y1 in zip(x[:-1], x[1:], y[:-1], y[1:]):
            if y0 < y1 and y0 <= omega <= y1:
                out.append(x0 + (omega - y0) * (x1 - x0) / (y1 - y0))
        lo_slope = (y[1] - y[0]) / (x[1] - x[0])
        hi_slope = (y[-1] - y[-2]) / (x[-1] - x[-2])
        if omega < y[0] and lo_slope > 0:
            q = x[0] + (omega - y[0]) / lo_slope
            if q >= 0:
                out.append(q)
        if omega > y[-1] and hi_slope > 0:
            out.append(x[-1] + (omega - y[-1]) / hi_slope)
        return tuple(float(q) for q in out)

    @classmethod
    def from_file(cls, source):
        return cls(load_table(source))


Dispersion = Union[LinearDispersion, TabulatedDispersion]


def eval_dispersion(d: Dispersion, q):
    """omega_L(q) in rad/s for wavenumber q >= 0 in 1/m."""
    if np.any(np.asarray(q) < 0):
        raise DomainError(f"wavenumber must be >= 0, got {q!r}")
    return d(q)


# -- effective coupling ------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-8
    abs_tol: float = 0.0
    w_max: float = 8.0
    order: int = 20
    max_panels: int = 5000

    def __post_init__(self):
        _check_positive("rel_tol", self.rel_tol)
        _check_nonneg("abs_tol", self.abs_tol)
        _check_positive("w_max", self.w_max)
        if self.order < 2 or self.order % 2:
            raise DomainError("order must be an even integer >= 2")
        if self.max_panels < 1:
            raise DomainError("max_panels must be >= 1")


def _radial_breakpoints(s, d, r_c, w_max):
    # geometric grading toward w = 0 resolves narrow peaks from strong cutoffs
    pts = {0.0, w_max}
    pts.update(w_max * 2.0 ** -k for k in range(1, 48))
    for q in d.breakpoints():
        pts.add(q * r_c)
    for omega in s.breakpoints():
        for q in d.wavenumbers_at(omega):
            pts.add(q * r_c)
    return [p for p in pts if 0.0 <= p <= w_max]


def lambda_eff(s: NoiseSpectrum, d: Dispersion, r_c: float, quad: QuadratureSettings | None = None) -> float:
    """Effective coupling (1/s) for spectrum ``s`` and dispersion ``d``.

    Raises ConvergenceError if the quadrature cannot reach ``quad.rel_tol``.
    """
    _check_positive("r_c", r_c)
    quad = quad or QuadratureSettings()

    def integrand(w):
        return w**4 * np.exp(-w * w) * s(d(w / r_c))

    val, _ = integrate(
        integrand,
        _radial_breakpoints(s, d, r_c, quad.w_max),
        rel_tol=quad.rel_tol,
        abs_tol=quad.abs_tol,
        order=quad.order,
        max_panels=quad.max_panels,
    )
    return min(max(RADIAL_PREFACTOR * val, 0.0), s.supremum)


def lambda_eff_gaussian_closed_form(lam: float, v_s: float, t_c: float, r_c: float) -> float:
    """lambda_eff for a Gaussian cutoff and linear dispersion: lam / (1 + c^2)^(5/2), c = v_s t_c / r_c."""
    _check_positive("r_c", r_c)
    _check_positive("v_s", v_s)
    _check_nonneg("t_c", t_c)
    _check_nonneg("lambda", lam)
    c = v_s * t_c / r_c
    return lam * (1.0 + c * c) ** -2.5


class CutoffInversion(NamedTuple):
    c: float  # v_s t_c / r_c
    t_c: float  # s


def invert_gaussian_cutoff(lam: float, lambda_eff_max: float, v_s: float, r_c: float) -> CutoffInversion:
    """Smallest Gaussian cutoff ratio that pushes lambda_eff down to ``lambda_eff_max``."""
    _check_positive("r_c", r_c)
    _check_positive("v_s", v_s)
    _check_positive("lambda_eff_max", lambda_eff_max)
    if lambda_eff_max > lam:
        raise DomainError(
            f"lambda_eff_max={lambda_eff_max:g} exceeds lambda={lam:g}; a cutoff can only lower the coupling"
        )
    c = math.sqrt(max((lam / lambda_eff_max) ** 0.4 - 1.0, 0.0))
    return CutoffInversion(c, c * r_c / v_s)


def gamma_from_lambda(lambda_value: float, r_c: float) -> float:
    """Noise spectral density 8 pi^1.5 r_c^3 lambda, in m^3/s."""
    _check_positive("r_c", r_c)
    return 8.0 * math.pi**1.5 * r_c**3 * lambda_value


# -- two-column tables -------------------------------------------------------

def load_table(source: Union[str, Path, io.TextIOBase, Sequence[str]]):
    """Read two numeric columns (SI units) from a path, file object or lines.

    Lines starting with '#' are comments; columns are separated by whitespace
    or a comma.
    """
    if isinstance(source, (str, Path)):
        lines = Path(source).read_text().splitlines()
    elif hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        lines = list(source)
    rows = []
    for lineno, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].replace(",", " ").split()
        if not text:
            continue
        if len(text) != 2:
            raise DomainError(f"line {lineno}: expected 2 columns, got {len(text)}")
        try:
            rows.append((float(text[0]), float(text[1])))
        except ValueError:
            raise DomainError(f"line {lineno}: not a number: {line.strip()!r}") from None
    return rows
