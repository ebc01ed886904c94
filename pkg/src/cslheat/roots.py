"""Bracketed root finding for monotone scalar functions."""

from __future__ import annotations

import math

from .errors import ConvergenceError


def grow_bracket(f, lo, step, factor=2.0, max_iter=200):
    """Walk ``hi = lo + step * factor**k`` upward until ``f(hi) >= 0``.

    ``f`` must be increasing with ``f(lo) < 0``. Returns ``(hi, f(hi))``.
    """
    hi = lo + step
    for _ in range(max_iter):
        fhi = f(hi)
        if fhi >= 0:
            return hi, fhi
        step *= factor
        hi = lo + step
    raise ConvergenceError(f"no sign change up to {hi:g}", bracket=(lo, hi))


def solve_increasing(f, lo, hi, ftol, flo=None, fhi=None, max_iter=300):
    """Root of an increasing ``f`` on ``[lo, hi]`` with ``|f(x)| <= ftol``.

    Illinois false position, falling back to bisection whenever a step fails
    to halve the bracket.
    """
    flo = f(lo) if flo is None else flo
    fhi = f(hi) if fhi is None else fhi
    if abs(flo) <= ftol:
        return lo, flo
    if abs(fhi) <= ftol:
        return hi, fhi
    if not (flo < 0 < fhi):
        raise ConvergenceError("root is not bracketed", bracket=(lo, hi))

    side = 0
    for _ in range(max_iter):
        width = hi - lo
        x = (lo * fhi - hi * flo) / (fhi - flo)
        if not lo < x < hi:
            x = 0.5 * (lo + hi)
        fx = f(x)
        if abs(fx) <= ftol:
            return x, fx
        if fx < 0:
            lo, flo = x, fx
            if side == -1:
                fhi *= 0.5
            side = -1
        else:
            hi, fhi = x, fx
            if side == 1:
                flo *= 0.5
            side = 1
        if hi - lo > 0.5 * width:
            m = 0.5 * (lo + hi)
            fm = f(m)
            if abs(fm) <= ftol:
                return m, fm
            if fm < 0:
                lo, flo = m, fm
            else:
                hi, fhi = m, fm
            side = 0
        if hi <= math.nextafter(lo, math.inf):
            break
    raise ConvergenceError(
        f"no root within tolerance {ftol:.3e} in [{lo!r}, {hi!r}]", bracket=(lo, hi)
    )
