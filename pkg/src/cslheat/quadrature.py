"""Globally adaptive Gauss-Legendre quadrature on a finite interval.

Each panel is integrated with an n-point and an n/2-point Gauss-Legendre
rule; the difference is the panel's error estimate and the n-point value is
kept. The panel with the largest estimate is bisected until the summed
estimate meets the tolerance.
"""

from __future__ import annotations

import heapq
import math
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError


@lru_cache(maxsize=None)
def _rule(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _panel(f, a, b, n):
    xh, wh = _rule(n)
    xl, wl = _rule(n // 2)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fx = np.asarray(f(np.concatenate([mid + half * xh, mid + half * xl])), dtype=float)
    if not np.all(np.isfinite(fx)):
        raise DomainError(f"integrand not finite on [{a:g}, {b:g}]")
    high = half * float(np.dot(wh, fx[:n]))
    low = half * float(np.dot(wl, fx[n:]))
    return high, abs(high - low)


def integrate(f, breakpoints, rel_tol=1e-8, abs_tol=0.0, order=20, max_panels=5000):
    """Integrate a vectorised ``f`` over ``[min(breakpoints), max(breakpoints)]``.

    Interior breakpoints seed the initial partition; put kinks and jumps of
    the integrand there. Returns ``(value, error_estimate)``.
    """
    if order < 2 or order % 2:
        raise DomainError("order must be an even integer >= 2")
    pts = sorted(set(float(p) for p in breakpoints))
    if len(pts) < 2:
        raise DomainError("need at least two distinct breakpoints")

    heap = []
    for a, b in zip(pts[:-1], pts[1:]):
        val, err = _panel(f, a, b, order)
        heap.append((-err, a, b, val))
    heapq.heapify(heap)
    total = math.fsum(h[3] for h in heap)
    total_err = math.fsum(-h[0] for h in heap)

    while total_err > max(abs_tol, rel_tol * abs(total)):
        if len(heap) >= max_panels:
            # re-sum to rule out drift in the running totals before giving up
            total = math.fsum(h[3] for h in heap)
            total_err = math.fsum(-h[0] for h in heap)
            if total_err <= max(abs_tol, rel_tol * abs(total)):
                break
            raise ConvergenceError(
                f"quadrature did not converge after {len(heap)} panels "
                f"(estimate {total_err:.3e}, value {total:.6e})",
                estimate=total_err,
            )
        neg_err, a, b, val = heapq.heappop(heap)
        m = 0.5 * (a + b)
        if not a < m < b:
            raise ConvergenceError(
                f"panel [{a!r}, {b!r}] cannot be refined further "
                f"(estimate {total_err:.3e})",
                estimate=total_err,
            )
        left = _panel(f, a, m, order)
        right = _panel(f, m, b, order)
        heapq.heappush(heap, (-left[1], a, m, left[0]))
        heapq.heappush(heap, (-right[1], m, b, right[0]))
        total += left[0] + right[0] - val
        total_err += left[1] + right[1] + neg_err

    total = math.fsum(h[3] for h in heap)
    total_err = math.fsum(-h[0] for h in heap)
    return total, total_err
