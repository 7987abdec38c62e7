"""Closed-form disk reference solutions used to validate the other modules.

For a disk of radius R the Laplace transform of the survival probability
(Laplace parameter s^2) is available in closed form through modified
Bessel functions, and S(t) itself as an eigenseries over the zeros of J0.
"""

from __future__ import annotations

import math

from .errors import SeriesNotConverged
from .series import bessel_I, bessel_ratio, j0_zeros

_zero_cache: list[float] = []


def _zeros(n: int):
    global _zero_cache
    if len(_zero_cache) < n:
        _zero_cache = j0_zeros(max(n, 2 * len(_zero_cache), 64))
    return _zero_cache[:n]


def tau_disk(s: float, R: float = 1.0) -> float:
    """tau(s) = (1/s^2) [1 - 2 I1(sR) / (sR I0(sR))]."""
    if not s > 0:
        raise ValueError("Laplace variable must be positive")
    if not R > 0:
        raise ValueError("radius must be positive")
    x = s * R
    return (1.0 - 2.0 * bessel_ratio(x) / x) / (s * s)


def tau_disk_local(s: float, r: float, R: float = 1.0) -> float:
    """tau(s, r) = (1/s^2) [1 - I0(sr) / I0(sR)]; vanishes on the boundary r = R."""
    if not s > 0:
        raise ValueError("Laplace variable must be positive")
    if not 0.0 <= r <= R:
        raise ValueError("radial coordinate must lie in [0, R]")
    return (1.0 - bessel_I(0, s * r) / bessel_I(0, s * R)) / (s * s)


def survival_disk(t: float, R: float = 1.0, N: int | None = None) -> float:
    """Eigenseries S(t) = 4 sum_n z_n^-2 exp(-z_n^2 t / R^2) over the zeros z_n of J0.

    With ``N`` unset the mode count grows until the next term drops below
    1e-12.  At t = 0 the terms do not decay (S(0) = 1 holds only in the
    infinite sum, since 4 sum z_n^-2 = 1), so a finite evaluation without
    an explicit ``N`` is refused.
    """
    if t < 0:
        raise ValueError("time must be non-negative")
    if N is not None and N < 1:
        raise ValueError("need at least one mode")
    if t == 0.0 and N is None:
        raise SeriesNotConverged("S(0) = 1 is reached only in the infinite mode sum")
    total = 0.0
    n = 0
    limit = N if N is not None else 10**7
    while n < limit:
        if len(_zero_cache) <= n:
            _zeros(n + 1)
        z = _zero_cache[n]
        term = 4.0 / (z * z) * math.exp(-z * z * t / (R * R))
        total += term
        n += 1
        if N is None and term < 1e-12:
            return total
    if N is None:
        raise SeriesNotConverged("eigenseries tail does not decay at this time")
    return total
