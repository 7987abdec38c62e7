"""Special functions and exact-rational series machinery.

Everything feeding the rational-interpolation solver is carried in exact
``fractions.Fraction`` arithmetic: the asymptotic coefficients of the
Bessel ratio I1(x)/I0(x) and the Maclaurin coefficients of the disk
Laplace transform.  Floating point enters only at the final evaluation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import special

_BESSEL_CROSSOVER = 15.0


@lru_cache(maxsize=None)
def _ratio_coeffs_cached(K: int):
    # u(x) = I1(x)/I0(x) satisfies the Riccati equation u' = 1 - u/x - u^2
    # (from I0' = I1 and I1' = I0 - I1/x).  Substituting the formal series
    # u = sum_k a_k x^{-k} with a_0 = 1 and collecting powers of x gives
    #   2 a_m = (m - 2) a_{m-1} - sum_{i=1}^{m-1} a_i a_{m-i},   m >= 1,
    # which determines the coefficients uniquely.
    a = [Fraction(1)]
    for m in range(1, K + 1):
        acc = (m - 2) * a[m - 1]
        acc -= sum(a[i] * a[m - i] for i in range(1, m))
        a.append(acc / 2)
    return tuple(a)


def asymptotic_ratio_coeffs(K: int):
    """Exact coefficients a_0..a_K of the large-x series I1(x)/I0(x) = sum a_k x^{-k}."""
    if K < 0:
        raise ValueError("order must be non-negative")
    return list(_ratio_coeffs_cached(K))


def _bessel_i_series(order: int, x: float) -> float:
    # All-positive Maclaurin series; no cancellation, terminate on term size.
    y = 0.25 * x * x
    term = 1.0 if order == 0 else 0.5 * x
    total = term
    k = 1
    while True:
        term *= y / (k * (k + order))
        total += term
        if term <= 1e-17 * total:
            return total
        k += 1
        if k > 1000:  # pragma: no cover - unreachable for finite x
            raise RuntimeError("Bessel series did not terminate")


def _bessel_i_asymptotic(order: int, x: float) -> float:
    # I_nu(x) ~ e^x / sqrt(2 pi x) * sum_k (-1)^k a_k(nu) / x^k with
    # a_k(nu) = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k! 8^k); truncated at
    # the smallest term (optimal truncation).
    mu = 4 * order * order
    term = 1.0
    total = term
    prev = math.inf
    for k in range(1, 40):
        term *= -(mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if abs(term) >= prev:
            break
        total += term
        prev = abs(term)
    return math.exp(x) / math.sqrt(2.0 * math.pi * x) * total


def bessel_I(order: int, x: float) -> float:
    """Modified Bessel function I0 or I1 for x >= 0."""
    if order not in (0, 1):
        raise ValueError("only orders 0 and 1 are supported")
    if x < 0:
        raise ValueError("argument must be non-negative")
    if x <= _BESSEL_CROSSOVER:
        return _bessel_i_series(order, x)
    return _bessel_i_asymptotic(order, x)


def bessel_ratio(x: float) -> float:
    """I1(x)/I0(x); lies in (0, 1) for x > 0 and increases to 1."""
    if x == 0.0:
        return 0.0
    if x <= _BESSEL_CROSSOVER:
        return _bessel_i_series(1, x) / _bessel_i_series(0, x)
    # Beyond the crossover the exponential prefactors cancel exactly.
    mu_top = _bessel_i_asymptotic(1, x) / (math.exp(x) / math.sqrt(2.0 * math.pi * x))
    mu_bot = _bessel_i_asymptotic(0, x) / (math.exp(x) / math.sqrt(2.0 * math.pi * x))
    return mu_top / mu_bot


def j0_zeros(N: int):
    """First N positive zeros of J0, via McMahon seeds refined by Newton."""
    if N < 1:
        raise ValueError("need at least one zero")
    zeros = []
    for n in range(1, N + 1):
        beta = (n - 0.25) * math.pi
        z = beta + 1.0 / (8.0 * beta) - 31.0 / (384.0 * beta**3) + 3779.0 / (15360.0 * beta**5)
        for _ in range(50):
            f = special.j0(z)
            step = f / special.j1(z)  # J0' = -J1
            z += step
            if abs(step) < 1e-14:
                break
        zeros.append(z)
    return zeros


@lru_cache(maxsize=None)
def _tau_disk_unit_coeffs(K: int):
    # With y = (s R / 2)^2:  2 I1(x)/(x I0(x)) = A(y)/B(y),
    # A_k = 1/(k! (k+1)!), B_k = 1/(k!)^2.  Exact series division gives
    # C = A/B and tau = -(1/s^2) sum_{k>=1} C_k y^k, i.e. the coefficient
    # of s^{2j} is -C_{j+1} / 4^{j+1} times R^{2j+2}.
    n_terms = K + 2
    fact = [1] * (n_terms + 1)
    for i in range(1, n_terms + 1):
        fact[i] = fact[i - 1] * i
    A = [Fraction(1, fact[k] * fact[k + 1]) for k in range(n_terms)]
    B = [Fraction(1, fact[k] ** 2) for k in range(n_terms)]
    C = []
    for k in range(n_terms):
        acc = A[k] - sum(C[i] * B[k - i] for i in range(k))
        C.append(acc / B[0])
    return tuple(-C[j + 1] / Fraction(4) ** (j + 1) for j in range(K + 1))


def maclaurin_tau_disk(R, K: int):
    """Coefficients [d_0, d_2, ..., d_2K] of the disk Laplace transform in powers of s^2.

    Exact rationals scaled by R^(2k+2); passing an integer or Fraction
    radius keeps the result exact.
    """
    if not R > 0:
        raise ValueError("radius must be positive")
    coeffs = _tau_disk_unit_coeffs(K)
    return [coeffs[j] * R ** (2 * j + 2) for j in range(K + 1)]
