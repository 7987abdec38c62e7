"""Short-time expansion coefficients of the survival probability.

Two coefficient families are provided for a star-shaped domain:

* the local-curvature approximation, available at any order j as a
  boundary integral of k^(j-1) weighted by an exact rational prefactor;
* the exact coefficients up to order 6, which additionally involve
  arc-length derivatives of the curvature at orders 5 and 6.

Both feed the large-s coefficient list c_j = Gamma(j/2 + 1) sigma_j
consumed by the rational-interpolation solver.  Half-integer Gamma values
are kept as exact (rational, sqrt(pi)-flag) pairs so the rational parts
combine without rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import geometry
from .errors import UnsupportedOrder
from .geometry import BoundaryCurve
from .series import asymptotic_ratio_coeffs

SQRT_PI = math.sqrt(math.pi)


class ExpansionMode(Enum):
    CURVATURE_APPROX = "curvature"
    SAVO_EXACT = "savo"


def gamma_half(j: int):
    """Gamma(j/2 + 1) as (rational, has_sqrt_pi): value = rational * sqrt(pi)**flag."""
    if j % 2 == 0:
        return Fraction(math.factorial(j // 2)), False
    # Gamma(1/2) = sqrt(pi); climb with Gamma(z + 1) = z Gamma(z).
    rat = Fraction(1)
    z = Fraction(1, 2)
    while z <= Fraction(j, 2):
        rat *= z
        z += 1
    return rat, True


def gamma_half_value(j: int) -> float:
    rat, has_root = gamma_half(j)
    return float(rat) * (SQRT_PI if has_root else 1.0)


@dataclass(frozen=True)
class SmallTimeExpansion:
    """Coefficients sigma_1..sigma_J of S(t) = 1 + sum_j sigma_j t^(j/2)."""

    sigma: tuple
    mode: ExpansionMode

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(float(s) for s in self.sigma))
        if self.mode is ExpansionMode.SAVO_EXACT and len(self.sigma) > 6:
            raise UnsupportedOrder("exact coefficients are available only up to order 6")


@dataclass(frozen=True)
class LargeSSeries:
    """Coefficients c_j of tau(s) = 1/s^2 + sum_j c_j / s^(j+2)."""

    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(float(v) for v in self.c))

    @classmethod
    def from_sigma(cls, expansion: SmallTimeExpansion):
        return cls(tuple(gamma_half_value(j) * s for j, s in enumerate(expansion.sigma, start=1)))

    def sigma(self, j: int) -> float:
        return self.c[j - 1] / gamma_half_value(j)


def _curvature_prefactor(j: int):
    """-a_(j-1) / Gamma(j/2 + 1), with the rational part combined exactly."""
    a = asymptotic_ratio_coeffs(j - 1)[j - 1]
    rat, has_root = gamma_half(j)
    value = float(-a / rat)
    return value / SQRT_PI if has_root else value


def sigma_curvature(curve: BoundaryCurve, j: int) -> float:
    """Local-curvature coefficient: prefactor times the boundary integral of k^(j-1)."""
    if j < 1:
        raise ValueError("order must be >= 1")
    measures = geometry.arc_measures(curve)
    integral = geometry.curvature_power_integral(curve, j - 1)
    return _curvature_prefactor(j) * integral / measures.area


def sigma_savo(curve: BoundaryCurve, j: int) -> float:
    """Exact coefficient for 1 <= j <= 6; orders 5 and 6 carry curvature-derivative terms."""
    if not 1 <= j <= 6:
        raise UnsupportedOrder(f"exact coefficients stop at order 6, got {j}")
    if j <= 4:
        return sigma_curvature(curve, j)
    measures = geometry.arc_measures(curve)
    k4 = geometry.curvature_power_integral(curve, 4)
    k5 = geometry.curvature_power_integral(curve, 5)
    deriv = geometry.curvature_derivative_integrals(curve)
    if j == 5:
        return (25.0 * k4 - 8.0 * deriv["kp2"]) / (240.0 * SQRT_PI * measures.area)
    return (13.0 * k5 + 80.0 * deriv["k_kp2"] + 47.0 * deriv["k2_kpp"]) / (192.0 * measures.area)


def small_time_expansion(curve: BoundaryCurve, J: int, mode=ExpansionMode.CURVATURE_APPROX):
    """sigma_1..sigma_J for a curve in the requested mode."""
    mode = ExpansionMode(mode)
    if mode is ExpansionMode.SAVO_EXACT:
        if J > 6:
            raise UnsupportedOrder("exact coefficients stop at order 6")
        sigma = [sigma_savo(curve, j) for j in range(1, J + 1)]
    else:
        sigma = [sigma_curvature(curve, j) for j in range(1, J + 1)]
    return SmallTimeExpansion(sigma=tuple(sigma), mode=mode)


def small_time_survival(expansion: SmallTimeExpansion, t: float, J: int | None = None) -> float:
    """Truncated S(t) = 1 + sum_(j<=J) sigma_j t^(j/2).

    Asymptotic in t -> 0 only; no validity guard is applied at large t,
    where the truncated series departs from the true survival probability.
    """
    if t < 0:
        raise ValueError("time must be non-negative")
    if J is None:
        J = len(expansion.sigma)
    if J > len(expansion.sigma):
        raise UnsupportedOrder(f"expansion holds {len(expansion.sigma)} coefficients, need {J}")
    root_t = math.sqrt(t)
    return 1.0 + sum(expansion.sigma[j - 1] * root_t**j for j in range(1, J + 1))


def tau_large_s_series(curve: BoundaryCurve, J: int, mode=ExpansionMode.CURVATURE_APPROX):
    """Coefficients c_j = Gamma(j/2 + 1) sigma_j for j = 1..J.

    In curvature mode the Gamma factor cancels the one hidden in sigma_j,
    so c_j = -a_(j-1) * (boundary integral of k^(j-1)) / area is computed
    directly, with a_(j-1) exact.
    """
    mode = ExpansionMode(mode)
    if mode is ExpansionMode.SAVO_EXACT:
        if J > 6:
            raise UnsupportedOrder("exact coefficients stop at order 6")
        return LargeSSeries.from_sigma(small_time_expansion(curve, J, mode))
    measures = geometry.arc_measures(curve)
    a = asymptotic_ratio_coeffs(J - 1)
    c = [
        float(-a[j - 1]) * geometry.curvature_power_integral(curve, j - 1) / measures.area
        for j in range(1, J + 1)
    ]
    return LargeSSeries(tuple(c))
