import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import fourier_curves
from heatpade.errors import UnsupportedOrder
from heatpade.geometry import Disk, Ellipse, arc_measures
from heatpade.heat_content import (
    ExpansionMode,
    LargeSSeries,
    SmallTimeExpansion,
    gamma_half,
    gamma_half_value,
    sigma_curvature,
    sigma_savo,
    small_time_expansion,
    small_time_survival,
    tau_large_s_series,
)

SQRT_PI = math.sqrt(math.pi)


class TestGammaHalf:
    @pytest.mark.parametrize("j", range(1, 12))
    def test_matches_gamma(self, j):
        assert gamma_half_value(j) == pytest.approx(math.gamma(j / 2 + 1), rel=1e-14)

    def test_exact_split(self):
        rat, has_root = gamma_half(1)
        assert (rat, has_root) == (Fraction(1, 2), True)
        rat, has_root = gamma_half(4)
        assert (rat, has_root) == (Fraction(2), False)


class TestDiskCoefficients:
    def test_curvature_values(self):
        expected = [
            -4.0 / SQRT_PI,
            1.0,
            1.0 / (3.0 * SQRT_PI),
            1.0 / 8.0,
            5.0 / (24.0 * SQRT_PI),
        ]
        got = [sigma_curvature(Disk(), j) for j in range(1, 6)]
        assert got == pytest.approx(expected, abs=1e-12)

    def test_savo_equals_curvature_on_disk(self):
        for j in range(1, 7):
            assert sigma_savo(Disk(), j) == pytest.approx(
                sigma_curvature(Disk(), j), abs=1e-12
            )

    def test_radius_scaling(self):
        # sigma_j scales as R^-j for a disk.
        for j in range(1, 6):
            s1 = sigma_curvature(Disk(1.0), j)
            s2 = sigma_curvature(Disk(2.0), j)
            assert s2 == pytest.approx(s1 / 2.0**j, rel=1e-12)

    def test_large_s_series_disk(self):
        # c_j = -2 a_(j-1) for the unit disk.
        c = tau_large_s_series(Disk(), 6)
        assert c.c == pytest.approx(
            (-2.0, 1.0, 0.25, 0.25, 25.0 / 64.0, 13.0 / 16.0), abs=1e-12
        )


class TestUniversalSecondOrder:
    @given(fourier_curves())
    @settings(max_examples=20, deadline=None)
    def test_sigma2_is_pi_over_area(self, curve):
        area = arc_measures(curve).area
        assert sigma_curvature(curve, 2) == pytest.approx(math.pi / area, abs=1e-9)

    def test_ellipse(self):
        e = Ellipse(b=1.0, eps=0.8)
        assert sigma_curvature(e, 2) == pytest.approx(
            math.pi / arc_measures(e).area, abs=1e-12
        )

    def test_mirror_symmetry(self):
        from heatpade.geometry import FourierCurve

        c = FourierCurve((1.0, 0.12, 0.05), (0.08, -0.04))
        m = c.mirrored()
        for j in range(1, 6):
            assert sigma_curvature(m, j) == pytest.approx(sigma_curvature(c, j), abs=1e-10)

    def test_first_order_is_perimeter_over_area(self):
        e = Ellipse(b=1.0, eps=0.5)
        meas = arc_measures(e)
        assert sigma_curvature(e, 1) == pytest.approx(
            -2.0 / SQRT_PI * meas.perimeter / meas.area, rel=1e-12
        )


class TestSavoVersusCurvature:
    def test_agree_through_order_four(self):
        e = Ellipse(b=1.0, eps=0.5)
        for j in range(1, 5):
            assert sigma_savo(e, j) == sigma_curvature(e, j)

    def test_differ_at_five_and_six(self):
        e = Ellipse(b=1.0, eps=0.5)
        s5, s5_tilde = sigma_savo(e, 5), sigma_curvature(e, 5)
        s6, s6_tilde = sigma_savo(e, 6), sigma_curvature(e, 6)
        assert s5 != s5_tilde and s6 != s6_tilde
        # The curvature-derivative term enters with a negative sign.
        assert s5 < s5_tilde

    def test_order_bounds(self):
        with pytest.raises(UnsupportedOrder):
            sigma_savo(Disk(), 7)
        with pytest.raises(ValueError):
            sigma_curvature(Disk(), 0)


class TestExpansionContainers:
    def test_expansion_round_trip(self):
        exp = small_time_expansion(Disk(), 5)
        c = LargeSSeries.from_sigma(exp)
        for j in range(1, 6):
            assert c.sigma(j) == pytest.approx(exp.sigma[j - 1], rel=1e-14)

    def test_mode_accepts_strings(self):
        exp = small_time_expansion(Disk(), 4, "savo")
        assert exp.mode is ExpansionMode.SAVO_EXACT

    def test_savo_order_cap(self):
        with pytest.raises(UnsupportedOrder):
            small_time_expansion(Disk(), 7, ExpansionMode.SAVO_EXACT)
        with pytest.raises(UnsupportedOrder):
            SmallTimeExpansion(sigma=(0.0,) * 7, mode=ExpansionMode.SAVO_EXACT)

    def test_survival_truncation(self):
        exp = small_time_expansion(Disk(), 5)
        t = 0.01
        full = small_time_survival(exp, t)
        partial = small_time_survival(exp, t, J=2)
        assert full == pytest.approx(
            partial + sum(exp.sigma[j - 1] * t ** (j / 2) for j in (3, 4, 5))
        )
        with pytest.raises(UnsupportedOrder):
            small_time_survival(exp, t, J=6)
        with pytest.raises(ValueError):
            small_time_survival(exp, -1.0)

    def test_survival_at_zero_is_one(self):
        exp = small_time_expansion(Ellipse(b=1.0, eps=0.4), 4)
        assert small_time_survival(exp, 0.0) == 1.0


class TestLargeSSeriesModes:
    def test_curvature_mode_consistent_with_sigma(self):
        e = Ellipse(b=1.0, eps=0.6)
        c = tau_large_s_series(e, 6)
        for j in range(1, 7):
            assert c.c[j - 1] == pytest.approx(
                gamma_half_value(j) * sigma_curvature(e, j), rel=1e-11
            )

    def test_savo_mode_cap(self):
        with pytest.raises(UnsupportedOrder):
            tau_large_s_series(Disk(), 7, ExpansionMode.SAVO_EXACT)
