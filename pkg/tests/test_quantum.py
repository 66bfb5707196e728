import math

import mpmath as mp
import numpy as np
import pytest

from solenoid_oam.quantum import (EigenMode, alpha_exponent, bessel_j,
                                  beta_parameter, eigenmode_value)
from solenoid_oam.sources import SolenoidSpec, sheet_profile

# 60-term ascending series in 50-digit arithmetic, frozen:
J_1_5_AT_2 = 0.49129377868716234501


def j_half(x):
    return math.sqrt(2.0 / (math.pi * x)) * math.sin(x)


def j_three_half(x):
    return math.sqrt(2.0 / (math.pi * x)) * (math.sin(x) / x - math.cos(x))


def j_five_half(x):
    return math.sqrt(2.0 / (math.pi * x)) * (
        (3.0 / x ** 2 - 1.0) * math.sin(x) - 3.0 * math.cos(x) / x)


class TestBessel:
    def test_at_zero(self):
        assert bessel_j(0.0, 0.0) == 1.0
        assert bessel_j(0.5, 0.0) == 0.0
        assert bessel_j(3.0, 0.0) == 0.0

    def test_half_order_quarter_period(self):
        x = math.pi / 2
        assert bessel_j(0.5, x) == pytest.approx(2.0 / math.pi, abs=1e-12)

    def test_series_oracle_frozen(self):
        assert bessel_j(1.5, 2.0) == pytest.approx(J_1_5_AT_2, abs=1e-12)

    @pytest.mark.parametrize("x", [0.7, 1.3, math.pi / 2, 2.9, 5.1, 12.0, 25.0])
    def test_half_integer_closed_forms(self, x):
        assert bessel_j(0.5, x) == pytest.approx(j_half(x), abs=1e-10)
        assert bessel_j(1.5, x) == pytest.approx(j_three_half(x), abs=1e-10)
        assert bessel_j(2.5, x) == pytest.approx(j_five_half(x), abs=1e-10)

    def test_three_term_recurrence(self):
        worst = 0.0
        for nu in (1.0, 1.3, 1.5, 2.7, 3.2, 4.5):
            for x in (0.6, 1.0, 3.0, 7.0, 9.5, 11.0, 15.0, 25.0, 40.0):
                lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x)
                rhs = 2.0 * nu / x * bessel_j(nu, x)
                worst = max(worst, abs(lhs - rhs))
        assert worst < 1e-9

    def test_against_extended_precision(self):
        mp.mp.dps = 40
        for nu in (0.0, 0.3, 1.5, 2.25, 5.5):
            for x in (0.1, 1.0, 5.0, 10.0, 10.5, 14.0, 30.0, 80.0):
                assert bessel_j(nu, x) == pytest.approx(
                    float(mp.besselj(nu, x)), abs=1e-11)

    def test_switchover_is_seamless(self):
        # the two evaluation routes must agree at the handover argument
        from solenoid_oam.quantum import _bessel_integral, _bessel_series

        for nu in (0.4, 1.5, 6.0):
            edge = max(10.0, 2.0 * nu)
            series = _bessel_series(nu, edge, 1e-13)
            integral = _bessel_integral(nu, edge, 1e-13)
            assert series == pytest.approx(integral, abs=1e-11)

    def test_domain_guards(self):
        with pytest.raises(ValueError):
            bessel_j(-0.5, 1.0)
        with pytest.raises(ValueError):
            bessel_j(0.5, -1.0)
        with pytest.raises(OverflowError):
            bessel_j(0.5, 1e7)

    def test_large_order_underflow_is_clean(self):
        assert bessel_j(300.0, 1.0) == 0.0


class TestAlphaExponent:
    def test_long_solenoid_limit(self):
        spec = SolenoidSpec(half_length=100.0)
        beta = beta_parameter(spec, -1.0)
        for m in (0, 1, -2):
            a = alpha_exponent(m, 2.0, 0.0, spec, -1.0, 1e-6)
            assert a == pytest.approx(m - beta, rel=0.02)

    def test_zero_field(self):
        spec = SolenoidSpec(B0=0.0, half_length=10.0)
        assert alpha_exponent(3, 2.0, 0.0, spec, -1.0, 1e-8) == 3.0

    def test_short_solenoid_against_stokes_oracle(self):
        # independent route: int_r^inf B_z r' dr' = -r A_phi(r, z)
        spec = SolenoidSpec(half_length=5.0)
        r, e, m = 2.0, -1.0, 0
        a = alpha_exponent(m, r, 0.0, spec, e, 1e-6)
        a_phi = sheet_profile(r, 0.0, spec, 1e-10)[0]
        want = m + e * (-r * a_phi)
        assert a == pytest.approx(want, abs=1e-3)
        beta = beta_parameter(SolenoidSpec(), e)
        assert min(m, m - beta) < a < max(m, m - beta)

    def test_tail_vanishes_far_out(self):
        # |alpha - m| ~ B0 R^2 L / (2 r): decays like 1/r toward zero
        spec = SolenoidSpec(half_length=5.0)
        gaps = [abs(alpha_exponent(1, r, 0.0, spec, -1.0, 1e-7) - 1.0)
                for r in (100.0, 400.0, 2000.0)]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 2e-3
        assert gaps[1] == pytest.approx(0.5 * 5.0 / 400.0, rel=0.05)

    def test_integer_m_required(self):
        spec = SolenoidSpec(half_length=5.0)
        with pytest.raises(TypeError):
            alpha_exponent(1.5, 2.0, 0.0, spec, -1.0)


class TestEigenModes:
    def test_default_alpha_is_m_minus_beta(self):
        mode = EigenMode(m=1, k=1.0, mass=1.0, beta=-0.5)
        assert mode.alpha == 1.5
        assert mode.order == 1.5

    def test_modulus_vanishes_at_bessel_zero(self):
        mode = EigenMode(m=0, k=1.0, mass=1.0, beta=0.0)
        assert abs(eigenmode_value(mode, 2.404825557695773, 0.7, 3.0)) < 1e-6

    def test_time_periodicity(self):
        mode = EigenMode(m=2, k=1.3, mass=0.8, beta=-0.5)
        period = 2.0 * math.pi * 2.0 * mode.mass / mode.k ** 2
        a = eigenmode_value(mode, 1.7, 0.4, 1.0)
        b = eigenmode_value(mode, 1.7, 0.4, 1.0 + period)
        assert a == pytest.approx(b, abs=1e-12)

    def test_modulus_independent_of_angle_and_time(self):
        mode = EigenMode(m=1, k=1.0, mass=1.0, beta=-0.5)
        mods = {abs(eigenmode_value(mode, 2.0, phi, t))
                for phi in (0.0, 1.0, 2.0) for t in (0.0, 1.0, 7.0)}
        assert max(mods) - min(mods) < 1e-14

    def test_integer_flux_degeneracy(self):
        # integer beta permutes the canonical labels without changing the
        # set of radial orders
        for shift in (-3, 1, 2):
            window = range(-6, 7)
            shifted = sorted(abs(m - shift) for m in range(-6 + shift, 7 + shift))
            free = sorted(abs(m) for m in window)
            assert shifted == free

    def test_validation(self):
        with pytest.raises(TypeError):
            EigenMode(m=0.5, k=1.0, mass=1.0, beta=0.0)
        with pytest.raises(ValueError):
            EigenMode(m=1, k=-1.0, mass=1.0, beta=0.0)


class TestBeta:
    def test_from_runtime_parameters(self):
        assert beta_parameter(SolenoidSpec(R=1.0, B0=1.0), -1.0) == -0.5
        assert beta_parameter(SolenoidSpec(R=2.0, B0=0.25), 1.0) == 0.5
