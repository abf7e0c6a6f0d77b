"""
Unit tests for the complex gamma machinery.

mpmath serves as the high-precision oracle.
"""

import math

import mpmath
import numpy as np
import pytest

from src.errors import DomainError, OverflowToInfinity, PoleAtNonPositiveInteger
from src.gamma_core import (
    gamma,
    laplace_power_check,
    log_gamma,
    multiplication_rhs,
    pochhammer,
    pochhammer_ratio_one_two,
    real_gamma,
)


def laplace_power_oracle(z: float, S: float) -> float:
    """int_0^inf t^(z-1) e^(-S t) dt with t = u^2, which removes the endpoint singularity."""
    mpmath.mp.dps = 30
    return float(mpmath.quad(lambda u: 2 * u ** (2 * z - 1) * mpmath.exp(-S * u * u), [0, 1, mpmath.inf]))


def same_angle(a: float, b: float, tol: float) -> bool:
    return abs(math.remainder(a - b, 2.0 * math.pi)) <= tol


class TestLogGamma:
    """Tests for log_gamma and gamma."""

    @pytest.fixture
    def random_points(self):
        """Complex points on both sides of the reflection line."""
        rng = np.random.default_rng(20240611)
        re = rng.uniform(-6.5, 12.0, size=40)
        im = rng.uniform(-8.0, 8.0, size=40)
        return re + 1j * im

    def test_matches_mpmath(self, random_points):
        """Gamma agrees with mpmath to near machine precision."""
        for z in random_points:
            expected = complex(mpmath.gamma(mpmath.mpc(z.real, z.imag)))
            got = gamma(z)
            assert abs(got - expected) <= 1e-12 * abs(expected)

    def test_real_part_of_log(self, random_points):
        for z in random_points:
            expected = float(mpmath.re(mpmath.loggamma(mpmath.mpc(z.real, z.imag))))
            assert log_gamma(z).real == pytest.approx(expected, abs=1e-12 * max(1.0, abs(expected)))

    def test_array_input_keeps_shape(self):
        z = np.array([[0.5, 1.5], [2.5 + 1j, -0.5]])
        out = log_gamma(z)
        assert out.shape == (2, 2)
        assert np.exp(out[0, 0]).real == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_integer_values(self):
        for k in range(1, 15):
            assert real_gamma(k) == pytest.approx(math.factorial(k - 1), rel=1e-13)

    def test_negative_half_integer(self):
        """Gamma(-1/2) = -2 sqrt(pi); the sign survives reflection."""
        assert real_gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-14)

    @pytest.mark.parametrize("z", [0.0, -1.0, -7.0, -3.0 + 1e-16])
    def test_poles_raise(self, z):
        with pytest.raises(PoleAtNonPositiveInteger):
            log_gamma(z)

    def test_pole_error_is_domain_error(self):
        with pytest.raises(DomainError):
            gamma(-2.0)

    def test_near_pole_off_axis_is_fine(self):
        value = gamma(-2.0 + 1e-6j)
        assert np.isfinite(value)

    @pytest.mark.parametrize("z", [0.25 + 300j, -3.5 + 400j, 0.1 - 900j, -2.3 + 9.999j, -2.3 + 10.001j, -7.6 - 250j])
    def test_large_imaginary_part(self, z):
        """Reflected arguments far from the real axis stay finite and accurate."""
        expected = mpmath.loggamma(mpmath.mpc(z.real, z.imag))
        got = log_gamma(z)
        assert np.isfinite(got)
        assert got.real == pytest.approx(float(expected.real), rel=1e-13, abs=1e-12)
        assert same_angle(got.imag, float(expected.imag), 1e-9)

    def test_conjugate_symmetry(self, random_points):
        far = np.array([-4.2 + 40j, 0.3 + 120j, -11.7 + 600j])
        for z in np.concatenate([random_points, far]):
            if z.imag == 0.0:
                continue
            lg, lg_conj = log_gamma(z), log_gamma(np.conj(z))
            assert lg_conj.real == pytest.approx(lg.real, rel=1e-14, abs=1e-14)
            assert same_angle(lg_conj.imag, -lg.imag, 1e-10)


class TestPochhammer:
    """Tests for rising factorials."""

    def test_zero_index(self):
        assert pochhammer(3.7, 0) == 1.0

    def test_matches_gamma_ratio(self):
        a = 0.75
        for k in range(12):
            assert pochhammer(a, k) == pytest.approx(real_gamma(a + k) / real_gamma(a), rel=1e-13)

    def test_negative_index_raises(self):
        with pytest.raises(DomainError):
            pochhammer(1.0, -1)

    def test_overflow_raises(self):
        with pytest.raises(OverflowToInfinity):
            pochhammer(1e300, 3)

    def test_one_two_ratio_telescopes(self):
        for k in range(20):
            assert pochhammer_ratio_one_two(k) == pytest.approx(pochhammer(1.0, k) / pochhammer(2.0, k))


class TestIdentities:
    """Multiplication formula and the Laplace power check."""

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_multiplication_formula(self, m):
        z = 0.37 + 0.8j
        assert abs(multiplication_rhs(z, m) - gamma(m * z)) <= 1e-12 * abs(gamma(m * z))

    def test_multiplication_rejects_bad_m(self):
        with pytest.raises(DomainError):
            multiplication_rhs(1.0, 0)

    def test_laplace_power_check(self):
        """Gamma(z)/S^z against direct quadrature of t^(z-1) e^(-S t)."""
        z, S = 2.5, 3.0
        expected = laplace_power_oracle(z, S)
        assert laplace_power_check(z, S) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("z,S", [(0.0, 1.0), (1.0, -2.0)])
    def test_laplace_power_check_domain(self, z, S):
        with pytest.raises(DomainError):
            laplace_power_check(z, S)


class TestProperties:
    """Recurrence, reflection and multiplication over random samples."""

    @pytest.fixture
    def samples(self):
        rng = np.random.default_rng(7)
        return rng.uniform(-9.5, 9.5, size=200) + 1j * rng.uniform(-5.0, 5.0, size=200)

    def test_special_values(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
        assert log_gamma(0.5).real == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)
        assert pochhammer(0.75, 4) == pytest.approx(3465.0 / 256.0, rel=1e-15)

    def test_recurrence(self, samples):
        for z in samples:
            assert abs(gamma(z + 1) - z * gamma(z)) <= 1e-11 * abs(z * gamma(z))

    def test_reflection(self, samples):
        for z in samples:
            product = gamma(z) * gamma(1 - z)
            expected = math.pi / complex(mpmath.sin(mpmath.pi * mpmath.mpc(z.real, z.imag)))
            assert abs(product - expected) <= 1e-11 * abs(expected)

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_multiplication(self, samples, m):
        for z in samples[:60] / m:
            assert abs(multiplication_rhs(z, m) - gamma(m * z)) <= 1e-11 * abs(gamma(m * z))

    @pytest.mark.parametrize("z,S", [(0.5, math.pi), (2.0, 3.0), (2.5, 1.0)])
    def test_laplace_power_grid(self, z, S):
        assert laplace_power_check(z, S) == pytest.approx(laplace_power_oracle(z, S), rel=1e-12)
