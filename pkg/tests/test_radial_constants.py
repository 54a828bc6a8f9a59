"""
Unit tests for radial_constants module.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from cknsym.errors import DomainError
from cknsym.params import a_critical, critical_exponent, theta_min
from cknsym.radial_constants import (big_l, c_ckn_star, c_ckn_star_euclidean, c_ls, c_wlh_star,
                                     ell, gaussian_h, sobolev_classical, sobolev_star, sphere_area)


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


def gaussian_h_by_quadrature(p, d):
    """h(p,d) from one-dimensional radial integrals of g = (2 pi)^{-d/4} exp(-|x|^2/4)."""
    area = sphere_area(d)
    norm_p, _ = quad(lambda r: r ** (d - 1) * math.exp(-p * r * r / 4.0), 0, math.inf,
                     epsabs=0, epsrel=1e-13)
    norm_p = ((2.0 * math.pi) ** (-d * p / 4.0) * area * norm_p) ** (2.0 / p)
    mass, _ = quad(lambda r: r ** (d - 1) * math.exp(-r * r / 2.0), 0, math.inf,
                   epsabs=0, epsrel=1e-13)
    mass *= (2.0 * math.pi) ** (-d / 2.0) * area
    grad, _ = quad(lambda r: r ** (d + 1) / 4.0 * math.exp(-r * r / 2.0), 0, math.inf,
                   epsabs=0, epsrel=1e-13)
    grad *= (2.0 * math.pi) ** (-d / 2.0) * area
    vt = theta_min(d, p)
    return grad ** vt * mass ** (1.0 - vt) / norm_p


class TestCknStar:
    """Test the radial CKN constant."""

    def test_oracle_value(self):
        """Test C*(1, 4, 1) = sqrt(3)/4."""
        constant = c_ckn_star(1.0, 4.0, 1.0)
        assert constant.value == pytest.approx(math.sqrt(3.0) / 4.0, rel=1e-13)
        assert constant.log_value == pytest.approx(math.log(constant.value), rel=1e-14)
        assert constant.formula_id == "ckn_radial"

    def test_lambda_power_law(self):
        """Test C*(1,4,4) = C*(1,4,1) 4^{1/4 - 1}."""
        expected = c_ckn_star(1.0, 4.0, 1.0).value * 4.0 ** (0.25 - 1.0)
        assert c_ckn_star(1.0, 4.0, 4.0).value == pytest.approx(expected, rel=1e-13)

    def test_hardy_limit(self):
        """Test C*(theta, 2+, Lambda) -> Lambda^{-theta}."""
        assert c_ckn_star(0.7, 2.0 + 1e-8, 2.0).value == pytest.approx(2.0 ** -0.7, rel=1e-6)

    def test_scaling_law_random(self, rng):
        """Test the Lambda power law on random admissible draws."""
        for _ in range(1000):
            p = rng.uniform(2.01, 8.0)
            theta = rng.uniform(max(0.0, 0.5 - 1.0 / p) + 0.01, 1.0)
            lam = math.exp(rng.uniform(-5.0, 5.0))
            expected = (c_ckn_star(theta, p, 1.0).log_value
                        + ((p - 2.0) / (2.0 * p) - theta) * math.log(lam))
            assert c_ckn_star(theta, p, lam).log_value == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_hardy_limit_random(self, rng):
        """Test the p -> 2+ limit on random draws."""
        for _ in range(1000):
            theta = rng.uniform(0.05, 1.0)
            lam = math.exp(rng.uniform(-3.0, 3.0))
            value = c_ckn_star(theta, 2.0 + 1e-6, lam).value
            assert value * lam ** theta == pytest.approx(1.0, rel=1e-3)

    def test_decreasing_in_lambda(self, rng):
        """Test strict decrease in Lambda."""
        for _ in range(50):
            p = rng.uniform(2.1, 6.0)
            theta = rng.uniform(0.6, 1.0)
            small, large = sorted(rng.uniform(0.1, 10.0, size=2))
            assert c_ckn_star(theta, p, large).value < c_ckn_star(theta, p, small).value

    def test_denominator_domain(self):
        """Test that 2 + (2 theta - 1) p <= 0 is rejected."""
        with pytest.raises(DomainError):
            c_ckn_star(0.1, 4.0, 1.0)

    def test_euclidean_conversion(self):
        """Test the factor |S^{d-1}|^{(2-p)/p}."""
        euclidean = c_ckn_star_euclidean(1.0, 4.0, 1.0, 3).value
        assert euclidean == pytest.approx(c_ckn_star(1.0, 4.0, 1.0).value * sphere_area(3) ** -0.5)


class TestWlhStar:
    """Test the radial WLH constant."""

    def test_quarter_value(self):
        """Test C*(1/4, Lambda, 1) = 1/(2 pi e) independent of Lambda."""
        for lam in (0.1, 1.0, 7.0):
            constant = c_wlh_star(0.25, lam, 1)
            assert constant.value == pytest.approx(1.0 / (2.0 * math.pi * math.e), rel=1e-13)
            assert constant.formula_id == "wlh_quarter"

    def test_general_value(self):
        """Test gamma = 3/4, Lambda = 1, d = 3."""
        assert c_wlh_star(0.75, 1.0, 3).value == pytest.approx(0.060347, rel=1e-4)

    def test_continuity_at_quarter(self):
        """Test that the general formula approaches the gamma = 1/4 value."""
        near = c_wlh_star(0.25 + 1e-9, 7.0, 1).value
        assert near == pytest.approx(c_wlh_star(0.25, 7.0, 1).value, rel=1e-6)

    def test_gamma_domain(self):
        """Test that gamma < 1/4 is rejected."""
        with pytest.raises(DomainError):
            c_wlh_star(0.2, 1.0, 3)


class TestSobolev:
    """Test the Sobolev constants."""

    @pytest.mark.parametrize("d", [3, 4, 5, 7])
    def test_critical_limit(self, d):
        """Test C*(1, 2* - eps, a_c^2) -> S*(d)."""
        limit = c_ckn_star(1.0, critical_exponent(d) - 1e-9, a_critical(d) ** 2).value
        assert limit == pytest.approx(sobolev_star(d).value, rel=1e-6)

    def test_classical_relation(self):
        """Test S* = S_classical |S^{d-1}|^{2/d}."""
        for d in (3, 4, 6):
            expected = sobolev_classical(d).value * sphere_area(d) ** (2.0 / d)
            assert sobolev_star(d).value == pytest.approx(expected, rel=1e-13)

    def test_classical_d3(self):
        """Test the classical value (pi d (d-2))^{-1} (Gamma(d)/Gamma(d/2))^{2/d} in d = 3."""
        expected = (4.0 / math.sqrt(math.pi)) ** (2.0 / 3.0) / (3.0 * math.pi)
        assert sobolev_classical(3).value == pytest.approx(expected, rel=1e-13)

    def test_dimension_domain(self):
        """Test that d < 3 is rejected."""
        with pytest.raises(DomainError):
            sobolev_star(2)


class TestLogSobolev:
    """Test C_LS = 2/(pi d e)."""

    @pytest.mark.parametrize("d,expected", [(1, 0.2342), (2, 0.11709), (3, 0.0780664)])
    def test_values(self, d, expected):
        """Test tabulated values."""
        assert c_ls(d).value == pytest.approx(expected, rel=1e-4)


class TestGaussianQuotient:
    """Test h(p, d) and L(p, d)."""

    @pytest.mark.parametrize("d", [1, 2, 3, 6])
    def test_p_two(self, d):
        """Test h(2, d) = 1."""
        assert gaussian_h(2.0, d).value == pytest.approx(1.0, rel=1e-14)

    @pytest.mark.parametrize("p,d", [(4.0, 3), (2.5, 5), (3.0, 2), (2.2, 8)])
    def test_against_quadrature(self, p, d):
        """Test the closed form against radial quadrature."""
        assert gaussian_h(p, d).value == pytest.approx(gaussian_h_by_quadrature(p, d), rel=1e-10)

    def test_p_domain(self):
        """Test that p >= 2* is rejected."""
        with pytest.raises(DomainError):
            gaussian_h(6.0, 3)

    @pytest.mark.parametrize("d", range(2, 11))
    def test_big_l_limit(self, d):
        """Test L(2+, d) = 1."""
        assert abs(big_l(2.0 + 1e-6, d).value - 1.0) < 1e-4

    def test_big_l_below_one(self):
        """Test L(2.1, 3) < 1 and L(2.05, 10) < 1."""
        assert big_l(2.1, 3).value < 1.0
        assert big_l(2.05, 10).value < 1.0

    def test_big_l_domain(self):
        """Test that d < 2 is rejected."""
        with pytest.raises(DomainError):
            big_l(2.5, 1)


class TestEll:
    """Test the slope of L at p = 2."""

    def test_negative(self):
        """Test ell(3) < 0."""
        assert ell(3) < 0.0

    def test_increasing(self):
        """Test that ell increases with d."""
        values = [ell(d) for d in range(3, 11)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_large_dimension_limit(self):
        """Test ell(100) -> -ln(2)/4."""
        assert abs(ell(100) + 0.25 * math.log(2.0)) < 0.02

    def test_matches_finite_difference(self):
        """Test ell against a plain one-sided slope."""
        delta = 1e-5
        slope = (big_l(2.0 + delta, 4).value - 1.0) / delta
        assert ell(4) == pytest.approx(slope, rel=1e-2)
