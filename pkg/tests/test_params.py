"""
Unit tests for params module.
"""

import math

import numpy as np
import pytest

from cknsym.errors import DomainError, InadmissibleParameters
from cknsym.params import (CknParams, WlhParams, a_critical, a_of_lambda, b_of, critical_exponent,
                           lambda_of_a, p_of, p_star, theta_min, validate_ckn, validate_wlh)


class TestParameterArithmetic:
    """Test the closed-form parameter relations."""

    def test_a_critical(self):
        """Test a_c = (d-2)/2."""
        assert a_critical(2) == 0.0
        assert a_critical(5) == 1.5

    def test_critical_exponent(self):
        """Test 2* and its infinite value in low dimension."""
        assert critical_exponent(3) == 6.0
        assert critical_exponent(2) == math.inf
        assert critical_exponent(1) == math.inf

    def test_theta_min(self):
        """Test theta_min and its endpoints."""
        assert theta_min(3, 2.0) == 0.0
        assert theta_min(3, 6.0) == 1.0
        assert theta_min(2, 4.0) == pytest.approx(0.5)

    def test_theta_min_domain(self):
        """Test that p < 2 is rejected."""
        with pytest.raises(DomainError):
            theta_min(3, 1.5)

    def test_p_star_inverts_theta_min(self):
        """Test that theta_min(d, p_star(d, theta)) = theta."""
        for d in (2, 3, 5):
            for theta in (0.2, 0.5, 0.9):
                assert theta_min(d, p_star(d, theta)) == pytest.approx(theta, abs=1e-14)

    def test_lambda_round_trip(self):
        """Test a -> Lambda -> a on the branch below a_c."""
        assert lambda_of_a(5, -2.0) == pytest.approx(12.25)
        assert a_of_lambda(5, 12.25) == pytest.approx(-2.0)

    def test_negative_lambda(self):
        """Test that Lambda < 0 is rejected."""
        with pytest.raises(DomainError):
            a_of_lambda(3, -1.0)

    def test_p_and_b(self):
        """Test p(a, b) and its inverse."""
        assert p_of(3, 0.0, 0.0) == pytest.approx(6.0)
        assert b_of(3, 0.0, 6.0) == pytest.approx(0.0)
        assert p_of(3, -1.0, b_of(3, -1.0, 4.0)) == pytest.approx(4.0)

    def test_p_of_domain(self):
        """Test a non-positive denominator."""
        with pytest.raises(DomainError):
            p_of(2, 0.0, 0.0)


class TestCknParams:
    """Test CKN parameter points and their validation."""

    def test_derived_fields(self):
        """Test that Lambda and b are derived on construction."""
        params = CknParams(d=3, p=4.0, theta=1.0, a=-0.5)
        assert params.lam == pytest.approx(1.0)
        assert params.b == pytest.approx(b_of(3, -0.5, 4.0))

    def test_from_lambda(self):
        """Test construction from Lambda."""
        params = CknParams.from_lambda(2, 1.0, 4.0, 1.0)
        assert params.a == pytest.approx(-1.0)
        assert params.minimizable

    def test_from_ab(self):
        """Test construction from (a, b)."""
        params = CknParams.from_ab(3, -1.0, -0.5, 1.0)
        assert params.p == pytest.approx(p_of(3, -1.0, -0.5))
        assert params.b == -0.5

    def test_admissible_point(self):
        """Test that an interior point is accepted."""
        verdict = validate_ckn(CknParams(d=5, p=3.0, theta=0.9, a=-2.0))
        assert verdict.accepted
        assert verdict.violations == ()

    def test_a_above_critical(self):
        """Test that a >= a_c is named."""
        verdict = validate_ckn(CknParams(d=5, p=3.0, theta=0.9, a=2.0))
        assert not verdict.accepted
        assert any("a < a_c" in v for v in verdict.violations)

    def test_theta_below_minimum(self):
        """Test that theta < theta_min is named."""
        verdict = validate_ckn(CknParams(d=5, p=3.0, theta=0.5, a=-2.0))
        assert any("theta_min" in v for v in verdict.violations)

    def test_b_range_dimension_two(self):
        """Test that b = a is rejected for d = 2 but accepted for d = 3."""
        assert not validate_ckn(CknParams.from_ab(2, -1.0, -1.0, 1.0)).accepted
        assert validate_ckn(CknParams.from_ab(3, -1.0, -1.0, 1.0)).accepted

    @pytest.mark.parametrize("d,a,b,theta,accepted", [(3, 0.0, 0.5, 0.8, True), (3, 0.0, 0.5, 0.2, False)])
    def test_dimension_three_examples(self, d, a, b, theta, accepted):
        """Test (a, b) points on either side of theta_min(3, 3) = 0.5."""
        assert validate_ckn(CknParams.from_ab(d, a, b, theta)).accepted is accepted

    def test_b_range_dimension_one(self):
        """Test that b <= a + 1/2 is rejected for d = 1."""
        verdict = validate_ckn(CknParams.from_ab(1, 0.0, 0.4, 0.3))
        assert not verdict.accepted
        assert any(v.startswith("b > a + 1/2") for v in verdict.violations)

    def test_non_integer_dimension(self):
        """Test that fractional dimensions are rejected."""
        verdict = validate_ckn(CknParams(d=2.5, p=3.0, theta=1.0, a=-1.0))
        assert any("integer" in v for v in verdict.violations)

    def test_raise_if_rejected(self):
        """Test that the violation list travels with the exception."""
        verdict = validate_ckn(CknParams(d=5, p=3.0, theta=0.5, a=2.0))
        with pytest.raises(InadmissibleParameters) as excinfo:
            verdict.raise_if_rejected()
        assert excinfo.value.violations == list(verdict.violations)
        assert isinstance(excinfo.value, ValueError)

    def test_critical_exponent_not_minimizable(self):
        """Test that p = 2* is admissible but has no extremal."""
        params = CknParams(d=3, p=6.0, theta=1.0, a=-1.0)
        assert validate_ckn(params).accepted
        assert not params.minimizable


class TestAdmissibleRanges:
    """Random points inside and just outside the CKN ranges."""

    LOWER_B = {1: ("b > a + 1/2", 0.5), 2: ("b > a", 0.0), 3: ("b >= a", 0.0), 5: ("b >= a", 0.0)}

    @pytest.fixture
    def draws(self):
        """(d, a, b, theta_min, delta) with b in the lower nine tenths of its range."""
        rng = np.random.default_rng(5)
        points = []
        for _ in range(400):
            d = int(rng.choice([1, 2, 3, 5]))
            a = a_critical(d) - rng.uniform(0.01, 5.0)
            lower = a + self.LOWER_B[d][1]
            b = lower + (a + 1.0 - lower) * rng.uniform(0.01, 0.9)
            vt = theta_min(d, p_of(d, a, b))
            points.append((d, a, b, vt, rng.uniform(1e-6, 1e-2)))
        return points

    def test_interior_accepted(self, draws):
        """Test that every interior point is accepted."""
        rng = np.random.default_rng(6)
        for d, a, b, vt, _ in draws:
            theta = vt + (1.0 - vt) * rng.uniform(0.0, 1.0)
            verdict = validate_ckn(CknParams.from_ab(d, a, b, theta))
            assert verdict.accepted, (d, a, b, theta, verdict.violations)

    def test_weight_above_critical(self, draws):
        """Test a just above a_c."""
        for d, _, _, _, delta in draws:
            a = a_critical(d) + delta
            verdict = validate_ckn(CknParams.from_ab(d, a, a + 0.75, 1.0))
            assert any(v.startswith("a < a_c") for v in verdict.violations)

    def test_b_below_range(self, draws):
        """Test b just below its lower end."""
        for d, a, _, _, delta in draws:
            message, offset = self.LOWER_B[d]
            verdict = validate_ckn(CknParams.from_ab(d, a, a + offset - delta, 1.0))
            assert any(v.startswith(message) for v in verdict.violations)

    def test_b_above_range(self, draws):
        """Test b just above a + 1."""
        for d, a, _, _, delta in draws:
            verdict = validate_ckn(CknParams.from_ab(d, a, a + 1.0 + delta, 1.0))
            assert any(v.startswith("b <= a + 1") for v in verdict.violations)

    def test_theta_below_minimum(self, draws):
        """Test theta just below theta_min."""
        for d, a, b, vt, _ in draws:
            verdict = validate_ckn(CknParams.from_ab(d, a, b, 0.99 * vt))
            assert any(v.startswith("theta >= theta_min") for v in verdict.violations)

    def test_theta_above_one(self, draws):
        """Test theta just above 1."""
        for d, a, b, _, delta in draws:
            verdict = validate_ckn(CknParams.from_ab(d, a, b, 1.0 + delta))
            assert any(v.startswith("0 < theta <= 1") for v in verdict.violations)


class TestWlhParams:
    """Test WLH parameter points and their validation."""

    def test_admissible(self):
        """Test an interior WLH point."""
        assert validate_wlh(WlhParams.from_lambda(3, 1.0, 1.0)).accepted

    def test_from_a(self):
        """Test construction from a."""
        params = WlhParams.from_a(4, 0.0, 1.5)
        assert params.lam == pytest.approx(1.0)
        assert params.a_c == 1.0

    def test_gamma_below_quarter_dimension(self):
        """Test gamma < d/4."""
        verdict = validate_wlh(WlhParams.from_lambda(4, 1.0, 0.9))
        assert not verdict.accepted
        assert any("d/4" in v for v in verdict.violations)

    def test_dimension_two_gamma(self):
        """Test that gamma = 1/2 is excluded in d = 2."""
        verdict = validate_wlh(WlhParams.from_lambda(2, 1.0, 0.5))
        assert any("d = 2" in v for v in verdict.violations)
        assert validate_wlh(WlhParams.from_lambda(2, 1.0, 0.51)).accepted
