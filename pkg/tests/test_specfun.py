"""
Unit tests for specfun module.
"""

import math

import mpmath
import numpy as np
import pytest
from scipy.special import gammaln

from cknsym.errors import DomainError
from cknsym.specfun import gamma_half_ratio, ln_gamma, log_gamma_half_ratio


class TestLnGamma:
    """Test the Lanczos log-gamma."""

    @pytest.mark.parametrize("x", [1e-3, 0.1, 0.5, 1.0, 1.5, 2.0, 7.25, 50.0, 1e4])
    def test_against_scipy(self, x):
        """Test agreement with scipy's gammaln."""
        assert ln_gamma(x) == pytest.approx(gammaln(x), rel=1e-13, abs=1e-13)

    def test_known_values(self):
        """Test Gamma(1/2) = sqrt(pi) and Gamma(1) = 1."""
        assert ln_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), abs=1e-14)
        assert ln_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
        assert ln_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)

    def test_vectorized(self):
        """Test that arrays keep their shape."""
        x = np.array([0.3, 1.7, 12.0])
        result = ln_gamma(x)
        assert result.shape == x.shape
        np.testing.assert_allclose(result, gammaln(x), rtol=1e-13)

    def test_recurrence(self):
        """Test ln Gamma(x + 1) - ln Gamma(x) = ln x."""
        for x in np.geomspace(0.5, 1e4, 80):
            assert ln_gamma(x + 1.0) - ln_gamma(x) == pytest.approx(math.log(x), rel=1e-12, abs=2e-11)

    def test_reflection(self):
        """Test Gamma(x) Gamma(1 - x) = pi / sin(pi x) at x = 1/4."""
        expected = math.log(math.pi / math.sin(0.25 * math.pi))
        assert ln_gamma(0.25) + ln_gamma(0.75) == pytest.approx(expected, abs=1e-13)

    @pytest.mark.parametrize("x", [0.0, -1.0, math.nan])
    def test_domain(self, x):
        """Test that non-positive arguments raise."""
        with pytest.raises(DomainError):
            ln_gamma(x)


class TestGammaHalfRatio:
    """Test Gamma(z + 1/2) / Gamma(z)."""

    @pytest.mark.parametrize("z", [0.05, 0.5, 1.0, 3.7, 1e3, 1e7])
    def test_against_mpmath(self, z):
        """Test agreement with an extended-precision oracle."""
        with mpmath.workdps(40):
            expected = float(mpmath.log(mpmath.gamma(mpmath.mpf(z) + 0.5) / mpmath.gamma(z)))
        assert log_gamma_half_ratio(z) == pytest.approx(expected, rel=1e-12, abs=1e-14)

    def test_asymptotic_regime(self):
        """Test that huge arguments follow sqrt(z)."""
        z = 1e12
        assert gamma_half_ratio(z) == pytest.approx(math.sqrt(z), rel=1e-12)

    @pytest.mark.parametrize("z", [1e8 * (1.0 - 1e-12), 1e8 * (1.0 + 1e-12)])
    def test_continuity_at_threshold(self, z):
        """Test both sides of the switch to the asymptotic series."""
        expected = 0.5 * math.log(z) - 1.0 / (8.0 * z)
        assert log_gamma_half_ratio(z) == pytest.approx(expected, rel=1e-13)

    def test_duplication_product(self):
        """Test Gamma(z + 1/2)/Gamma(z) * Gamma(z + 1)/Gamma(z + 1/2) = z."""
        for z in np.geomspace(0.5, 1e3, 60):
            product = gamma_half_ratio(z) * gamma_half_ratio(z + 0.5)
            assert product == pytest.approx(z, rel=1e-12)

    def test_known_value(self):
        """Test Gamma(3/2)/Gamma(1) = sqrt(pi)/2."""
        assert gamma_half_ratio(1.0) == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-14)
