"""
End-to-end checks of the published numbers and of the numerical witnesses.
"""

import math

import numpy as np
import pytest

from cknsym.cylinder import build_grid
from cknsym.minimizer import CylinderMinimizer
from cknsym.params import a_critical, theta_min
from cknsym.radial_constants import big_l, c_ckn_star, c_ls, c_wlh_star, ell
from cknsym.regions import (a_bar, a_fs, a_minus, a_tilde, gamma_sb_interval, lambda_tilde,
                            schwarz_a0, schwarz_curve, theta_big)
from cknsym.witness import Family, WitnessVerdict, breaking_witness


class TestClosedForms:
    """Published constants and curves."""

    @pytest.mark.parametrize("d,expected", [(2, (0.621414, 6.69625)), (3, (0.937725, 4.14851)),
                                            (4, (1.31303, 2.98835))])
    def test_lambda_ratio_crossings(self, d, expected):
        """Test the gamma interval where Lambda_SB exceeds Lambda_tilde."""
        lower, upper = gamma_sb_interval(d)
        assert lower == pytest.approx(expected[0], rel=1e-4)
        assert upper == pytest.approx(expected[1], rel=1e-4)

    @pytest.mark.parametrize("d", [5, 6])
    def test_no_crossing_in_high_dimension(self, d):
        """Test that d >= 5 has no interval."""
        assert gamma_sb_interval(d) is None

    def test_ell(self):
        """Test the large-d limit and monotonicity of ell."""
        assert abs(ell(100) + 0.25 * math.log(2.0)) < 0.02
        values = [ell(d) for d in range(3, 11)]
        assert all(b > a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("d", range(2, 11))
    def test_gaussian_comparison(self, d):
        """Test L(2+) = 1 and L < 1 somewhere in (2, 2.3]."""
        assert abs(big_l(2.0 + 1e-6, d).value - 1.0) < 1e-4
        assert min(big_l(p, d).value for p in np.linspace(2.001, 2.3, 300)) < 1.0

    def test_ls_ratio(self):
        """Test C*_WLH(d/4, Lambda(-1/2)) < C_LS for 3 <= d <= 10."""
        for d in range(3, 11):
            lam = (-0.5 - a_critical(d)) ** 2
            ratio = c_wlh_star(d / 4.0, lam, d).value / c_ls(d).value
            assert ratio < 1.0
            if d == 3:
                assert ratio == pytest.approx(0.7728, rel=1e-3)

    def test_scaling_and_hardy_limit(self):
        """Test both identities of C* on 1000 random draws."""
        rng = np.random.default_rng(11)
        for _ in range(1000):
            p = rng.uniform(2.01, 8.0)
            theta = rng.uniform(max(0.0, 0.5 - 1.0 / p) + 0.01, 1.0)
            lam = math.exp(rng.uniform(-4.0, 4.0))
            expected = c_ckn_star(theta, p, 1.0).log_value + ((p - 2.0) / (2.0 * p) - theta) * math.log(lam)
            assert c_ckn_star(theta, p, lam).log_value == pytest.approx(expected, rel=1e-12, abs=1e-12)
            assert c_ckn_star(theta, 2.0 + 1e-7, lam).value * lam ** theta == pytest.approx(1.0, rel=1e-3)

    def test_boundary_identities(self):
        """Test the identities between the boundary curves on a grid."""
        for d in (2, 3, 5, 8):
            for p in np.linspace(2.1, 3.5, 8):
                vt = theta_min(d, p)
                assert a_bar(1.0, p, d) == pytest.approx(a_fs(p, d), abs=1e-10)
                assert a_bar(vt, p, d) == pytest.approx(a_minus(p, d), abs=1e-10)
                assert theta_big(a_minus(p, d), p, d) == pytest.approx(vt, abs=1e-10)
                assert theta_big(a_fs(p, d), p, d) == pytest.approx(1.0, abs=1e-10)
            for gamma in np.linspace(max(d / 4.0, 0.26), 5.0, 8):
                assert (a_tilde(gamma, d) - a_critical(d)) ** 2 == pytest.approx(
                    lambda_tilde(gamma, d), abs=1e-10)

    def test_schwarz_curves(self):
        """Test a_bar <= a0 < a_c on the d = 5 curves and a0 -> 0 as theta -> 1."""
        for p in [round(2.1 + 0.1 * i, 10) for i in range(12)]:
            for theta, a0 in schwarz_curve(p, 5, 8):
                assert a_bar(theta, p, 5) <= a0 < a_critical(5)
            assert abs(schwarz_a0(1.0 - 1e-3, p, 5)) < 0.05


class TestNumerics:
    """Minimizer refinement and witnesses."""

    @pytest.mark.slow
    @pytest.mark.parametrize("theta,p,lam", [(1.0, 4.0, 1.0), (0.8, 3.0, 2.0)])
    def test_second_order_refinement(self, theta, p, lam):
        """Test the observed order of the radial minimum against the closed form."""
        minimizer = CylinderMinimizer({'value_tol': 1e-13})
        expected = c_ckn_star(theta, p, lam).value ** (-1.0 / theta)
        errors = []
        for n_s in (255, 511, 1023, 2047):
            result = minimizer.minimize_radial_F(theta, p, lam, build_grid(20.0, n_s, 1, 2))
            errors.append(abs(result.value - expected) / expected)
        assert errors[-1] < 5e-3
        orders = [math.log2(a / b) for a, b in zip(errors, errors[1:])]
        assert all(order >= 1.8 for order in orders)

    @pytest.mark.slow
    def test_witness_in_instability_region(self):
        """Test Broken at Lambda = 1 with positive Poincare margins."""
        report = breaking_witness(Family.CKN, {"theta": 1.0, "p": 4.0, "lambda": 1.0},
                                  build_grid(20.0, 255, 8, 2))
        assert report.verdict is WitnessVerdict.BROKEN
        for level in report.levels:
            assert level.gap > report.discrepancy_factor * level.discrepancy
            assert level.poincare_margin > 0.0

    @pytest.mark.slow
    def test_witness_in_stable_region(self):
        """Test NotObserved at Lambda = 0.1."""
        report = breaking_witness(Family.CKN, {"theta": 1.0, "p": 4.0, "lambda": 0.1},
                                  build_grid(80.0, 511, 8, 2))
        assert report.verdict is WitnessVerdict.NOT_OBSERVED
        assert report.angular_fraction < 1e-6

    @pytest.mark.slow
    def test_witness_beyond_linear_instability(self):
        """Test breaking near theta = theta_min, a = a_-(p), where the radial minimizer is stable."""
        d, p = 2, 2.1
        theta = theta_min(d, p) + 0.01
        a = a_minus(p, d) + 0.005
        report = breaking_witness(Family.CKN, {"theta": theta, "p": p, "a": a},
                                  build_grid(20.0, 511, 16, d))
        assert report.verdict is WitnessVerdict.BROKEN
