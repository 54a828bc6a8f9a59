"""
Closed-form optimal constants among radial functions and related quantities.

Every constant is assembled in log space and exponentiated once. Two measure
conventions appear:

* ``c_ckn_star`` is the radial CKN constant on the cylinder R x S^{d-1} with
  the sphere measure normalized to unit mass (it does not depend on d);
* ``c_wlh_star``, ``c_ls``, ``sobolev_classical`` and ``gaussian_h`` refer to
  Lebesgue measure on R^d.

``c_ckn_star_euclidean`` converts the first convention to the second.
"""

import logging
import math
from dataclasses import dataclass

from .errors import DomainError
from .params import a_critical, critical_exponent, theta_min
from .specfun import ln_gamma, log_gamma_half_ratio

logger = logging.getLogger(__name__)

LOG_PI = math.log(math.pi)

# Richardson step used by ell()
ELL_STEP = 1e-4


@dataclass(frozen=True)
class ConstantValue:
    """A positive constant carried together with its logarithm."""
    value: float
    log_value: float
    formula_id: str

    @classmethod
    def from_log(cls, log_value: float, formula_id: str) -> "ConstantValue":
        return cls(value=math.exp(log_value), log_value=log_value, formula_id=formula_id)


def log_sphere_area(d: float) -> float:
    """ln |S^{d-1}| = ln(2 pi^{d/2} / Gamma(d/2))."""
    if d <= 0:
        raise DomainError(f"sphere area requires d > 0, got {d}")
    return math.log(2.0) + 0.5 * d * LOG_PI - ln_gamma(0.5 * d)


def sphere_area(d: float) -> float:
    """Return |S^{d-1}|, the area of the unit sphere of R^d."""
    return math.exp(log_sphere_area(d))


def _log_c_ckn_star(theta: float, p: float, lam: float) -> float:
    if not p > 2:
        raise DomainError(f"C*_CKN requires p > 2, got p={p}")
    if not 0 < theta <= 1:
        raise DomainError(f"C*_CKN requires 0 < theta <= 1, got theta={theta}")
    if not lam > 0:
        raise DomainError(f"C*_CKN requires Lambda > 0, got Lambda={lam}")
    denominator = 2.0 + (2.0 * theta - 1.0) * p
    if not denominator > 0:
        raise DomainError(f"C*_CKN requires 2 + (2 theta - 1) p > 0, got {denominator}")

    q = p - 2.0
    scale = (q / (2.0 * p)) * (math.log(lam) + 2.0 * math.log(q) - math.log(denominator))
    interpolation = theta * (math.log(denominator) - math.log(2.0 * p * theta * lam))
    algebraic = ((6.0 - p) / (2.0 * p)) * math.log(4.0 / (p + 2.0))
    gamma_part = (q / p) * (log_gamma_half_ratio(2.0 / q) - 0.5 * LOG_PI)
    return scale + interpolation + algebraic + gamma_part


def c_ckn_star(theta: float, p: float, lam: float) -> ConstantValue:
    """
    Best constant of the CKN inequality among radial (s-symmetric) functions.

    Args:
        theta: Interpolation parameter in (0, 1]
        p: Exponent, p > 2
        lam: Lambda = (a - a_c)^2 > 0

    Returns:
        ConstantValue tagged ``ckn_radial``
    """
    return ConstantValue.from_log(_log_c_ckn_star(theta, p, lam), "ckn_radial")


def c_ckn_star_euclidean(theta: float, p: float, lam: float, d: float) -> ConstantValue:
    """Radial CKN constant for Lebesgue measure on R^d."""
    log_value = _log_c_ckn_star(theta, p, lam) + ((2.0 - p) / p) * log_sphere_area(d)
    return ConstantValue.from_log(log_value, "ckn_radial_euclidean")


def c_wlh_star(gamma: float, lam: float, d: float) -> ConstantValue:
    """
    Best constant of the weighted logarithmic Hardy inequality among radial functions.

    At gamma = 1/4 the constant no longer depends on Lambda and equals
    Gamma(d/2)^2 / (2 pi^{d+1} e).

    Args:
        gamma: Exponent, gamma >= 1/4
        lam: Lambda > 0
        d: Dimension

    Returns:
        ConstantValue tagged ``wlh_radial`` or ``wlh_quarter``
    """
    if not gamma >= 0.25:
        raise DomainError(f"C*_WLH requires gamma >= 1/4, got gamma={gamma}")
    if not lam > 0:
        raise DomainError(f"C*_WLH requires Lambda > 0, got Lambda={lam}")

    log_base = math.log(2.0) + (d + 1.0) * LOG_PI + 1.0
    if gamma == 0.25:
        return ConstantValue.from_log(2.0 * ln_gamma(0.5 * d) - log_base, "wlh_quarter")

    k = 4.0 * gamma - 1.0
    log_value = (-math.log(4.0 * gamma)
                 + ln_gamma(0.5 * d) / (2.0 * gamma)
                 - log_base / (4.0 * gamma)
                 + (k / (4.0 * gamma)) * (math.log(k) - math.log(lam)))
    return ConstantValue.from_log(log_value, "wlh_radial")


def sobolev_classical(d: float) -> ConstantValue:
    """Sharp Sobolev constant on R^d: (pi d (d-2))^{-1} (Gamma(d)/Gamma(d/2))^{2/d}."""
    if not d > 2:
        raise DomainError(f"Sobolev constant requires d >= 3, got d={d}")
    log_value = (-math.log(math.pi * d * (d - 2.0))
                 + (2.0 / d) * (ln_gamma(d) - ln_gamma(0.5 * d)))
    return ConstantValue.from_log(log_value, "sobolev_euclidean")


def sobolev_star(d: float) -> ConstantValue:
    """
    Sobolev constant in the cylinder normalization, C*_CKN(1, 2*, a_c^2).

    This is the value reached by ``c_ckn_star(1, p, a_c^2)`` as p -> 2*;
    it equals ``sobolev_classical(d) * |S^{d-1}|^{2/d}``.
    """
    classical = sobolev_classical(d)
    log_value = classical.log_value + (2.0 / d) * log_sphere_area(d)
    return ConstantValue.from_log(log_value, "sobolev")


def c_ls(d: float) -> ConstantValue:
    """Euclidean logarithmic Sobolev constant 2 / (pi d e)."""
    if not d > 0:
        raise DomainError(f"C_LS requires d >= 1, got d={d}")
    return ConstantValue.from_log(math.log(2.0 / (math.pi * d)) - 1.0, "log_sobolev")


def _log_gaussian_h(p: float, d: float) -> float:
    if not 2.0 <= p < critical_exponent(d):
        raise DomainError(f"h(p,d) requires 2 <= p < 2*, got p={p}, d={d}")
    vt = theta_min(d, p)
    # g = (2 pi)^{-d/4} exp(-|x|^2/4): ||g||_2 = 1, ||grad g||^2 = d/4,
    # ||g||_p^2 = (2 pi)^{-d/2} (4 pi / p)^{d/p}
    return (vt * math.log(d / 4.0)
            + 0.5 * d * math.log(2.0 * math.pi)
            + (d / p) * math.log(p / (4.0 * math.pi)))


def gaussian_h(p: float, d: float) -> ConstantValue:
    """
    Gagliardo-Nirenberg quotient of the standard Gaussian.

    h(p,d) = ||grad g||^{2 theta_min} ||g||^{2(1 - theta_min)} / ||g||_p^2 for
    g(x) = (2 pi)^{-d/4} exp(-|x|^2/4); it bounds 1/C_GN(p) from above.

    Args:
        p: Exponent in [2, 2*)
        d: Dimension

    Returns:
        ConstantValue tagged ``gaussian_h``
    """
    return ConstantValue.from_log(_log_gaussian_h(p, d), "gaussian_h")


def _log_big_l(p: float, d: float) -> float:
    from .regions import a_minus

    if not d >= 2:
        raise DomainError(f"L(p,d) requires d >= 2, got d={d}")
    if not 2.0 < p < critical_exponent(d):
        raise DomainError(f"L(p,d) requires 2 < p < 2*, got p={p}")
    lam_minus = (a_minus(p, d) - a_critical(d)) ** 2
    return (_log_gaussian_h(p, d)
            + c_ckn_star_euclidean(theta_min(d, p), p, lam_minus, d).log_value)


def big_l(p: float, d: float) -> ConstantValue:
    """
    L(p,d) = h(p,d) C*_CKN(theta_min, p, Lambda(a_-(p))) on R^d.

    L < 1 certifies symmetry breaking at theta = theta_min(d,p), a = a_-(p).
    """
    return ConstantValue.from_log(_log_big_l(p, d), "big_l")


def ell(d: float, step: float = ELL_STEP) -> float:
    """
    Right derivative of L(., d) at p = 2.

    ln L vanishes at p = 2, so the one-sided quotients ln L(2 + delta)/delta
    are combined by two levels of Richardson extrapolation.

    Args:
        d: Dimension, d >= 2
        step: Largest difference step

    Returns:
        Approximation of dL/dp at p = 2+
    """
    slopes = [_log_big_l(2.0 + h, d) / h for h in (step, step / 2.0, step / 4.0)]
    first = [2.0 * slopes[1] - slopes[0], 2.0 * slopes[2] - slopes[1]]
    value = (4.0 * first[1] - first[0]) / 3.0
    logger.debug(f"ell(d={d}) = {value:.12g}")
    return value
