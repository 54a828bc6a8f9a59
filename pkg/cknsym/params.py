"""
Parameter-domain arithmetic and admissibility checks.

Both inequality families are parametrized by the dimension d and a weight
parameter a < a_c = (d-2)/2. Internally the canonical coordinate is
Lambda = (a - a_c)^2; points given in terms of a are converted on entry.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Tuple

from .errors import DomainError, InadmissibleParameters

logger = logging.getLogger(__name__)

# Slack for closed boundary comparisons of derived quantities (b, theta)
BOUNDARY_SLACK = 1e-12


def a_critical(d: float) -> float:
    """Return a_c = (d - 2) / 2."""
    return (d - 2.0) / 2.0


def critical_exponent(d: float) -> float:
    """Return the Sobolev exponent 2* = 2d/(d-2), infinite for d <= 2."""
    if d <= 2:
        return math.inf
    return 2.0 * d / (d - 2.0)


def theta_min(d: float, p: float) -> float:
    """
    Smallest admissible interpolation parameter, d(p-2)/(2p).

    Args:
        d: Dimension
        p: Exponent, p >= 2

    Returns:
        theta_min(d, p), in [0, 1] for p <= 2*
    """
    if p < 2:
        raise DomainError(f"theta_min requires p >= 2, got p={p}")
    if d > 2 and p == critical_exponent(d):
        return 1.0
    return d * (p - 2.0) / (2.0 * p)


def p_star(d: float, theta: float) -> float:
    """Exponent at which theta = theta_min(d, p), namely 2d/(d - 2 theta)."""
    if not 0.0 <= theta <= 1.0:
        raise DomainError(f"p_star requires 0 <= theta <= 1, got {theta}")
    denominator = d - 2.0 * theta
    if denominator <= 0:
        raise DomainError(f"p_star undefined for d={d}, theta={theta}")
    return 2.0 * d / denominator


def lambda_of_a(d: float, a: float) -> float:
    """Return Lambda(a) = (a - a_c)^2."""
    return (a - a_critical(d)) ** 2


def a_of_lambda(d: float, lam: float) -> float:
    """Return the branch a = a_c - sqrt(Lambda) below a_c."""
    if lam < 0:
        raise DomainError(f"Lambda must be non-negative, got {lam}")
    return a_critical(d) - math.sqrt(lam)


def p_of(d: float, a: float, b: float) -> float:
    """Return p(a, b) = 2d / (d - 2 + 2(b - a))."""
    denominator = d - 2.0 + 2.0 * (b - a)
    if denominator <= 0:
        raise DomainError(f"p(a,b) undefined: d - 2 + 2(b - a) = {denominator} <= 0")
    return 2.0 * d / denominator


def b_of(d: float, a: float, p: float) -> float:
    """Return the b for which p(a, b) = p."""
    if p <= 0:
        raise DomainError(f"b(a,p) requires p > 0, got {p}")
    b = a + d / p - a_critical(d)
    if d - 2.0 + 2.0 * (b - a) <= 0:
        raise DomainError(f"b(a,p) gives a non-positive denominator for d={d}, p={p}")
    return b


@dataclass(frozen=True)
class AdmissibilityVerdict:
    """Accept/Reject outcome with the violated conditions named."""
    accepted: bool
    violations: Tuple[str, ...] = ()

    def raise_if_rejected(self):
        if not self.accepted:
            raise InadmissibleParameters(list(self.violations))


@dataclass(frozen=True)
class CknParams:
    """A Caffarelli-Kohn-Nirenberg parameter point."""
    d: int
    p: float
    theta: float
    a: float
    lam: float = field(init=False)
    b: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lam", lambda_of_a(self.d, self.a))
        if math.isfinite(self.p) and self.p > 0:
            b = self.a + self.d / self.p - a_critical(self.d)
        else:
            b = math.nan
        object.__setattr__(self, "b", b)

    @classmethod
    def from_ab(cls, d: int, a: float, b: float, theta: float) -> "CknParams":
        """Build a point from (a, b); p is derived and left NaN when undefined."""
        try:
            p = p_of(d, a, b)
        except DomainError:
            p = math.nan
        params = cls(d=d, p=p, theta=theta, a=a)
        object.__setattr__(params, "b", b)
        return params

    @classmethod
    def from_lambda(cls, d: int, lam: float, p: float, theta: float) -> "CknParams":
        return cls(d=d, p=p, theta=theta, a=a_of_lambda(d, lam))

    @property
    def a_c(self) -> float:
        return a_critical(self.d)

    @property
    def theta_min(self) -> float:
        return theta_min(self.d, self.p)

    @property
    def minimizable(self) -> bool:
        """Extremals exist only strictly inside 2 < p < 2*."""
        return 2.0 < self.p < critical_exponent(self.d)


@dataclass(frozen=True)
class WlhParams:
    """A weighted logarithmic Hardy parameter point."""
    d: int
    gamma: float
    a: float
    lam: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lam", lambda_of_a(self.d, self.a))

    @classmethod
    def from_a(cls, d: int, a: float, gamma: float) -> "WlhParams":
        return cls(d=d, gamma=gamma, a=a)

    @classmethod
    def from_lambda(cls, d: int, lam: float, gamma: float) -> "WlhParams":
        return cls(d=d, gamma=gamma, a=a_of_lambda(d, lam))

    @property
    def a_c(self) -> float:
        return a_critical(self.d)


def _check_dimension(d, violations: List[str]):
    if int(d) != d or d < 1:
        violations.append(f"d must be an integer >= 1 (d={d})")


def validate_ckn(params: CknParams) -> AdmissibilityVerdict:
    """
    Check a CKN point against the admissible parameter ranges.

    The b-range depends on the dimension: (a+1/2, a+1] for d = 1,
    (a, a+1] for d = 2 and [a, a+1] for d >= 3. In addition a < a_c and
    theta_min(d, p) <= theta <= 1.

    Args:
        params: Parameter point

    Returns:
        AdmissibilityVerdict naming every violated condition
    """
    violations: List[str] = []
    d, a, b, theta = params.d, params.a, params.b, params.theta
    _check_dimension(d, violations)

    if not a < a_critical(d):
        violations.append(f"a < a_c (a={a}, a_c={a_critical(d)})")

    if d == 1:
        if not a + 0.5 < b:
            violations.append(f"b > a + 1/2 (b={b}, a={a})")
    elif d == 2:
        if not a < b:
            violations.append(f"b > a (b={b}, a={a})")
    elif not a <= b + BOUNDARY_SLACK:
        violations.append(f"b >= a (b={b}, a={a})")
    if not b <= a + 1.0 + BOUNDARY_SLACK:
        violations.append(f"b <= a + 1 (b={b}, a={a})")

    p = params.p
    if math.isnan(p):
        violations.append("p(a,b) undefined")
    elif p < 2.0 or p > critical_exponent(d):
        violations.append(f"2 <= p <= 2* (p={p})")
    else:
        vt = theta_min(d, p)
        if theta < vt - BOUNDARY_SLACK:
            violations.append(f"theta >= theta_min (theta={theta}, theta_min={vt})")
    if theta > 1.0 or theta <= 0.0:
        violations.append(f"0 < theta <= 1 (theta={theta})")

    if violations:
        logger.debug(f"CKN point rejected: {violations}")
    return AdmissibilityVerdict(accepted=not violations, violations=tuple(violations))


def validate_wlh(params: WlhParams) -> AdmissibilityVerdict:
    """
    Check a WLH point: gamma >= d/4, gamma > 1/2 when d = 2, a < a_c.

    Args:
        params: Parameter point

    Returns:
        AdmissibilityVerdict naming every violated condition
    """
    violations: List[str] = []
    d, gamma, a = params.d, params.gamma, params.a
    _check_dimension(d, violations)

    if not gamma >= d / 4.0:
        violations.append(f"gamma >= d/4 (gamma={gamma}, d/4={d / 4.0})")
    if d == 2 and not gamma > 0.5:
        violations.append(f"gamma > 1/2 when d = 2 (gamma={gamma})")
    if not a < a_critical(d):
        violations.append(f"a < a_c (a={a}, a_c={a_critical(d)})")

    if violations:
        logger.debug(f"WLH point rejected: {violations}")
    return AdmissibilityVerdict(accepted=not violations, violations=tuple(violations))
