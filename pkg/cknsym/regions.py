"""
Symmetry and symmetry-breaking boundary curves, and the point classifier.

Margins are signed distances ``a - boundary``: a breaking mechanism fires
when its margin is strictly negative, the Schwarz symmetry mechanism when
its margin is non-negative. The Gagliardo-Nirenberg comparison reports
``L - 1`` instead, which is negative when it fires.
"""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from .errors import (DomainError, InadmissibleParameters, InconsistentVerdictError,
                     InvalidParameterError, NoRootError)
from .params import (CknParams, WlhParams, a_critical, a_of_lambda, critical_exponent,
                     theta_min, validate_ckn, validate_wlh, BOUNDARY_SLACK)
from .radial_constants import big_l, c_ckn_star, sobolev_star
from .specfun import ln_gamma

logger = logging.getLogger(__name__)

# Distance from the ends of the a0 bracket
SCHWARZ_BRACKET_OFFSET = 1e-12
SCHWARZ_SCAN_POINTS = 400
GAMMA_SCAN_POINTS = 2000
GAMMA_MAX = 1000.0


class Verdict(Enum):
    """Symmetry classification of a parameter point."""
    SYMMETRIC_PROVEN = "SymmetricProven"
    BROKEN_PROVEN = "BrokenProven"
    UNDETERMINED = "Undetermined"


class Mechanism(Enum):
    """Argument that certifies a verdict."""
    SCHWARZ_CURVE = "SchwarzCurve"
    LINEAR_INSTABILITY = "LinearInstability"
    GN_COMPARISON = "GNComparison"
    LS_COMPARISON = "LSComparison"


@dataclass(frozen=True)
class RegionVerdict:
    """Classification outcome with the mechanisms that fired."""
    verdict: Verdict
    mechanisms: Tuple[Mechanism, ...]
    margins: Dict[str, float] = field(default_factory=dict)
    boundaries: Dict[str, float] = field(default_factory=dict)


def theta_big(a: float, p: float, d: float) -> float:
    """
    Theta(a,p,d): the largest theta for which the radial extremal is unstable.

    Args:
        a: Weight parameter
        p: Exponent, p > 2
        d: Dimension, d >= 2

    Returns:
        (p-2)/(32(d-1)p) [(p+2)^2 (d^2 + 4a^2 - 4a(d-2)) - 4p(p+4)(d-1)]
    """
    bracket = (p + 2.0) ** 2 * (d * d + 4.0 * a * a - 4.0 * a * (d - 2.0)) \
        - 4.0 * p * (p + 4.0) * (d - 1.0)
    return (p - 2.0) / (32.0 * (d - 1.0) * p) * bracket


def theta_slopes_at_hardy(a: float, d: float) -> Tuple[float, float]:
    """p-derivatives of theta_min and Theta at p = 2: (d/4, 1/4 + Lambda/(d-1))."""
    lam = (a - a_critical(d)) ** 2
    return d / 4.0, 0.25 + lam / (d - 1.0)


def a_fs(p: float, d: float) -> float:
    """A(p) = a_c - 2 sqrt((d-1)/((p+2)(p-2))); -inf as p -> 2+."""
    if p <= 2.0:
        return -math.inf
    return a_critical(d) - 2.0 * math.sqrt((d - 1.0) / ((p + 2.0) * (p - 2.0)))


def a_minus(p: float, d: float) -> float:
    """a_-(p) = a_c - 2(d-1)/(p+2)."""
    return a_critical(d) - 2.0 * (d - 1.0) / (p + 2.0)


def _instability_factor(theta: float, p: float) -> float:
    if not p > 2.0:
        raise DomainError(f"instability curve requires p > 2, got p={p}")
    factor = 2.0 * p * theta / (p - 2.0) - 1.0
    if factor < 0:
        raise DomainError(f"2 p theta/(p-2) < 1 for theta={theta}, p={p}")
    return factor


def a_bar(theta: float, p: float, d: float) -> float:
    """
    Linear instability boundary in a: breaking holds for every a below it.

    Args:
        theta: Interpolation parameter
        p: Exponent
        d: Dimension

    Returns:
        a_c - (2 sqrt(d-1)/(p+2)) sqrt(2 p theta/(p-2) - 1)
    """
    factor = _instability_factor(theta, p)
    return a_critical(d) - 2.0 * math.sqrt(d - 1.0) / (p + 2.0) * math.sqrt(factor)


def lambda_underline(theta: float, p: float, d: float) -> float:
    """Linear instability threshold in Lambda, (a_c - a_bar)^2."""
    factor = _instability_factor(theta, p)
    return 4.0 * (d - 1.0) / (p + 2.0) ** 2 * factor


def a_tilde(gamma: float, d: float) -> float:
    """WLH linear instability boundary a_c - sqrt((d-1)(4 gamma - 1))/2."""
    return a_critical(d) - 0.5 * math.sqrt((d - 1.0) * (4.0 * gamma - 1.0))


def lambda_tilde(gamma: float, d: float) -> float:
    """WLH linear instability threshold (d-1)(4 gamma - 1)/4."""
    return 0.25 * (d - 1.0) * (4.0 * gamma - 1.0)


def _log_lambda_sb(gamma: float, d: float) -> float:
    if not gamma > 0.25:
        raise DomainError(f"Lambda_SB requires gamma > 1/4, got gamma={gamma}")
    k = 4.0 * gamma - 1.0
    return (math.log(k / 8.0) + 1.0
            + ((4.0 * gamma - d - 1.0) * math.log(math.pi) - math.log(16.0)) / k
            + (4.0 * gamma / k) * math.log(d / gamma)
            + (2.0 / k) * ln_gamma(0.5 * d))


def lambda_sb(gamma: float, d: float) -> float:
    """
    Lambda above which the radial WLH constant falls below C_LS.

    Args:
        gamma: Exponent, gamma > 1/4
        d: Dimension

    Returns:
        Lambda_SB(gamma, d)
    """
    return math.exp(_log_lambda_sb(gamma, d))


def gamma_sb_interval(d: int, tol: float = 1e-8, gamma_max: float = GAMMA_MAX,
                      n_scan: int = GAMMA_SCAN_POINTS) -> Optional[Tuple[float, float]]:
    """
    Range of gamma where Lambda_SB(gamma, d) exceeds the WLH instability threshold.

    The log-ratio ln(Lambda_SB / Lambda_tilde) is scanned on a geometric grid
    and each sign change is refined with brentq.

    Args:
        d: Dimension, d >= 2
        tol: Absolute tolerance in gamma
        gamma_max: Upper end of the search
        n_scan: Scan resolution

    Returns:
        (gamma_1, gamma_2) or None when Lambda_SB < Lambda_tilde throughout
    """
    if d < 2:
        raise InvalidParameterError(f"gamma_sb_interval requires d >= 2, got d={d}")
    lower = d / 4.0
    if d == 2:
        lower *= 1.0 + 1e-9

    def log_ratio(gamma: float) -> float:
        return _log_lambda_sb(gamma, d) - math.log(lambda_tilde(gamma, d))

    grid = np.geomspace(lower, gamma_max, n_scan)
    values = np.array([log_ratio(g) for g in grid])
    roots = []
    for i in np.nonzero(np.sign(values[:-1]) != np.sign(values[1:]))[0]:
        roots.append(brentq(log_ratio, grid[i], grid[i + 1], xtol=tol, rtol=4 * np.finfo(float).eps))

    if not roots:
        logger.debug(f"d={d}: Lambda_SB < Lambda_tilde on [{lower}, {gamma_max}]")
        return None
    if len(roots) == 1:
        logger.warning(f"d={d}: single crossing at gamma={roots[0]}, interval truncated")
        return (lower, roots[0]) if values[0] > 0 else (roots[0], gamma_max)
    logger.debug(f"d={d}: gamma interval [{roots[0]}, {roots[-1]}]")
    return roots[0], roots[-1]


def schwarz_a0(theta: float, p: float, d: int, tol: float = 1e-10,
               n_scan: int = SCHWARZ_SCAN_POINTS) -> float:
    """
    Lower end a0 of the interval [a0, a_c) where Schwarz symmetrization proves symmetry.

    With T1(a) = (theta a_c^2 - (a_c-a)^2)/(1-theta) the bound on t under
    which symmetrization applies, a0 is the root of

        Phi(a) = (T1 + Lambda)^theta
                 - S^vt / C*(theta,p,1) (a_c-a)^{2 theta - 2 vt/d} (T1 + a_c^2)^vt

    with vt = theta_min(d,p); Phi >= 0 on the symmetric side. Phi is evaluated
    as a difference of logarithms.

    Args:
        theta: Interpolation parameter in [theta_min, 1]
        p: Exponent in (2, 2*)
        d: Dimension, d >= 3
        tol: Absolute tolerance in a
        n_scan: Points scanned from a_c downwards before refining

    Returns:
        a0(theta, p)
    """
    if d < 3:
        raise InvalidParameterError(f"schwarz_a0 requires d >= 3, got d={d}")
    if not 2.0 < p < critical_exponent(d):
        raise InvalidParameterError(f"schwarz_a0 requires 2 < p < 2*, got p={p}")
    vt = theta_min(d, p)
    if not vt - BOUNDARY_SLACK <= theta <= 1.0:
        raise InvalidParameterError(f"schwarz_a0 requires theta_min <= theta <= 1, got {theta}")
    if theta == 1.0:
        return 0.0

    ac = a_critical(d)
    log_k = vt * sobolev_star(d).log_value - c_ckn_star(theta, p, 1.0).log_value
    exponent = 2.0 * theta - 2.0 * vt / d

    def phi(a: float) -> float:
        gap = ac - a
        lam = gap * gap
        t1 = (theta * ac * ac - lam) / (1.0 - theta)
        return (theta * math.log(t1 + lam)
                - log_k - exponent * math.log(gap) - vt * math.log(t1 + ac * ac))

    lower = ac * (1.0 - math.sqrt(theta)) + SCHWARZ_BRACKET_OFFSET
    upper = ac - SCHWARZ_BRACKET_OFFSET
    grid = np.linspace(upper, lower, n_scan)
    values = np.array([phi(a) for a in grid])
    if values[0] < 0:
        raise NoRootError(f"Phi negative next to a_c for theta={theta}, p={p}, d={d}", sign=-1)
    negative = np.nonzero(values < 0)[0]
    if negative.size == 0:
        raise NoRootError(f"no symmetric/undetermined transition for theta={theta}, p={p}, d={d}",
                          sign=1)
    i = negative[0]
    a0 = brentq(phi, grid[i], grid[i - 1], xtol=tol)
    logger.debug(f"a0(theta={theta}, p={p}, d={d}) = {a0:.12g}")
    return a0


def _theta_grid(p: float, d: int, n_theta: int) -> np.ndarray:
    if n_theta < 2:
        raise InvalidParameterError(f"n_theta must be >= 2, got {n_theta}")
    return np.linspace(theta_min(d, p), 1.0, n_theta, endpoint=False)


def schwarz_curve(p: float, d: int, n_theta: int = 50,
                  tol: float = 1e-10) -> List[Tuple[float, float]]:
    """
    The curve theta -> a0(theta, p) on a grid of [theta_min, 1).

    Args:
        p: Exponent in (2, 2*)
        d: Dimension, d >= 3
        n_theta: Number of theta samples
        tol: Absolute tolerance of each a0

    Returns:
        (theta, a0) pairs; theta values without a root are skipped
    """
    curve = []
    for theta in _theta_grid(p, d, n_theta):
        try:
            curve.append((float(theta), schwarz_a0(theta, p, d, tol=tol)))
        except NoRootError as e:
            logger.warning(f"Skipping theta={theta}: {e}")
    return curve


def instability_lambda_curve(p: float, d: int, n_theta: int = 50) -> List[Tuple[float, float, float]]:
    """Triples (theta, a_bar, Lambda_underline) on a grid of [theta_min, 1)."""
    return [(float(theta), a_bar(theta, p, d), lambda_underline(theta, p, d))
            for theta in _theta_grid(p, d, n_theta)]


def _finish_verdict(fired: List[Mechanism], symmetric: bool,
                    margins: Dict[str, float], boundaries: Dict[str, float]) -> RegionVerdict:
    if symmetric and fired:
        raise InconsistentVerdictError(
            f"symmetry and breaking ({[m.value for m in fired]}) certified together")
    if symmetric:
        return RegionVerdict(Verdict.SYMMETRIC_PROVEN, (Mechanism.SCHWARZ_CURVE,), margins, boundaries)
    if fired:
        return RegionVerdict(Verdict.BROKEN_PROVEN, tuple(fired), margins, boundaries)
    return RegionVerdict(Verdict.UNDETERMINED, (), margins, boundaries)


def classify_ckn(theta: float, p: float, a: float, d: int) -> RegionVerdict:
    """
    Classify a CKN point.

    Breaking by linear instability iff a < a_bar; symmetry by Schwarz
    symmetrization iff d >= 3 and a >= a0; breaking by comparison with the
    Gaussian Gagliardo-Nirenberg bound at the corner theta = theta_min,
    a = a_-(p) when L(p,d) < 1. Neighborhoods of that corner stay undetermined.
    Points with d = 1 have no boundary curves and are undetermined.

    Args:
        theta: Interpolation parameter
        p: Exponent
        a: Weight parameter
        d: Dimension

    Returns:
        RegionVerdict
    """
    params = CknParams(d=d, p=p, theta=theta, a=a)
    validate_ckn(params).raise_if_rejected()
    if not params.minimizable:
        raise InadmissibleParameters([f"2 < p < 2* required for classification (p={p})"])
    if d < 2:
        logger.debug(f"CKN (theta={theta}, p={p}, a={a}, d={d}): no boundary curves below d = 2")
        return _finish_verdict([], False, {}, {})

    fired: List[Mechanism] = []
    margins: Dict[str, float] = {}
    boundaries: Dict[str, float] = {
        "a_fs": a_fs(p, d),
        "a_minus": a_minus(p, d),
        "theta_big": theta_big(a, p, d),
    }

    boundary = a_bar(theta, p, d)
    boundaries["a_bar"] = boundary
    margins[Mechanism.LINEAR_INSTABILITY.value] = a - boundary
    if a < boundary:
        fired.append(Mechanism.LINEAR_INSTABILITY)

    symmetric = False
    if d >= 3:
        try:
            a0 = schwarz_a0(theta, p, d)
        except NoRootError as e:
            logger.debug(f"Schwarz mechanism unavailable: {e}")
        else:
            boundaries["a0"] = a0
            margins[Mechanism.SCHWARZ_CURVE.value] = a - a0
            symmetric = a >= a0

    vt = params.theta_min
    if abs(theta - vt) <= BOUNDARY_SLACK and abs(a - boundaries["a_minus"]) <= BOUNDARY_SLACK:
        level = big_l(p, d).value
        boundaries["big_l"] = level
        margins[Mechanism.GN_COMPARISON.value] = level - 1.0
        if level < 1.0:
            fired.append(Mechanism.GN_COMPARISON)

    verdict = _finish_verdict(fired, symmetric, margins, boundaries)
    logger.debug(f"CKN (theta={theta}, p={p}, a={a}, d={d}) -> {verdict.verdict.value}")
    return verdict


def classify_wlh(gamma: float, a: float, d: int) -> RegionVerdict:
    """
    Classify a WLH point.

    Breaking by linear instability iff Lambda > Lambda_tilde and by comparison
    with the logarithmic Sobolev constant iff Lambda > Lambda_SB. No computable
    symmetric region exists, so everything else is undetermined.

    Args:
        gamma: Exponent
        a: Weight parameter
        d: Dimension

    Returns:
        RegionVerdict
    """
    params = WlhParams(d=d, gamma=gamma, a=a)
    validate_wlh(params).raise_if_rejected()

    fired: List[Mechanism] = []
    margins: Dict[str, float] = {}
    boundaries: Dict[str, float] = {}
    if d >= 2:
        lam = params.lam
        boundaries["a_tilde"] = a_tilde(gamma, d)
        boundaries["lambda_tilde"] = lambda_tilde(gamma, d)
        margins[Mechanism.LINEAR_INSTABILITY.value] = a - boundaries["a_tilde"]
        if lam > boundaries["lambda_tilde"]:
            fired.append(Mechanism.LINEAR_INSTABILITY)

        boundaries["lambda_sb"] = lambda_sb(gamma, d)
        margins[Mechanism.LS_COMPARISON.value] = a - a_of_lambda(d, boundaries["lambda_sb"])
        if lam > boundaries["lambda_sb"]:
            fired.append(Mechanism.LS_COMPARISON)

    verdict = _finish_verdict(fired, False, margins, boundaries)
    logger.debug(f"WLH (gamma={gamma}, a={a}, d={d}) -> {verdict.verdict.value}")
    return verdict


CKN_AXES = ("d", "p", "theta", "a", "lambda")
WLH_AXES = ("d", "gamma", "a", "lambda")
CKN_COLUMNS = ("a_bar", "a_fs", "a_minus", "theta_big", "a0", "big_l")
WLH_COLUMNS = ("a_tilde", "lambda_tilde", "lambda_sb")


@dataclass(frozen=True)
class SweepSpec:
    """Rectangular grid over two parameters with the others fixed."""
    kind: str
    x_name: str
    x_values: Tuple[float, ...]
    y_name: str
    y_values: Tuple[float, ...]
    fixed: Dict[str, float] = field(default_factory=dict)

    def points(self) -> List[Dict[str, float]]:
        """Grid points in row-major order (x outer, y inner)."""
        return [{**self.fixed, self.x_name: x, self.y_name: y}
                for x in self.x_values for y in self.y_values]


def validate_sweep_spec(spec: SweepSpec):
    """Reject malformed grids before any point is evaluated."""
    if spec.kind not in ("ckn", "wlh"):
        raise InvalidParameterError(f"unknown sweep kind '{spec.kind}'")
    axes = CKN_AXES if spec.kind == "ckn" else WLH_AXES
    for name in (spec.x_name, spec.y_name, *spec.fixed):
        if name not in axes:
            raise InvalidParameterError(f"'{name}' is not a {spec.kind} parameter")
    if spec.x_name == spec.y_name or spec.x_name in spec.fixed or spec.y_name in spec.fixed:
        raise InvalidParameterError("sweep axes must be distinct and not fixed")
    if not spec.x_values or not spec.y_values:
        raise InvalidParameterError("sweep axes must hold at least one value")
    bound = {spec.x_name, spec.y_name, *spec.fixed}
    required = {"d", "p", "theta"} if spec.kind == "ckn" else {"d", "gamma"}
    missing = required - bound
    if missing or not ({"a", "lambda"} & bound):
        raise InvalidParameterError(f"sweep leaves parameters unbound: {sorted(missing) or ['a or lambda']}")
    if {"a", "lambda"} <= bound:
        raise InvalidParameterError("bind either a or lambda, not both")


def _point_a(point: Dict[str, float]) -> float:
    if "a" in point:
        return point["a"]
    return a_of_lambda(point["d"], point["lambda"])


def _record_layout(kind: str) -> Tuple[Tuple[str, ...], List[str], Tuple[str, ...]]:
    if kind == "ckn":
        mechanisms = [m.value for m in Mechanism if m is not Mechanism.LS_COMPARISON]
        return CKN_AXES, mechanisms, CKN_COLUMNS
    mechanisms = [Mechanism.LINEAR_INSTABILITY.value, Mechanism.LS_COMPARISON.value]
    return WLH_AXES, mechanisms, WLH_COLUMNS


def classification_record(kind: str, point: Dict[str, float]) -> Dict[str, object]:
    """
    Classify one point given by name and flatten the verdict into a record.

    Args:
        kind: ``ckn`` or ``wlh``
        point: Parameter values; ``a`` or ``lambda`` fixes the weight

    Returns:
        Record with the parameters, verdict, mechanisms, margins and boundaries
    """
    axes, mechanisms, columns = _record_layout(kind)
    missing = [name for name in axes if name not in ("a", "lambda") and name not in point]
    if missing or not ({"a", "lambda"} & set(point)):
        raise InvalidParameterError(f"{kind} point leaves parameters unbound: {missing or ['a or lambda']}")
    d = int(point["d"])
    if d != point["d"]:
        raise InadmissibleParameters([f"d must be an integer >= 1 (d={point['d']})"])
    a = _point_a(point)
    if kind == "ckn":
        verdict = classify_ckn(point["theta"], point["p"], a, d)
    else:
        verdict = classify_wlh(point["gamma"], a, d)

    record: Dict[str, object] = {name: point.get(name, math.nan) for name in axes}
    record.update({"a": a, "lambda": (a - a_critical(d)) ** 2})
    record["verdict"] = verdict.verdict.value
    record["mechanisms"] = ";".join(m.value for m in verdict.mechanisms)
    record.update({f"margin_{m}": verdict.margins.get(m, math.nan) for m in mechanisms})
    record.update({name: verdict.boundaries.get(name, math.nan) for name in columns})
    return record


def _sweep_row(kind: str, index: int, point: Dict[str, float]) -> Dict[str, object]:
    try:
        record = classification_record(kind, point)
    except (InvalidParameterError, InconsistentVerdictError, ArithmeticError) as e:
        axes, mechanisms, columns = _record_layout(kind)
        record = {name: point.get(name, math.nan) for name in axes}
        record.update({"verdict": "", "mechanisms": ""})
        record.update({f"margin_{m}": math.nan for m in mechanisms})
        record.update({name: math.nan for name in columns})
        record["error"] = str(e)
    else:
        record["error"] = ""
    return {"index": index, **record}


def sweep_threads() -> int:
    """Worker count from CKNSYM_THREADS, defaulting to the machine's CPU count."""
    value = os.environ.get("CKNSYM_THREADS")
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            logger.warning(f"Ignoring invalid CKNSYM_THREADS={value!r}")
    return os.cpu_count() or 1


def sweep(spec: SweepSpec, threads: Optional[int] = None) -> List[Dict[str, object]]:
    """
    Classify every point of a rectangular grid.

    Points may be evaluated concurrently; rows are returned in grid order.
    Per-point failures are recorded in the row's ``error`` column.

    Args:
        spec: Grid specification
        threads: Worker cap (defaults to ``sweep_threads()``)

    Returns:
        One flat record per grid point
    """
    validate_sweep_spec(spec)
    points = spec.points()
    workers = threads or sweep_threads()
    logger.info(f"Sweeping {len(points)} {spec.kind} points on {workers} thread(s)")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda item: _sweep_row(spec.kind, *item), enumerate(points)))
    return rows
