"""
Discretized functionals on the truncated cylinder (-s_max, s_max) x S^{d-1}.

Fields depend on the axial variable s and on the azimuthal angle phi in
(0, pi). The s direction uses interior nodes of a uniform grid with
homogeneous Dirichlet ghosts at +-s_max and second-order differences. The
angular direction uses Gauss-Jacobi nodes for the weight (sin phi)^{d-2}
(x = cos phi, alpha = beta = (d-3)/2) and the zonal spherical harmonics,
which are Jacobi polynomials in cos phi with eigenvalues k(k+d-2). Every
quadratic quantity is evaluated on the modal coefficients, so the angular
part is exact and carries the natural Neumann condition at phi = 0, pi.

Two measure scalings are used: F integrates against the sphere measure
normalized to unit mass, G against the full measure
omega_{d-2} (sin phi)^{d-2} dphi ds.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np
from scipy.fft import dst
from scipy.interpolate import CubicSpline
from scipy.special import eval_jacobi, roots_jacobi

from .errors import InvalidParameterError
from .specfun import ln_gamma

logger = logging.getLogger(__name__)

MIN_S_NODES = 16
MIN_PHI_NODES = 8

# x log x is extended by continuity below this value of w^2
ENTROPY_FLOOR = 1e-300

# Half-steps scanned on each side of the mass center when recentering
RECENTER_HALF_STEPS = 32

# Relative size tolerated where a rescaled field leaves the grid
SCALING_SUPPORT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class CylinderGrid:
    """Tensor grid in (s, phi) with its quadrature and zonal basis."""
    s_max: float
    n_s: int
    n_phi: int
    d: int
    h: float
    s: np.ndarray
    phi: np.ndarray
    weights: np.ndarray
    basis: np.ndarray
    eigenvalues: np.ndarray
    analysis: np.ndarray = field(repr=False)

    @property
    def radial(self) -> bool:
        return self.n_phi == 1

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def refined(self) -> "CylinderGrid":
        """Grid with half the s step and twice the angular nodes."""
        n_phi = 1 if self.radial else 2 * self.n_phi
        return build_grid(self.s_max, 2 * (self.n_s + 1) - 1, n_phi, self.d)

    def extended(self, factor: float) -> "CylinderGrid":
        """Longer grid with the same s step."""
        n_s = int(round(2.0 * self.s_max * factor / self.h)) - 1
        s_max = 0.5 * (n_s + 1) * self.h
        return build_grid(s_max, n_s, self.n_phi, self.d)

    def with_angles(self, n_phi: int) -> "CylinderGrid":
        return build_grid(self.s_max, self.n_s, n_phi, self.d)


def log_weight_integral(d: int) -> float:
    """ln of the integral of (sin phi)^{d-2} over (0, pi)."""
    return 0.5 * math.log(math.pi) + ln_gamma(0.5 * (d - 1)) - ln_gamma(0.5 * d)


def subsphere_area(d: int) -> float:
    """omega_{d-2} = |S^{d-2}| = 2 pi^{(d-1)/2} / Gamma((d-1)/2)."""
    return math.exp(math.log(2.0) + 0.5 * (d - 1) * math.log(math.pi) - ln_gamma(0.5 * (d - 1)))


def build_grid(s_max: float, n_s: int, n_phi: int, d: int) -> CylinderGrid:
    """
    Build a cylinder grid.

    Args:
        s_max: Truncation half-length
        n_s: Number of interior s nodes (>= 16)
        n_phi: Angular nodes; 1 collapses the grid to radial fields, otherwise >= 8
        d: Dimension (>= 2), fixes the angular weight

    Returns:
        CylinderGrid
    """
    if not s_max > 0:
        raise InvalidParameterError(f"s_max must be positive, got {s_max}")
    if n_s < MIN_S_NODES:
        raise InvalidParameterError(f"n_s must be >= {MIN_S_NODES}, got {n_s}")
    if n_phi != 1 and n_phi < MIN_PHI_NODES:
        raise InvalidParameterError(f"n_phi must be 1 or >= {MIN_PHI_NODES}, got {n_phi}")
    if int(d) != d or d < 2:
        raise InvalidParameterError(f"cylinder grids require an integer d >= 2, got {d}")

    h = 2.0 * s_max / (n_s + 1)
    s = -s_max + h * np.arange(1, n_s + 1)

    if n_phi == 1:
        total = math.exp(log_weight_integral(d))
        phi = np.zeros(1)
        weights = np.array([total])
        basis = np.array([[1.0 / math.sqrt(total)]])
        eigenvalues = np.zeros(1)
    else:
        alpha = 0.5 * (d - 3)
        x, weights = roots_jacobi(n_phi, alpha, alpha)
        order = np.argsort(-x)
        x, weights = x[order], weights[order]
        phi = np.arccos(x)
        k = np.arange(n_phi)
        basis = eval_jacobi(k[None, :], alpha, alpha, x[:, None])
        basis /= np.sqrt(weights @ basis ** 2)[None, :]
        eigenvalues = k * (k + d - 2.0)

    analysis = weights[:, None] * basis
    grid = CylinderGrid(s_max=float(s_max), n_s=int(n_s), n_phi=int(n_phi), d=int(d), h=h,
                        s=s, phi=phi, weights=weights, basis=basis,
                        eigenvalues=eigenvalues.astype(float), analysis=analysis)
    logger.debug(f"Built grid s_max={s_max}, n_s={n_s}, n_phi={n_phi}, d={d}, h={h:.4g}")
    return grid


@dataclass(frozen=True, eq=False)
class CylinderField:
    """Nodal values w(s_i, phi_j) on a CylinderGrid."""
    grid: CylinderGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = np.repeat(values[:, None], self.grid.n_phi, axis=1)
        if values.shape != (self.grid.n_s, self.grid.n_phi):
            raise InvalidParameterError(
                f"field shape {values.shape} does not match grid {(self.grid.n_s, self.grid.n_phi)}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_modes(cls, grid: CylinderGrid, coefficients: np.ndarray) -> "CylinderField":
        return cls(grid, coefficients @ grid.basis.T)

    def modes(self) -> np.ndarray:
        """Coefficients in the orthonormal zonal basis."""
        return self.values @ self.grid.analysis

    @property
    def radial_flag(self) -> bool:
        """True when the field does not depend on phi."""
        spread = np.ptp(self.values, axis=1).max()
        return bool(spread <= 1e-14 * max(np.abs(self.values).max(), 1e-300))

    def scaled(self, factor: float) -> "CylinderField":
        return CylinderField(self.grid, factor * self.values)


def _check_field(w: CylinderField):
    if not np.all(np.isfinite(w.values)):
        raise InvalidParameterError("field holds non-finite values")
    if not np.any(w.values):
        raise InvalidParameterError("field is identically zero")


def f_measure_scale(grid: CylinderGrid) -> float:
    """Angular measure factor for F (unit-mass sphere)."""
    return 1.0 / grid.total_weight


def g_measure_scale(grid: CylinderGrid) -> float:
    """Angular measure factor for G (full sphere measure)."""
    return subsphere_area(grid.d)


@dataclass(frozen=True)
class Energies:
    """Quadrature values of the pieces of both functionals."""
    axial: float
    angular: float
    mass: float
    lp: float = math.nan

    @property
    def gradient(self) -> float:
        return self.axial + self.angular

    @property
    def t(self) -> float:
        return self.gradient / self.mass

    @property
    def angular_fraction(self) -> float:
        total = self.gradient
        return self.angular / total if total > 0 else 0.0


def _axial_differences(coefficients: np.ndarray) -> np.ndarray:
    padded = np.pad(coefficients, ((1, 1), (0, 0)))
    return np.diff(padded, axis=0)


def compute_energies(grid: CylinderGrid, coefficients: np.ndarray, values: np.ndarray,
                     scale: float, p: float = math.nan) -> Energies:
    """
    Axial and angular Dirichlet energies, squared L^2 norm and optionally sum |w|^p.

    Args:
        grid: Cylinder grid
        coefficients: Modal coefficients
        values: Matching nodal values
        scale: Angular measure factor
        p: Exponent of the L^p term (skipped when NaN)

    Returns:
        Energies
    """
    h = grid.h
    axial = scale / h * float(np.sum(_axial_differences(coefficients) ** 2))
    angular = scale * h * float(np.sum(grid.eigenvalues[None, :] * coefficients ** 2))
    mass = scale * h * float(np.sum(coefficients ** 2))
    lp = math.nan
    if not math.isnan(p):
        lp = scale * h * float(np.sum(grid.weights[None, :] * np.abs(values) ** p))
    return Energies(axial=axial, angular=angular, mass=mass, lp=lp)


def _quadratic_gradient(grid: CylinderGrid, coefficients: np.ndarray, scale: float,
                        lam: float) -> Tuple[np.ndarray, np.ndarray]:
    """Gradients of ||grad w||^2 + lam ||w||^2 and of ||w||^2 in modal coordinates."""
    h = grid.h
    stiffness = -np.diff(_axial_differences(coefficients), axis=0) / h
    mass = 2.0 * scale * h * coefficients
    energy = 2.0 * scale * stiffness + mass * (grid.eigenvalues[None, :] + lam)
    return energy, mass


def log_f_and_gradient(grid: CylinderGrid, coefficients: np.ndarray, theta: float,
                       p: float, lam: float) -> Tuple[float, np.ndarray, Energies]:
    """
    ln F and its gradient with respect to the modal coefficients.

    F = (||grad w||^2 + lam ||w||^2) ||w||^{2(1-theta)/theta} / ||w||_p^{2/theta}.
    """
    scale = f_measure_scale(grid)
    values = coefficients @ grid.basis.T
    energies = compute_energies(grid, coefficients, values, scale, p)
    a = (1.0 - theta) / theta
    b = 2.0 / (p * theta)
    total = energies.gradient + lam * energies.mass
    log_value = math.log(total) + a * math.log(energies.mass) - b * math.log(energies.lp)

    d_total, d_mass = _quadratic_gradient(grid, coefficients, scale, lam)
    d_lp = (scale * grid.h * p * grid.weights[None, :]
            * np.abs(values) ** (p - 2.0) * values) @ grid.basis
    gradient = d_total / total + a * d_mass / energies.mass - b * d_lp / energies.lp
    return log_value, gradient, energies


def log_g_and_gradient(grid: CylinderGrid, coefficients: np.ndarray, gamma: float,
                       lam: float) -> Tuple[float, np.ndarray, Energies]:
    """
    ln G and its gradient with respect to the modal coefficients.

    G = (||grad w||^2 + lam ||w||^2) / ||w||^2
        * exp(-(1/(2 gamma)) int (w^2/||w||^2) ln(w^2/||w||^2)).
    """
    scale = g_measure_scale(grid)
    values = coefficients @ grid.basis.T
    energies = compute_energies(grid, coefficients, values, scale)
    total = energies.gradient + lam * energies.mass

    squares = values * values
    log_squares = np.log(np.maximum(squares, ENTROPY_FLOOR))
    quad = scale * grid.h * grid.weights[None, :]
    entropy = float(np.sum(quad * squares * log_squares))
    c = 1.0 - 1.0 / (2.0 * gamma)
    log_value = (math.log(total) - c * math.log(energies.mass)
                 - entropy / (2.0 * gamma * energies.mass))

    d_total, d_mass = _quadratic_gradient(grid, coefficients, scale, lam)
    d_entropy = (quad * 2.0 * values * (log_squares + (squares >= ENTROPY_FLOOR))) @ grid.basis
    gradient = (d_total / total - c * d_mass / energies.mass
                - (d_entropy / energies.mass - entropy * d_mass / energies.mass ** 2) / (2.0 * gamma))
    return log_value, gradient, energies


def eval_F(w: CylinderField, theta: float, p: float, lam: float) -> float:
    """
    Discretized CKN quotient on the cylinder.

    Args:
        w: Nonzero field
        theta: Interpolation parameter in (0, 1]
        p: Exponent > 2
        lam: Lambda > 0

    Returns:
        F_{theta,p,Lambda}[w]; its infimum is C_CKN^{-1/theta}
    """
    _check_field(w)
    log_value, _, _ = log_f_and_gradient(w.grid, w.modes(), theta, p, lam)
    return math.exp(log_value)


def grad_F(w: CylinderField, theta: float, p: float, lam: float) -> np.ndarray:
    """Gradient of eval_F with respect to the nodal values."""
    _check_field(w)
    log_value, gradient, _ = log_f_and_gradient(w.grid, w.modes(), theta, p, lam)
    return math.exp(log_value) * gradient @ w.grid.analysis.T


def eval_G(w: CylinderField, gamma: float, lam: float) -> float:
    """
    Discretized weighted logarithmic Hardy quotient on the cylinder.

    Args:
        w: Nonzero field
        gamma: Exponent
        lam: Lambda > 0

    Returns:
        G_{gamma,Lambda}[w]; its infimum is 1/C_WLH
    """
    _check_field(w)
    log_value, _, _ = log_g_and_gradient(w.grid, w.modes(), gamma, lam)
    return math.exp(log_value)


def grad_G(w: CylinderField, gamma: float, lam: float) -> np.ndarray:
    """Gradient of eval_G with respect to the nodal values."""
    _check_field(w)
    log_value, gradient, _ = log_g_and_gradient(w.grid, w.modes(), gamma, lam)
    return math.exp(log_value) * gradient @ w.grid.analysis.T


def _weighted_norm(grid: CylinderGrid, values: np.ndarray) -> float:
    return math.sqrt(float(np.sum(grid.weights[None, :] * values ** 2)))


def s_symmetry_residual(w: CylinderField) -> float:
    """
    ||w(c - s, .) - w(c + s, .)|| / ||w|| minimized over reflection centers c.

    Centers are nodes or midpoints near the L^2 mass center; values reflected
    past the truncation are taken as zero.
    """
    grid = w.grid
    values = w.values
    norm = _weighted_norm(grid, values)
    mass = values ** 2 @ grid.weights
    center = float(np.sum(np.arange(grid.n_s) * mass) / np.sum(mass))

    base = int(round(2.0 * center))
    indices = np.arange(grid.n_s)
    best = math.inf
    for twice_center in range(base - RECENTER_HALF_STEPS, base + RECENTER_HALF_STEPS + 1):
        mirror = twice_center - indices
        inside = (mirror >= 0) & (mirror < grid.n_s)
        reflected = np.zeros_like(values)
        reflected[inside] = values[mirror[inside]]
        best = min(best, _weighted_norm(grid, values - reflected) / norm)
    return best


def symmetry_diagnostics(w: CylinderField) -> Tuple[float, float]:
    """
    Return (angular_fraction, s_symmetry_residual) of a field.

    angular_fraction is the share of the Dirichlet energy carried by
    derivatives along the sphere.
    """
    _check_field(w)
    coefficients = w.modes()
    energies = compute_energies(w.grid, coefficients, w.values, 1.0)
    return energies.angular_fraction, s_symmetry_residual(w)


def rescale_field(w: CylinderField, sigma: float) -> CylinderField:
    """
    w_sigma(s, phi) = w(sigma s, phi) by cubic interpolation in s.

    The field is extended by its Dirichlet zeros at +-s_max and by zero beyond.
    """
    if not sigma > 0:
        raise InvalidParameterError(f"sigma must be positive, got {sigma}")
    grid = w.grid
    peak = np.abs(w.values).max()
    if sigma < 1.0:
        outside = np.abs(grid.s) > sigma * grid.s_max
        if np.any(outside) and np.abs(w.values[outside]).max() > SCALING_SUPPORT_TOL * peak:
            raise InvalidParameterError(
                f"sigma={sigma} pulls unresolved tails of the field into the grid")

    nodes = np.concatenate(([-grid.s_max], grid.s, [grid.s_max]))
    padded = np.pad(w.values, ((1, 1), (0, 0)))
    spline = CubicSpline(nodes, padded, axis=0)
    targets = sigma * grid.s
    inside = np.abs(targets)[:, None] <= grid.s_max
    values = np.where(inside, spline(np.clip(targets, -grid.s_max, grid.s_max)), 0.0)
    return CylinderField(grid, values)


def scaling_identity_residual(w: CylinderField, sigma: float, theta: float, p: float,
                              lam: float) -> float:
    """
    Relative defect of the scaling law of F under s -> sigma s.

    With w_sigma(s, phi) = w(sigma s, phi),

        F_{sigma^2 Lambda}[w_sigma]
            = sigma^{2 - 1/theta + 2/(p theta)}
              (F_Lambda[w] - (1 - sigma^{-2}) A[w] ||w||^{2(1-theta)/theta} / ||w||_p^{2/theta})

    where A[w] is the angular Dirichlet energy.

    Args:
        w: Nonzero field
        sigma: Scaling factor
        theta: Interpolation parameter
        p: Exponent
        lam: Lambda

    Returns:
        |lhs - rhs| / |lhs|
    """
    _check_field(w)
    grid = w.grid
    coefficients = w.modes()
    energies = compute_energies(grid, coefficients, w.values, f_measure_scale(grid), p)
    a = (1.0 - theta) / theta
    b = 2.0 / (p * theta)
    angular_term = energies.angular * energies.mass ** a / energies.lp ** b

    lhs = eval_F(rescale_field(w, sigma), theta, p, sigma * sigma * lam)
    exponent = 2.0 - 1.0 / theta + 2.0 / (p * theta)
    rhs = sigma ** exponent * (eval_F(w, theta, p, lam) - (1.0 - sigma ** -2) * angular_term)
    residual = abs(lhs - rhs) / abs(lhs)
    logger.debug(f"Scaling residual at sigma={sigma}: {residual:.3e}")
    return residual


def euler_lagrange_factor(energies: Energies, theta: float, p: float, lam: float) -> float:
    """
    Factor k such that k w solves the Euler-Lagrange equation of F in the form

        -theta Delta w + ((1-theta) t + Lambda) w = (t + Lambda)^{1-theta} |w|^{p-2} w,

    so that ||k w||_p^{p-2} = F^theta.
    """
    total = energies.gradient + lam * energies.mass
    log_k = (theta * math.log(total) + (1.0 - theta) * math.log(energies.mass)
             - math.log(energies.lp)) / (p - 2.0)
    return math.exp(log_k)


def euler_lagrange_normalize(w: CylinderField, theta: float, p: float, lam: float) -> CylinderField:
    """Rescale a field by its ``euler_lagrange_factor``; F is unchanged."""
    _check_field(w)
    grid = w.grid
    energies = compute_energies(grid, w.modes(), w.values, f_measure_scale(grid), p)
    return w.scaled(euler_lagrange_factor(energies, theta, p, lam))


def euler_lagrange_residual(w: CylinderField, theta: float, p: float, lam: float) -> float:
    """
    Relative Euler-Lagrange defect of an F minimizer in the dual energy norm.

    The field is first rescaled by ``euler_lagrange_factor``; t is recomputed
    from it. The residual r = -theta Delta w + ((1-theta) t + Lambda) w
    - (t+Lambda)^{1-theta} |w|^{p-2} w is measured against the nonlinear term,
    both in the norm dual to the quadratic form of -Delta + Lambda.
    """
    _check_field(w)
    grid = w.grid
    scale = f_measure_scale(grid)
    coefficients = w.modes()
    energies = compute_energies(grid, coefficients, w.values, scale, p)
    k = euler_lagrange_factor(energies, theta, p, lam)
    coefficients = k * coefficients
    values = k * w.values
    t = energies.t

    stiffness = -np.diff(_axial_differences(coefficients), axis=0) / grid.h ** 2
    linear = theta * (stiffness + grid.eigenvalues[None, :] * coefficients) \
        + ((1.0 - theta) * t + lam) * coefficients
    nonlinear = (t + lam) ** (1.0 - theta) * (np.abs(values) ** (p - 2.0) * values) @ grid.analysis
    dual_residual = dual_energy_norm(grid, linear - nonlinear, lam)
    return dual_residual / dual_energy_norm(grid, nonlinear, lam)


def dirichlet_symbols(grid: CylinderGrid) -> np.ndarray:
    """Eigenvalues of the discrete -d^2/ds^2 with Dirichlet ends, in sine-mode order."""
    m = np.arange(1, grid.n_s + 1)
    return 4.0 / grid.h ** 2 * np.sin(0.5 * math.pi * m / (grid.n_s + 1)) ** 2


def dual_energy_norm(grid: CylinderGrid, coefficients: np.ndarray, lam: float) -> float:
    """Norm of a modal array in the dual of the -Delta + Lambda energy."""
    sine = dst(coefficients, type=1, norm="ortho", axis=0)
    symbols = dirichlet_symbols(grid)[:, None] + grid.eigenvalues[None, :] + lam
    return math.sqrt(float(np.sum(sine ** 2 / symbols)))


def poincare_margin(w: CylinderField, theta: float, p: float, lam: float) -> float:
    """
    (t+Lambda)^{1-theta} (p-1) max|w|^{p-2} - (theta (d-1) + (1-theta) t + Lambda)

    for the Euler-Lagrange normalized field. A minimizer that depends on phi
    has a positive margin.
    """
    _check_field(w)
    grid = w.grid
    energies = compute_energies(grid, w.modes(), w.values, f_measure_scale(grid), p)
    k = euler_lagrange_factor(energies, theta, p, lam)
    t = energies.t
    peak = k * np.abs(w.values).max()
    return ((t + lam) ** (1.0 - theta) * (p - 1.0) * peak ** (p - 2.0)
            - (theta * (grid.d - 1.0) + (1.0 - theta) * t + lam))


def profile_rows(w: CylinderField) -> Dict[str, np.ndarray]:
    """Flattened (s, phi, w) columns of a field, s-major."""
    grid = w.grid
    s, phi = np.meshgrid(grid.s, grid.phi, indexing="ij")
    return {"s": s.ravel(), "phi": phi.ravel(), "w": w.values.ravel()}


def transfer_field(w: CylinderField, grid: CylinderGrid) -> CylinderField:
    """Interpolate a field onto another grid with the same angular nodes."""
    if grid.n_phi != w.grid.n_phi or grid.d != w.grid.d:
        raise InvalidParameterError("fields can only be transferred between grids with equal angles")
    old = w.grid
    nodes = np.concatenate(([-old.s_max], old.s, [old.s_max]))
    spline = CubicSpline(nodes, np.pad(w.values, ((1, 1), (0, 0))), axis=0)
    inside = np.abs(grid.s)[:, None] <= old.s_max
    values = np.where(inside, spline(np.clip(grid.s, -old.s_max, old.s_max)), 0.0)
    return CylinderField(grid, values)
