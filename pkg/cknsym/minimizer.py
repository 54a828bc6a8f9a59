"""
Minimization of the cylinder quotients F and G.

The unknowns are the zonal modal coefficients of the field. Descent runs in
sine-transformed, diagonally preconditioned variables, where the quadratic
part of both quotients is close to the identity, using scipy's nonlinear
conjugate gradient on the scale-invariant logarithm of the quotient. The
iterate is renormalized between restarts.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np
from scipy.fft import dst
from scipy.optimize import minimize

from .cylinder import (CylinderField, CylinderGrid, compute_energies, dirichlet_symbols,
                       euler_lagrange_normalize, f_measure_scale, g_measure_scale,
                       log_f_and_gradient, log_g_and_gradient, s_symmetry_residual,
                       transfer_field)
from .errors import InvalidParameterError, NonConvergenceError
from .params import BOUNDARY_SLACK, CknParams, WlhParams, validate_ckn, validate_wlh

logger = logging.getLogger(__name__)

LOG_TWO = math.log(2.0)


class InitStrategy(Enum):
    """Starting field of a minimization."""
    RADIAL = "radial"
    PERTURBED = "perturbed"
    CONCENTRATED = "concentrated"


Init = Union[InitStrategy, str, CylinderField]


@dataclass(frozen=True, eq=False)
class MinimizationResult:
    """Converged (or best partial) minimizer of F or G."""
    functional: str
    value: float
    log_value: float
    t: float
    profile: CylinderField
    iterations: int
    converged: bool
    angular_fraction: float
    s_symmetry_residual: float
    decay_ok: bool = True
    parameters: Dict[str, float] = field(default_factory=dict)

    @property
    def grid(self) -> CylinderGrid:
        return self.profile.grid

    def as_record(self) -> Dict[str, object]:
        """Flat record for CSV/JSON emission."""
        grid = self.grid
        record: Dict[str, object] = {"functional": self.functional}
        record.update(self.parameters)
        record.update({
            "d": grid.d,
            "s_max": grid.s_max,
            "n_s": grid.n_s,
            "n_phi": grid.n_phi,
            "value": self.value,
            "log_value": self.log_value,
            "t": self.t,
            "iterations": self.iterations,
            "converged": self.converged,
            "angular_fraction": self.angular_fraction,
            "s_symmetry_residual": self.s_symmetry_residual,
            "decay_ok": self.decay_ok,
        })
        return record


@dataclass(frozen=True)
class _Problem:
    functional: str
    lam: float
    log_and_gradient: Callable[[CylinderGrid, np.ndarray], Tuple[float, np.ndarray, object]]
    radial_shape: Callable[[np.ndarray], np.ndarray]
    parameters: Dict[str, float]
    theta: float = 1.0
    p: float = math.nan


def _log_cosh(x: np.ndarray) -> np.ndarray:
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax)) - LOG_TWO


class CylinderMinimizer:
    """
    Minimizes the cylinder quotients from a chosen starting field.

    If the minimizer has not decayed at the truncation ends the run is
    repeated on a longer grid with the same step.
    """

    def __init__(self, config: Optional[dict] = None):
        """
        Initialize the minimizer.

        Args:
            config: ``minimizer`` configuration section
        """
        config = config or {}
        self.value_tol = config.get('value_tol', 1e-10)
        self.gtol = config.get('gtol', 1e-10)
        self.max_iterations = int(config.get('max_iterations', 50000))
        self.restarts = int(config.get('restarts', 8))
        self.decay_tol = config.get('decay_tol', 1e-10)
        self.max_extensions = int(config.get('max_extensions', 3))
        self.extension_factor = config.get('extension_factor', 1.5)
        self.perturbation = config.get('perturbation', 0.1)
        self.concentration_width = config.get('concentration_width', 0.5)

        logger.debug(f"Minimizer: value_tol={self.value_tol}, gtol={self.gtol}, "
                     f"max_iterations={self.max_iterations}")

    def _ckn_problem(self, theta: float, p: float, lam: float, d: int) -> _Problem:
        if not lam > 0:
            raise InvalidParameterError(f"Lambda must be positive, got {lam}")
        params = CknParams.from_lambda(d, lam, p, theta)
        validate_ckn(params).raise_if_rejected()
        if not params.minimizable:
            raise InvalidParameterError(f"minimization requires 2 < p < 2*, got p={p}, d={d}")
        if abs(theta - params.theta_min) <= BOUNDARY_SLACK:
            logger.warning(f"theta = theta_min(d={d}, p={p}): extremals may not exist")

        kappa = 0.5 * (p - 2.0) * math.sqrt(lam / theta)

        def radial_shape(s: np.ndarray) -> np.ndarray:
            return np.exp(-2.0 / (p - 2.0) * _log_cosh(kappa * s))

        return _Problem(
            functional="F", lam=lam,
            log_and_gradient=lambda grid, c: log_f_and_gradient(grid, c, theta, p, lam),
            radial_shape=radial_shape,
            parameters={"theta": theta, "p": p, "lambda": lam},
            theta=theta, p=p)

    def _wlh_problem(self, gamma: float, lam: float, d: int) -> _Problem:
        if not lam > 0:
            raise InvalidParameterError(f"Lambda must be positive, got {lam}")
        validate_wlh(WlhParams.from_lambda(d, lam, gamma)).raise_if_rejected()
        if d == 1 or gamma <= 0.25:
            raise InvalidParameterError("G minimization requires d >= 2 and gamma > 1/4")

        def radial_shape(s: np.ndarray) -> np.ndarray:
            return np.exp(-lam * s * s / (4.0 * gamma))

        return _Problem(
            functional="G", lam=lam,
            log_and_gradient=lambda grid, c: log_g_and_gradient(grid, c, gamma, lam),
            radial_shape=radial_shape,
            parameters={"gamma": gamma, "lambda": lam})

    def _initial_field(self, problem: _Problem, grid: CylinderGrid, init: Init) -> CylinderField:
        if isinstance(init, CylinderField):
            if init.grid is grid:
                return init
            return transfer_field(init, grid)

        strategy = InitStrategy(init)
        radial = problem.radial_shape(grid.s)
        if strategy is InitStrategy.RADIAL or grid.radial:
            if strategy is InitStrategy.CONCENTRATED:
                width = self.concentration_width
                return CylinderField(grid, np.exp(-grid.s ** 2 / (2.0 * width ** 2)))
            return CylinderField(grid, radial)
        if strategy is InitStrategy.PERTURBED:
            angular = 1.0 + self.perturbation * np.cos(grid.phi)
            return CylinderField(grid, radial[:, None] * angular[None, :])
        width = self.concentration_width
        bump = np.exp(-(grid.s[:, None] ** 2 + grid.phi[None, :] ** 2) / (2.0 * width ** 2))
        return CylinderField(grid, bump)

    def _descend(self, problem: _Problem, start: CylinderField,
                 n_active: int) -> Tuple[np.ndarray, int, bool, float]:
        grid = start.grid
        symbols = (dirichlet_symbols(grid)[:, None]
                   + grid.eigenvalues[None, :n_active] + problem.lam)
        precond = 1.0 / np.sqrt(symbols)
        shape = (grid.n_s, n_active)

        def to_modes(y: np.ndarray) -> np.ndarray:
            coefficients = np.zeros((grid.n_s, grid.n_phi))
            coefficients[:, :n_active] = dst(y.reshape(shape) * precond, type=1, norm="ortho", axis=0)
            return coefficients

        def objective(y: np.ndarray) -> Tuple[float, np.ndarray]:
            value, gradient, _ = problem.log_and_gradient(grid, to_modes(y))
            dy = precond * dst(gradient[:, :n_active], type=1, norm="ortho", axis=0)
            return value, dy.ravel()

        y = (dst(start.modes()[:, :n_active], type=1, norm="ortho", axis=0) / precond).ravel()
        y /= np.linalg.norm(y)

        iterations = 0
        converged = False
        previous = math.inf
        value = math.inf
        for attempt in range(self.restarts):
            budget = self.max_iterations - iterations
            if budget <= 0:
                break
            result = minimize(objective, y, jac=True, method="CG",
                              options={"gtol": self.gtol, "maxiter": budget})
            iterations += int(result.nit)
            if not np.isfinite(result.fun):
                raise NonConvergenceError(f"{problem.functional} became non-finite after "
                                          f"{iterations} iterations")
            y = result.x / np.linalg.norm(result.x)
            value = float(result.fun)
            logger.debug(f"Restart {attempt}: ln {problem.functional} = {value:.15g}, "
                         f"nit={result.nit}, status={result.status}")
            if result.success or abs(previous - value) <= self.value_tol:
                converged = True
                break
            previous = value
        return to_modes(y), iterations, converged, value

    def _finish(self, problem: _Problem, grid: CylinderGrid, coefficients: np.ndarray,
                iterations: int, converged: bool, log_value: float,
                decay_ok: bool) -> MinimizationResult:
        values = coefficients @ grid.basis.T
        if values.max() < -values.min():
            values, coefficients = -values, -coefficients

        if problem.functional == "F":
            energies = compute_energies(grid, coefficients, values, f_measure_scale(grid), problem.p)
            profile = euler_lagrange_normalize(CylinderField(grid, values),
                                               problem.theta, problem.p, problem.lam)
        else:
            energies = compute_energies(grid, coefficients, values, g_measure_scale(grid))
            profile = CylinderField(grid, values / math.sqrt(energies.mass))

        return MinimizationResult(
            functional=problem.functional,
            value=math.exp(log_value),
            log_value=log_value,
            t=energies.t,
            profile=profile,
            iterations=iterations,
            converged=converged,
            angular_fraction=energies.angular_fraction,
            s_symmetry_residual=s_symmetry_residual(profile),
            decay_ok=decay_ok,
            parameters=dict(problem.parameters))

    def _decayed(self, grid: CylinderGrid, coefficients: np.ndarray) -> bool:
        values = np.abs(coefficients @ grid.basis.T)
        edge = max(values[0].max(), values[-1].max())
        return bool(edge < self.decay_tol * values.max())

    def _run(self, problem: _Problem, grid: CylinderGrid, init: Init) -> MinimizationResult:
        start = self._initial_field(problem, grid, init)
        if not np.any(start.values):
            raise InvalidParameterError("initial field is identically zero")
        radial = (isinstance(init, CylinderField) and start.radial_flag) or \
            (not isinstance(init, CylinderField) and InitStrategy(init) is InitStrategy.RADIAL)
        n_active = 1 if radial or grid.radial else grid.n_phi

        total_iterations = 0
        for extension in range(self.max_extensions + 1):
            coefficients, iterations, converged, log_value = self._descend(problem, start, n_active)
            total_iterations += iterations
            decay_ok = self._decayed(grid, coefficients)
            if not converged or decay_ok or extension == self.max_extensions:
                break
            grid = grid.extended(self.extension_factor)
            logger.info(f"Minimizer not decayed at the ends; extending to s_max={grid.s_max:.4g} "
                        f"(n_s={grid.n_s})")
            start = transfer_field(CylinderField.from_modes(start.grid, coefficients), grid)

        if not decay_ok:
            logger.warning(f"{problem.functional} minimizer still above the decay tolerance "
                           f"at s_max={grid.s_max:.4g}")

        result = self._finish(problem, grid, coefficients, total_iterations, converged,
                              log_value, decay_ok)
        if not converged:
            raise NonConvergenceError(
                f"{problem.functional} minimization did not converge in {total_iterations} "
                f"iterations (best value {result.value:.12g})", result=result)
        logger.info(f"{problem.functional}{result.parameters} on n_s={grid.n_s}, n_phi={grid.n_phi}: "
                    f"value={result.value:.12g}, angular_fraction={result.angular_fraction:.3e}, "
                    f"iterations={total_iterations}")
        return result

    def minimize_radial_F(self, theta: float, p: float, lam: float,
                          grid: CylinderGrid) -> MinimizationResult:
        """
        Minimize F over fields depending on s only.

        Args:
            theta: Interpolation parameter
            p: Exponent
            lam: Lambda > 0
            grid: Cylinder grid; only its s nodes are used

        Returns:
            MinimizationResult whose value approaches C*_CKN(theta,p,Lambda)^{-1/theta}
        """
        radial_grid = grid if grid.radial else grid.with_angles(1)
        problem = self._ckn_problem(theta, p, lam, radial_grid.d)
        return self._run(problem, radial_grid, InitStrategy.RADIAL)

    def minimize_radial_G(self, gamma: float, lam: float, grid: CylinderGrid) -> MinimizationResult:
        """Minimize G over fields depending on s only; the value approaches 1/C*_WLH."""
        radial_grid = grid if grid.radial else grid.with_angles(1)
        problem = self._wlh_problem(gamma, lam, radial_grid.d)
        return self._run(problem, radial_grid, InitStrategy.RADIAL)

    def minimize_F(self, theta: float, p: float, lam: float, grid: CylinderGrid,
                   init: Init = InitStrategy.PERTURBED) -> MinimizationResult:
        """
        Minimize F over fields of (s, phi).

        A radial start keeps every iterate radial, so the result then equals
        the radial minimum.

        Args:
            theta: Interpolation parameter
            p: Exponent
            lam: Lambda > 0
            grid: Cylinder grid
            init: Starting strategy or a supplied field on ``grid``

        Returns:
            MinimizationResult
        """
        problem = self._ckn_problem(theta, p, lam, grid.d)
        return self._run(problem, grid, init)

    def minimize_G(self, gamma: float, lam: float, grid: CylinderGrid,
                   init: Init = InitStrategy.PERTURBED) -> MinimizationResult:
        """Minimize G over fields of (s, phi); see ``minimize_F``."""
        problem = self._wlh_problem(gamma, lam, grid.d)
        return self._run(problem, grid, init)


def minimize_radial_F(theta: float, p: float, lam: float, grid: CylinderGrid,
                      config: Optional[dict] = None) -> MinimizationResult:
    return CylinderMinimizer(config).minimize_radial_F(theta, p, lam, grid)


def minimize_radial_G(gamma: float, lam: float, grid: CylinderGrid,
                      config: Optional[dict] = None) -> MinimizationResult:
    return CylinderMinimizer(config).minimize_radial_G(gamma, lam, grid)


def minimize_F(theta: float, p: float, lam: float, grid: CylinderGrid,
               init: Init = InitStrategy.PERTURBED, config: Optional[dict] = None) -> MinimizationResult:
    return CylinderMinimizer(config).minimize_F(theta, p, lam, grid, init)


def minimize_G(gamma: float, lam: float, grid: CylinderGrid,
               init: Init = InitStrategy.PERTURBED, config: Optional[dict] = None) -> MinimizationResult:
    return CylinderMinimizer(config).minimize_G(gamma, lam, grid, init)
