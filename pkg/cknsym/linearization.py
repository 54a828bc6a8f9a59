"""
Linearized stability of radial CKN minimizers in the first angular harmonic.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .cylinder import CylinderGrid, compute_energies, euler_lagrange_factor, f_measure_scale
from .errors import InvalidParameterError, NoRootError
from .minimizer import CylinderMinimizer, MinimizationResult

logger = logging.getLogger(__name__)


def linearization_lowest_eigenvalue(profile: MinimizationResult, theta: float, p: float,
                                    lam: float, d: int) -> float:
    """
    Smallest eigenvalue of the first-harmonic linearization around a radial minimizer.

    The operator is

        -theta d^2/ds^2 + theta (d-1) + (1-theta) t + Lambda
            - (t+Lambda)^{1-theta} (p-1) w^{p-2}

    with w the Euler-Lagrange normalized profile and t its own
    ||grad w||^2/||w||^2, discretized with Dirichlet ends on the profile's grid.

    Args:
        profile: Converged radial F minimization
        theta: Interpolation parameter
        p: Exponent
        lam: Lambda
        d: Dimension

    Returns:
        Lowest eigenvalue; negative means the radial minimizer is unstable
    """
    if profile.functional != "F":
        raise InvalidParameterError("linearization requires an F minimizer")
    if not profile.profile.radial_flag:
        raise InvalidParameterError("linearization requires a radial profile")
    grid = profile.grid
    if grid.d != d:
        raise InvalidParameterError(f"profile grid has d={grid.d}, expected d={d}")

    field = profile.profile
    coefficients = field.modes()
    energies = compute_energies(grid, coefficients, field.values, f_measure_scale(grid), p)
    w = euler_lagrange_factor(energies, theta, p, lam) * np.abs(field.values[:, 0])
    t = energies.t

    h2 = grid.h ** 2
    potential = (theta * (d - 1.0) + (1.0 - theta) * t + lam
                 - (t + lam) ** (1.0 - theta) * (p - 1.0) * w ** (p - 2.0))
    diagonal = 2.0 * theta / h2 + potential
    off_diagonal = np.full(grid.n_s - 1, -theta / h2)
    eigenvalue = eigh_tridiagonal(diagonal, off_diagonal, eigvals_only=True,
                                  select="i", select_range=(0, 0))[0]
    logger.debug(f"Lowest first-harmonic eigenvalue at Lambda={lam}: {eigenvalue:.6g}")
    return float(eigenvalue)


def instability_threshold(theta: float, p: float, d: int, grid: CylinderGrid,
                          bracket: Tuple[float, float] = (0.05, 5.0), rtol: float = 1e-4,
                          minimizer: Optional[CylinderMinimizer] = None) -> float:
    """
    Locate the Lambda where the first-harmonic eigenvalue changes sign.

    Each evaluation minimizes F among radial fields and diagonalizes the
    linearization around the minimizer.

    Args:
        theta: Interpolation parameter
        p: Exponent
        d: Dimension
        grid: Grid whose s nodes discretize the radial problem
        bracket: Lambda interval expected to contain the crossing
        rtol: Relative tolerance in Lambda
        minimizer: Minimizer to use (default configuration otherwise)

    Returns:
        Numerical instability threshold in Lambda
    """
    minimizer = minimizer or CylinderMinimizer()
    radial_grid = grid if grid.radial else grid.with_angles(1)

    def eigenvalue(lam: float) -> float:
        result = minimizer.minimize_radial_F(theta, p, lam, radial_grid)
        return linearization_lowest_eigenvalue(result, theta, p, lam, d)

    lo, hi = bracket
    f_lo, f_hi = eigenvalue(lo), eigenvalue(hi)
    if f_lo * f_hi > 0:
        raise NoRootError(f"eigenvalue keeps its sign on Lambda in [{lo}, {hi}]",
                          sign=int(math.copysign(1, f_lo)))
    threshold = brentq(eigenvalue, lo, hi, rtol=rtol, xtol=rtol * lo)
    logger.info(f"Instability threshold (theta={theta}, p={p}, d={d}): Lambda={threshold:.6g}")
    return threshold
