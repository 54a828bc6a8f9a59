from .errors import (CknsymError, DomainError, InadmissibleParameters, InconsistentVerdictError,
                     InvalidParameterError, NoRootError, NonConvergenceError)
from .params import CknParams, WlhParams, validate_ckn, validate_wlh
from .specfun import gamma_half_ratio, ln_gamma, log_gamma_half_ratio
from .radial_constants import (ConstantValue, big_l, c_ckn_star, c_ckn_star_euclidean, c_ls,
                               c_wlh_star, ell, gaussian_h, sobolev_classical, sobolev_star)
from .regions import (Mechanism, RegionVerdict, SweepSpec, Verdict, a_bar, a_fs, a_minus, a_tilde,
                      classify_ckn, classify_wlh, gamma_sb_interval, lambda_sb, lambda_tilde,
                      lambda_underline, schwarz_a0, sweep, theta_big)
from .cylinder import (CylinderField, CylinderGrid, build_grid, eval_F, eval_G, grad_F, grad_G,
                       euler_lagrange_normalize, euler_lagrange_residual, poincare_margin,
                       scaling_identity_residual, symmetry_diagnostics)
from .minimizer import (CylinderMinimizer, InitStrategy, MinimizationResult, minimize_F, minimize_G,
                        minimize_radial_F, minimize_radial_G)
from .linearization import instability_threshold, linearization_lowest_eigenvalue
from .witness import BreakingWitness, Family, WitnessReport, WitnessVerdict, breaking_witness

__all__ = [
    "CknsymError",
    "DomainError",
    "InadmissibleParameters",
    "InconsistentVerdictError",
    "InvalidParameterError",
    "NoRootError",
    "NonConvergenceError",
    "CknParams",
    "WlhParams",
    "validate_ckn",
    "validate_wlh",
    "gamma_half_ratio",
    "ln_gamma",
    "log_gamma_half_ratio",
    "ConstantValue",
    "big_l",
    "c_ckn_star",
    "c_ckn_star_euclidean",
    "c_ls",
    "c_wlh_star",
    "ell",
    "gaussian_h",
    "sobolev_classical",
    "sobolev_star",
    "Mechanism",
    "RegionVerdict",
    "SweepSpec",
    "Verdict",
    "a_bar",
    "a_fs",
    "a_minus",
    "a_tilde",
    "classify_ckn",
    "classify_wlh",
    "gamma_sb_interval",
    "lambda_sb",
    "lambda_tilde",
    "lambda_underline",
    "schwarz_a0",
    "sweep",
    "theta_big",
    "CylinderField",
    "CylinderGrid",
    "build_grid",
    "eval_F",
    "eval_G",
    "grad_F",
    "grad_G",
    "euler_lagrange_normalize",
    "euler_lagrange_residual",
    "poincare_margin",
    "scaling_identity_residual",
    "symmetry_diagnostics",
    "CylinderMinimizer",
    "InitStrategy",
    "MinimizationResult",
    "minimize_F",
    "minimize_G",
    "minimize_radial_F",
    "minimize_radial_G",
    "instability_threshold",
    "linearization_lowest_eigenvalue",
    "BreakingWitness",
    "Family",
    "WitnessReport",
    "WitnessVerdict",
    "breaking_witness",
]
