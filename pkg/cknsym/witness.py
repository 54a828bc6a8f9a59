"""
Numerical witnesses of symmetry breaking.

A witness compares the radial minimum of F (or G) with the best minimum
found from non-radial starts on a sequence of refined grids. Breaking is
reported only when the relative gap beats a multiple of the change between
consecutive refinement levels on every level.
"""

import logging
import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .cylinder import CylinderGrid, poincare_margin
from .errors import InvalidParameterError, NonConvergenceError
from .minimizer import CylinderMinimizer, InitStrategy, MinimizationResult
from .params import lambda_of_a

logger = logging.getLogger(__name__)


class Family(Enum):
    """Inequality family."""
    CKN = "CKN"
    WLH = "WLH"


class WitnessVerdict(Enum):
    """Outcome of a witness run; a miss is never a symmetry proof."""
    BROKEN = "Broken"
    NOT_OBSERVED = "NotObserved"


@dataclass(frozen=True)
class WitnessLevel:
    """Radial and non-radial minima on one grid."""
    n_s: int
    n_phi: int
    s_max: float
    radial_value: float
    nonradial_value: float
    gap: float
    discrepancy: float
    angular_fraction: float
    poincare_margin: float
    init: str


@dataclass(frozen=True)
class WitnessReport:
    family: Family
    parameters: Dict[str, float]
    verdict: WitnessVerdict
    levels: Tuple[WitnessLevel, ...]
    margin: float
    discrepancy_factor: float = 3.0

    @property
    def angular_fraction(self) -> float:
        return self.levels[-1].angular_fraction

    def as_records(self) -> List[Dict[str, object]]:
        """One flat record per refinement level."""
        records = []
        for index, level in enumerate(self.levels):
            record: Dict[str, object] = {"family": self.family.value, "level": index}
            record.update(self.parameters)
            record.update(asdict(level))
            record.update({"verdict": self.verdict.value, "margin": self.margin})
            records.append(record)
        return records


def _resolve_lambda(d: int, params: Dict[str, float]) -> float:
    if "lambda" in params:
        return params["lambda"]
    if "a" in params:
        return lambda_of_a(d, params["a"])
    raise InvalidParameterError("witness parameters need 'lambda' or 'a'")


class BreakingWitness:
    """Runs radial and non-radial minimizations on refined grids and compares them."""

    def __init__(self, config: Optional[dict] = None, minimizer: Optional[CylinderMinimizer] = None):
        """
        Initialize the witness.

        Args:
            config: ``witness`` configuration section
            minimizer: Minimizer shared by every run
        """
        config = config or {}
        self.refinement_levels = int(config.get('refinement_levels', 2))
        self.discrepancy_factor = config.get('discrepancy_factor', 3.0)
        self.inits: Sequence[str] = tuple(config.get('inits', ('perturbed', 'concentrated')))
        self.minimizer = minimizer or CylinderMinimizer()

        if self.refinement_levels < 2:
            raise InvalidParameterError(
                f"a witness needs at least 2 refinement levels, got {self.refinement_levels}")
        for init in self.inits:
            if InitStrategy(init) is InitStrategy.RADIAL:
                raise InvalidParameterError("radial starts cannot witness symmetry breaking")

    def _minima(self, family: Family, params: Dict[str, float], lam: float,
                grid: CylinderGrid) -> Tuple[MinimizationResult, MinimizationResult, str]:
        if family is Family.CKN:
            theta, p = params["theta"], params["p"]
            radial = self.minimizer.minimize_radial_F(theta, p, lam, grid)
            run = lambda init: self.minimizer.minimize_F(theta, p, lam, grid, init)
        else:
            gamma = params["gamma"]
            radial = self.minimizer.minimize_radial_G(gamma, lam, grid)
            run = lambda init: self.minimizer.minimize_G(gamma, lam, grid, init)

        best: Optional[MinimizationResult] = None
        best_init = ""
        failure: Optional[NonConvergenceError] = None
        for init in self.inits:
            try:
                result = run(init)
            except NonConvergenceError as e:
                logger.warning(f"Non-radial run from '{init}' did not converge: {e}")
                failure = e
                continue
            if best is None or result.value < best.value:
                best, best_init = result, init
        if best is None:
            raise failure
        return radial, best, best_init

    def run(self, family: Family, params: Dict[str, float], grid: CylinderGrid) -> WitnessReport:
        """
        Certify symmetry breaking numerically.

        Args:
            family: CKN (quotient F) or WLH (quotient G)
            params: theta and p (CKN) or gamma (WLH), plus lambda or a
            grid: Coarsest non-radial grid; each further level halves the s
                step and doubles the angular nodes

        Returns:
            WitnessReport
        """
        family = Family(family)
        if grid.radial:
            raise InvalidParameterError("a witness needs a grid with angular nodes")
        lam = _resolve_lambda(grid.d, params)
        parameters = {k: v for k, v in params.items() if k != "a"}
        parameters.update({"d": grid.d, "lambda": lam})

        raw = []
        level_grid = grid
        for level in range(self.refinement_levels):
            if level:
                level_grid = level_grid.refined()
            radial, nonradial, init = self._minima(family, params, lam, level_grid)
            margin = math.nan
            if family is Family.CKN:
                margin = poincare_margin(nonradial.profile, params["theta"], params["p"], lam)
            raw.append((level_grid, radial, nonradial, init, margin))

        levels = []
        for index, (level_grid, radial, nonradial, init, margin) in enumerate(raw):
            other = raw[index - 1] if index else raw[1]
            discrepancy = max(abs(radial.value - other[1].value),
                              abs(nonradial.value - other[2].value)) / radial.value
            levels.append(WitnessLevel(
                n_s=level_grid.n_s, n_phi=level_grid.n_phi, s_max=level_grid.s_max,
                radial_value=radial.value, nonradial_value=nonradial.value,
                gap=(radial.value - nonradial.value) / radial.value,
                discrepancy=discrepancy, angular_fraction=nonradial.angular_fraction,
                poincare_margin=margin, init=init))

        margin = min(level.gap - self.discrepancy_factor * level.discrepancy for level in levels)
        verdict = WitnessVerdict.BROKEN if margin > 0 else WitnessVerdict.NOT_OBSERVED
        logger.info(f"{family.value} witness {parameters}: {verdict.value} "
                    f"(gap={levels[-1].gap:.3e}, margin={margin:.3e})")
        return WitnessReport(family=family, parameters=parameters, verdict=verdict,
                             levels=tuple(levels), margin=margin,
                             discrepancy_factor=self.discrepancy_factor)


def breaking_witness(family: Family, params: Dict[str, float], grid: CylinderGrid,
                     refinement_levels: int = 2, config: Optional[dict] = None) -> WitnessReport:
    """Run a BreakingWitness with default minimizer settings."""
    witness_config = dict(config or {})
    witness_config["refinement_levels"] = refinement_levels
    return BreakingWitness(witness_config).run(family, params, grid)
