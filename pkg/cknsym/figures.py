"""
Data tables behind the four published figures.

Each builder returns a FigureData whose rows are emitted as CSV; an optional
gnuplot script reproduces the plot from that file.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .errors import InvalidParameterError
from .params import a_critical, critical_exponent
from .radial_constants import big_l, c_ls, c_wlh_star
from .regions import a_bar, gamma_sb_interval, lambda_sb, lambda_tilde, schwarz_curve

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FigureData:
    """Column names plus rows in emission order."""
    figure: int
    columns: Tuple[str, ...]
    rows: List[Tuple[float, ...]]
    x: str
    y: str
    group: str

    def records(self) -> List[Dict[str, float]]:
        return [dict(zip(self.columns, row)) for row in self.rows]


def figure_schwarz(config: Optional[dict] = None) -> FigureData:
    """Schwarz symmetry curves a0(theta, p) with the instability curve a_bar, d = 5."""
    config = config or {}
    d = int(config.get('schwarz_d', 5))
    p_values = config.get('schwarz_p', [round(2.1 + 0.1 * i, 10) for i in range(12)])
    n_theta = int(config.get('n_theta', 40))
    tol = config.get('schwarz_tol', 1e-10)

    rows = []
    for p in p_values:
        for theta, a0 in schwarz_curve(p, d, n_theta, tol=tol):
            rows.append((float(p), theta, a0, a_bar(theta, p, d)))
    return FigureData(1, ("p", "theta", "a0", "a_bar"), rows, x="theta", y="a0", group="p")


def figure_gn_comparison(config: Optional[dict] = None) -> FigureData:
    """L(p, d) for p in (2, p_max] and d = 3..10."""
    config = config or {}
    dims = config.get('gn_dimensions', list(range(3, 11)))
    p_max = config.get('gn_p_max', 2.3)
    n_p = int(config.get('n_p', 60))

    rows = []
    for d in dims:
        upper = min(p_max, critical_exponent(d))
        for p in 2.0 + (upper - 2.0) * np.arange(1, n_p + 1) / n_p:
            if p >= critical_exponent(d):
                continue
            rows.append((float(d), float(p), big_l(p, d).value))
    return FigureData(2, ("d", "p", "L"), rows, x="p", y="L", group="d")


def figure_ls_ratio(config: Optional[dict] = None) -> FigureData:
    """C*_WLH(d/4, Lambda(-1/2)) / C_LS as a function of d."""
    config = config or {}
    dims = config.get('ls_dimensions', list(range(3, 11)))

    rows = []
    for d in dims:
        lam = (-0.5 - a_critical(d)) ** 2
        radial = c_wlh_star(d / 4.0, lam, d).value
        reference = c_ls(d).value
        rows.append((float(d), radial, reference, radial / reference))
    return FigureData(3, ("d", "c_wlh_star", "c_ls", "ratio"), rows, x="d", y="ratio", group="")


def figure_lambda_ratio(config: Optional[dict] = None) -> FigureData:
    """Lambda_SB(gamma, d) / Lambda_tilde(gamma) on a geometric gamma grid."""
    config = config or {}
    dims = config.get('lambda_dimensions', list(range(2, 7)))
    gamma_max = config.get('gamma_max', 10.0)
    n_gamma = int(config.get('n_gamma', 200))

    rows = []
    for d in dims:
        crossings = gamma_sb_interval(d, tol=config.get('gamma_tol', 1e-8),
                                      gamma_max=config.get('gamma_search_max', 1000.0))
        logger.info(f"d={d}: Lambda_SB > Lambda_tilde for gamma in {crossings}")
        lower = d / 4.0 if d > 2 else 0.5 * (1.0 + 1e-6)
        for gamma in np.geomspace(lower, gamma_max, n_gamma):
            sb, tilde = lambda_sb(gamma, d), lambda_tilde(gamma, d)
            rows.append((float(d), float(gamma), sb, tilde, sb / tilde))
    return FigureData(4, ("d", "gamma", "lambda_sb", "lambda_tilde", "ratio"), rows,
                      x="gamma", y="ratio", group="d")


FIGURES: Dict[int, Callable[[Optional[dict]], FigureData]] = {
    1: figure_schwarz,
    2: figure_gn_comparison,
    3: figure_ls_ratio,
    4: figure_lambda_ratio,
}


def build_figure(which: int, config: Optional[dict] = None) -> FigureData:
    """
    Build the table of one figure.

    Args:
        which: Figure number, 1 to 4
        config: ``figures`` configuration section

    Returns:
        FigureData
    """
    if which not in FIGURES:
        raise InvalidParameterError(f"unknown figure {which}; choose one of {sorted(FIGURES)}")
    data = FIGURES[which](config)
    logger.info(f"Figure {which}: {len(data.rows)} rows")
    return data


def gnuplot_script(data: FigureData, csv_path: str) -> str:
    """Gnuplot commands plotting ``data`` from the CSV written at ``csv_path``."""
    columns = {name: i + 1 for i, name in enumerate(data.columns)}
    x, y = columns[data.x], columns[data.y]
    lines = [
        "set datafile separator ','",
        "set key outside",
        f"set xlabel '{data.x}'",
        f"set ylabel '{data.y}'",
    ]
    if data.group:
        g = columns[data.group]
        groups = sorted({row[g - 1] for row in data.rows})
        plots = [f"'{csv_path}' every ::1 using (${g}=={value:.10g} ? ${x} : 1/0):{y} "
                 f"with lines title '{data.group}={value:.10g}'" for value in groups]
        lines.append("plot " + ", \\\n     ".join(plots))
    else:
        lines.append(f"plot '{csv_path}' every ::1 using {x}:{y} with linespoints notitle")
    return "\n".join(lines) + "\n"
