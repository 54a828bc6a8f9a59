"""
Command-line interface for cknsym.
"""

import argparse
import copy
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import yaml

from .cylinder import build_grid
from .errors import InvalidParameterError, NonConvergenceError
from .figures import build_figure, gnuplot_script
from .minimizer import CylinderMinimizer, InitStrategy
from .output import FORMATS, open_output, write_profile, write_records
from .params import CknParams, WlhParams, lambda_of_a, validate_ckn, validate_wlh
from .radial_constants import (big_l, c_ckn_star, c_ckn_star_euclidean, c_ls, c_wlh_star,
                               gaussian_h, sobolev_classical, sobolev_star)
from .regions import SweepSpec, classification_record, sweep
from .witness import BreakingWitness, Family

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2
EXIT_IO = 3
EXIT_NONCONVERGENCE = 4


def setup_logging(level=logging.INFO, log_file: Optional[str] = None):
    """Setup logging configuration; records go to stderr, data to stdout."""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers
    )


def get_default_config() -> dict:
    """Get default configuration."""
    return {
        'grid': {
            's_max': 20.0,
            'n_s': 511,
            'n_phi': 32,
        },
        'minimizer': {
            'value_tol': 1e-10,
            'gtol': 1e-10,
            'max_iterations': 50000,
            'restarts': 8,
            'decay_tol': 1e-10,
            'max_extensions': 3,
            'extension_factor': 1.5,
            'perturbation': 0.1,
            'concentration_width': 0.5,
        },
        'witness': {
            'refinement_levels': 2,
            'discrepancy_factor': 3.0,
            'inits': ['perturbed', 'concentrated'],
        },
        'roots': {
            'schwarz_tol': 1e-10,
            'gamma_tol': 1e-8,
            'gamma_search_max': 1000.0,
        },
        'figures': {
            'schwarz_d': 5,
            'schwarz_p': [2.1, 2.2, 2.3, 2.4, 2.5, 2.6, 2.7, 2.8, 2.9, 3.0, 3.1, 3.2],
            'n_theta': 40,
            'gn_p_max': 2.3,
            'n_p': 60,
            'gamma_max': 10.0,
            'n_gamma': 200,
        },
        'output': {
            'format': 'csv',
        },
    }


def merge_config(base: dict, override: dict) -> dict:
    """Recursively overlay ``override`` onto a copy of ``base``."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_path: Optional[str]) -> dict:
    """Load a YAML (or JSON) configuration file over the defaults."""
    if config_path is None:
        return get_default_config()
    config_file = Path(config_path)

    if not config_file.exists():
        logging.warning(f"Config file not found: {config_path}, using defaults")
        return get_default_config()

    with open(config_file, 'r') as f:
        document = yaml.safe_load(f)
    if document is None:
        document = {}
    if not isinstance(document, dict):
        raise InvalidParameterError(f"config file {config_path} must hold a mapping")
    logging.info(f"Loaded config from {config_path}")
    return merge_config(get_default_config(), document)


def _bound(args: argparse.Namespace, names) -> Dict[str, float]:
    return {name: getattr(args, name) for name in names if getattr(args, name, None) is not None}


def _require(args: argparse.Namespace, *names: str):
    missing = [f"--{name}" for name in names if getattr(args, name, None) is None]
    if missing:
        raise InvalidParameterError(f"{args.command} requires {', '.join(missing)}")


def _dimension(args: argparse.Namespace, default: Optional[int] = None) -> Optional[int]:
    if args.d is None:
        return default
    if not float(args.d).is_integer():
        raise InvalidParameterError(f"--d must be an integer dimension, got {args.d}")
    return int(args.d)


def _lambda(args: argparse.Namespace, d: Optional[float]) -> Optional[float]:
    if args.a is not None and args.lam is not None:
        raise InvalidParameterError("give either --a or --lambda, not both")
    if args.lam is not None:
        return args.lam
    if args.a is not None:
        if d is None:
            raise InvalidParameterError("--a needs --d to fix a_c")
        return lambda_of_a(d, args.a)
    return None


def _constant_record(quantity: str, constant, **params) -> dict:
    record = {"quantity": quantity, "formula_id": constant.formula_id,
              "value": constant.value, "log_value": constant.log_value}
    record.update({k: v for k, v in params.items() if v is not None})
    return record


def _emit(records, args: argparse.Namespace, config: dict, columns=None):
    fmt = args.format or config['output'].get('format', 'csv')
    with open_output(args.out) as stream:
        write_records(records, stream, fmt, columns)


def cmd_constants(args: argparse.Namespace, config: dict) -> int:
    """Emit closed-form constants for the bound parameters."""
    records = []
    d = _dimension(args)
    if args.ckn:
        _require(args, "theta", "p")
        lam = _lambda(args, d)
        if lam is None:
            raise InvalidParameterError("constants --ckn requires --lambda or --a")
        if d is not None:
            validate_ckn(CknParams.from_lambda(d, lam, args.p, args.theta)).raise_if_rejected()
        records.append(_constant_record("c_ckn_star", c_ckn_star(args.theta, args.p, lam),
                                        theta=args.theta, p=args.p, **{"lambda": lam}))
        if d is not None:
            records.append(_constant_record(
                "c_ckn_star_euclidean", c_ckn_star_euclidean(args.theta, args.p, lam, d),
                d=d, theta=args.theta, p=args.p, **{"lambda": lam}))
    if args.wlh:
        _require(args, "gamma", "d")
        lam = _lambda(args, d)
        if lam is None:
            if args.gamma != 0.25:
                raise InvalidParameterError("constants --wlh requires --lambda or --a unless gamma = 1/4")
            lam = 1.0
        validate_wlh(WlhParams.from_lambda(d, lam, args.gamma)).raise_if_rejected()
        records.append(_constant_record("c_wlh_star", c_wlh_star(args.gamma, lam, d),
                                        d=d, gamma=args.gamma, **{"lambda": lam}))
    if args.sobolev:
        _require(args, "d")
        records.append(_constant_record("sobolev_star", sobolev_star(d), d=d))
        records.append(_constant_record("sobolev_classical", sobolev_classical(d), d=d))
    if args.ls:
        _require(args, "d")
        records.append(_constant_record("c_ls", c_ls(d), d=d))
    if args.gn:
        _require(args, "p", "d")
        records.append(_constant_record("gaussian_h", gaussian_h(args.p, d), d=d, p=args.p))
        records.append(_constant_record("big_l", big_l(args.p, d), d=d, p=args.p))
    if not records:
        raise InvalidParameterError("constants needs one of --ckn, --wlh, --sobolev, --ls, --gn")
    _emit(records, args, config)
    return EXIT_OK


def _point(args: argparse.Namespace) -> Dict[str, float]:
    point = _bound(args, ("d", "p", "theta", "gamma", "a"))
    if args.lam is not None:
        point["lambda"] = args.lam
    return point


def cmd_classify(args: argparse.Namespace, config: dict) -> int:
    """Classify one parameter point."""
    kind = "wlh" if args.wlh else "ckn"
    point = _point(args)
    point.pop("gamma" if kind == "ckn" else "p", None)
    point.pop("theta" if kind == "wlh" else "gamma", None)
    _emit([classification_record(kind, point)], args, config)
    return EXIT_OK


def cmd_figure(args: argparse.Namespace, config: dict) -> int:
    """Write the data table of one figure."""
    if args.gnuplot and args.out in (None, "-"):
        raise InvalidParameterError("--gnuplot needs --out to name the data file")
    data = build_figure(args.which, {**config['roots'], **config['figures']})
    _emit(data.records(), args, config, columns=data.columns)
    if args.gnuplot:
        script = Path(args.out).with_suffix(".gp")
        script.write_text(gnuplot_script(data, args.out))
        logger.info(f"Wrote {script}")
    return EXIT_OK


def _grid(args: argparse.Namespace, config: dict, d: int, n_phi: Optional[int] = None):
    grid_config = config['grid']
    s_max = args.smax if args.smax is not None else grid_config.get('s_max', 20.0)
    n_s = args.grid_ns if args.grid_ns is not None else grid_config.get('n_s', 511)
    if n_phi is None:
        n_phi = args.grid_nphi if args.grid_nphi is not None else grid_config.get('n_phi', 32)
    return build_grid(float(s_max), int(n_s), int(n_phi), d)


def _minimizer(args: argparse.Namespace, config: dict) -> CylinderMinimizer:
    minimizer_config = dict(config['minimizer'])
    if args.tol is not None:
        minimizer_config['value_tol'] = args.tol
    return CylinderMinimizer(minimizer_config)


def cmd_minimize(args: argparse.Namespace, config: dict) -> int:
    """Minimize F or G on a cylinder grid and emit the result."""
    d = _dimension(args, default=2)
    lam = _lambda(args, d)
    if lam is None:
        raise InvalidParameterError("minimize requires --lambda or --a")
    grid = _grid(args, config, d)
    minimizer = _minimizer(args, config)
    init = InitStrategy(args.init)
    radial = grid.radial or init is InitStrategy.RADIAL

    try:
        if args.gamma is not None:
            if radial:
                result = minimizer.minimize_radial_G(args.gamma, lam, grid)
            else:
                result = minimizer.minimize_G(args.gamma, lam, grid, init)
        else:
            _require(args, "theta", "p")
            if radial:
                result = minimizer.minimize_radial_F(args.theta, args.p, lam, grid)
            else:
                result = minimizer.minimize_F(args.theta, args.p, lam, grid, init)
        code = EXIT_OK
    except NonConvergenceError as e:
        if e.result is None:
            raise
        logger.error(f"{e}")
        result, code = e.result, EXIT_NONCONVERGENCE

    _emit([result.as_record()], args, config)
    if args.profile:
        write_profile(result.profile, args.profile)
    return code


def parse_values(text: str) -> tuple:
    """
    Parse an axis specification: ``v1,v2,...`` or ``start:stop:count``.

    Args:
        text: Axis text

    Returns:
        Tuple of floats
    """
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            values = np.linspace(float(start), float(stop), int(count))
        else:
            values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise InvalidParameterError(f"malformed axis '{text}': {e}")
    return tuple(float(v) for v in values)


def cmd_sweep(args: argparse.Namespace, config: dict) -> int:
    """Classify every point of a two-parameter grid."""
    fixed = _point(args)
    kind = "wlh" if args.wlh else "ckn"
    spec = SweepSpec(kind=kind, x_name=args.x, x_values=parse_values(args.x_values),
                     y_name=args.y, y_values=parse_values(args.y_values), fixed=fixed)
    rows = sweep(spec, threads=args.threads)
    _emit(rows, args, config)
    return EXIT_OK


def cmd_witness(args: argparse.Namespace, config: dict) -> int:
    """Run a symmetry-breaking witness."""
    _require(args, "d")
    d = _dimension(args)
    family = Family.WLH if args.wlh else Family.CKN
    params = _point(args)
    params.pop("d")
    if family is Family.CKN:
        _require(args, "theta", "p")
    else:
        _require(args, "gamma")
    grid = _grid(args, config, d)
    witness = BreakingWitness(config['witness'], _minimizer(args, config))
    report = witness.run(family, params, grid)
    _emit(report.as_records(), args, config)
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser):
    params = parser.add_argument_group('parameters')
    params.add_argument('--d', type=float, help='Dimension')
    params.add_argument('--p', type=float, help='Exponent p')
    params.add_argument('--theta', type=float, help='Interpolation parameter theta')
    params.add_argument('--gamma', type=float, help='WLH exponent gamma')
    params.add_argument('--a', type=float, help='Weight parameter a')
    params.add_argument('--lambda', dest='lam', type=float, help='Lambda = (a - a_c)^2')

    grid = parser.add_argument_group('grid')
    grid.add_argument('--smax', type=float, help='Cylinder half-length')
    grid.add_argument('--grid-ns', type=int, help='Number of s nodes')
    grid.add_argument('--grid-nphi', type=int, help='Number of angular nodes (1 = radial)')

    out = parser.add_argument_group('output')
    out.add_argument('--out', type=str, default=None, help='Output file (default: stdout)')
    out.add_argument('--format', choices=FORMATS, default=None, help='Output format')
    out.add_argument('--tol', type=float, help='Minimizer value tolerance')
    out.add_argument('--config', type=str, default=None, help='YAML or JSON configuration file')
    out.add_argument('--verbose', '-v', action='store_true', help='Enable verbose logging')
    out.add_argument('--quiet', '-q', action='store_true', help='Only log warnings and errors')
    out.add_argument('--log-file', type=str, default=None, help='Also log to this file')


def _add_family(parser: argparse.ArgumentParser):
    family = parser.add_mutually_exclusive_group()
    family.add_argument('--ckn', action='store_true', help='Caffarelli-Kohn-Nirenberg family (default)')
    family.add_argument('--wlh', action='store_true', help='Weighted logarithmic Hardy family')


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for every subcommand."""
    parser = argparse.ArgumentParser(
        prog='cknsym',
        description="Symmetry and symmetry breaking for CKN and weighted log-Hardy extremals",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  cknsym constants --ckn --theta 1 --p 4 --lambda 1
  cknsym classify --d 5 --p 3 --theta 0.9 --a -2
  cknsym figure 4 --out fig4.csv --gnuplot
  cknsym minimize --theta 1 --p 4 --lambda 1 --grid-nphi 1
  cknsym sweep --d 5 --p 2.5 --x theta --x-values 0.5:1:6 --y a --y-values=-2:1.4:8
        """
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    constants = subparsers.add_parser('constants', help='Closed-form constants')
    _add_common(constants)
    constants.add_argument('--ckn', action='store_true', help='Radial CKN constant')
    constants.add_argument('--wlh', action='store_true', help='Radial WLH constant')
    constants.add_argument('--sobolev', action='store_true', help='Sobolev constants')
    constants.add_argument('--ls', action='store_true', help='Logarithmic Sobolev constant')
    constants.add_argument('--gn', action='store_true', help='Gaussian quotient h and L(p,d)')
    constants.set_defaults(handler=cmd_constants)

    classify = subparsers.add_parser('classify', help='Classify one parameter point')
    _add_common(classify)
    _add_family(classify)
    classify.set_defaults(handler=cmd_classify)

    figure = subparsers.add_parser('figure', help='Data table of a figure')
    figure.add_argument('which', type=int, choices=(1, 2, 3, 4), help='Figure number')
    figure.add_argument('--gnuplot', action='store_true', help='Write a gnuplot script next to --out')
    _add_common(figure)
    figure.set_defaults(handler=cmd_figure)

    minimize = subparsers.add_parser('minimize', help='Minimize F (or G with --gamma)')
    _add_common(minimize)
    minimize.add_argument('--init', choices=[s.value for s in InitStrategy], default='perturbed',
                          help='Starting field for grids with angular nodes')
    minimize.add_argument('--profile', type=str, default=None, help='Write the profile as CSV')
    minimize.set_defaults(handler=cmd_minimize)

    sweep_parser = subparsers.add_parser('sweep', help='Classify a two-parameter grid')
    _add_common(sweep_parser)
    _add_family(sweep_parser)
    sweep_parser.add_argument('--x', required=True, help='Outer axis parameter')
    sweep_parser.add_argument('--x-values', required=True, help='v1,v2,... or start:stop:count')
    sweep_parser.add_argument('--y', required=True, help='Inner axis parameter')
    sweep_parser.add_argument('--y-values', required=True, help='v1,v2,... or start:stop:count')
    sweep_parser.add_argument('--threads', type=int, default=None, help='Worker threads')
    sweep_parser.set_defaults(handler=cmd_sweep)

    witness = subparsers.add_parser('witness', help='Numerical symmetry-breaking witness')
    _add_common(witness)
    _add_family(witness)
    witness.set_defaults(handler=cmd_witness)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    Main CLI entry point.

    Args:
        argv: Arguments (defaults to sys.argv[1:])

    Returns:
        Exit code: 0 success, 2 invalid parameters, 3 I/O failure,
        4 non-convergence, 1 anything else
    """
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    setup_logging(level, args.log_file)

    try:
        config = load_config(args.config)
        return args.handler(args, config)
    except InvalidParameterError as e:
        logging.error(f"Invalid parameters: {e}")
        return EXIT_INVALID
    except OSError as e:
        logging.error(f"I/O failure: {e}")
        return EXIT_IO
    except NonConvergenceError as e:
        logging.error(f"Solver did not converge: {e}")
        return EXIT_NONCONVERGENCE
    except Exception as e:
        logging.error(f"Fatal error: {e}", exc_info=True)
        return EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(run())
