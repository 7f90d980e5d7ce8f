""" run configuration: one JSON (or YAML) document, loaded into an Info

Sections and their defaults are listed in `SECTIONS`; a key marked
`REQUIRED` has no default. Unknown sections and keys are errors.
"""
import json
import math
import logging
import numbers
import numpy
import yaml
import tomolab.io_
import tomolab.info
from tomolab.model import PhysicalParams
from tomolab.model import MasterEqCoefficients
from tomolab.model import LindbladCoefficients
from tomolab.model import CumulantState
from tomolab.model import coefficients_from_lindblad
from tomolab.evolution import Method
from tomolab.evolution import DEFAULT_DT
from tomolab.tomography import NoiseMode
from tomolab.tomography import NoiseModel
from tomolab.tomography import TomographyLine
from tomolab.inversion import LambdaMethod
from tomolab.inversion import EstimationMode
from tomolab.reconstruction import NOISY_MATCH_RTOL
from tomolab.errors import ConfigError
from tomolab.errors import DomainError

log = logging.getLogger(__name__)


class _Required():
    """ marks a key without a default """

    def __repr__(self):
        return 'REQUIRED'


REQUIRED = _Required()


class TomogramState():
    """ which state the tomogram command measures """
    EVOLVED = 'evolved'
    INITIAL = 'initial'


class SignHints():
    """ whether the signs of the means are handed to the reconstruction """
    KNOWN = 'known'
    UNKNOWN = 'unknown'


SECTIONS = {
    'physical': {'m': REQUIRED, 'omega': REQUIRED, 'delta': 0.,
                 'hbar': 1.},
    'coefficients': {'lambda': REQUIRED, 'd_qq': REQUIRED, 'd_pp': REQUIRED,
                     'd_qp': REQUIRED},
    'lindblad': {'a1': REQUIRED, 'a2': REQUIRED, 'b1': REQUIRED,
                 'b2': REQUIRED},
    'initial_state': {'mean_q': REQUIRED, 'mean_p': REQUIRED,
                      'var_q': REQUIRED, 'var_p': REQUIRED,
                      'cov_qp': REQUIRED, 'reconstruct': False},
    'time': {'t': 1., 'grid': None, 'values': None, 'dt': DEFAULT_DT,
             'method': Method.CLOSED_FORM},
    'tomography': {'state': TomogramState.EVOLVED,
                   'sign_hints': SignHints.KNOWN,
                   'tol_match': NOISY_MATCH_RTOL,
                   'fallback_var_p0': None, 'curves': None, 'wigner': None,
                   'ratio': {'num': 400}},
    'noise': {'mode': NoiseMode.EXACT, 'sigma': 0., 'sigmas': None,
              'n': 100000, 'bandwidth': 'silverman', 'seeds': None,
              'n_seeds': 1},
    'estimation': {'mode': EstimationMode.FINITE_TIME,
                   'lambda_method': LambdaMethod.NORM, 'angle_tol': None,
                   't_inf': None},
    'output': {'dir': 'tomolab_out', 'per_run': False, 'workers': 1},
}

# sections whose keys are all (or mostly) required are absent unless given
OPTIONAL_SECTIONS = ('physical', 'coefficients', 'lindblad', 'initial_state')

GRID_KEYS = ('start', 'stop', 'num')


def load_config(path):
    """ read and validate a configuration file

    :param path: path to a JSON or YAML document
    :type path: str
    :rtype: Info
    """
    try:
        cfg_str = tomolab.io_.read_file(path)
    except (OSError, AssertionError) as err:
        raise ConfigError(f'cannot read configuration {path}: {err}') from err
    log.info('read configuration %s', path)
    return config_from_string(cfg_str)


def config_from_string(cfg_str):
    """ validate a configuration document given as a string

    :rtype: Info
    """
    try:
        cfg_dct = json.loads(cfg_str)
    except ValueError:
        # YAML 1.1 reads 1e-6 as a string; JSON documents go through json
        try:
            cfg_dct = yaml.safe_load(cfg_str)
        except yaml.YAMLError as err:
            raise ConfigError(
                f'configuration is not valid JSON/YAML: {err}') from err
    if cfg_dct is None:
        cfg_dct = {}
    return config_from_dict(cfg_dct)


def config_from_dict(cfg_dct):
    """ validate a configuration dictionary and fill in defaults

    :rtype: Info
    """
    if not isinstance(cfg_dct, dict):
        raise ConfigError(
            f'configuration must be an object, got {type(cfg_dct).__name__}')
    unknown = set(cfg_dct) - set(SECTIONS)
    if unknown:
        raise ConfigError(f'unknown configuration sections: {sorted(unknown)}')
    if 'coefficients' in cfg_dct and 'lindblad' in cfg_dct:
        raise ConfigError(
            "'coefficients' and 'lindblad' are mutually exclusive")

    full_dct = {}
    for name, defaults in SECTIONS.items():
        if name not in cfg_dct:
            full_dct[name] = (None if name in OPTIONAL_SECTIONS else
                              dict(defaults))
            continue
        sec_dct = cfg_dct[name]
        if not isinstance(sec_dct, dict):
            raise ConfigError(f'section {name!r} must be an object')
        unknown = set(sec_dct) - set(defaults)
        if unknown:
            raise ConfigError(
                f'unknown keys in section {name!r}: {sorted(unknown)}')
        full_dct[name] = {key: sec_dct.get(key, default)
                          for key, default in defaults.items()
                          if key in sec_dct or default is not REQUIRED}

    cfg = tomolab.info.object_(full_dct)
    _check_choices(cfg)
    return cfg


def _check_choices(cfg):
    _check_choice('time.method', cfg.time.method,
                  (Method.CLOSED_FORM, Method.ORACLE))
    _check_choice('tomography.state', cfg.tomography.state,
                  (TomogramState.EVOLVED, TomogramState.INITIAL))
    _check_choice('tomography.sign_hints', cfg.tomography.sign_hints,
                  (SignHints.KNOWN, SignHints.UNKNOWN))
    _check_choice('noise.mode', cfg.noise.mode,
                  (NoiseMode.EXACT, NoiseMode.ADDITIVE,
                   NoiseMode.QUADRATURE_SAMPLES))
    _check_choice('estimation.mode', cfg.estimation.mode,
                  (EstimationMode.FINITE_TIME, EstimationMode.STATIONARY))
    _check_choice('estimation.lambda_method', cfg.estimation.lambda_method,
                  (LambdaMethod.NORM, LambdaMethod.COMPONENTWISE))
    _check_positive('time.dt', cfg.time.dt)
    _check_positive('tomography.tol_match', cfg.tomography.tol_match)
    workers = cfg.output.workers
    if not _is_integer(workers) or workers < 1:
        raise ConfigError(f'output.workers must be >= 1, got {workers!r}')


def _check_choice(key, val, choices):
    if val not in choices:
        raise ConfigError(f'{key} must be one of {list(choices)}, got {val!r}')


def _check_positive(key, val):
    if not _is_real(val) or not val > 0. or not math.isfinite(val):
        raise ConfigError(f'{key} must be a positive number, got {val!r}')


def _is_real(val):
    return isinstance(val, numbers.Real) and not isinstance(val, bool)


def _is_integer(val):
    return isinstance(val, numbers.Integral) and not isinstance(val, bool)


def _section_dict(cfg, name):
    sec = getattr(cfg, name)
    if sec is None:
        raise ConfigError(f'configuration section {name!r} is required')
    return tomolab.info.dict_(sec)


def _domain(name, build, dct):
    try:
        return build(dct)
    except DomainError as err:
        raise ConfigError(f'section {name!r}: {err}') from err


def physical_params(cfg):
    """ the physical parameters

    :rtype: PhysicalParams
    """
    return _domain('physical', PhysicalParams.from_dict,
                   _section_dict(cfg, 'physical'))


def coefficients(cfg):
    """ the master-equation coefficients, given directly or through the
    Lindblad operators

    :rtype: MasterEqCoefficients
    """
    if cfg.coefficients is not None:
        return _domain('coefficients', MasterEqCoefficients.from_dict,
                       _section_dict(cfg, 'coefficients'))
    if cfg.lindblad is not None:
        lcs = _domain('lindblad', LindbladCoefficients.from_dict,
                      _section_dict(cfg, 'lindblad'))
        return coefficients_from_lindblad(lcs, physical_params(cfg).hbar)
    raise ConfigError("one of 'coefficients' or 'lindblad' is required")


def initial_state(cfg):
    """ the probe state at t = 0, physical units

    :rtype: CumulantState
    """
    dct = _section_dict(cfg, 'initial_state')
    reconstruct = dct.pop('reconstruct', False)
    if not isinstance(reconstruct, bool):
        raise ConfigError(
            'initial_state.reconstruct must be a boolean, '
            f'got {reconstruct!r}')
    return _domain('initial_state', CumulantState.from_dict, dct)


def grid(key, grid_info):
    """ evenly spaced values from a {start, stop, num} object

    :rtype: numpy.ndarray
    """
    grid_dct = (tomolab.info.dict_(grid_info)
                if isinstance(grid_info, tomolab.info.Info) else grid_info)
    if not isinstance(grid_dct, dict) or set(grid_dct) != set(GRID_KEYS):
        raise ConfigError(f'{key} must be an object with keys {GRID_KEYS}')
    start, stop, num = (grid_dct[k] for k in GRID_KEYS)
    if not (_is_real(start) and _is_real(stop) and _is_integer(num)
            and num >= 1):
        raise ConfigError(f'{key} is invalid: {grid_dct}')
    return numpy.linspace(start, stop, num)


def times(cfg):
    """ the simulation time grid: explicit values, a grid, or the single
    measurement time

    :rtype: numpy.ndarray
    """
    tcfg = cfg.time
    if tcfg.values is not None and tcfg.grid is not None:
        raise ConfigError("time.values and time.grid are mutually exclusive")
    if tcfg.values is not None:
        vals = tcfg.values
        if not vals or not all(map(_is_real, vals)):
            raise ConfigError(f'time.values must be numbers, got {vals!r}')
        tvals = numpy.array(vals, dtype=float)
    elif tcfg.grid is not None:
        tvals = grid('time.grid', tcfg.grid)
    else:
        tvals = numpy.array([measurement_time(cfg)])
    if not numpy.all(tvals >= 0.):
        raise ConfigError(f'times must be non-negative, got {tvals}')
    return tvals


def measurement_time(cfg):
    """ the time at which the evolved state is measured

    :rtype: float
    """
    t = cfg.time.t
    if not _is_real(t) or not t >= 0. or not math.isfinite(t):
        raise ConfigError(f'time.t must be a non-negative number, got {t!r}')
    return float(t)


def noise_models(cfg):
    """ the noise models to sweep over, in order

    :rtype: list[NoiseModel]
    """
    ncfg = cfg.noise
    try:
        if ncfg.mode == NoiseMode.ADDITIVE:
            sigmas = ncfg.sigmas if ncfg.sigmas is not None else [ncfg.sigma]
            if not sigmas or not all(map(_is_real, sigmas)):
                raise ConfigError(f'noise sigmas must be numbers: {sigmas!r}')
            models = [NoiseModel.additive(sigma) for sigma in sigmas]
        elif ncfg.mode == NoiseMode.QUADRATURE_SAMPLES:
            models = [NoiseModel.quadrature_samples(ncfg.n, ncfg.bandwidth)]
        else:
            models = [NoiseModel.exact()]
    except DomainError as err:
        raise ConfigError(f'section \'noise\': {err}') from err
    return models


def seeds(cfg, seed=None):
    """ the seeds to sweep over; a command-line seed replaces the first

    :rtype: list[int]
    """
    ncfg = cfg.noise
    if ncfg.seeds is not None:
        seed_lst = list(ncfg.seeds)
        if not seed_lst or not all(_is_integer(s) and s >= 0
                                   for s in seed_lst):
            raise ConfigError(
                f'noise.seeds must be non-negative integers: {seed_lst!r}')
    else:
        if not _is_integer(ncfg.n_seeds) or ncfg.n_seeds < 1:
            raise ConfigError(
                f'noise.n_seeds must be >= 1, got {ncfg.n_seeds!r}')
        seed_lst = list(range(ncfg.n_seeds))
    if seed is not None:
        seed_lst[0] = seed
    return seed_lst


def curve_lines(cfg):
    """ lines and x grid of the dense tomogram curves, or None

    :rtype: (list[TomographyLine], numpy.ndarray) or None
    """
    curves = cfg.tomography.curves
    if curves is None:
        return None
    curves = _subsection('tomography.curves', curves)
    lines = curves.get_('lines')
    if not isinstance(lines, list) or not lines or not all(
            isinstance(line, list) and len(line) == 2
            and all(map(_is_real, line)) for line in lines):
        raise ConfigError(
            f'tomography.curves.lines must be [[mu, nu], ...], got {lines!r}')
    try:
        lines = [TomographyLine(float(mu), float(nu)) for mu, nu in lines]
    except DomainError as err:
        raise ConfigError(f'tomography.curves.lines: {err}') from err
    return lines, grid('tomography.curves.grid', curves.get_('grid'))


def wigner_axes(cfg):
    """ q and p axes of the Wigner grid, or None

    :rtype: (numpy.ndarray, numpy.ndarray) or None
    """
    wcfg = cfg.tomography.wigner
    if wcfg is None:
        return None
    wcfg = _subsection('tomography.wigner', wcfg)
    return (grid('tomography.wigner.q', wcfg.get_('q')),
            grid('tomography.wigner.p', wcfg.get_('p')))


def ratio_points(cfg):
    """ number of spreads in the spread-equation ratio curves

    :rtype: int
    """
    num = _subsection('tomography.ratio', cfg.tomography.ratio).get_('num')
    if not _is_integer(num) or num < 2:
        raise ConfigError(f'tomography.ratio.num must be >= 2, got {num!r}')
    return num


def _subsection(key, val):
    if not isinstance(val, tomolab.info.Info):
        raise ConfigError(f'{key} must be an object, got {val!r}')
    return val


def output_dir(cfg, out=None):
    """ the output directory; a command-line value wins

    :param cfg: configuration, or None for the default directory
    """
    if out is not None:
        return out
    return cfg.output.dir if cfg is not None else SECTIONS['output']['dir']
