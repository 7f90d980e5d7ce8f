""" the `tomolab` command: simulate, tomogram, reconstruct, roundtrip

Exit codes: 0 ok, 1 unexpected tomolab error, 2 configuration or input
error, 3 physics precondition, 4 reconstruction failure.
"""
import os
import sys
import json
import logging
import argparse
import numpy
import tomolab.io_
import tomolab.data_types
from tomolab import fs
from tomolab import config
from tomolab.schema import info_objects
from tomolab.schema.info_objects import RunStatus
from tomolab.model import check_complete_positivity
from tomolab.evolution import trajectory
from tomolab.evolution import evolve_state
from tomolab.evolution import is_contracting
from tomolab.tomography import NoiseModel
from tomolab.tomography import make_rescaling
from tomolab.tomography import rescale_state
from tomolab.tomography import unrescale_state
from tomolab.tomography import points_from_rows
from tomolab.tomography import sample_tomogram
from tomolab.tomography import wigner_grid
from tomolab.reconstruction import Sign
from tomolab.reconstruction import NOISY_MATCH_RTOL
from tomolab.reconstruction import split_points
from tomolab.reconstruction import reconstruct_state
from tomolab.reconstruction import spread_upper_bound
from tomolab.reconstruction import transcendental_ratio
from tomolab.inversion import EstimationMode
from tomolab.pipeline import Scenario
from tomolab.pipeline import measure
from tomolab.pipeline import measurement_plan
from tomolab.pipeline import sweep
from tomolab.pipeline import error_table
from tomolab.errors import TomolabError
from tomolab.errors import ConfigError
from tomolab.errors import PhysicsError
from tomolab.errors import InconsistentDataError

log = logging.getLogger(__name__)

LOG_ENV_VAR = 'TOMOLAB_LOG'
LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'


def configure_logging(level_str=None):
    """ set up the root logger from a level name or number

    :param level_str: e.g. 'DEBUG' or '10'; defaults to $TOMOLAB_LOG, then
        WARNING
    """
    if level_str is None:
        level_str = os.environ.get(LOG_ENV_VAR, 'WARNING')
    level_str = level_str.strip()
    if level_str.isdigit():
        level = int(level_str)
    else:
        level = logging.getLevelName(level_str.upper())
        if not isinstance(level, int):
            level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr,
                        force=True)


def _coefficients(cfg, allow_noncp=False):
    """ true coefficients, refused when they violate complete positivity """
    params = config.physical_params(cfg)
    coeffs = config.coefficients(cfg)
    verdict = check_complete_positivity(coeffs, params.hbar)
    if not verdict:
        if not allow_noncp:
            raise PhysicsError(
                'coefficients violate complete positivity (constraint '
                f'{verdict.violated}, margin {verdict.margin:.3e}); pass '
                '--allow-noncp to run anyway')
        log.warning('running with coefficients that violate complete '
                    'positivity (constraint %s)', verdict.violated)
    return coeffs


def _rescaling(cfg, params):
    fallback = cfg.tomography.fallback_var_p0
    if fallback is None and cfg.initial_state is not None:
        fallback = config.initial_state(cfg).var_p
    return make_rescaling(params, fallback_var_p0=fallback)


def _known_signs(cfg):
    return cfg.tomography.sign_hints == config.SignHints.KNOWN


def cmd_simulate(cfg, out=None, allow_noncp=False):
    """ cumulant trajectory over the configured time grid

    :returns: the trajectory rows
    :rtype: list[tuple]
    """
    params = config.physical_params(cfg)
    coeffs = _coefficients(cfg, allow_noncp)
    state0 = config.initial_state(cfg)
    tvals = config.times(cfg)
    states = trajectory(params, coeffs, state0, tvals,
                        method=cfg.time.method, dt=cfg.time.dt)
    rows = [(float(t),) + tuple(state.to_dict().values())
            for t, state in zip(tvals, states)]

    sim_fs = fs.simulation(config.output_dir(cfg, out))
    sim_fs[-1].create()
    sim_fs[-1].file.trajectory.write(rows)
    sim_fs[-1].file.info.write(info_objects.simulation(
        physical=params.to_dict(), coefficients=coeffs.to_dict(),
        initial_state=state0.to_dict(), method=cfg.time.method,
        dt=cfg.time.dt, ntimes=len(rows)))
    log.info('wrote %s', sim_fs[-1].file.trajectory.path())
    return rows


def _ratio_rows(q_points, num):
    """ spread-equation ratio curves of the first two points at x != 0 """
    origin = [point for point in q_points if point.x == 0.]
    others = [point for point in q_points if point.x != 0.][:2]
    if len(origin) != 1 or not origin[0].value > 0.:
        log.warning('no positive origin point, skipping the ratio curves')
        return []
    w0 = origin[0].value
    spreads = numpy.linspace(spread_upper_bound(w0) / num,
                             spread_upper_bound(w0), num)
    rows = []
    for sign in (Sign.PLUS, Sign.MINUS):
        for point in others:
            if not point.value > 0.:
                continue
            ratios = transcendental_ratio(point.x, point.value, w0, sign,
                                          spreads)
            rows.extend((sign, point.x, float(spread), float(val))
                        for spread, val in zip(spreads, ratios))
    return rows


def cmd_tomogram(cfg, out=None, seed=None, allow_noncp=False):
    """ tomogram points of the initial or evolved state, with optional
    dense curves, a Wigner grid and the spread-equation ratio curves

    :returns: the measured point rows
    :rtype: list[tuple]
    """
    params = config.physical_params(cfg)
    state = config.initial_state(cfg)
    if cfg.tomography.state == config.TomogramState.EVOLVED:
        coeffs = _coefficients(cfg, allow_noncp)
        state = evolve_state(params, coeffs, state,
                             config.measurement_time(cfg),
                             method=cfg.time.method, dt=cfg.time.dt)
    resc = _rescaling(cfg, params)
    state_r = rescale_state(state, resc)
    noise = config.noise_models(cfg)[0]
    seed_ = config.seeds(cfg, seed)[0]

    plan = measurement_plan(state_r, known_signs=_known_signs(cfg))
    points = measure(state_r, plan, noise, seed=seed_)
    rows = [point.row() for pts in points for point in pts]

    tomo_fs = fs.tomogram(config.output_dir(cfg, out))
    tomo_fs[-1].create()
    tomo_fs[-1].file.points.write(rows)
    tomo_fs[-1].file.ratio.write(
        _ratio_rows(points[0], config.ratio_points(cfg)))

    curves = config.curve_lines(cfg)
    if curves is not None:
        lines, xs = curves
        curve_rows = [point.row() for line in lines for point in
                      sample_tomogram(state_r, line, xs, NoiseModel.exact())]
        tomo_fs[-1].file.curves.write(curve_rows)

    axes = config.wigner_axes(cfg)
    if axes is not None:
        qs_axis, ps_axis = axes
        qs, ps, ws = wigner_grid(state_r, qs_axis, ps_axis)
        tomo_fs[-1].file.wigner.write(list(zip(qs, ps, ws)))
        tomo_fs[-1].file.wigner_meta.write({
            'q_min': float(qs_axis[0]), 'q_max': float(qs_axis[-1]),
            'n_q': len(qs_axis),
            'p_min': float(ps_axis[0]), 'p_max': float(ps_axis[-1]),
            'n_p': len(ps_axis),
            'order': 'ij',
            'state': state_r.to_dict(),
            'peak': float(1. / (2. * numpy.pi * numpy.sqrt(state_r.det))),
            'det_ratio': state_r.det / (state_r.var_q * state_r.var_p)})

    tomo_fs[-1].file.info.write(info_objects.tomogram(
        physical=params.to_dict(), state=state_r.to_dict(),
        rescaling=resc.to_dict(), noise=noise.tag, seed=seed_,
        npoints=len(rows)))
    log.info('wrote %d tomogram points to %s', len(rows),
             tomo_fs[-1].file.points.path())
    return rows


def _read_points(paths):
    points = []
    for path in paths:
        try:
            tab_str = tomolab.io_.read_file(path)
        except (OSError, AssertionError) as err:
            raise ConfigError(f'cannot read tomogram {path}: {err}') from err
        try:
            rows = tomolab.data_types.sread.tomogram(tab_str)
        except (ValueError, AssertionError) as err:
            raise InconsistentDataError(
                f'{path} is not a tomogram table: {err}',
                payload={'file': path}) from err
        try:
            points.extend(points_from_rows(rows.tolist()))
        except InconsistentDataError as err:
            err.payload['file'] = path
            raise
    return points


def cmd_reconstruct(paths, cfg=None, out=None, sign_hints=None,
                    tol_match=None):
    """ cumulants from tomogram tables

    :param paths: tomogram CSV files
    :type paths: list[str]
    :param cfg: configuration, for the physical rescaling and defaults
    :type cfg: Info
    :returns: the reconstruction report
    :rtype: dict
    """
    if tol_match is None:
        tol_match = (cfg.tomography.tol_match if cfg is not None
                     else NOISY_MATCH_RTOL)
    if sign_hints is None:
        sign_hints = (Sign.UNKNOWN, Sign.UNKNOWN)

    rec = reconstruct_state(*split_points(_read_points(paths)),
                            sign_hints=sign_hints, tol_match=tol_match)
    state_phys = None
    if cfg is not None and cfg.physical is not None:
        resc = _rescaling(cfg, config.physical_params(cfg))
        state_phys = unrescale_state(rec.state, resc).to_dict()
    report = {
        'state': rec.state.to_dict(),
        'state_physical': state_phys,
        'residuals': rec.residuals,
        'points_used': rec.points_used,
        'sign_resolved': list(rec.sign_resolved),
    }

    rec_fs = fs.reconstruction(config.output_dir(cfg, out))
    rec_fs[-1].create()
    rec_fs[-1].file.report.write(report)
    log.info('wrote %s', rec_fs[-1].file.report.path())
    return report


def scenario(cfg, coeffs):
    """ the round-trip experiment described by a configuration

    :rtype: Scenario
    """
    return Scenario(
        params=config.physical_params(cfg), coeffs=coeffs,
        state0=config.initial_state(cfg), t=config.measurement_time(cfg),
        known_signs=_known_signs(cfg),
        tol_match=cfg.tomography.tol_match, mode=cfg.estimation.mode,
        lambda_method=cfg.estimation.lambda_method,
        angle_tol=cfg.estimation.angle_tol, t_inf=cfg.estimation.t_inf,
        reconstruct_probe=cfg.initial_state.reconstruct,
        method=cfg.time.method, dt=cfg.time.dt,
        fallback_var_p0=cfg.tomography.fallback_var_p0)


def cmd_roundtrip(cfg, out=None, seed=None, allow_noncp=False):
    """ the full pipeline over every noise model and seed

    Writes the error table and, for the first noise model and seed, the
    estimate report. A failure of that headline run is raised after the
    table is written.

    :returns: all run results
    :rtype: list[RunResult]
    """
    coeffs = _coefficients(cfg, allow_noncp)
    scen = scenario(cfg, coeffs)
    if (scen.mode == EstimationMode.STATIONARY
            and not is_contracting(scen.params, coeffs.lambda_)):
        raise PhysicsError(
            'stationary estimation needs contracting dynamics, but '
            f'lambda={coeffs.lambda_} does not exceed the dynamical rate')

    noises = config.noise_models(cfg)
    seeds = config.seeds(cfg, seed)
    results = sweep(scen, noises, seeds, workers=cfg.output.workers)
    headline = next(res for res in results
                    if res.noise == noises[0] and res.seed == seeds[0])

    rt_fs = fs.roundtrip(config.output_dir(cfg, out))
    rt_fs[0].create()
    rt_fs[0].file.errors.write(error_table(results, coeffs))
    if headline.report is not None:
        rt_fs[0].file.estimate.write(headline.report.to_dict())
    rt_fs[0].file.info.write(info_objects.roundtrip(
        physical=scen.params.to_dict(), coefficients=coeffs.to_dict(),
        initial_state=scen.state0.to_dict(), t=scen.t, mode=scen.mode,
        noise=[noise.tag for noise in noises], seeds=seeds,
        status=(RunStatus.SUCCESS if headline.error is None
                else RunStatus.FAILURE)))

    if cfg.output.per_run:
        # runs left over from an earlier sweep would not match errors.csv
        run_locs = [[res.noise.tag, res.seed] for res in results]
        for locs in rt_fs[-1].existing():
            if locs not in run_locs:
                log.info('removing stale run %s', locs)
                rt_fs[-1].remove(locs)
        for res in results:
            locs = [res.noise.tag, res.seed]
            rt_fs[-1].create(locs)
            rt_fs[-1].file.points.write(res.points, locs)
            if res.report is not None:
                rt_fs[-1].file.estimate.write(res.report.to_dict(), locs)
    log.info('wrote %d runs to %s', len(results), rt_fs[0].path())

    if headline.error is not None:
        raise headline.error
    return results


def _seed(val):
    seed = int(val)
    if seed < 0 or seed >= 2 ** 64:
        raise argparse.ArgumentTypeError(f'seed {val} is not a u64')
    return seed


def _sign(val):
    if val not in (Sign.PLUS, Sign.MINUS, Sign.UNKNOWN):
        raise argparse.ArgumentTypeError(f'invalid sign {val!r}')
    return val


def parser():
    """ the argument parser

    :rtype: argparse.ArgumentParser
    """
    prs = argparse.ArgumentParser(
        prog='tomolab',
        description='Damped-oscillator master-equation coefficients from a '
                    'few tomogram points.')
    subs = prs.add_subparsers(dest='command', required=True)

    def _common(sub, config_required=True, seeded=True, physical=True):
        sub.add_argument('--config', required=config_required,
                         help='JSON (or YAML) run configuration')
        sub.add_argument('--out', default=None,
                         help='output directory (overrides output.dir)')
        if seeded:
            sub.add_argument('--seed', type=_seed, default=None,
                             help='random seed (overrides the first seed)')
        if physical:
            sub.add_argument('--allow-noncp', action='store_true',
                             help='run with coefficients that violate '
                                  'complete positivity')

    _common(subs.add_parser('simulate', help='cumulant trajectory'),
            seeded=False)
    _common(subs.add_parser('tomogram', help='tomogram points and plot data'))
    rec = subs.add_parser('reconstruct', help='cumulants from tomograms')
    _common(rec, config_required=False, seeded=False, physical=False)
    rec.add_argument('--tomogram', action='append', required=True,
                     help='tomogram CSV file (repeatable)')
    rec.add_argument('--sign-q', type=_sign, default=Sign.UNKNOWN,
                     help='sign of <q>: plus, minus or unknown')
    rec.add_argument('--sign-p', type=_sign, default=Sign.UNKNOWN,
                     help='sign of <p>: plus, minus or unknown')
    rec.add_argument('--tol-match', type=float, default=None,
                     help='relative tolerance for matching roots')
    _common(subs.add_parser('roundtrip', help='the full estimation pipeline'))
    return prs


def run(args):
    """ dispatch parsed arguments to a command """
    cfg = config.load_config(args.config) if args.config else None
    if args.command == 'simulate':
        cmd_simulate(cfg, out=args.out, allow_noncp=args.allow_noncp)
    elif args.command == 'tomogram':
        cmd_tomogram(cfg, out=args.out, seed=args.seed,
                     allow_noncp=args.allow_noncp)
    elif args.command == 'reconstruct':
        cmd_reconstruct(args.tomogram, cfg=cfg, out=args.out,
                        sign_hints=(args.sign_q, args.sign_p),
                        tol_match=args.tol_match)
    else:
        cmd_roundtrip(cfg, out=args.out, seed=args.seed,
                      allow_noncp=args.allow_noncp)


def main(argv=None):
    """ command-line entry point

    :returns: exit code
    :rtype: int
    """
    args = parser().parse_args(argv)
    configure_logging()
    try:
        run(args)
    except TomolabError as err:
        print(f'tomolab: {type(err).__name__}: {err}', file=sys.stderr)
        payload = getattr(err, 'payload', None)
        if payload:
            print(json.dumps(payload, default=str), file=sys.stderr)
        return err.exit_code
    return 0


if __name__ == '__main__':
    sys.exit(main())
