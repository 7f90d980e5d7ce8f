""" simulate, measure, reconstruct and invert: the round trip as functions

A run evolves a probe state with known coefficients, reads 8-10 points of
its tomograms, reconstructs the cumulants and inverts them for the
coefficients. `sweep` repeats runs over noise models and seeds.
"""
import math
import logging
import dataclasses
import multiprocessing
import numpy
from tomolab.model import CumulantState
from tomolab.evolution import Method
from tomolab.evolution import DEFAULT_DT
from tomolab.evolution import evolve_state
from tomolab.evolution import stationary_covariance
from tomolab.tomography import Q_LINE
from tomolab.tomography import P_LINE
from tomolab.tomography import DIAGONAL_LINE
from tomolab.tomography import NoiseModel
from tomolab.tomography import marginal
from tomolab.tomography import make_rescaling
from tomolab.tomography import rescale_state
from tomolab.tomography import unrescale_state
from tomolab.tomography import sample_tomogram
from tomolab.reconstruction import Sign
from tomolab.reconstruction import NOISY_MATCH_RTOL
from tomolab.reconstruction import reconstruct_state
from tomolab.inversion import LambdaMethod
from tomolab.inversion import EstimationMode
from tomolab.inversion import estimate_all
from tomolab.inversion import estimate_stationary
from tomolab.errors import TomolabError
from tomolab.errors import DomainError

log = logging.getLogger(__name__)

# candidate offsets from the mean, in units of the marginal spread
MARGINAL_OFFSETS = (1.5, -1.5, 0.75, -0.75, 2., -2., 1., -1., 0.5, -0.5,
                    2.5, -2.5)
MIN_OFFSET_RATIO = 0.05
DIAGONAL_OFFSET = 2.
COEFFICIENT_NAMES = ('lambda', 'd_qq', 'd_pp', 'd_qp')
SUCCESS = 'succeeded'


def marginal_positions(mean, spread, nextra):
    """ where to read a marginal: x = 0 and `nextra` points near the mean

    Points closer to the origin than 5% of the spread, or whose |x| repeats
    an earlier one to within 5% of the spread, are skipped.

    :param mean: mean of the marginal
    :param spread: standard deviation of the marginal
    :param nextra: number of points at x != 0 (2 or 3)
    :rtype: tuple[float]
    """
    assert nextra in (2, 3), f'{nextra} extra points requested'
    min_gap = MIN_OFFSET_RATIO * spread
    xs = []
    for offset in MARGINAL_OFFSETS:
        x = mean + offset * spread
        if abs(x) <= min_gap:
            continue
        if any(abs(abs(x) - abs(x_)) <= min_gap for x_ in xs):
            continue
        xs.append(x)
        if len(xs) == nextra:
            break
    assert len(xs) == nextra, f'no room for {nextra} points around {mean}'
    return (0.,) + tuple(xs)


def diagonal_positions(state):
    """ where to read the diagonal tomogram: at its mean and two spreads
    beyond it

    :rtype: tuple[float]
    """
    mean, var = marginal(state, DIAGONAL_LINE)
    return (mean, mean + DIAGONAL_OFFSET * math.sqrt(var))


def sign_of(val):
    """ the `Sign` of a mean, zero counting as plus """
    return Sign.PLUS if val >= 0. else Sign.MINUS


@dataclasses.dataclass(frozen=True)
class MeasurementPlan:
    """ positions on the three lines and the sign hints handed to the
    reconstruction
    """
    q_xs: tuple
    p_xs: tuple
    diag_xs: tuple
    sign_hints: tuple

    @property
    def npoints(self):
        """ total number of points """
        return len(self.q_xs) + len(self.p_xs) + len(self.diag_xs)


def measurement_plan(state, known_signs=True):
    """ 8 points when the signs of the means are known, 10 otherwise

    :param state: rescaled state the positions are chosen for
    :type state: CumulantState
    :param known_signs: hand the true signs to the reconstruction?
    :rtype: MeasurementPlan
    """
    nextra = 2 if known_signs else 3
    if known_signs:
        hints = (sign_of(state.mean_q), sign_of(state.mean_p))
    else:
        hints = (Sign.UNKNOWN, Sign.UNKNOWN)
    return MeasurementPlan(
        q_xs=marginal_positions(state.mean_q, math.sqrt(state.var_q), nextra),
        p_xs=marginal_positions(state.mean_p, math.sqrt(state.var_p), nextra),
        diag_xs=diagonal_positions(state),
        sign_hints=hints)


def measure(state, plan, noise, seed=0):
    """ simulated tomogram points following a plan

    Each line draws from its own child of the seed.

    :param state: rescaled state
    :type state: CumulantState
    :type plan: MeasurementPlan
    :type noise: NoiseModel
    :rtype: (list, list, list)
    """
    if not isinstance(seed, numpy.random.SeedSequence):
        seed = numpy.random.SeedSequence(seed)
    seqs = seed.spawn(3)
    return tuple(
        sample_tomogram(state, line, xs, noise, seed=seq)
        for line, xs, seq in zip((Q_LINE, P_LINE, DIAGONAL_LINE),
                                 (plan.q_xs, plan.p_xs, plan.diag_xs), seqs))


@dataclasses.dataclass(frozen=True)
class Scenario:
    """ everything a round trip needs besides the noise model and seed

    :param params: physical parameters
    :param coeffs: true coefficients
    :param state0: probe state at t = 0, physical units
    :param t: measurement time
    """
    params: object
    coeffs: object
    state0: CumulantState
    t: float
    known_signs: bool = True
    tol_match: float = NOISY_MATCH_RTOL
    mode: str = EstimationMode.FINITE_TIME
    lambda_method: str = LambdaMethod.NORM
    angle_tol: float | None = None
    t_inf: float | None = None
    reconstruct_probe: bool = False
    method: str = Method.CLOSED_FORM
    dt: float = DEFAULT_DT
    fallback_var_p0: float | None = None

    @property
    def rescaling(self):
        """ phase-space rescaling of the tomograms """
        var_p0 = (self.fallback_var_p0 if self.fallback_var_p0 is not None
                  else self.state0.var_p)
        return make_rescaling(self.params, fallback_var_p0=var_p0)


@dataclasses.dataclass(frozen=True)
class RunResult:
    """ outcome of one round trip

    :param report: the estimate, or None if the run failed
    :param error: the error that stopped the run, or None
    :param points: every tomogram point measured, as rows
    """
    noise: NoiseModel
    seed: int
    report: object
    error: TomolabError | None
    points: tuple

    @property
    def status(self):
        """ `SUCCESS` or the name of the error """
        return SUCCESS if self.error is None else type(self.error).__name__

    def error_rows(self, coeffs):
        """ (sigma, seed, coefficient, estimate, truth, rel_error, status)
        rows, one per coefficient
        """
        truth = coeffs.to_dict()
        estimate = (self.report.coefficients.to_dict()
                    if self.report is not None else None)
        rows = []
        for name in COEFFICIENT_NAMES:
            if estimate is None:
                est, rel_err = math.nan, math.inf
            else:
                est = estimate[name]
                rel_err = relative_error(est, truth[name])
            rows.append((self.noise.sigma, self.seed, name, est, truth[name],
                         rel_err, self.status))
        return rows


def relative_error(estimate, truth):
    """ |estimate - truth| / |truth|, or the absolute error for zero truth """
    err = abs(estimate - truth)
    return err / abs(truth) if truth != 0. else err


def _measure_probe(scenario, noise, seed):
    """ the probe state as reconstructed from its own tomograms """
    resc = scenario.rescaling
    state0 = rescale_state(scenario.state0, resc)
    plan = measurement_plan(state0, known_signs=scenario.known_signs)
    points = measure(state0, plan, noise, seed=seed)
    rec = reconstruct_state(*points, sign_hints=plan.sign_hints,
                            tol_match=scenario.tol_match)
    log.info('probe reconstructed from %d points', rec.points_used)
    return unrescale_state(rec.state, resc), points


def _stationary_state(scenario):
    if scenario.t_inf is not None:
        return evolve_state(scenario.params, scenario.coeffs,
                            scenario.state0, scenario.t_inf,
                            method=scenario.method, dt=scenario.dt)
    covs = stationary_covariance(scenario.params, scenario.coeffs)
    return CumulantState(0., 0., *covs)


def estimate(scenario, noise, seed=0, points_out=None):
    """ one round trip, raising on failure

    :param scenario: the experiment
    :type scenario: Scenario
    :param noise: noise model
    :type noise: NoiseModel
    :param seed: random seed
    :type seed: int
    :param points_out: collects every measured point, if given
    :type points_out: list
    :rtype: EstimateReport
    """
    points_out = [] if points_out is None else points_out
    params, resc = scenario.params, scenario.rescaling
    seq_probe, seq_t, seq_inf = numpy.random.SeedSequence(seed).spawn(3)

    state0 = scenario.state0
    if scenario.reconstruct_probe:
        state0, probe_points = _measure_probe(scenario, noise, seq_probe)
        points_out.extend(p for pts in probe_points for p in pts)

    state_t = rescale_state(
        evolve_state(params, scenario.coeffs, scenario.state0, scenario.t,
                     method=scenario.method, dt=scenario.dt), resc)
    plan = measurement_plan(state_t, known_signs=scenario.known_signs)
    points_t = measure(state_t, plan, noise, seed=seq_t)
    points_out.extend(p for pts in points_t for p in pts)

    if scenario.mode == EstimationMode.STATIONARY:
        state_inf = rescale_state(_stationary_state(scenario), resc)
        plan_inf = measurement_plan(state_inf,
                                    known_signs=scenario.known_signs)
        points_inf = measure(state_inf, plan_inf, noise, seed=seq_inf)
        points_out.extend(p for pts in points_inf for p in pts)
        return estimate_stationary(
            params, state0, points_t, scenario.t, points_inf,
            sign_hints=plan.sign_hints, rescaling=resc,
            tol_match=scenario.tol_match,
            lambda_method=scenario.lambda_method,
            angle_tol=scenario.angle_tol,
            sign_hints_inf=plan_inf.sign_hints)
    if scenario.mode != EstimationMode.FINITE_TIME:
        raise DomainError(f'unknown estimation mode {scenario.mode!r}')
    return estimate_all(
        params, state0, points_t, scenario.t, sign_hints=plan.sign_hints,
        rescaling=resc, tol_match=scenario.tol_match,
        lambda_method=scenario.lambda_method, angle_tol=scenario.angle_tol)


def roundtrip_once(scenario, noise, seed=0):
    """ one round trip; failures are recorded rather than raised

    :rtype: RunResult
    """
    points = []
    try:
        report = estimate(scenario, noise, seed=seed, points_out=points)
        error = None
    except TomolabError as err:
        log.info('run %s/%d failed: %s', noise.tag, seed, err)
        report = None
        error = err
    return RunResult(noise=noise, seed=seed, report=report, error=error,
                     points=tuple(point.row() for point in points))


def sweep(scenario, noises, seeds, workers=1):
    """ round trips over every noise model and seed

    :param noises: noise models
    :type noises: list[NoiseModel]
    :param seeds: seeds
    :type seeds: list[int]
    :param workers: number of processes; 1 runs in this process
    :type workers: int
    :returns: results ordered by (sigma, seed)
    :rtype: list[RunResult]
    """
    jobs = [(scenario, noise, seed) for noise in noises for seed in seeds]
    log.info('running %d round trips on %d worker(s)', len(jobs), workers)
    if workers > 1 and len(jobs) > 1:
        with multiprocessing.Pool(processes=workers) as pool:
            results = pool.starmap(roundtrip_once, jobs)
    else:
        results = [roundtrip_once(*job) for job in jobs]
    return sorted(results, key=lambda res: (res.noise.sigma, res.seed))


def error_table(results, coeffs):
    """ error rows of every result, in result order

    :rtype: list[tuple]
    """
    return [row for res in results for row in res.error_rows(coeffs)]
