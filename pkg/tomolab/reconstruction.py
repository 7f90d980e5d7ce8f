""" cumulants of a Gaussian state from a handful of tomogram points

A marginal (line (1, 0) or (0, 1)) is read at x = 0 and at two or three
other points. The value at x = 0 ties the mean to the spread, which leaves
one transcendental equation in the spread per extra point; each has up to
two roots and the common root of two points is the spread. The covariance
follows from two points on the diagonal line.
"""
import math
import logging
import dataclasses
import numpy
import scipy.optimize
import scipy.special
from tomolab.model import CumulantState
from tomolab.errors import DomainError
from tomolab.errors import InconsistentDataError
from tomolab.errors import AmbiguousSignError
from tomolab.tomography import Q_LINE
from tomolab.tomography import P_LINE
from tomolab.tomography import DIAGONAL_LINE
from tomolab.tomography import radon_gaussian

log = logging.getLogger(__name__)

EXACT_MATCH_RTOL = 1e-6
NOISY_MATCH_RTOL = 1e-2
BRACKET_STEPS = 512
SIGN_TIE_ATOL = 1e-9
ENDPOINT_ATOL = 1e-12
MIN_SPREAD_RATIO = 1e-12
SQRT_2PI = math.sqrt(2. * math.pi)


class Sign():
    """ sign of a mean """
    PLUS = 'plus'
    MINUS = 'minus'
    UNKNOWN = 'unknown'


def _sign_factor(sign):
    if sign == Sign.PLUS:
        return 1.
    if sign == Sign.MINUS:
        return -1.
    raise DomainError(f'a definite sign is required, got {sign!r}')


@dataclasses.dataclass(frozen=True)
class MarginalEstimate:
    """ mean and spread read from one marginal tomogram

    :param sign_resolved: was the sign of the mean chosen from the data?
    :param residual: largest relative misfit of the Gaussian over the points
    """
    mean: float
    spread: float
    sign_resolved: bool
    residual: float
    points_used: int

    def __post_init__(self):
        assert self.spread > 0. and math.isfinite(self.residual), (
            f'invalid estimate {self}'
        )

    @property
    def variance(self):
        """ spread^2 """
        return self.spread ** 2


def mean_from_origin_point(w0, spread, sign):
    """ mean of a Gaussian with the given spread and density w0 at x = 0

    :param w0: density at x = 0
    :type w0: float
    :param spread: standard deviation
    :type spread: float
    :param sign: `Sign.PLUS` or `Sign.MINUS`
    :rtype: float
    """
    fac = _sign_factor(sign)
    peak = 1. / (spread * SQRT_2PI)
    if not (w0 > 0. and w0 <= peak * (1. + ENDPOINT_ATOL)):
        raise InconsistentDataError(
            f'density {w0} at the origin is not attainable with spread '
            f'{spread} (peak {peak})',
            payload={'w0': w0, 'spread': spread})
    return fac * spread * math.sqrt(max(-2. * math.log(w0 / peak), 0.))


def _means_of_spreads(spreads, w0, fac):
    spreads = numpy.asarray(spreads, dtype=float)
    log_ratio = numpy.maximum(-numpy.log(w0 * spreads * SQRT_2PI), 0.)
    return fac * spreads * numpy.sqrt(2. * log_ratio)


def _log_mismatch(spreads, x, wx, w0, fac):
    """ log of (Gaussian at x with the spread and the tied mean) / wx """
    spreads = numpy.asarray(spreads, dtype=float)
    means = _means_of_spreads(spreads, w0, fac)
    return (-numpy.log(spreads * SQRT_2PI)
            - (x - means) ** 2 / (2. * spreads ** 2) - math.log(wx))


def transcendental_ratio(x, wx, w0, sign, spreads):
    """ ratio of the two sides of the spread equation at each spread

    A ratio of 1 marks a root.

    :rtype: numpy.ndarray
    """
    return numpy.exp(_log_mismatch(spreads, x, wx, w0, _sign_factor(sign)))


def spread_upper_bound(w0):
    """ the largest spread compatible with density w0 at x = 0 """
    return 1. / (w0 * SQRT_2PI)


def spread_candidates(x, wx, w0, sign, bracket_steps=BRACKET_STEPS,
                      endpoint_atol=ENDPOINT_ATOL):
    """ all spreads solving the transcendental equation for one point

    The scan runs over `bracket_steps` log-spaced intervals of
    (1e-12 Dmax, Dmax] with Dmax = 1 / (w0 sqrt(2 pi)); sign changes are
    refined with Brent's method.

    :param x: quadrature value (!= 0)
    :param wx: density at x
    :param w0: density at x = 0
    :param sign: `Sign.PLUS` or `Sign.MINUS`
    :returns: up to two spreads, ascending
    :rtype: list[float]
    """
    fac = _sign_factor(sign)
    if x == 0. or not (wx > 0. and w0 > 0.):
        raise DomainError(
            f'spread_candidates needs x != 0 and positive densities, got '
            f'x={x}, wx={wx}, w0={w0}')

    d_max = spread_upper_bound(w0)
    grid = numpy.geomspace(MIN_SPREAD_RATIO * d_max, d_max, bracket_steps + 1)
    grid[-1] = d_max
    vals = _log_mismatch(grid, x, wx, w0, fac)
    # the tied mean vanishes at Dmax
    vals[-1] = math.log(w0) - x ** 2 / (2. * d_max ** 2) - math.log(wx)

    def _func(spread):
        return float(_log_mismatch(spread, x, wx, w0, fac))

    roots = []
    for idx in range(bracket_steps):
        lo, hi = grid[idx], grid[idx + 1]
        g_lo, g_hi = vals[idx], vals[idx + 1]
        if g_lo == 0.:
            roots.append(lo)
        elif g_lo * g_hi < 0.:
            roots.append(scipy.optimize.brentq(
                _func, lo, hi, xtol=1e-14 * lo,
                rtol=4. * numpy.finfo(float).eps, maxiter=200))

    # a zero-mean Gaussian touches the equation at Dmax without crossing
    last_open = not roots or roots[-1] < grid[-2]
    if abs(vals[-1]) <= endpoint_atol and last_open and len(roots) < 2:
        roots.append(d_max)

    roots = _merge_close(sorted(roots))
    log.debug('spread roots at x=%g (%s): %s', x, sign, roots)
    if not roots:
        raise InconsistentDataError(
            f'no spread reproduces density {wx} at x={x} with {sign} mean',
            payload={'x': x, 'wx': wx, 'w0': w0, 'sign': sign})
    if len(roots) > 2:
        raise InconsistentDataError(
            f'{len(roots)} spreads solve the equation at x={x}',
            payload={'x': x, 'roots': roots})
    return roots


def _merge_close(vals, rtol=1e-9):
    merged = []
    for val in vals:
        if merged and abs(val - merged[-1]) <= rtol * max(val, merged[-1]):
            continue
        merged.append(val)
    return merged


def _closest_match(cands1, cands2, rtol):
    """ the pair of candidates with the smallest relative gap below rtol """
    best = None
    for val1 in cands1:
        for val2 in cands2:
            gap = abs(val1 - val2) / max(abs(val1), abs(val2))
            if gap < rtol and (best is None or gap < best[0]):
                best = (gap, (val1 + val2) / 2.)
    return best


def _relative_residual(points, mean, variance):
    """ largest |model - value| / value over points on one line """
    worst = 0.
    for point in points:
        model = float(radon_gaussian(
            _marginal_state(point.line, mean, variance), point.x, point.line))
        scale = max(point.value, numpy.finfo(float).tiny)
        worst = max(worst, abs(model - point.value) / scale)
    return worst


def _marginal_state(line, mean, variance):
    """ a state whose tomogram on a coordinate line is N(mean, variance) """
    if line.is_close(P_LINE):
        return CumulantState(0., mean, 1., variance, 0.)
    return CumulantState(mean, 0., variance, 1., 0.)


def _normalized_marginal_points(points):
    points = [point.normalized() for point in points]
    if not points:
        raise InconsistentDataError('no points on the marginal line')
    line = points[0].line
    if not all(point.line.is_close(line) for point in points):
        raise InconsistentDataError(
            'marginal points are not all on one line',
            payload={'lines': [(p.line.mu, p.line.nu) for p in points]})
    if not (line.is_close(Q_LINE) or line.is_close(P_LINE)):
        raise InconsistentDataError(
            f'marginal points must lie on (1, 0) or (0, 1), got {line}')

    origin = [point for point in points if point.x == 0.]
    others = [point for point in points if point.x != 0.]
    if len(origin) != 1:
        raise InconsistentDataError(
            f'exactly one point at x = 0 is needed, got {len(origin)}')
    if len(others) not in (2, 3):
        raise InconsistentDataError(
            f'2 or 3 points at x != 0 are needed, got {len(others)}')
    if len(_merge_close(sorted(abs(p.x) for p in others))) != len(others):
        raise InconsistentDataError(
            'points at x != 0 must have distinct |x|',
            payload={'x': [p.x for p in others]})
    if not all(point.value > 0. for point in points):
        raise InconsistentDataError(
            'marginal densities must be positive',
            payload={'points': [p.row() for p in points]})
    return origin[0], others


def _solve_sign(origin, others, sign, rtol, bracket_steps, endpoint_atol):
    first, second = others[:2]
    cands1 = spread_candidates(first.x, first.value, origin.value, sign,
                               bracket_steps, endpoint_atol)
    cands2 = spread_candidates(second.x, second.value, origin.value, sign,
                               bracket_steps, endpoint_atol)
    match = _closest_match(cands1, cands2, rtol)
    if match is None:
        raise InconsistentDataError(
            f'the spread candidates of x={first.x} and x={second.x} do not '
            f'intersect ({sign} mean)',
            payload={'sign': sign, 'x': [first.x, second.x],
                     'candidates': [cands1, cands2]})
    spread = min(match[1], spread_upper_bound(origin.value))
    mean = mean_from_origin_point(origin.value, spread, sign)
    return mean, spread


def reconstruct_marginal(points, sign_hint=Sign.UNKNOWN,
                         tol_match=NOISY_MATCH_RTOL,
                         bracket_steps=BRACKET_STEPS):
    """ mean and spread from 3-4 points on a coordinate line

    One point must sit at x = 0. With a known sign two further points are
    needed; with an unknown sign a third further point picks the sign whose
    Gaussian fits it better.

    :param points: tomogram points, all on (1, 0) or all on (0, 1)
    :type points: list[TomogramPoint]
    :param sign_hint: a `Sign` value
    :param tol_match: relative tolerance for matching roots of noisy points
    :rtype: MarginalEstimate
    """
    origin, others = _normalized_marginal_points(points)
    exact = all(point.noise_sigma == 0. for point in [origin] + others)
    rtol = EXACT_MATCH_RTOL if exact else tol_match
    endpoint_atol = ENDPOINT_ATOL if exact else tol_match
    supplied = [origin] + others

    if sign_hint in (Sign.PLUS, Sign.MINUS):
        mean, spread = _solve_sign(origin, others, sign_hint, rtol,
                                   bracket_steps, endpoint_atol)
        return MarginalEstimate(
            mean=mean, spread=spread, sign_resolved=False,
            residual=_relative_residual(supplied, mean, spread ** 2),
            points_used=len(supplied))

    if sign_hint != Sign.UNKNOWN:
        raise DomainError(f'unknown sign hint {sign_hint!r}')
    if len(others) != 3:
        raise InconsistentDataError(
            'an unknown sign needs a fourth point (three at x != 0)',
            payload={'points_given': len(supplied)})

    solutions = {}
    failures = {}
    for sign in (Sign.PLUS, Sign.MINUS):
        try:
            mean, spread = _solve_sign(origin, others, sign, rtol,
                                       bracket_steps, endpoint_atol)
        except InconsistentDataError as err:
            failures[sign] = str(err)
            continue
        solutions[sign] = (mean, spread,
                           _relative_residual(supplied, mean, spread ** 2))

    if not solutions:
        raise InconsistentDataError(
            'no sign of the mean is consistent with the points',
            payload=failures)

    if len(solutions) == 2:
        (mean1, spread1, res1), (mean2, spread2, res2) = solutions.values()
        agree = (abs(spread1 - spread2) <= rtol * max(spread1, spread2)
                 and abs(mean1 - mean2) <= rtol * max(spread1, spread2))
        if not agree and abs(res1 - res2) <= SIGN_TIE_ATOL:
            raise AmbiguousSignError(
                'both signs of the mean fit the points equally well',
                payload={sign: {'mean': sol[0], 'spread': sol[1],
                                'residual': sol[2]}
                         for sign, sol in solutions.items()})
        if not agree:
            log.info('sign chosen by residual: plus %g, minus %g', res1, res2)

    mean, spread, residual = min(solutions.values(), key=lambda sol: sol[2])
    return MarginalEstimate(mean=mean, spread=spread, sign_resolved=True,
                            residual=residual, points_used=len(supplied))


def variance_candidates(x, wx, mean):
    """ variances v of N(mean, v) with density wx at x

    :rtype: list[float]
    """
    if not wx > 0.:
        raise InconsistentDataError(f'density {wx} at x={x} is not positive',
                                    payload={'x': x, 'value': wx})
    dist = (x - mean) ** 2
    if dist == 0.:
        return [1. / (2. * math.pi * wx ** 2)]

    arg = -2. * math.pi * dist * wx ** 2
    if arg < -1. / math.e:
        raise InconsistentDataError(
            f'density {wx} at x={x} exceeds every Gaussian centered at {mean}',
            payload={'x': x, 'value': wx, 'mean': mean})
    cands = []
    for branch in (0, -1):
        wval = scipy.special.lambertw(arg, k=branch)
        real = abs(wval.imag) <= 1e-12 * max(abs(wval.real), 1.)
        if real and wval.real < 0.:
            cands.append(-dist / wval.real)
    return _merge_close(sorted(cands))


def reconstruct_covariance(points, mean_q, mean_p, var_q, var_p,
                           tol_match=NOISY_MATCH_RTOL):
    """ sigma(q, p) from two points on the diagonal line

    :param points: two tomogram points on (1/sqrt2, 1/sqrt2)
    :type points: list[TomogramPoint]
    :rtype: float
    """
    points = [point.normalized() for point in points]
    if len(points) != 2:
        raise InconsistentDataError(
            f'two diagonal points are needed, got {len(points)}')
    if not all(point.line.is_close(DIAGONAL_LINE) for point in points):
        raise InconsistentDataError('covariance points must be diagonal')
    if math.isclose(points[0].x, points[1].x, rel_tol=1e-12, abs_tol=1e-300):
        raise InconsistentDataError(
            f'diagonal points must be distinct, got x={points[0].x} twice')

    exact = all(point.noise_sigma == 0. for point in points)
    rtol = EXACT_MATCH_RTOL if exact else tol_match
    mean_d = (mean_q + mean_p) / math.sqrt(2.)
    cands = [variance_candidates(point.x, point.value, mean_d)
             for point in points]
    match = _closest_match(*cands, rtol)
    if match is None:
        raise InconsistentDataError(
            'the diagonal points imply different variances',
            payload={'x': [p.x for p in points], 'variances': cands})

    cov_qp = match[1] - (var_q + var_p) / 2.
    if not var_q * var_p - cov_qp ** 2 > 0.:
        raise InconsistentDataError(
            f'reconstructed covariance {cov_qp} gives det <= 0',
            payload={'var_q': var_q, 'var_p': var_p, 'cov_qp': cov_qp})
    return cov_qp


@dataclasses.dataclass(frozen=True)
class StateReconstruction:
    """ a reconstructed state with its diagnostics
    """
    state: CumulantState
    q: MarginalEstimate
    p: MarginalEstimate
    diagonal_residual: float
    points_used: int

    @property
    def sign_resolved(self):
        """ (q, p) """
        return (self.q.sign_resolved, self.p.sign_resolved)

    @property
    def residuals(self):
        """ relative misfits by line """
        return {'q': self.q.residual, 'p': self.p.residual,
                'diagonal': self.diagonal_residual}

    @property
    def residual(self):
        """ the largest misfit """
        return max(self.residuals.values())


def split_points(points):
    """ sort points by line into (q, p, diagonal), ignoring other lines

    :rtype: (list, list, list)
    """
    q_points, p_points, d_points = [], [], []
    for point in points:
        line = point.line
        if line.is_close(Q_LINE):
            q_points.append(point)
        elif line.is_close(P_LINE):
            p_points.append(point)
        elif line.is_close(DIAGONAL_LINE):
            d_points.append(point)
        else:
            log.warning('ignoring point on line (%g, %g)', line.mu, line.nu)
    return q_points, p_points, d_points


def reconstruct_state(q_points, p_points, diag_points,
                      sign_hints=(Sign.UNKNOWN, Sign.UNKNOWN),
                      tol_match=NOISY_MATCH_RTOL):
    """ all five cumulants from 8-10 tomogram points

    :param q_points: 3-4 points on (1, 0)
    :param p_points: 3-4 points on (0, 1)
    :param diag_points: 2 points on (1/sqrt2, 1/sqrt2)
    :param sign_hints: `Sign` values for the q and p means
    :rtype: StateReconstruction
    """
    hint_q, hint_p = sign_hints
    est_q = reconstruct_marginal(q_points, hint_q, tol_match=tol_match)
    est_p = reconstruct_marginal(p_points, hint_p, tol_match=tol_match)
    cov_qp = reconstruct_covariance(diag_points, est_q.mean, est_p.mean,
                                    est_q.variance, est_p.variance,
                                    tol_match=tol_match)
    state = CumulantState(est_q.mean, est_p.mean, est_q.variance,
                          est_p.variance, cov_qp)

    diag_residual = 0.
    for point in diag_points:
        model = float(radon_gaussian(state, point.x, point.line))
        diag_residual = max(diag_residual, abs(model - point.value)
                            / max(point.value, numpy.finfo(float).tiny))

    return StateReconstruction(
        state=state, q=est_q, p=est_p, diagonal_residual=diag_residual,
        points_used=est_q.points_used + est_p.points_used + len(diag_points))


def time_dependent_positions(mean_q, mean_p):
    """ where the three tomograms of the time-dependent procedure are read

    :returns: ((x1, line1), (x2, line2), (x3, line3)) for the momentum,
        position and diagonal tomograms, each at its evolved mean
    """
    return ((mean_p, P_LINE), (mean_q, Q_LINE),
            ((mean_q + mean_p) / math.sqrt(2.), DIAGONAL_LINE))


def reconstruct_state_time_dependent(w1, w2, w3, mean_q, mean_p):
    """ second cumulants from the peak values of three tomograms

    :param w1: momentum tomogram at <p>
    :param w2: position tomogram at <q>
    :param w3: diagonal tomogram at (<q> + <p>) / sqrt2
    :param mean_q: known <q>
    :param mean_p: known <p>
    :rtype: CumulantState
    """
    if not (w1 > 0. and w2 > 0. and w3 > 0.):
        raise InconsistentDataError(
            f'tomogram peaks must be positive, got {(w1, w2, w3)}')
    var_p = 1. / (2. * math.pi * w1 ** 2)
    var_q = 1. / (2. * math.pi * w2 ** 2)
    cov_qp = 1. / (2. * math.pi * w3 ** 2) - (var_q + var_p) / 2.
    if not var_q * var_p - cov_qp ** 2 > 0.:
        raise InconsistentDataError(
            'the three tomogram peaks give det <= 0',
            payload={'var_q': var_q, 'var_p': var_p, 'cov_qp': cov_qp})
    return CumulantState(mean_q, mean_p, var_q, var_p, cov_qp)
