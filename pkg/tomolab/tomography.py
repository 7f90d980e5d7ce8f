""" Wigner function, Gaussian tomograms and simulated measurements

All functions here work in rescaled (dimensionless) phase-space coordinates,
see `make_rescaling`.
"""
import math
import logging
import numbers
import dataclasses
import numpy
import scipy.stats
import scipy.integrate
from tomolab.model import CumulantState
from tomolab.errors import DomainError
from tomolab.errors import InconsistentDataError

log = logging.getLogger(__name__)

RESCALING_RTOL = 1e-12
MIN_SAMPLES = 100


@dataclasses.dataclass(frozen=True)
class Rescaling:
    """ maps q -> scale_q q and p -> scale_p p, with scale_q scale_p = 1/hbar
    """
    scale_q: float
    scale_p: float

    def __post_init__(self):
        if not (self.scale_q > 0. and self.scale_p > 0.
                and math.isfinite(self.scale_q)
                and math.isfinite(self.scale_p)):
            raise DomainError(f'scales must be positive and finite: {self}')

    def to_dict(self):
        """ JSON object shape """
        return dataclasses.asdict(self)


IDENTITY = Rescaling(1., 1.)


def make_rescaling(params, fallback_var_p0=None):
    """ phase-space rescaling for the given oscillator

    For a free particle (omega = 0) the fictitious frequency
    hbar omega_bar = var_p0 / 2m takes the place of omega.

    :param params: physical parameters
    :type params: PhysicalParams
    :param fallback_var_p0: initial momentum variance, needed when omega = 0
    :type fallback_var_p0: float
    :rtype: Rescaling
    """
    hbar = params.hbar
    if params.omega > 0.:
        m_om = params.m * params.omega
        resc = Rescaling(math.sqrt(m_om / hbar), 1. / math.sqrt(hbar * m_om))
    else:
        if fallback_var_p0 is None or not fallback_var_p0 > 0.:
            raise DomainError(
                'omega = 0 needs a positive initial momentum variance for '
                f'the fictitious frequency, got {fallback_var_p0}')
        dp0 = math.sqrt(fallback_var_p0)
        resc = Rescaling(dp0 / (math.sqrt(2.) * hbar), math.sqrt(2.) / dp0)

    assert math.isclose(resc.scale_q * resc.scale_p, 1. / hbar,
                        rel_tol=RESCALING_RTOL), (
        f'{resc} is not canonical for hbar={hbar}'
    )
    return resc


def rescale_state(state, resc):
    """ cumulants in rescaled coordinates

    :param state: state in physical units
    :type state: CumulantState
    :param resc: rescaling
    :type resc: Rescaling
    :rtype: CumulantState
    """
    s_q, s_p = resc.scale_q, resc.scale_p
    return CumulantState(
        mean_q=s_q * state.mean_q, mean_p=s_p * state.mean_p,
        var_q=s_q ** 2 * state.var_q, var_p=s_p ** 2 * state.var_p,
        cov_qp=s_q * s_p * state.cov_qp)


def unrescale_state(state, resc):
    """ inverse of `rescale_state` """
    return rescale_state(state, Rescaling(1. / resc.scale_q,
                                          1. / resc.scale_p))


@dataclasses.dataclass(frozen=True)
class TomographyLine:
    """ the phase-space line X = mu q + nu p
    """
    mu: float
    nu: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.nu)):
            raise DomainError(f'non-finite line {self}')
        if self.mu == 0. and self.nu == 0.:
            raise DomainError('(mu, nu) = (0, 0) is not a line')

    @property
    def norm(self):
        """ sqrt(mu^2 + nu^2) """
        return math.hypot(self.mu, self.nu)

    def normalized(self):
        """ same direction with mu^2 + nu^2 = 1 """
        rad = self.norm
        return TomographyLine(self.mu / rad, self.nu / rad)

    def is_close(self, other, rtol=1e-9):
        """ same normalized direction? """
        this, that = self.normalized(), other.normalized()
        return math.hypot(this.mu - that.mu, this.nu - that.nu) <= rtol


Q_LINE = TomographyLine(1., 0.)
P_LINE = TomographyLine(0., 1.)
DIAGONAL_LINE = TomographyLine(1. / math.sqrt(2.), 1. / math.sqrt(2.))


@dataclasses.dataclass(frozen=True)
class TomogramPoint:
    """ a measured value of the tomogram at X = x on a line
    """
    x: float
    line: TomographyLine
    value: float
    noise_sigma: float = 0.

    def __post_init__(self):
        if not all(map(math.isfinite, (self.x, self.value,
                                       self.noise_sigma))):
            raise DomainError(f'non-finite tomogram point {self}')
        if self.value < 0. or self.noise_sigma < 0.:
            raise DomainError(
                f'tomogram value and noise must be non-negative: {self}')

    def normalized(self):
        """ the equivalent point on the unit-norm line (homogeneity) """
        rad = self.line.norm
        return TomogramPoint(x=self.x / rad, line=self.line.normalized(),
                             value=self.value * rad,
                             noise_sigma=self.noise_sigma * rad)

    def row(self):
        """ (x, mu, nu, value, noise_sigma) """
        return (self.x, self.line.mu, self.line.nu, self.value,
                self.noise_sigma)


def points_from_rows(rows):
    """ tomogram points from (x, mu, nu, value, noise_sigma) rows

    :raises InconsistentDataError: naming the first malformed row
    :rtype: list[TomogramPoint]
    """
    points = []
    for idx, row in enumerate(rows):
        row = tuple(row)
        if len(row) != 5:
            raise InconsistentDataError(
                f'tomogram row {idx} has {len(row)} columns, expected 5',
                payload={'row': idx, 'values': list(row)})
        try:
            x, mu, nu, value, noise_sigma = map(float, row)
            points.append(TomogramPoint(x, TomographyLine(mu, nu), value,
                                        noise_sigma))
        except (ValueError, TypeError) as err:
            raise InconsistentDataError(
                f'tomogram row {idx} is invalid: {err}',
                payload={'row': idx, 'values': list(row)}) from err
    return points


def wigner(state, q, p):
    """ Gaussian Wigner function

    :param state: rescaled state
    :type state: CumulantState
    :param q: position(s)
    :param p: momentum(s)
    :returns: density (maximal, 1 / (2 pi sqrt(det)), at the mean)
    """
    det = state.det
    if not det > 0.:
        raise DomainError(f'Wigner function needs det > 0, got {det}')
    d_q = numpy.asarray(q, dtype=float) - state.mean_q
    d_p = numpy.asarray(p, dtype=float) - state.mean_p
    quad = (state.var_p * d_q ** 2 - 2. * state.cov_qp * d_q * d_p
            + state.var_q * d_p ** 2)
    return numpy.exp(-quad / (2. * det)) / (2. * numpy.pi * numpy.sqrt(det))


def wigner_grid(state, qs, ps):
    """ Wigner function on a rectangular grid, row-major over q

    :returns: (q, p, w) flattened arrays
    """
    q_mesh, p_mesh = numpy.meshgrid(numpy.asarray(qs, dtype=float),
                                    numpy.asarray(ps, dtype=float),
                                    indexing='ij')
    w_mesh = wigner(state, q_mesh, p_mesh)
    return q_mesh.ravel(), p_mesh.ravel(), w_mesh.ravel()


def marginal(state, line):
    """ (mean, variance) of X = mu q + nu p
    """
    mu, nu = line.mu, line.nu
    mean = mu * state.mean_q + nu * state.mean_p
    var = (state.var_q * mu ** 2 + state.var_p * nu ** 2
           + 2. * state.cov_qp * mu * nu)
    if not var > 0.:
        raise DomainError(
            f'tomogram variance {var} on {line} is not positive')
    return mean, var


def radon_gaussian(state, x, line):
    """ tomogram of a Gaussian state: a Gaussian in x

    :param state: rescaled state
    :type state: CumulantState
    :param x: quadrature value(s)
    :param line: the line (need not be normalized)
    :type line: TomographyLine
    """
    mean, var = marginal(state, line)
    d_x = numpy.asarray(x, dtype=float) - mean
    return numpy.exp(-d_x ** 2 / (2. * var)) / numpy.sqrt(2. * numpy.pi * var)


def radon_from_wigner(state, x, line, epsrel=1e-12):
    """ tomogram by numerical integration of the Wigner function along the
    line mu q + nu p = x
    """
    rad = line.norm
    nvec = numpy.array([line.mu, line.nu]) / rad
    evec = numpy.array([-nvec[1], nvec[0]])
    origin = nvec * x / rad
    mean = numpy.array(state.means())
    cov = numpy.array([[state.var_q, state.cov_qp],
                       [state.cov_qp, state.var_p]])
    center = float(evec @ (mean - origin))
    width = 20. * math.sqrt(float(evec @ cov @ evec))

    def _integrand(tau):
        qval, pval = origin + tau * evec
        return float(wigner(state, qval, pval))

    val, _ = scipy.integrate.quad(_integrand, center - width, center + width,
                                  epsabs=0., epsrel=epsrel, limit=200)
    return val / rad


class NoiseMode():
    """ measurement noise models """
    EXACT = 'exact'
    ADDITIVE = 'additive'
    QUADRATURE_SAMPLES = 'quadrature_samples'


class Bandwidth():
    """ kernel bandwidth rules """
    SILVERMAN = 'silverman'


@dataclasses.dataclass(frozen=True)
class NoiseModel:
    """ how simulated tomogram values are perturbed

    :param mode: a `NoiseMode` value
    :param sigma: standard deviation of additive noise
    :param n: number of quadrature samples
    :param bandwidth: kernel bandwidth, a float or a `Bandwidth` rule
    """
    mode: str = NoiseMode.EXACT
    sigma: float = 0.
    n: int = 0
    bandwidth: object = Bandwidth.SILVERMAN

    def __post_init__(self):
        if self.mode == NoiseMode.EXACT:
            pass
        elif self.mode == NoiseMode.ADDITIVE:
            if not (math.isfinite(self.sigma) and self.sigma >= 0.):
                raise DomainError(
                    f'additive noise needs sigma >= 0, got {self.sigma}')
        elif self.mode == NoiseMode.QUADRATURE_SAMPLES:
            if (not isinstance(self.n, numbers.Integral)
                    or self.n < MIN_SAMPLES):
                raise DomainError(
                    f'quadrature sampling needs n >= {MIN_SAMPLES}, '
                    f'got {self.n}')
            bwd = self.bandwidth
            if isinstance(bwd, str):
                if bwd != Bandwidth.SILVERMAN:
                    raise DomainError(f'unknown bandwidth rule {bwd!r}')
            elif (isinstance(bwd, bool) or not isinstance(bwd, numbers.Real)
                  or not bwd > 0.):
                raise DomainError(
                    f'bandwidth must be positive or a rule, got {bwd!r}')
        else:
            raise DomainError(f'unknown noise mode {self.mode!r}')

    @classmethod
    def exact(cls):
        """ ideal tomograms """
        return cls(NoiseMode.EXACT)

    @classmethod
    def additive(cls, sigma):
        """ exact values plus independent Gaussian noise """
        return cls(NoiseMode.ADDITIVE, sigma=float(sigma))

    @classmethod
    def quadrature_samples(cls, n, bandwidth=Bandwidth.SILVERMAN):
        """ kernel density estimate from n sampled quadratures """
        return cls(NoiseMode.QUADRATURE_SAMPLES, n=n, bandwidth=bandwidth)

    @property
    def tag(self):
        """ short name, used for output directories """
        if self.mode == NoiseMode.ADDITIVE:
            return f'additive_{self.sigma:.3e}'
        if self.mode == NoiseMode.QUADRATURE_SAMPLES:
            return f'samples_{self.n}'
        return NoiseMode.EXACT


def silverman_bandwidth(samples):
    """ Silverman's rule of thumb, 0.9 min(std, IQR/1.34) n^(-1/5)
    """
    std = numpy.std(samples)
    q75, q25 = numpy.percentile(samples, [75, 25])
    spread = min(std, (q75 - q25) / 1.34)
    return 0.9 * spread * len(samples) ** (-0.2)


def sample_tomogram(state, line, xs, noise, seed=0):
    """ simulated tomogram measurements on one line

    :param state: rescaled state
    :type state: CumulantState
    :param line: the line
    :type line: TomographyLine
    :param xs: where the tomogram is read
    :type xs: list[float]
    :param noise: noise model
    :type noise: NoiseModel
    :param seed: random seed
    :type seed: int or numpy.random.SeedSequence
    :rtype: list[TomogramPoint]
    """
    xs = numpy.asarray(xs, dtype=float)
    if xs.ndim != 1 or not xs.size:
        raise DomainError('sample_tomogram needs a non-empty list of x')
    rng = numpy.random.default_rng(seed)

    exact = radon_gaussian(state, xs, line)
    if noise.mode == NoiseMode.QUADRATURE_SAMPLES:
        mean, var = marginal(state, line)
        samples = rng.normal(mean, math.sqrt(var), size=noise.n)
        if noise.bandwidth == Bandwidth.SILVERMAN:
            bwd = silverman_bandwidth(samples)
        else:
            bwd = float(noise.bandwidth)
        kde = scipy.stats.gaussian_kde(
            samples, bw_method=bwd / numpy.std(samples, ddof=1))
        values = kde(xs)
        sigmas = numpy.sqrt(values / (2. * math.sqrt(math.pi) * noise.n * bwd))
        log.debug('kernel estimate from %d samples, bandwidth %g', noise.n,
                  bwd)
    elif noise.mode == NoiseMode.ADDITIVE and noise.sigma > 0.:
        values = numpy.maximum(
            exact + rng.normal(0., noise.sigma, size=xs.size), 0.)
        sigmas = numpy.full(xs.size, noise.sigma)
    else:
        values = exact
        sigmas = numpy.zeros(xs.size)

    return [TomogramPoint(float(x), line, float(val), float(sig))
            for x, val, sig in zip(xs, values, sigmas)]
