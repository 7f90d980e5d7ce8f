""" time evolution of the cumulants

First moments follow e^{-lambda t} M0(t); second moments are propagated in
the action-scaled vector X = (m omega var_q, var_p / (m omega), cov_qp) with
the matrices T, K and K~ (T^2 = 1, A = T K T).
"""
import math
import logging
import dataclasses
import numpy
import scipy.linalg
from tomolab.model import CumulantState
from tomolab.errors import DomainError
from tomolab.errors import PhysicsError

log = logging.getLogger(__name__)

SERIES_THRESHOLD = 1e-6
PHI_SERIES_THRESHOLD = 1e-8
DEGENERATE_RTOL = 1e-4
RESIDUE_RTOL = 1e-10
DEFAULT_DT = 1e-4


class Method():
    """ evolution methods """
    CLOSED_FORM = 'closed_form'
    ORACLE = 'oracle'


def eta(params):
    """ eta with eta^2 = delta^2 - omega^2 (imaginary for under-damped
    rotation)

    :param params: physical parameters
    :type params: PhysicalParams
    :rtype: complex
    """
    return complex(numpy.sqrt(complex(params.delta ** 2 - params.omega ** 2)))


def is_degenerate(params):
    """ is eta too close to 0 for the T, K factorization?
    """
    scale = params.delta ** 2 + params.omega ** 2
    return abs(eta(params)) ** 2 <= DEGENERATE_RTOL * scale


def _check_time(t):
    if not math.isfinite(t) or t < 0.:
        raise DomainError(f'time must be finite and non-negative, got {t}')


def _cosh_sinhc(eta_, t):
    """ cosh(eta t) and sinh(eta t) / eta, with the series near eta t = 0
    """
    arg = eta_ * t
    if abs(arg) < SERIES_THRESHOLD:
        return 1. + arg ** 2 / 2., t * (1. + arg ** 2 / 6.)
    return numpy.cosh(arg), numpy.sinh(arg) / eta_


def mean_propagator(params, t):
    """ the lambda-free 2x2 matrix M0(t) propagating (<q>, <p>)

    :param params: physical parameters
    :type params: PhysicalParams
    :param t: time
    :type t: float
    :rtype: numpy.ndarray
    """
    _check_time(t)
    m, omega, delta = params.m, params.omega, params.delta
    cosh, sinhc = _cosh_sinhc(eta(params), t)
    mat = numpy.array([[cosh + delta * sinhc, sinhc / m],
                       [-m * omega ** 2 * sinhc, cosh - delta * sinhc]])
    assert numpy.all(numpy.abs(mat.imag) <= RESIDUE_RTOL * (1. + abs(mat))), (
        f'M0 is not real: {mat}'
    )
    return numpy.real(mat)


def evolve_means(params, lambda_, q0, p0, t):
    """ closed-form evolution of the first moments

    :param params: physical parameters
    :type params: PhysicalParams
    :param lambda_: friction constant
    :type lambda_: float
    :param q0: initial <q>
    :param p0: initial <p>
    :param t: time
    :rtype: (float, float)
    """
    mat = mean_propagator(params, t)
    with numpy.errstate(over='ignore', invalid='ignore'):
        q_t, p_t = numpy.exp(-lambda_ * t) * (mat @ numpy.array([q0, p0]))
    if not (math.isfinite(q_t) and math.isfinite(p_t)):
        raise PhysicsError(
            f'means overflow at t={t} with lambda={lambda_}')
    return float(q_t), float(p_t)


@dataclasses.dataclass(frozen=True)
class MomentVector:
    """ second moments in action units
    """
    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        assert all(map(math.isfinite, (self.x1, self.x2, self.x3))), (
            f'non-finite moment vector {self}'
        )

    @classmethod
    def from_covariances(cls, params, covs):
        """ pack (var_q, var_p, cov_qp) """
        _require_frequency(params)
        m_om = params.m * params.omega
        var_q, var_p, cov_qp = covs
        return cls(m_om * var_q, var_p / m_om, cov_qp)

    @classmethod
    def from_diffusion(cls, params, diffusion):
        """ pack (d_qq, d_pp, d_qp) as the drive vector 2 (m omega d_qq,
        d_pp / (m omega), d_qp)
        """
        _require_frequency(params)
        m_om = params.m * params.omega
        d_qq, d_pp, d_qp = diffusion
        return cls(2. * m_om * d_qq, 2. * d_pp / m_om, 2. * d_qp)

    def covariances(self, params):
        """ unpack to (var_q, var_p, cov_qp) """
        m_om = params.m * params.omega
        return (self.x1 / m_om, self.x2 * m_om, self.x3)

    def diffusion(self, params):
        """ unpack a drive vector to (d_qq, d_pp, d_qp) """
        m_om = params.m * params.omega
        return (self.x1 / (2. * m_om), self.x2 * m_om / 2., self.x3 / 2.)

    def array(self):
        """ as a numpy vector """
        return numpy.array([self.x1, self.x2, self.x3])


def _require_frequency(params):
    if not params.omega > 0.:
        raise PhysicsError(
            'the closed-form second-moment path needs omega > 0; use the '
            'oracle integrator for a free particle')


def _phi(rate, t):
    """ (1 - e^{-rate t}) / rate, stable through rate t -> 0
    """
    arg = rate * t
    if abs(arg) < PHI_SERIES_THRESHOLD:
        return t * (1. - arg / 2.)
    return -numpy.expm1(-arg) / rate


@dataclasses.dataclass(frozen=True)
class PropagatorMatrices:
    """ T, e^{Kt} and K~ = K^{-1}(e^{Kt} - 1) of the second-moment dynamics

    The factors are complex when eta is imaginary; the products T e^{Kt} T
    and T K~ T are real.
    """
    t_mat: numpy.ndarray
    exp_kt: numpy.ndarray
    k_tilde: numpy.ndarray
    eta: complex

    @property
    def transfer(self):
        """ T e^{Kt} T, the homogeneous propagator of X """
        return _real_product(self.t_mat, self.exp_kt)

    @property
    def drive(self):
        """ T K~ T, the propagator of the drive vector """
        return _real_product(self.t_mat, self.k_tilde)

    @property
    def drive_inverse(self):
        """ T K~^{-1} T """
        diag = numpy.diag(self.k_tilde)
        scale = numpy.max(numpy.abs(diag))
        if not scale > 0. or numpy.min(numpy.abs(diag)) <= 1e-14 * scale:
            raise PhysicsError(
                f'K~ is numerically singular (diagonal {diag})')
        return _real_product(self.t_mat, numpy.diag(1. / diag))


def _real_product(t_mat, diag_mat):
    prod = t_mat @ diag_mat @ t_mat
    scale = numpy.linalg.norm(
        numpy.abs(t_mat) @ numpy.abs(diag_mat) @ numpy.abs(t_mat))
    resid = numpy.linalg.norm(prod.imag)
    assert resid <= RESIDUE_RTOL * max(scale, numpy.finfo(float).tiny), (
        f'imaginary residue {resid} relative to {scale}'
    )
    return numpy.real(prod)


def propagator_matrices(params, lambda_, t):
    """ T, e^{Kt} and K~ for the given parameters

    :param params: physical parameters (omega > 0, eta != 0)
    :type params: PhysicalParams
    :param lambda_: friction constant
    :type lambda_: float
    :param t: time
    :type t: float
    :rtype: PropagatorMatrices
    """
    _check_time(t)
    _require_frequency(params)
    eta_ = eta(params)
    if eta_ == 0.:
        raise PhysicsError('T is undefined at eta = 0 (delta = omega)')

    delta, omega = params.delta, params.omega
    t_mat = numpy.array([
        [delta + eta_, delta - eta_, 2. * omega],
        [delta - eta_, delta + eta_, 2. * omega],
        [-omega, -omega, -2. * delta]]) / (2. * eta_)
    assert numpy.allclose(t_mat @ t_mat, numpy.eye(3), rtol=0., atol=1e-12 * (
        1. + numpy.linalg.norm(t_mat) ** 2)), (
        f'T^2 != 1 for {params}'
    )

    rates = numpy.array([2. * (lambda_ - eta_), 2. * (lambda_ + eta_),
                         complex(2. * lambda_)])
    with numpy.errstate(over='ignore'):
        exp_kt = numpy.diag(numpy.exp(-rates * t))
    k_tilde = numpy.diag([_phi(rate, t) for rate in rates])
    if not (numpy.all(numpy.isfinite(exp_kt))
            and numpy.all(numpy.isfinite(k_tilde))):
        raise PhysicsError(
            f'second-moment propagator overflows at t={t}, lambda={lambda_}')
    return PropagatorMatrices(t_mat=t_mat, exp_kt=exp_kt, k_tilde=k_tilde,
                              eta=eta_)


def moment_generator(params, lambda_):
    """ the matrix A of dX/dt = A X + D in the action-scaled coordinates
    """
    lam, delta, omega = lambda_, params.delta, params.omega
    return numpy.array([
        [-2. * (lam - delta), 0., 2. * omega],
        [0., -2. * (lam + delta), -2. * omega],
        [-omega, omega, -2. * lam]])


def covariance_transfer(params, lambda_, t):
    """ homogeneous and drive propagators of X over a time t

    Uses T, K and K~ away from eta = 0, and the exponential of the
    augmented generator near it.

    :returns: (transfer, drive, matrices) with matrices None on the
        degenerate branch
    :rtype: (numpy.ndarray, numpy.ndarray, PropagatorMatrices or None)
    """
    _check_time(t)
    _require_frequency(params)
    if not is_degenerate(params):
        mats = propagator_matrices(params, lambda_, t)
        return mats.transfer, mats.drive, mats

    log.debug('eta = %s is degenerate, using the augmented exponential',
              eta(params))
    aug = numpy.zeros((6, 6))
    aug[:3, :3] = moment_generator(params, lambda_)
    aug[:3, 3:] = numpy.eye(3)
    prop = scipy.linalg.expm(aug * t)
    transfer, drive = prop[:3, :3], prop[:3, 3:]
    if not (numpy.all(numpy.isfinite(transfer))
            and numpy.all(numpy.isfinite(drive))):
        raise PhysicsError(
            f'second-moment propagator overflows at t={t}, lambda={lambda_}')
    return transfer, drive, None


def evolve_covariance(params, coeffs, state0, t):
    """ closed-form evolution of the second cumulants

    :param params: physical parameters (omega > 0)
    :type params: PhysicalParams
    :param coeffs: master-equation coefficients
    :type coeffs: MasterEqCoefficients
    :param state0: initial state
    :type state0: CumulantState
    :param t: time
    :type t: float
    :returns: (var_q, var_p, cov_qp) at time t
    :rtype: (float, float, float)
    """
    _check_time(t)
    if t == 0.:
        return state0.covariances()

    transfer, drive, _ = covariance_transfer(params, coeffs.lambda_, t)
    x0 = MomentVector.from_covariances(params, state0.covariances()).array()
    dvec = MomentVector.from_diffusion(params, coeffs.diffusion).array()
    x_t = transfer @ x0 + drive @ dvec
    if not numpy.all(numpy.isfinite(x_t)):
        raise PhysicsError(f'covariance overflow at t={t}')
    covs = MomentVector(*x_t).covariances(params)
    _check_covariances(covs, t)
    return tuple(map(float, covs))


def _check_covariances(covs, t):
    var_q, var_p, cov_qp = covs
    if not (var_q > 0. and var_p > 0. and var_q * var_p - cov_qp ** 2 > 0.):
        raise PhysicsError(
            f'evolved covariance is not positive definite at t={t}: {covs}')


def raw_generator(params, lambda_):
    """ generator of d/dt (var_q, var_p, cov_qp) without the drive
    """
    lam, delta = lambda_, params.delta
    m, om2 = params.m, params.omega ** 2
    return numpy.array([
        [-2. * (lam - delta), 0., 2. / m],
        [0., -2. * (lam + delta), -2. * m * om2],
        [-m * om2, 1. / m, -2. * lam]])


def is_contracting(params, lambda_):
    """ do all second-moment modes decay? (lambda > max(Re eta, 0))
    """
    return lambda_ > max(eta(params).real, 0.)


def stationary_covariance(params, coeffs):
    """ the fixed point of the second-moment equations

    :param params: physical parameters
    :type params: PhysicalParams
    :param coeffs: master-equation coefficients
    :type coeffs: MasterEqCoefficients
    :rtype: (float, float, float)
    """
    if not is_contracting(params, coeffs.lambda_):
        raise PhysicsError(
            f'no stationary state: lambda={coeffs.lambda_} does not exceed '
            f'max(Re eta, 0) = {max(eta(params).real, 0.)}')
    gen = raw_generator(params, coeffs.lambda_)
    covs = numpy.linalg.solve(gen, -2. * numpy.array(coeffs.diffusion))
    return tuple(map(float, covs))


def oracle_generator(params, coeffs):
    """ augmented 6x6 generator of (<q>, <p>, var_q, var_p, cov_qp, 1)
    """
    lam, delta, m, om2 = (coeffs.lambda_, params.delta, params.m,
                          params.omega ** 2)
    gen = numpy.zeros((6, 6))
    gen[:2, :2] = [[-(lam - delta), 1. / m], [-m * om2, -(lam + delta)]]
    gen[2:5, 2:5] = raw_generator(params, lam)
    gen[2:5, 5] = 2. * numpy.array(coeffs.diffusion)
    return gen


def _rk4_step_matrix(gen, step):
    """ one classical Runge-Kutta step of y' = G y as a matrix
    """
    hgen = step * gen
    mat = numpy.eye(len(gen))
    term = numpy.eye(len(gen))
    for order in range(1, 5):
        term = term @ hgen / order
        mat = mat + term
    return mat


def _rk4_advance(gen, yvec, span, dt):
    if span == 0.:
        return yvec
    nsteps = max(1, math.ceil(span / dt - 1e-9))
    step_mat = _rk4_step_matrix(gen, span / nsteps)
    return numpy.linalg.matrix_power(step_mat, nsteps) @ yvec


def _state_vector(state):
    return numpy.array([*state.means(), *state.covariances(), 1.])


def _vector_state(yvec, t):
    if not numpy.all(numpy.isfinite(yvec)):
        raise PhysicsError(f'oracle integration overflows at t={t}')
    _check_covariances(yvec[2:5], t)
    return CumulantState(*map(float, yvec[:5]))


def integrate_oracle_trajectory(params, coeffs, state0, times, dt=DEFAULT_DT):
    """ fixed-step RK4 integration of the five cumulant equations

    :param times: non-decreasing, non-negative sample times
    :type times: list[float]
    :param dt: largest step; each interval uses ceil(interval / dt) equal steps
    :type dt: float
    :rtype: list[CumulantState]
    """
    if not dt > 0. or not math.isfinite(dt):
        raise DomainError(f'dt must be positive, got {dt}')
    times = [float(t) for t in times]
    for t in times:
        _check_time(t)
    if any(t2 < t1 for t1, t2 in zip(times, times[1:])):
        raise DomainError(f'sample times must be non-decreasing: {times}')

    gen = oracle_generator(params, coeffs)
    yvec = _state_vector(state0)
    t_prev = 0.
    states = []
    for t in times:
        yvec = _rk4_advance(gen, yvec, t - t_prev, dt)
        t_prev = t
        states.append(state0 if t == 0. else _vector_state(yvec, t))
    return states


def integrate_oracle(params, coeffs, state0, t, dt=DEFAULT_DT):
    """ fixed-step RK4 integration of the five cumulant equations to time t

    :param params: physical parameters
    :type params: PhysicalParams
    :param coeffs: master-equation coefficients
    :type coeffs: MasterEqCoefficients
    :param state0: initial state
    :type state0: CumulantState
    :param t: time
    :type t: float
    :param dt: step size
    :type dt: float
    :rtype: CumulantState
    """
    return integrate_oracle_trajectory(params, coeffs, state0, [t], dt=dt)[0]


def evolve_state(params, coeffs, state0, t, method=Method.CLOSED_FORM,
                 dt=DEFAULT_DT):
    """ evolve a full Gaussian state

    The closed form is used for omega > 0; a free particle (omega = 0)
    always goes through the oracle integrator.

    :rtype: CumulantState
    """
    return trajectory(params, coeffs, state0, [t], method=method, dt=dt)[0]


def trajectory(params, coeffs, state0, times, method=Method.CLOSED_FORM,
               dt=DEFAULT_DT):
    """ states at each of the sample times

    :rtype: list[CumulantState]
    """
    if method not in (Method.CLOSED_FORM, Method.ORACLE):
        raise DomainError(f'unknown evolution method {method!r}')
    if method == Method.CLOSED_FORM and params.omega == 0.:
        log.debug('omega = 0, evolving with the oracle integrator')
        method = Method.ORACLE

    if method == Method.ORACLE:
        return integrate_oracle_trajectory(params, coeffs, state0, times,
                                           dt=dt)

    states = []
    for t in times:
        means = evolve_means(params, coeffs.lambda_, *state0.means(), t)
        covs = evolve_covariance(params, coeffs, state0, t)
        states.append(CumulantState(*means, *covs))
    return states
