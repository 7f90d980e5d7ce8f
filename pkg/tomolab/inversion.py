""" master-equation coefficients from reconstructed cumulants
"""
import math
import logging
import dataclasses
import numpy
from tomolab.model import MasterEqCoefficients
from tomolab.model import check_complete_positivity
from tomolab.errors import DomainError
from tomolab.errors import PhysicsError
from tomolab.errors import EstimationError
from tomolab.evolution import MomentVector
from tomolab.evolution import mean_propagator
from tomolab.evolution import covariance_transfer
from tomolab.evolution import is_contracting
from tomolab.evolution import eta
from tomolab.tomography import IDENTITY
from tomolab.tomography import make_rescaling
from tomolab.tomography import unrescale_state
from tomolab.reconstruction import Sign
from tomolab.reconstruction import NOISY_MATCH_RTOL
from tomolab.reconstruction import reconstruct_state

log = logging.getLogger(__name__)

EXACT_ANGLE_TOL = 1e-6
NOISY_ANGLE_TOL = 1e-1
DRIVE_COND_MAX = 1e12


class LambdaMethod():
    """ friction estimators """
    NORM = 'norm'
    COMPONENTWISE = 'componentwise'


class EstimationMode():
    """ where the diffusion coefficients are read """
    FINITE_TIME = 'finite_time'
    STATIONARY = 'stationary'


@dataclasses.dataclass(frozen=True)
class LambdaEstimate:
    """ friction estimate with the angle between measured and predicted
    mean vectors
    """
    value: float
    angle: float
    method: str


def lambda_from_means(params, means0, means_t, t, method=LambdaMethod.NORM,
                      rescaling=None, angle_tol=EXACT_ANGLE_TOL):
    """ friction constant from the decay of the first moments

    lambda = ln(|M0(t) means0| / |means_t|) / t, with norms taken in rescaled
    coordinates; means_t must be parallel to M0(t) means0.

    :param params: physical parameters
    :type params: PhysicalParams
    :param means0: initial (<q>, <p>)
    :param means_t: (<q>, <p>) at time t
    :param t: time (> 0)
    :param method: a `LambdaMethod` value
    :param rescaling: coordinates for the norm (default: the oscillator's)
    :type rescaling: Rescaling
    :param angle_tol: largest accepted angle (radians)
    :rtype: LambdaEstimate
    """
    if not (math.isfinite(t) and t > 0.):
        raise DomainError(f'lambda needs t > 0, got {t}')
    if method not in (LambdaMethod.NORM, LambdaMethod.COMPONENTWISE):
        raise DomainError(f'unknown lambda method {method!r}')
    if rescaling is None:
        rescaling = make_rescaling(params) if params.omega > 0. else IDENTITY
    scale = numpy.array([rescaling.scale_q, rescaling.scale_p])

    pred = scale * (mean_propagator(params, t) @ numpy.asarray(means0, float))
    meas = scale * numpy.asarray(means_t, dtype=float)
    pred_norm, meas_norm = numpy.linalg.norm(pred), numpy.linalg.norm(meas)
    if pred_norm == 0.:
        raise PhysicsError(
            'lambda is unobservable from first moments: the initial means '
            'vanish')
    if meas_norm == 0.:
        raise PhysicsError(
            'the measured means vanish: lambda would be infinite')

    cross = pred[0] * meas[1] - pred[1] * meas[0]
    angle = math.atan2(abs(cross), float(pred @ meas))
    if angle > angle_tol:
        raise EstimationError(
            f'measured means are not parallel to the free evolution '
            f'(angle {angle:.3e} rad)',
            payload={'angle': angle, 'predicted': pred.tolist(),
                     'measured': meas.tolist()})

    if method == LambdaMethod.NORM:
        value = math.log(pred_norm / meas_norm) / t
    else:
        keep = numpy.abs(pred) > 1e-12 * pred_norm
        ratios = pred[keep] / meas[keep]
        if not numpy.all(ratios > 0.):
            raise EstimationError(
                'a mean component changes sign against the free evolution',
                payload={'predicted': pred.tolist(),
                         'measured': meas.tolist()})
        value = float(numpy.mean(numpy.log(ratios))) / t
    return LambdaEstimate(value=value, angle=angle, method=method)


def diffusion_from_covariances(params, lambda_, cov0, cov_t, t):
    """ diffusion coefficients from second moments at times 0 and t

    D = T K~^{-1} T (X(t) - T e^{Kt} T X(0)) in action-scaled coordinates.

    :param params: physical parameters (omega > 0)
    :type params: PhysicalParams
    :param lambda_: friction constant
    :param cov0: (var_q, var_p, cov_qp) at time 0
    :param cov_t: (var_q, var_p, cov_qp) at time t
    :param t: time (> 0)
    :rtype: (float, float, float)
    """
    if not (math.isfinite(t) and t > 0.):
        raise DomainError(f'diffusion needs t > 0, got {t}')
    transfer, drive, mats = covariance_transfer(params, lambda_, t)
    x0 = MomentVector.from_covariances(params, cov0).array()
    x_t = MomentVector.from_covariances(params, cov_t).array()
    rhs = x_t - transfer @ x0

    if mats is not None:
        dvec = mats.drive_inverse @ rhs
    else:
        if numpy.linalg.cond(drive) > DRIVE_COND_MAX:
            raise PhysicsError(
                f'the drive propagator is numerically singular at t={t}')
        dvec = numpy.linalg.solve(drive, rhs)
    return tuple(map(float, MomentVector(*dvec).diffusion(params)))


def diffusion_from_stationary(params, lambda_, cov_inf):
    """ diffusion coefficients from the asymptotic second moments

    :param params: physical parameters
    :type params: PhysicalParams
    :param lambda_: friction constant
    :param cov_inf: stationary (var_q, var_p, cov_qp)
    :rtype: (float, float, float)
    """
    if not is_contracting(params, lambda_):
        raise PhysicsError(
            f'no stationary state: lambda={lambda_} does not exceed '
            f'max(Re eta, 0) = {max(eta(params).real, 0.)}')
    var_q, var_p, cov_qp = cov_inf
    m, om2, delta = params.m, params.omega ** 2, params.delta
    d_qq = (lambda_ - delta) * var_q - cov_qp / m
    d_pp = (lambda_ + delta) * var_p + m * om2 * cov_qp
    d_qp = (m * om2 * var_q - var_p / m + 2. * lambda_ * cov_qp) / 2.
    return (d_qq, d_pp, d_qp)


@dataclasses.dataclass(frozen=True)
class EstimateReport:
    """ estimated coefficients with their complete-positivity verdict and
    diagnostics
    """
    coefficients: MasterEqCoefficients
    cp_verdict: object
    residuals: dict
    angle: float
    t: float
    points_used: int
    sign_resolved: tuple

    def to_dict(self):
        """ the estimate report JSON object """
        dct = self.coefficients.to_dict()
        dct.update({
            'cp_verdict': self.cp_verdict.to_dict(),
            'residuals': dict(self.residuals),
            'angle_diag': self.angle,
            't': self.t,
        })
        return dct


def _default_angle_tol(point_sets):
    exact = all(point.noise_sigma == 0. for points in point_sets
                for point in points)
    return EXACT_ANGLE_TOL if exact else NOISY_ANGLE_TOL


def _report(params, coeffs, rec, lam, t, extra_residuals=None):
    verdict = check_complete_positivity(coeffs, params.hbar)
    if not verdict:
        log.warning('estimated coefficients violate complete positivity '
                    '(%s), margin %g', verdict.violated, verdict.margin)
    residuals = dict(rec.residuals)
    residuals.update(extra_residuals or {})
    return EstimateReport(coefficients=coeffs, cp_verdict=verdict,
                          residuals=residuals, angle=lam.angle, t=t,
                          points_used=rec.points_used,
                          sign_resolved=rec.sign_resolved)


def estimate_all(params, state0, tomograms_at_t, t,
                 sign_hints=(Sign.UNKNOWN, Sign.UNKNOWN), rescaling=None,
                 tol_match=NOISY_MATCH_RTOL,
                 lambda_method=LambdaMethod.NORM, angle_tol=None):
    """ reconstruct the state at t and invert for all four coefficients

    :param params: physical parameters
    :type params: PhysicalParams
    :param state0: the prepared probe state, physical units
    :type state0: CumulantState
    :param tomograms_at_t: (q points, p points, diagonal points), rescaled
    :param t: measurement time
    :param sign_hints: `Sign` values for the q and p means at t
    :param rescaling: the rescaling of the tomogram coordinates
    :rtype: EstimateReport
    """
    if rescaling is None:
        rescaling = make_rescaling(params)
    if angle_tol is None:
        angle_tol = _default_angle_tol(tomograms_at_t)

    rec = reconstruct_state(*tomograms_at_t, sign_hints=sign_hints,
                            tol_match=tol_match)
    state_t = unrescale_state(rec.state, rescaling)
    lam = lambda_from_means(params, state0.means(), state_t.means(), t,
                            method=lambda_method, rescaling=rescaling,
                            angle_tol=angle_tol)
    diffusion = diffusion_from_covariances(
        params, lam.value, state0.covariances(), state_t.covariances(), t)
    coeffs = MasterEqCoefficients(lam.value, *diffusion)
    log.info('estimated %s from %d points at t=%g', coeffs, rec.points_used,
             t)
    return _report(params, coeffs, rec, lam, t)


def estimate_stationary(params, state0, tomograms_at_t, t, tomograms_inf,
                        sign_hints=(Sign.UNKNOWN, Sign.UNKNOWN),
                        rescaling=None, tol_match=NOISY_MATCH_RTOL,
                        lambda_method=LambdaMethod.NORM, angle_tol=None,
                        sign_hints_inf=None):
    """ lambda from the means at t, diffusion from the asymptotic state

    :param tomograms_inf: (q points, p points, diagonal points) of the
        stationary state, rescaled
    :param sign_hints_inf: `Sign` values for the stationary means, by
        default `sign_hints`
    :rtype: EstimateReport
    """
    if rescaling is None:
        rescaling = make_rescaling(params, fallback_var_p0=state0.var_p)
    if angle_tol is None:
        angle_tol = _default_angle_tol(tomograms_at_t)

    rec = reconstruct_state(*tomograms_at_t, sign_hints=sign_hints,
                            tol_match=tol_match)
    state_t = unrescale_state(rec.state, rescaling)
    lam = lambda_from_means(params, state0.means(), state_t.means(), t,
                            method=lambda_method, rescaling=rescaling,
                            angle_tol=angle_tol)

    if sign_hints_inf is None:
        sign_hints_inf = sign_hints
    rec_inf = reconstruct_state(*tomograms_inf, sign_hints=sign_hints_inf,
                                tol_match=tol_match)
    state_inf = unrescale_state(rec_inf.state, rescaling)
    diffusion = diffusion_from_stationary(params, lam.value,
                                          state_inf.covariances())
    coeffs = MasterEqCoefficients(lam.value, *diffusion)
    return _report(params, coeffs, rec, lam, t,
                   extra_residuals={f'stationary_{key}': val for key, val
                                    in rec_inf.residuals.items()})
