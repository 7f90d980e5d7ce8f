""" test tomolab.tomography
"""
import math
import numpy
import pytest
import scipy.integrate
from tomolab.model import PhysicalParams
from tomolab.model import CumulantState
from tomolab import tomography
from tomolab.tomography import TomographyLine
from tomolab.tomography import TomogramPoint
from tomolab.tomography import NoiseModel
from tomolab.tomography import Q_LINE
from tomolab.tomography import P_LINE
from tomolab.tomography import DIAGONAL_LINE
from tomolab.errors import DomainError
from tomolab.errors import InconsistentDataError

STATE = CumulantState(1.3, -0.8, 1.5, 0.7, 0.4)
SQUEEZED = CumulantState(0., 0., 4., 0.25, 0.6)


def test__wigner():
    """ test tomolab.tomography.wigner
    """
    peak = tomography.wigner(SQUEEZED, 0., 0.)
    assert numpy.isclose(peak, 1. / (2. * math.pi * 0.8))
    assert tomography.wigner(SQUEEZED, 1., 0.5) < peak

    qs, ps, ws = tomography.wigner_grid(SQUEEZED, [-1., 0., 1.], [0., 2.])
    assert len(qs) == len(ps) == len(ws) == 6
    assert list(qs) == [-1., -1., 0., 0., 1., 1.]
    assert list(ps) == [0., 2., 0., 2., 0., 2.]
    assert numpy.isclose(ws[2], peak)

    # normalization over the phase plane
    val, _ = scipy.integrate.dblquad(
        lambda p, q: tomography.wigner(STATE, q, p), -15., 15., -15., 15.,
        epsabs=1e-11)
    assert numpy.isclose(val, 1., rtol=1e-6)


def test__radon_gaussian():
    """ test tomolab.tomography.radon_gaussian
    """
    for line in (Q_LINE, P_LINE, DIAGONAL_LINE, TomographyLine(-0.4, 2.)):
        mean, var = tomography.marginal(STATE, line)
        width = 12. * math.sqrt(var)
        val, _ = scipy.integrate.quad(
            lambda x, line=line: tomography.radon_gaussian(STATE, x, line),
            mean - width, mean + width, points=[mean], epsabs=0.,
            epsrel=1e-12, limit=200)
        assert numpy.isclose(val, 1., rtol=1e-9)

        for x in (mean - 1., mean, mean + 0.7):
            assert numpy.isclose(
                tomography.radon_from_wigner(STATE, x, line),
                tomography.radon_gaussian(STATE, x, line), rtol=1e-8)

    # the q and p marginals are the Gaussians of the state
    assert numpy.isclose(tomography.radon_gaussian(STATE, 1.3, Q_LINE),
                         1. / math.sqrt(2. * math.pi * 1.5))
    assert numpy.isclose(tomography.radon_gaussian(STATE, -0.8, P_LINE),
                         1. / math.sqrt(2. * math.pi * 0.7))

    # homogeneity, w(s x, s mu, s nu) = w(x, mu, nu) / |s|
    line = TomographyLine(0.6, -0.3)
    for scale in (2.5, -0.5):
        scaled = TomographyLine(scale * 0.6, scale * -0.3)
        assert numpy.isclose(
            tomography.radon_gaussian(STATE, scale * 0.9, scaled),
            tomography.radon_gaussian(STATE, 0.9, line) / abs(scale),
            rtol=1e-12)


def test__rescaling():
    """ test tomolab.tomography.make_rescaling
    """
    resc = tomography.make_rescaling(PhysicalParams(m=2., omega=2.))
    assert numpy.isclose(resc.scale_q, 2.)
    assert numpy.isclose(resc.scale_p, 0.5)

    resc = tomography.make_rescaling(PhysicalParams(m=1., omega=0.),
                                     fallback_var_p0=2.)
    assert numpy.isclose(resc.scale_q, 1.)
    assert numpy.isclose(resc.scale_p, 1.)

    resc = tomography.make_rescaling(PhysicalParams(m=1., omega=1.,
                                                    hbar=0.5))
    assert numpy.isclose(resc.scale_q * resc.scale_p, 2.)

    with pytest.raises(DomainError):
        tomography.make_rescaling(PhysicalParams(m=1., omega=0.))

    resc = tomography.make_rescaling(PhysicalParams(m=3., omega=0.7))
    state = tomography.unrescale_state(
        tomography.rescale_state(STATE, resc), resc)
    assert numpy.allclose([*state.means(), *state.covariances()],
                          [*STATE.means(), *STATE.covariances()],
                          rtol=1e-14)
    # the rescaled uncertainty product is in units of hbar
    assert numpy.isclose(tomography.rescale_state(STATE, resc).det,
                         STATE.det)


def test__tomogram_point():
    """ test tomolab.tomography.TomogramPoint
    """
    point = TomogramPoint(3., TomographyLine(0., 2.), 0.1, 0.01)
    norm = point.normalized()
    assert norm.line == P_LINE
    assert numpy.isclose(norm.x, 1.5)
    assert numpy.isclose(norm.value, 0.2)
    assert numpy.isclose(norm.noise_sigma, 0.02)
    assert point.row() == (3., 0., 2., 0.1, 0.01)

    with pytest.raises(DomainError):
        TomogramPoint(0., Q_LINE, -0.1)
    with pytest.raises(DomainError):
        TomogramPoint(float('nan'), Q_LINE, 0.1)
    with pytest.raises(DomainError):
        TomographyLine(0., 0.)
    assert DIAGONAL_LINE.is_close(TomographyLine(3., 3.))
    assert not DIAGONAL_LINE.is_close(TomographyLine(3., -3.))


def test__points_from_rows():
    """ test tomolab.tomography.points_from_rows
    """
    points = tomography.points_from_rows(
        [(0., 1., 0., 0.2, 0.), ['1.5', '0', '1', '0.1', '0.001']])
    assert points[1].line == P_LINE
    assert points[1].noise_sigma == 0.001

    with pytest.raises(InconsistentDataError) as err:
        tomography.points_from_rows(
            [(0., 1., 0., 0.2, 0.), (1., 1., 0., -0.2, 0.)])
    assert err.value.payload['row'] == 1

    with pytest.raises(InconsistentDataError) as err:
        tomography.points_from_rows([(0., 1., 0., 0.2)])
    assert err.value.payload['row'] == 0

    with pytest.raises(InconsistentDataError):
        tomography.points_from_rows([(0., 1., 0., 'x', 0.)])


def test__noise_model():
    """ test tomolab.tomography.NoiseModel
    """
    assert NoiseModel.exact().tag == 'exact'
    assert NoiseModel.additive(1e-4).tag == 'additive_1.000e-04'
    assert NoiseModel.quadrature_samples(1000).tag == 'samples_1000'

    with pytest.raises(DomainError):
        NoiseModel.additive(-1.)
    with pytest.raises(DomainError):
        NoiseModel.quadrature_samples(10)
    with pytest.raises(DomainError):
        NoiseModel.quadrature_samples(1000, bandwidth='scott')
    with pytest.raises(DomainError):
        NoiseModel.quadrature_samples(1000, bandwidth=0.)
    with pytest.raises(DomainError):
        NoiseModel('poisson')


def test__silverman_bandwidth():
    """ test tomolab.tomography.silverman_bandwidth
    """
    bwd = tomography.silverman_bandwidth(numpy.array([1., 2., 3., 4., 5.]))
    assert numpy.isclose(bwd, 0.9 * math.sqrt(2.) * 5. ** -0.2)


def test__sample_tomogram():
    """ test tomolab.tomography.sample_tomogram
    """
    xs = [0., 1.3, 2.]
    points = tomography.sample_tomogram(STATE, Q_LINE, xs,
                                        NoiseModel.exact())
    assert [point.x for point in points] == xs
    assert all(point.noise_sigma == 0. for point in points)
    assert numpy.allclose([point.value for point in points],
                          tomography.radon_gaussian(STATE, xs, Q_LINE))

    noisy1 = tomography.sample_tomogram(STATE, Q_LINE, xs,
                                        NoiseModel.additive(1e-3), seed=11)
    noisy2 = tomography.sample_tomogram(STATE, Q_LINE, xs,
                                        NoiseModel.additive(1e-3), seed=11)
    noisy3 = tomography.sample_tomogram(STATE, Q_LINE, xs,
                                        NoiseModel.additive(1e-3), seed=12)
    assert noisy1 == noisy2
    assert noisy1 != noisy3
    assert all(point.noise_sigma == 1e-3 for point in noisy1)
    assert numpy.allclose([point.value for point in noisy1],
                          [point.value for point in points], atol=1e-2)

    # a kernel estimate from many samples lands near the exact peak
    points = tomography.sample_tomogram(
        STATE, Q_LINE, [1.3], NoiseModel.quadrature_samples(100000),
        seed=5)
    exact = tomography.radon_gaussian(STATE, 1.3, Q_LINE)
    assert abs(points[0].value - exact) < 0.05 * exact
    assert 0. < points[0].noise_sigma < 0.05 * exact

    # a million samples of a unit Gaussian recover its peak height
    unit = CumulantState(0., 0., 1., 1., 0.)
    points = tomography.sample_tomogram(
        unit, Q_LINE, [0.], NoiseModel.quadrature_samples(1000000), seed=5)
    assert abs(points[0].value - 1. / math.sqrt(2. * math.pi)) < 0.005

    with pytest.raises(DomainError):
        tomography.sample_tomogram(STATE, Q_LINE, [], NoiseModel.exact())
