""" test tomolab.pipeline
"""
import math
import numpy
import pytest
from tomolab.model import PhysicalParams
from tomolab.model import MasterEqCoefficients
from tomolab.model import CumulantState
from tomolab.tomography import NoiseModel
from tomolab.reconstruction import Sign
from tomolab.inversion import EstimationMode
from tomolab import pipeline
from tomolab.pipeline import Scenario

PARAMS = PhysicalParams(m=1., omega=1., delta=0.3)
COEFFS = MasterEqCoefficients(0.5, 0.6, 0.8, 0.1)
STATE0 = CumulantState(3., 0., 1., 1., 0.)
SCENARIO = Scenario(params=PARAMS, coeffs=COEFFS, state0=STATE0, t=1.)


def _coeff_vals(coeffs):
    return [coeffs.lambda_, *coeffs.diffusion]


def test__marginal_positions():
    """ test tomolab.pipeline.marginal_positions
    """
    assert pipeline.marginal_positions(3., 1., 2) == (0., 4.5, 1.5)
    assert pipeline.marginal_positions(3., 1., 3) == (0., 4.5, 1.5, 3.75)
    assert pipeline.marginal_positions(0., 1., 2) == (0., 1.5, 0.75)
    assert pipeline.marginal_positions(0., 1., 3) == (0., 1.5, 0.75, 2.)
    # x = mean - 1.5 spread lands on the origin
    xs = pipeline.marginal_positions(1.5, 1., 2)
    assert xs == (0., 3., 2.25)


def test__measurement_plan():
    """ test tomolab.pipeline.measurement_plan
    """
    state = CumulantState(1.3, -0.8, 1.5, 0.7, 0.4)
    plan = pipeline.measurement_plan(state)
    assert plan.npoints == 8
    assert plan.sign_hints == (Sign.PLUS, Sign.MINUS)
    assert numpy.isclose(plan.diag_xs[0], 0.5 / math.sqrt(2.))
    assert numpy.isclose(plan.diag_xs[1] - plan.diag_xs[0],
                         2. * math.sqrt(1.5))

    plan = pipeline.measurement_plan(state, known_signs=False)
    assert plan.npoints == 10
    assert plan.sign_hints == (Sign.UNKNOWN, Sign.UNKNOWN)

    points = pipeline.measure(state, plan, NoiseModel.additive(1e-3), seed=4)
    assert [len(pts) for pts in points] == [4, 4, 2]
    assert points == pipeline.measure(state, plan, NoiseModel.additive(1e-3),
                                      seed=4)


def test__estimate():
    """ test tomolab.pipeline.estimate
    """
    for known_signs, npoints in ((True, 8), (False, 10)):
        scen = Scenario(params=PARAMS, coeffs=COEFFS, state0=STATE0, t=1.,
                        known_signs=known_signs)
        points = []
        report = pipeline.estimate(scen, NoiseModel.exact(), seed=0,
                                   points_out=points)
        assert len(points) == npoints == report.points_used
        for est, truth in zip(_coeff_vals(report.coefficients),
                              _coeff_vals(COEFFS)):
            assert pipeline.relative_error(est, truth) < 1e-6

    # the probe can be measured as well
    scen = Scenario(params=PARAMS, coeffs=COEFFS,
                    state0=CumulantState(3., 0.5, 1., 1., 0.), t=1.,
                    reconstruct_probe=True)
    points = []
    report = pipeline.estimate(scen, NoiseModel.exact(), points_out=points)
    assert len(points) == 16
    assert numpy.allclose(_coeff_vals(report.coefficients),
                          _coeff_vals(COEFFS), rtol=1e-6)

    # diffusion from the stationary state
    scen = Scenario(params=PARAMS, coeffs=COEFFS, state0=STATE0, t=1.,
                    mode=EstimationMode.STATIONARY)
    report = pipeline.estimate(scen, NoiseModel.exact())
    assert numpy.allclose(_coeff_vals(report.coefficients),
                          _coeff_vals(COEFFS), rtol=1e-6)


def test__roundtrip_once():
    """ test tomolab.pipeline.roundtrip_once
    """
    res = pipeline.roundtrip_once(SCENARIO, NoiseModel.exact())
    assert res.status == pipeline.SUCCESS
    assert len(res.points) == 8
    rows = res.error_rows(COEFFS)
    assert [row[2] for row in rows] == list(pipeline.COEFFICIENT_NAMES)
    assert all(row[5] < 1e-6 for row in rows)

    # failures are recorded, not raised
    scen = Scenario(params=PARAMS, coeffs=COEFFS, state0=STATE0, t=1.,
                    lambda_method='fit')
    res = pipeline.roundtrip_once(scen, NoiseModel.exact())
    assert res.report is None
    assert res.status == 'DomainError'
    assert len(res.points) == 8
    rows = res.error_rows(COEFFS)
    assert all(math.isnan(row[3]) and math.isinf(row[5]) for row in rows)


def test__sweep():
    """ test tomolab.pipeline.sweep
    """
    noises = [NoiseModel.additive(1e-4), NoiseModel.additive(1e-6)]
    results = pipeline.sweep(SCENARIO, noises, [2, 0, 1])
    assert [(res.noise.sigma, res.seed) for res in results] == [
        (1e-6, 0), (1e-6, 1), (1e-6, 2), (1e-4, 0), (1e-4, 1), (1e-4, 2)]
    table = pipeline.error_table(results, COEFFS)
    assert len(table) == 24

    # the same runs in two processes
    par_results = pipeline.sweep(SCENARIO, noises, [2, 0, 1], workers=2)
    assert pipeline.error_table(par_results, COEFFS) == table


@pytest.mark.parametrize('known_signs', [True, False])
def test__noise_monotonicity(known_signs):
    """ test that the median error does not decrease with the noise
    """
    scen = Scenario(params=PARAMS, coeffs=COEFFS, state0=STATE0, t=1.,
                    known_signs=known_signs)
    noises = [NoiseModel.additive(sigma) for sigma in (1e-6, 1e-4, 1e-2)]
    table = pipeline.error_table(
        pipeline.sweep(scen, noises, list(range(100))), COEFFS)
    for name in pipeline.COEFFICIENT_NAMES:
        medians = [numpy.median([row[5] for row in table
                                 if row[0] == noise.sigma and row[2] == name])
                   for noise in noises]
        assert medians[0] <= medians[1] <= medians[2], (name, medians)
