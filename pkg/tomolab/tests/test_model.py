""" test tomolab.model
"""
import numpy
import pytest
from tomolab.model import PhysicalParams
from tomolab.model import MasterEqCoefficients
from tomolab.model import LindbladCoefficients
from tomolab.model import CumulantState
from tomolab.model import Constraint
from tomolab.model import coefficients_from_lindblad
from tomolab.model import check_complete_positivity
from tomolab.errors import DomainError


def test__physical_params():
    """ test tomolab.model.PhysicalParams
    """
    params = PhysicalParams(m=2., omega=0.5)
    assert params.delta == 0. and params.hbar == 1.
    assert PhysicalParams.from_dict(params.to_dict()) == params

    with pytest.raises(DomainError):
        PhysicalParams(m=0., omega=1.)
    with pytest.raises(DomainError):
        PhysicalParams(m=1., omega=-1.)
    with pytest.raises(DomainError):
        PhysicalParams(m=1., omega=float('nan'))
    with pytest.raises(DomainError):
        PhysicalParams.from_dict({'m': 1., 'omega': 1., 'mass': 1.})
    with pytest.raises(DomainError):
        PhysicalParams.from_dict({'m': 1., 'omega': 'fast'})


def test__master_eq_coefficients():
    """ test tomolab.model.MasterEqCoefficients
    """
    coeffs = MasterEqCoefficients(0.5, 0.6, 0.8, 0.1)
    assert coeffs.diffusion == (0.6, 0.8, 0.1)
    assert coeffs.to_dict() == {'lambda': 0.5, 'd_qq': 0.6, 'd_pp': 0.8,
                                'd_qp': 0.1}
    assert MasterEqCoefficients.from_dict(coeffs.to_dict()) == coeffs

    with pytest.raises(DomainError):
        MasterEqCoefficients(float('inf'), 0.6, 0.8, 0.1)
    with pytest.raises(DomainError):
        MasterEqCoefficients.from_dict({'lambda': 0.5, 'd_qq': 0.6})


def test__cumulant_state():
    """ test tomolab.model.CumulantState
    """
    state = CumulantState(3., 0., 1., 1., 0.)
    assert state.det == 1.
    assert state.is_physical()
    assert state.means() == (3., 0.)
    assert state.covariances() == (1., 1., 0.)
    assert state.with_covariances((2., 0.5, 0.1)).covariances() == (
        2., 0.5, 0.1)
    assert CumulantState.from_dict(state.to_dict()) == state

    # a minimum-uncertainty state sits on the boundary
    assert CumulantState(0., 0., 0.5, 0.5, 0.).is_physical()
    assert not CumulantState(0., 0., 0.4, 0.5, 0.).is_physical()
    assert CumulantState(0., 0., 0.5, 2., 0.).is_physical(hbar=2.)

    with pytest.raises(DomainError):
        CumulantState(0., 0., 0., 1., 0.)
    with pytest.raises(DomainError):
        CumulantState(0., 0., 1., 1., 1.)
    with pytest.raises(DomainError):
        CumulantState(0., float('nan'), 1., 1., 0.)


def test__coefficients_from_lindblad():
    """ test tomolab.model.coefficients_from_lindblad
    """
    lcs = LindbladCoefficients(a1=0.5, a2=0., b1=0.5j, b2=0.)
    coeffs = coefficients_from_lindblad(lcs)
    assert numpy.isclose(coeffs.lambda_, -0.25)
    assert numpy.isclose(coeffs.d_qq, 0.125)
    assert numpy.isclose(coeffs.d_pp, 0.125)
    assert numpy.isclose(coeffs.d_qp, 0.)

    # a single Lindblad operator saturates the determinant constraint
    verdict = check_complete_positivity(coeffs)
    assert verdict.satisfied
    assert abs(verdict.margin) < 1e-15

    # the coefficients do not depend on a global phase
    phased = coefficients_from_lindblad(lcs.with_phase(0.7))
    assert numpy.allclose(
        [phased.lambda_, *phased.diffusion],
        [coeffs.lambda_, *coeffs.diffusion], rtol=0., atol=1e-15)

    # hbar scales the diffusion only
    coeffs2 = coefficients_from_lindblad(lcs, hbar=2.)
    assert numpy.isclose(coeffs2.lambda_, coeffs.lambda_)
    assert numpy.isclose(coeffs2.d_qq, 2. * coeffs.d_qq)

    assert LindbladCoefficients.from_dict(lcs.to_dict()) == lcs
    with pytest.raises(DomainError):
        LindbladCoefficients.from_dict(
            {'a1': [1., 0., 0.], 'a2': 0., 'b1': 0., 'b2': 0.})
    with pytest.raises(DomainError):
        coefficients_from_lindblad(lcs, hbar=0.)


def test__check_complete_positivity():
    """ test tomolab.model.check_complete_positivity
    """
    verdict = check_complete_positivity(
        MasterEqCoefficients(0.5, 0.6, 0.8, 0.1))
    assert verdict
    assert verdict.violated is None
    assert numpy.isclose(verdict.margin, 0.48 - 0.01 - 0.0625)
    assert verdict.to_dict() == {'satisfied': True, 'violated': None,
                                 'margin': verdict.margin}

    verdict = check_complete_positivity(
        MasterEqCoefficients(0.5, -1., 0.8, 0.1))
    assert not verdict
    assert verdict.violated == Constraint.D_QQ

    verdict = check_complete_positivity(
        MasterEqCoefficients(0.5, 0.6, 0., 0.1))
    assert verdict.violated == Constraint.D_PP

    verdict = check_complete_positivity(
        MasterEqCoefficients(1., 0.1, 0.1, 0.))
    assert verdict.violated == Constraint.DETERMINANT
    assert verdict.margin < 0.

    # hbar enters the determinant constraint squared
    coeffs = MasterEqCoefficients(1., 0.3, 0.3, 0.)
    assert check_complete_positivity(coeffs, hbar=0.5)
    assert not check_complete_positivity(coeffs, hbar=1.)
