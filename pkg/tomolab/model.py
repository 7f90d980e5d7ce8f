""" domain types and coefficient conventions

Units are whatever the caller supplies, with the action scale hbar explicit.
"""
import math
import numbers
import dataclasses
from tomolab.errors import DomainError

CP_RTOL = 1e-12


def _finite(*vals):
    return all(isinstance(val, numbers.Number) and math.isfinite(abs(val))
               for val in vals)


def _require_finite(name, *vals):
    if not _finite(*vals):
        raise DomainError(f'{name} requires finite values, got {vals}')


@dataclasses.dataclass(frozen=True)
class PhysicalParams:
    """ known Hamiltonian data

    :param m: mass
    :param omega: angular frequency
    :param delta: bilinear (q p + p q) coupling strength
    :param hbar: action scale
    """
    m: float
    omega: float
    delta: float = 0.
    hbar: float = 1.

    def __post_init__(self):
        _require_finite('PhysicalParams', self.m, self.omega, self.delta,
                        self.hbar)
        if self.m <= 0. or self.hbar <= 0.:
            raise DomainError(
                f'm and hbar must be positive, got m={self.m}, '
                f'hbar={self.hbar}')
        if self.omega < 0.:
            raise DomainError(f'omega must be non-negative, got {self.omega}')

    def to_dict(self):
        """ JSON object shape """
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, dct):
        """ build from the JSON object shape """
        return _from_dict(cls, dct, {'m': 'm', 'omega': 'omega',
                                     'delta': 'delta', 'hbar': 'hbar'})


@dataclasses.dataclass(frozen=True)
class MasterEqCoefficients:
    """ the four unknowns of the master equation

    Positivity of the diffusion coefficients is not enforced here; use
    `check_complete_positivity`.
    """
    lambda_: float
    d_qq: float
    d_pp: float
    d_qp: float

    def __post_init__(self):
        _require_finite('MasterEqCoefficients', self.lambda_, self.d_qq,
                        self.d_pp, self.d_qp)

    @property
    def diffusion(self):
        """ (d_qq, d_pp, d_qp) """
        return (self.d_qq, self.d_pp, self.d_qp)

    def to_dict(self):
        """ JSON object shape """
        return {'lambda': self.lambda_, 'd_qq': self.d_qq,
                'd_pp': self.d_pp, 'd_qp': self.d_qp}

    @classmethod
    def from_dict(cls, dct):
        """ build from the JSON object shape """
        return _from_dict(cls, dct, {'lambda': 'lambda_', 'd_qq': 'd_qq',
                                     'd_pp': 'd_pp', 'd_qp': 'd_qp'})


@dataclasses.dataclass(frozen=True)
class LindbladCoefficients:
    """ V_j = a_j p + b_j q, j = 1, 2
    """
    a1: complex
    a2: complex
    b1: complex
    b2: complex

    def __post_init__(self):
        _require_finite('LindbladCoefficients', self.a1, self.a2, self.b1,
                        self.b2)
        for name in ('a1', 'a2', 'b1', 'b2'):
            object.__setattr__(self, name, complex(getattr(self, name)))

    def with_phase(self, phi):
        """ multiply every coefficient by the global phase e^{i phi} """
        fac = complex(math.cos(phi), math.sin(phi))
        return LindbladCoefficients(self.a1 * fac, self.a2 * fac,
                                    self.b1 * fac, self.b2 * fac)

    def to_dict(self):
        """ JSON object shape, complex numbers as [re, im] """
        return {name: [getattr(self, name).real, getattr(self, name).imag]
                for name in ('a1', 'a2', 'b1', 'b2')}

    @classmethod
    def from_dict(cls, dct):
        """ build from the JSON object shape """
        _check_keys(cls, dct, ('a1', 'a2', 'b1', 'b2'))
        vals = {}
        for name in ('a1', 'a2', 'b1', 'b2'):
            val = dct[name]
            if isinstance(val, (list, tuple)):
                if len(val) != 2:
                    raise DomainError(f'{name} must be [re, im], got {val}')
                val = complex(val[0], val[1])
            vals[name] = val
        return cls(**vals)


@dataclasses.dataclass(frozen=True)
class CumulantState:
    """ first and second cumulants of a Gaussian state

    :param mean_q: <q>
    :param mean_p: <p>
    :param var_q: position variance
    :param var_p: momentum variance
    :param cov_qp: symmetrized covariance sigma(q, p)
    """
    mean_q: float
    mean_p: float
    var_q: float
    var_p: float
    cov_qp: float

    def __post_init__(self):
        _require_finite('CumulantState', self.mean_q, self.mean_p,
                        self.var_q, self.var_p, self.cov_qp)
        if self.var_q <= 0. or self.var_p <= 0.:
            raise DomainError(
                f'variances must be positive, got var_q={self.var_q}, '
                f'var_p={self.var_p}')
        if self.det <= 0.:
            raise DomainError(
                f'covariance determinant must be positive, got {self.det}')

    @property
    def det(self):
        """ var_q var_p - cov_qp^2 """
        return self.var_q * self.var_p - self.cov_qp ** 2

    def is_physical(self, hbar=1.):
        """ Robertson-Schroedinger check, det >= hbar^2 / 4
        """
        return self.det >= hbar ** 2 / 4. * (1. - CP_RTOL)

    def means(self):
        """ (mean_q, mean_p) """
        return (self.mean_q, self.mean_p)

    def covariances(self):
        """ (var_q, var_p, cov_qp) """
        return (self.var_q, self.var_p, self.cov_qp)

    def with_covariances(self, covs):
        """ same means, new second cumulants """
        var_q, var_p, cov_qp = covs
        return CumulantState(self.mean_q, self.mean_p, var_q, var_p, cov_qp)

    def to_dict(self):
        """ JSON object shape """
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, dct):
        """ build from the JSON object shape """
        return _from_dict(cls, dct, {name: name for name in
                                     ('mean_q', 'mean_p', 'var_q', 'var_p',
                                      'cov_qp')})


class Constraint():
    """ complete-positivity constraints, in checking order """
    D_QQ = 'i'
    D_PP = 'ii'
    DETERMINANT = 'iii'


@dataclasses.dataclass(frozen=True)
class CPVerdict:
    """ outcome of the complete-positivity check

    :param violated: first violated constraint (a `Constraint` value), or
        None when all hold
    :param margin: d_qq d_pp - d_qp^2 - lambda^2 hbar^2 / 4
    """
    violated: str | None
    margin: float

    @property
    def satisfied(self):
        """ do all three constraints hold? """
        return self.violated is None

    def __bool__(self):
        return self.satisfied

    def to_dict(self):
        """ JSON object shape """
        return {'satisfied': self.satisfied, 'violated': self.violated,
                'margin': self.margin}


def coefficients_from_lindblad(lc, hbar=1.):
    """ master-equation coefficients generated by linear Lindblad operators

    :param lc: Lindblad coefficients
    :type lc: LindbladCoefficients
    :param hbar: action scale
    :type hbar: float
    :rtype: MasterEqCoefficients
    """
    _require_finite('coefficients_from_lindblad', hbar)
    if hbar <= 0.:
        raise DomainError(f'hbar must be positive, got {hbar}')

    overlap = lc.a1.conjugate() * lc.b1 + lc.a2.conjugate() * lc.b2
    return MasterEqCoefficients(
        lambda_=-overlap.imag,
        d_qq=hbar / 2. * (abs(lc.a1) ** 2 + abs(lc.a2) ** 2),
        d_pp=hbar / 2. * (abs(lc.b1) ** 2 + abs(lc.b2) ** 2),
        d_qp=-hbar / 2. * overlap.real)


def check_complete_positivity(coeffs, hbar=1., rtol=CP_RTOL):
    """ check d_qq > 0, d_pp > 0 and d_qq d_pp - d_qp^2 >= lambda^2 hbar^2/4

    The third inequality is relaxed by `rtol` relative to the larger of its
    two sides, so that the equality case does not flap under rounding.

    :param coeffs: master-equation coefficients
    :type coeffs: MasterEqCoefficients
    :param hbar: action scale
    :type hbar: float
    :rtype: CPVerdict
    """
    lhs = coeffs.d_qq * coeffs.d_pp - coeffs.d_qp ** 2
    rhs = coeffs.lambda_ ** 2 * hbar ** 2 / 4.
    margin = lhs - rhs

    if not coeffs.d_qq > 0.:
        violated = Constraint.D_QQ
    elif not coeffs.d_pp > 0.:
        violated = Constraint.D_PP
    elif margin < -rtol * max(abs(lhs), abs(rhs), coeffs.d_qq * coeffs.d_pp):
        violated = Constraint.DETERMINANT
    else:
        violated = None
    return CPVerdict(violated=violated, margin=margin)


def _check_keys(cls, dct, keys):
    if not isinstance(dct, dict):
        raise DomainError(f'{cls.__name__} expects an object, got {dct!r}')
    unknown = set(dct) - set(keys)
    if unknown:
        raise DomainError(
            f'unknown {cls.__name__} fields: {sorted(unknown)}')


def _from_dict(cls, dct, key_map):
    _check_keys(cls, dct, key_map)
    kwargs = {}
    for key, field in key_map.items():
        if key in dct:
            val = dct[key]
            if isinstance(val, bool) or not isinstance(val, numbers.Real):
                raise DomainError(
                    f'{cls.__name__}.{key} must be a number, got {val!r}')
            kwargs[field] = float(val)
    try:
        return cls(**kwargs)
    except TypeError as err:
        raise DomainError(f'incomplete {cls.__name__}: {err}') from err
