""" string writers
    converts tomolab results to the text formats written to disk; every float
    is written with 17 significant digits
"""

import math
import json
from io import StringIO as _StringIO
import numpy
import tomolab.info

FLOAT_FMT = '%.17g'

TRAJECTORY_COLUMNS = ('t', 'mean_q', 'mean_p', 'var_q', 'var_p', 'cov_qp')
TOMOGRAM_COLUMNS = ('x', 'mu', 'nu', 'value', 'noise_sigma')
WIGNER_COLUMNS = ('q', 'p', 'w')
RATIO_COLUMNS = ('sign', 'x', 'spread', 'ratio')
ERROR_COLUMNS = ('sigma', 'seed', 'coefficient', 'estimate', 'truth',
                 'rel_error', 'status')


def information(inf_obj):
    """ write information (any dict/list combination) to a string

    :param inf_obj: information object
    :type inf_obj: Info
    :rtype: str
    """
    assert isinstance(inf_obj, tomolab.info.Info)
    inf_str = tomolab.info.string(inf_obj)
    return inf_str


def json_object(dct):
    """ write a JSON object to a string

    Non-finite numbers are written as null.

    :param dct: JSON-compatible dictionary
    :type dct: dict
    :rtype: str
    """
    assert isinstance(dct, dict), f'{dct} is not a dictionary'
    return json.dumps(_finite_or_none(dct), indent=4, ensure_ascii=False,
                      allow_nan=False) + '\n'


def _finite_or_none(obj):
    if isinstance(obj, dict):
        return {key: _finite_or_none(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite_or_none(val) for val in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def trajectory(rows):
    """ write a cumulant trajectory to a string

    :param rows: (t, mean_q, mean_p, var_q, var_p, cov_qp) rows
    :type rows: list[tuple[float]]
    :rtype: str
    """
    return _table(rows, TRAJECTORY_COLUMNS)


def tomogram(rows):
    """ write tomogram points to a string

    :param rows: (x, mu, nu, value, noise_sigma) rows
    :type rows: list[tuple[float]]
    :rtype: str
    """
    return _table(rows, TOMOGRAM_COLUMNS)


def wigner_grid(rows):
    """ write a Wigner grid to a string

    :param rows: (q, p, w) rows, row-major over q
    :type rows: list[tuple[float]]
    :rtype: str
    """
    return _table(rows, WIGNER_COLUMNS)


def ratio(rows):
    """ write spread-equation ratio curves to a string

    :param rows: (sign, x, spread, ratio) rows
    :type rows: list[tuple]
    :rtype: str
    """
    return _table(rows, RATIO_COLUMNS, fmt=('%s',) + (FLOAT_FMT,) * 3)


def error_table(rows):
    """ write the coefficient error table to a string

    :param rows: (sigma, seed, coefficient, estimate, truth, rel_error,
        status) rows
    :type rows: list[tuple]
    :rtype: str
    """
    fmt = (FLOAT_FMT, '%d', '%s', FLOAT_FMT, FLOAT_FMT, FLOAT_FMT, '%s')
    return _table(rows, ERROR_COLUMNS, fmt=fmt)


def _table(rows, columns, fmt=FLOAT_FMT):
    rows = list(rows)
    dtype = float if isinstance(fmt, str) else object
    arr = numpy.array(rows, dtype=dtype).reshape(len(rows), len(columns))

    tab_str_io = _StringIO()
    numpy.savetxt(tab_str_io, arr, fmt=fmt, delimiter=',',
                  header=','.join(columns), comments='')
    tab_str = tab_str_io.getvalue()
    tab_str_io.close()
    return tab_str
