""" string readers
    reads tomolab results from the text formats written to disk
"""

import json
from io import StringIO as _StringIO
import numpy
import tomolab.info
from tomolab.data_types.swrite import TRAJECTORY_COLUMNS
from tomolab.data_types.swrite import TOMOGRAM_COLUMNS
from tomolab.data_types.swrite import WIGNER_COLUMNS
from tomolab.data_types.swrite import RATIO_COLUMNS
from tomolab.data_types.swrite import ERROR_COLUMNS


def information(inf_str):
    """ read information (any dict/list combination) from a string

    :param inf_str: info yaml information
    :type inf_str: str
    :rtype: Info
    """
    inf_obj = tomolab.info.from_string(inf_str)
    return inf_obj


def json_object(json_str):
    """ read a JSON object from a string

    :rtype: dict
    """
    dct = json.loads(json_str)
    assert isinstance(dct, dict), f'{json_str} is not a JSON object'
    return dct


def trajectory(traj_str):
    """ read a cumulant trajectory from a string

    :returns: (t, mean_q, mean_p, var_q, var_p, cov_qp) array
    :rtype: numpy.ndarray
    """
    return _table(traj_str, TRAJECTORY_COLUMNS)


def tomogram(tomo_str):
    """ read tomogram points from a string

    :returns: (x, mu, nu, value, noise_sigma) array
    :rtype: numpy.ndarray
    """
    return _table(tomo_str, TOMOGRAM_COLUMNS)


def wigner_grid(grid_str):
    """ read a Wigner grid from a string

    :returns: (q, p, w) array
    :rtype: numpy.ndarray
    """
    return _table(grid_str, WIGNER_COLUMNS)


def ratio(ratio_str):
    """ read spread-equation ratio curves from a string

    :rtype: list[tuple]
    """
    arr = _table(ratio_str, RATIO_COLUMNS, dtype=str)
    return [(sign, float(x), float(spread), float(val))
            for sign, x, spread, val in arr]


def error_table(err_str):
    """ read the coefficient error table from a string

    :rtype: list[tuple]
    """
    arr = _table(err_str, ERROR_COLUMNS, dtype=str)
    return [(float(sigma), int(seed), coeff, float(est), float(truth),
             float(rel_err), status)
            for sigma, seed, coeff, est, truth, rel_err, status in arr]


def _table(tab_str, columns, dtype=float):
    header, _, body = tab_str.partition('\n')
    assert tuple(header.strip().split(',')) == tuple(columns), (
        f'unexpected table header {header!r}, expected {",".join(columns)}'
    )
    tab_str_io = _StringIO(body)
    arr = numpy.loadtxt(tab_str_io, delimiter=',', dtype=dtype, ndmin=2)
    tab_str_io.close()
    return arr.reshape(-1, len(columns))
