""" DataSeriess
"""

from inspect import getfullargspec as function_argspec
from tomolab import store
from tomolab.schema import loc_maps
from tomolab.schema import data_files


SPEC_FILE_PREFIX = 'dir'


# DataSeries for the single-command layers
def simulation_trunk(prefix, root_ds=None):
    """ simulation trunk DataSeries

    :param prefix: path to trunk
    :type prefix: string
    :return: dataseries filesystem object for trunk
    :type: DataSeries
    """
    return _trunk(prefix, loc_maps.simulation_trunk, root_ds=root_ds)


def tomogram_trunk(prefix, root_ds=None):
    """ tomogram trunk DataSeries

    :param prefix: path to trunk
    :type prefix: string
    :return: dataseries filesystem object for trunk
    :type: DataSeries
    """
    return _trunk(prefix, loc_maps.tomogram_trunk, root_ds=root_ds)


def reconstruction_trunk(prefix, root_ds=None):
    """ reconstruction trunk DataSeries

    :param prefix: path to trunk
    :type prefix: string
    :return: dataseries filesystem object for trunk
    :type: DataSeries
    """
    return _trunk(prefix, loc_maps.reconstruction_trunk, root_ds=root_ds)


# DataSeries for the round-trip layers
def roundtrip_trunk(prefix, root_ds=None):
    """ round-trip trunk DataSeries

    :param prefix: path to trunk
    :type prefix: string
    :return: dataseries filesystem object for trunk
    :type: DataSeries
    """
    return _trunk(prefix, loc_maps.roundtrip_trunk, root_ds=root_ds)


def run_trunk(prefix, root_ds=None):
    """ per-run trunk DataSeries

    :param prefix: path to trunk
    :type prefix: string
    :return: dataseries filesystem object for trunk
    :type: DataSeries
    """
    return _trunk(prefix, loc_maps.run_trunk, root_ds=root_ds)


def run_leaf(prefix, root_ds=None):
    """ per-run leaf DataSeries, located by [noise tag, seed]

    :param prefix: path to leaf
    :type prefix: string
    :return: dataseries filesystem object for leaf
    :type: DataSeries
    """
    loc_dfile = data_files.locator(
        file_prefix=SPEC_FILE_PREFIX,
        map_dct_={'noise': lambda locs: locs[0],
                  'seed': lambda locs: locs[1]},
        loc_keys=['noise', 'seed'])

    _map = _pack_arguments(loc_maps.run_leaf)
    nlocs = _count_arguments(loc_maps.run_leaf)
    return store.DataSeries(prefix, map_=_map, nlocs=nlocs, depth=2,
                            loc_dfile=loc_dfile, root_ds=root_ds,
                            removable=True)


# helpers
def _trunk(prefix, loc_map, root_ds=None):
    _map = _pack_arguments(loc_map)
    nlocs = _count_arguments(loc_map)
    return store.DataSeries(prefix, map_=_map, nlocs=nlocs, depth=1,
                            root_ds=root_ds)


def _pack_arguments(function):
    """ generate an equivalent function that takes all of its arguments packed
    into a sequence
    """
    def _function(args=()):
        return function(*args)

    _function.__name__ = function.__name__
    return _function


def _count_arguments(function):
    """ count the number of arguments that a function takes in
    """
    argspec = function_argspec(function)
    return len(argspec.args)
