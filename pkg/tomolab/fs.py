""" This module generates managers for the various layers in the output tree.

The overall output layout is as follows::

    PREFIX/
        SIM/
        TOMO/
        REC/
        RT/
            RUN/
                NOISE TAG/SEED*/

    * One directory per noise model and seed of a round-trip sweep.

Managers for the single-command layers:
    - ``SIM``: :meth:`tomolab.fs.simulation`
    - ``TOMO``: :meth:`tomolab.fs.tomogram`
    - ``REC``: :meth:`tomolab.fs.reconstruction`

Manager for the round-trip layers:
    - ``RT``: :meth:`tomolab.fs.roundtrip`

Each function in this module returns a tuple of tomolab.store.DataSeries
objects for interacting with successive layers in the output tree.
"""
from tomolab.schema import data_files
from tomolab.schema import data_series
from tomolab.schema import info_objects


class _FilePrefix():
    """ file prefixes """
    RUN = 'run'
    TRAJ = 'trajectory'
    POINTS = 'points'
    CURVES = 'curves'
    WIGNER = 'wigner'
    RATIO = 'ratio'
    REC = 'reconstruction'
    EST = 'estimate'
    ERR = 'errors'


class FileAttributeName():
    """ DataFile attribute names """
    INFO = 'info'
    TRAJ = 'trajectory'
    POINTS = 'points'
    CURVES = 'curves'
    WIGNER = 'wigner'
    WIGNER_META = 'wigner_meta'
    RATIO = 'ratio'
    REPORT = 'report'
    ESTIMATE = 'estimate'
    ERRORS = 'errors'


def simulation(prefix):
    """ construct the simulation output tree (1 layer)

    locators:
        0 - []
                files:
                - info
                - trajectory

    :param prefix: sets the path where this tree will sit
    :type prefix: str
    """
    trunk_ds = data_series.simulation_trunk(prefix)
    trunk_ds.add_data_files({
        FileAttributeName.INFO: data_files.information(
            _FilePrefix.RUN, function=info_objects.simulation),
        FileAttributeName.TRAJ: data_files.trajectory(_FilePrefix.TRAJ)})
    return (trunk_ds,)


def tomogram(prefix):
    """ construct the tomogram output tree (1 layer)

    locators:
        0 - []
                files:
                - info
                - points
                - curves
                - wigner
                - wigner_meta
                - ratio

    :param prefix: sets the path where this tree will sit
    :type prefix: str
    """
    trunk_ds = data_series.tomogram_trunk(prefix)
    trunk_ds.add_data_files({
        FileAttributeName.INFO: data_files.information(
            _FilePrefix.RUN, function=info_objects.tomogram),
        FileAttributeName.POINTS: data_files.tomogram(_FilePrefix.POINTS),
        FileAttributeName.CURVES: data_files.tomogram(_FilePrefix.CURVES),
        FileAttributeName.WIGNER: data_files.wigner_grid(_FilePrefix.WIGNER),
        FileAttributeName.WIGNER_META: data_files.json_object(
            _FilePrefix.WIGNER),
        FileAttributeName.RATIO: data_files.ratio(_FilePrefix.RATIO)})
    return (trunk_ds,)


def reconstruction(prefix):
    """ construct the reconstruction output tree (1 layer)

    locators:
        0 - []
                files:
                - report

    :param prefix: sets the path where this tree will sit
    :type prefix: str
    """
    trunk_ds = data_series.reconstruction_trunk(prefix)
    trunk_ds.add_data_files({
        FileAttributeName.REPORT: data_files.json_object(_FilePrefix.REC)})
    return (trunk_ds,)


def roundtrip(prefix):
    """ construct the round-trip output tree (3 layers)

    locators:
        0 - []
                files:
                - info
                - estimate
                - errors
        1 - []
                (no files)
        2 - [noise tag, seed]
                files:
                - estimate
                - points

    :param prefix: sets the path where this tree will sit
    :type prefix: str
    """
    trunk_ds = data_series.roundtrip_trunk(prefix)
    run_trunk_ds = data_series.run_trunk(prefix, root_ds=trunk_ds)
    run_leaf_ds = data_series.run_leaf(prefix, root_ds=run_trunk_ds)

    est_dfile = data_files.json_object(_FilePrefix.EST)
    trunk_ds.add_data_files({
        FileAttributeName.INFO: data_files.information(
            _FilePrefix.RUN, function=info_objects.roundtrip),
        FileAttributeName.ESTIMATE: est_dfile,
        FileAttributeName.ERRORS: data_files.error_table(_FilePrefix.ERR)})
    run_leaf_ds.add_data_files({
        FileAttributeName.ESTIMATE: est_dfile,
        FileAttributeName.POINTS: data_files.tomogram(_FilePrefix.POINTS)})
    return (trunk_ds, run_trunk_ds, run_leaf_ds)
