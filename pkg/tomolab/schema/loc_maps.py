""" specifier mappings for naming directories in a DataSeries
"""
import os
import numbers


# Specifier mappings for the single-command layers
def simulation_trunk():
    """ simulation trunk directory name
    """
    return 'SIM'


def tomogram_trunk():
    """ tomogram trunk directory name
    """
    return 'TOMO'


def reconstruction_trunk():
    """ reconstruction trunk directory name
    """
    return 'REC'


# Specifier mappings for the round-trip layers
def roundtrip_trunk():
    """ round-trip trunk directory name
    """
    return 'RT'


def run_trunk():
    """ per-run trunk directory name
    """
    return 'RUN'


def run_leaf(noise_tag, seed):
    """ per-run leaf directory name: one directory per noise model and seed
    """
    assert isinstance(noise_tag, str) and noise_tag, (
        f'noise tag {noise_tag!r} is not a non-empty string'
    )
    assert os.sep not in noise_tag, f'noise tag {noise_tag!r} has a {os.sep}'
    assert isinstance(seed, numbers.Integral) and seed >= 0, (
        f'seed {seed} is not a non-negative integer'
    )
    return os.path.join(noise_tag, str(seed))
