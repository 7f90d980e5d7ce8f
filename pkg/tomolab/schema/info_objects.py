""" Info objects
"""

import numbers
import tomolab.info


class RunStatus():
    """ run statuses """
    SUCCESS = "succeeded"
    FAILURE = "failed"


def simulation(physical, coefficients, initial_state, method, dt, ntimes):
    """ simulation run information

    :param physical: physical parameters, as a dictionary
    :type physical: dict
    :param coefficients: master-equation coefficients, as a dictionary
    :type coefficients: dict
    :param initial_state: cumulants at t = 0, as a dictionary
    :type initial_state: dict
    :param method: evolution method
    :type method: str
    :param dt: oracle step
    :type dt: float
    :param ntimes: number of trajectory rows
    :type ntimes: int
    """
    assert isinstance(ntimes, numbers.Integral)
    inf_obj = tomolab.info.Info(
        physical=tomolab.info.object_(physical),
        coefficients=tomolab.info.object_(coefficients),
        initial_state=tomolab.info.object_(initial_state),
        method=method,
        dt=dt,
        ntimes=ntimes,
    )
    assert tomolab.info.matches_function_signature(inf_obj, simulation)
    return inf_obj


def tomogram(physical, state, rescaling, noise, seed, npoints):
    """ tomogram run information

    :param state: the measured state, rescaled, as a dictionary
    :type state: dict
    :param rescaling: the phase-space rescaling, as a dictionary
    :type rescaling: dict
    :param noise: noise tag
    :type noise: str
    :param seed: random seed
    :type seed: int
    :param npoints: number of tomogram points written
    :type npoints: int
    """
    assert isinstance(seed, numbers.Integral)
    assert isinstance(npoints, numbers.Integral)
    inf_obj = tomolab.info.Info(
        physical=tomolab.info.object_(physical),
        state=tomolab.info.object_(state),
        rescaling=tomolab.info.object_(rescaling),
        noise=noise,
        seed=seed,
        npoints=npoints,
    )
    assert tomolab.info.matches_function_signature(inf_obj, tomogram)
    return inf_obj


def roundtrip(physical, coefficients, initial_state, t, mode, noise, seeds,
              status):
    """ round-trip run information

    :param mode: estimation mode
    :type mode: str
    :param noise: noise tags, in sweep order
    :type noise: list[str]
    :param seeds: seeds, in sweep order
    :type seeds: list[int]
    :param status: a `RunStatus` value for the headline run
    :type status: str
    """
    assert all(isinstance(seed, numbers.Integral) for seed in seeds)
    assert status in (RunStatus.SUCCESS, RunStatus.FAILURE), (
        f'{status} is not a run status'
    )
    inf_obj = tomolab.info.Info(
        physical=tomolab.info.object_(physical),
        coefficients=tomolab.info.object_(coefficients),
        initial_state=tomolab.info.object_(initial_state),
        t=t,
        mode=mode,
        noise=list(noise),
        seeds=list(seeds),
        status=status,
    )
    assert tomolab.info.matches_function_signature(inf_obj, roundtrip)
    return inf_obj
