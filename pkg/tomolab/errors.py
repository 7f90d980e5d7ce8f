""" exception hierarchy

Each class carries the exit code the command-line front end returns for it.
"""


class TomolabError(Exception):
    """ base class for all tomolab errors """
    exit_code = 1


class DomainError(TomolabError, ValueError):
    """ an argument violates the invariants of a domain type """
    exit_code = 2


class ConfigError(TomolabError):
    """ the run configuration cannot be read or is ill-formed """
    exit_code = 2


class PhysicsError(TomolabError, ValueError):
    """ a physical precondition does not hold

    (closed form requested at zero frequency, non-contracting dynamics,
    complete-positivity violation, unobservable friction, ...)
    """
    exit_code = 3


class ReconstructionError(TomolabError):
    """ the cumulants could not be recovered from the tomogram points """
    exit_code = 4

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = {} if payload is None else dict(payload)


class InconsistentDataError(ReconstructionError, ValueError):
    """ the measured points cannot come from a Gaussian state """


class AmbiguousSignError(ReconstructionError):
    """ both signs of the mean reproduce the measured points equally well """


class EstimationError(ReconstructionError):
    """ the reconstructed cumulants are inconsistent with the model """
