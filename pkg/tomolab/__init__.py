""" tomolab: damped-oscillator master-equation coefficients from a few
tomogram points
"""

from tomolab import errors
from tomolab import io_
from tomolab import info
from tomolab import model
from tomolab import evolution
from tomolab import tomography
from tomolab import reconstruction
from tomolab import inversion
from tomolab import store
from tomolab import data_types
from tomolab import schema
from tomolab import fs
from tomolab import config
from tomolab import pipeline
from tomolab.model import PhysicalParams
from tomolab.model import MasterEqCoefficients
from tomolab.model import LindbladCoefficients
from tomolab.model import CumulantState
from tomolab.errors import TomolabError


__all__ = [
    'errors',
    'io_',
    'info',
    'model',
    'evolution',
    'tomography',
    'reconstruction',
    'inversion',
    'store',
    'data_types',
    'schema',
    'fs',
    'config',
    'pipeline',
    'PhysicalParams',
    'MasterEqCoefficients',
    'LindbladCoefficients',
    'CumulantState',
    'TomolabError',
]
