""" designs the output file schema for tomolab
"""
from tomolab.schema import data_files
from tomolab.schema import data_series
from tomolab.schema import loc_maps
from tomolab.schema import info_objects
from tomolab.schema.info_objects import RunStatus

__all__ = [
    'data_series',
    'data_files',
    'loc_maps',
    'info_objects',
    'RunStatus',
]
