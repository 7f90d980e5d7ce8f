""" read/write tomolab data in its on-disk text formats
"""
from tomolab.data_types import name
from tomolab.data_types import swrite
from tomolab.data_types import sread

__all__ = [
    'name',
    'swrite',
    'sread',
]
