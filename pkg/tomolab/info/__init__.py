""" module for YAML-style run information
"""
from tomolab.info._info import object_
from tomolab.info._info import string
from tomolab.info._info import dict_
from tomolab.info._info import from_string
from tomolab.info._info import matches_function_signature
from tomolab.info._info import Info

__all__ = [
    'object_',
    'string',
    'dict_',
    'from_string',
    'matches_function_signature',
    'Info',
]
