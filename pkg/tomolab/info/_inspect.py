""" function signature helpers
"""

from inspect import signature as _signature


def function_keys(function):
    """ the names of a function's positional-or-keyword parameters

    :rtype: frozenset[str]
    """
    params = _signature(function).parameters.values()
    return frozenset(param.name for param in params
                     if param.kind == param.POSITIONAL_OR_KEYWORD)


__all__ = ['function_keys']
