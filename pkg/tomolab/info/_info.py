""" implements a class for YAML-style information
"""

import numbers
from types import SimpleNamespace
from collections.abc import Collection as _Collection
import yaml
from tomolab.info._inspect import function_keys as _function_keys


def object_(inf_dct):
    """ create an information object from a (nested) dictionary
    """

    def _cast(obj):
        if isinstance(obj, dict):
            ret = Info(**{str(key): _cast(val) for key, val in obj.items()})
        elif _is_nonstring_sequence(obj):
            ret = _normalized_nonstring_sequence(map(_cast, obj))
        else:
            ret = obj
        return ret

    return _cast(inf_dct)


def dict_(inf_obj):
    """ convert an information object back to a (nested) dictionary
    """

    def _cast(obj):
        if isinstance(obj, Info):
            ret = {key: _cast(val) for key, val in vars(obj).items()
                   if key != '_frozen'}
        elif _is_nonstring_sequence(obj):
            ret = _normalized_nonstring_sequence(map(_cast, obj))
        else:
            ret = obj
        return ret

    return _cast(inf_obj)


def string(inf_obj):
    """ write an information object to a YAML string, keeping key order
    """
    return yaml.safe_dump(dict_(inf_obj), default_flow_style=None,
                          sort_keys=False)


def from_string(inf_str):
    """ read an information object from a YAML (or JSON) string
    """
    return object_(yaml.safe_load(inf_str))


def matches_function_signature(inf_obj, function):
    """ does the information object match this function signature?
    """
    assert isinstance(inf_obj, Info), (
        f'No! {type(inf_obj)} != Info'
    )
    return inf_obj.keys_() == _function_keys(function)


class Info(SimpleNamespace):
    """ information container class, implemented as a frozen namespace

    (values can change, but you can't add keys after initialization)
    """
    _frozen = False

    def __init__(self, **kwargs):
        kwargs = {key: (_normalized_nonstring_sequence(val) if
                        _is_nonstring_sequence(val) else _normalized(val))
                  for key, val in kwargs.items()}
        super().__init__(**kwargs)
        object.__setattr__(self, '_frozen', True)

    def keys_(self):
        """ keys for this instance """
        return frozenset(key for key in vars(self) if key != '_frozen')

    def get_(self, key, default=None):
        """ value for a key, or a default if the key is absent """
        return getattr(self, key, default)

    def __iter__(self):
        """ used by the dict() function for conversion to dictionary """
        yield from dict_(self).items()

    def __eq__(self, other):
        return isinstance(other, Info) and dict_(self) == dict_(other)

    def __repr__(self):
        dct = dict_(self)
        item_str = ', '.join(f"{key}={dct[key]}" for key in sorted(dct))
        return f"Info({item_str})"

    def __setattr__(self, key, value):
        """ prevent adding new keys after the object is frozen """
        if self._frozen and not hasattr(self, key):
            raise TypeError(
                f"'{self.__class__.__name__}'"
                " object does not support item assignment")
        object.__setattr__(self, key, value)


def _normalized(val):
    if isinstance(val, bool):
        return val
    if isinstance(val, numbers.Integral):
        return int(val)
    if isinstance(val, numbers.Real):
        return float(val)
    return val


def _normalized_nonstring_sequence(seq):
    return [_normalized(val) for val in seq]


def _is_nonstring_sequence(obj):
    return (isinstance(obj, _Collection)
            and not isinstance(obj, (dict, str, bytes, bytearray, Info)))
