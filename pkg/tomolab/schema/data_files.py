""" DataFiles
"""
from tomolab import store
import tomolab.data_types
import tomolab.info


def information(file_prefix, function=None):
    """ information DataFile

    :param file_prefix: path to file
    :type file_prefix: str
    :param function: optional information-generator function, for checking the
        function signature against the information object
    :type function: callable
    :return: instance of DataFile class
    :rtype: Datafile
    """
    def writer_(inf_obj):
        if function is not None:
            assert tomolab.info.matches_function_signature(inf_obj, function)
        inf_str = tomolab.data_types.swrite.information(inf_obj)
        return inf_str

    def reader_(inf_str):
        inf_obj = tomolab.data_types.sread.information(inf_str)
        if function is not None:
            assert tomolab.info.matches_function_signature(inf_obj, function)
        return inf_obj

    name = tomolab.data_types.name.information(file_prefix)
    return store.DataFile(name=name, writer_=writer_, reader_=reader_)


def locator(file_prefix, map_dct_, loc_keys):
    """ locator DataFile

    Specifiers are stored in information files according to `map_dct_` and read
    back out according to `loc_keys_`. The file may contain auxiliary
    information, but for the read to work it must contain each locator value.

    :param map_dct_: Maps on the locator list to the values stored in the
        information file, by key.
    :type map_dct_: dict[key: callable]
    :param loc_keys: Keys to the original locator values.
    :type loc_keys: tuple[str]
    """
    def writer_(locs):
        inf_dct = {key: map_(locs) for key, map_ in map_dct_.items()}
        inf_obj = tomolab.info.object_(inf_dct)
        return tomolab.data_types.swrite.information(inf_obj)

    def reader_(inf_str):
        inf_obj = tomolab.data_types.sread.information(inf_str)
        inf_dct = dict(inf_obj)
        return list(map(inf_dct.__getitem__, loc_keys))

    name = tomolab.data_types.name.information(file_prefix)
    return store.DataFile(name=name, writer_=writer_, reader_=reader_)


def json_object(file_prefix):
    """ JSON report DataFile

    :param file_prefix: path to file
    :type file_prefix: str
    :return: instance of DataFile class
    :rtype: Datafile
    """
    name = tomolab.data_types.name.json_object(file_prefix)
    writer_ = tomolab.data_types.swrite.json_object
    reader_ = tomolab.data_types.sread.json_object
    return store.DataFile(name=name, writer_=writer_, reader_=reader_)


def trajectory(file_prefix):
    """ cumulant trajectory DataFile

    :param file_prefix: path to file
    :type file_prefix: str
    :return: instance of DataFile class
    :rtype: Datafile
    """
    name = tomolab.data_types.name.table(file_prefix)
    writer_ = tomolab.data_types.swrite.trajectory
    reader_ = tomolab.data_types.sread.trajectory
    return store.DataFile(name=name, writer_=writer_, reader_=reader_)


def tomogram(file_prefix):
    """ tomogram points DataFile

    :param file_prefix: path to file
    :type file_prefix: str
    :return: instance of DataFile class
    :rtype: Datafile
    """
    name = tomolab.data_types.name.table(file_prefix)
    writer_ = tomolab.data_types.swrite.tomogram
    reader_ = tomolab.data_types.sread.tomogram
    return store.DataFile(name=name, writer_=writer_, reader_=reader_)


def wigner_grid(file_prefix):
    """ Wigner grid DataFile

    :param file_prefix: path to file
    :type file_prefix: str
    :return: instance of DataFile class
    :rtype: Datafile
    """
    name = tomolab.data_types.name.table(file_prefix)
    writer_ = tomolab.data_types.swrite.wigner_grid
    reader_ = tomolab.data_types.sread.wigner_grid
    return store.DataFile(name=name, writer_=writer_, reader_=reader_)


def ratio(file_prefix):
    """ spread-equation ratio DataFile

    :param file_prefix: path to file
    :type file_prefix: str
    :return: instance of DataFile class
    :rtype: Datafile
    """
    name = tomolab.data_types.name.table(file_prefix)
    writer_ = tomolab.data_types.swrite.ratio
    reader_ = tomolab.data_types.sread.ratio
    return store.DataFile(name=name, writer_=writer_, reader_=reader_)


def error_table(file_prefix):
    """ coefficient error table DataFile

    :param file_prefix: path to file
    :type file_prefix: str
    :return: instance of DataFile class
    :rtype: Datafile
    """
    name = tomolab.data_types.name.table(file_prefix)
    writer_ = tomolab.data_types.swrite.error_table
    reader_ = tomolab.data_types.sread.error_table
    return store.DataFile(name=name, writer_=writer_, reader_=reader_)
