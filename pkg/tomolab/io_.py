""" read and write to files
"""
import os
import tempfile


def read_file(file_path):
    """ read a file as a string

    :param file_path: path of file to be read
    :type file_path: str
    :return: file contents
    :rtype: str
    """
    assert os.path.isfile(file_path), f'No file exists: {file_path}'
    with open(file_path, mode='r', encoding='utf-8') as file_obj:
        file_str = file_obj.read()
    return file_str


def write_file(file_path, string):
    """ write a string to a file

    The string goes to a temporary file in the same directory first, which
    then replaces the target, so readers never see a partial file.

    :param file_path: path of file to be written
    :type file_path: str
    :param string: string to be written
    :type string: str
    """
    dir_path = os.path.dirname(os.path.abspath(file_path))
    fdesc, tmp_path = tempfile.mkstemp(dir=dir_path, prefix='.tmp-')
    try:
        with os.fdopen(fdesc, mode='w', encoding='utf-8',
                       newline='\n') as file_obj:
            file_obj.write(string)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp_path, 0o666 & ~umask)
        os.replace(tmp_path, file_path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
