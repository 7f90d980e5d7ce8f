""" defines the output store model

A DataFile knows how to name, write and read one kind of output; a DataSeries
maps locator values to a directory (or a series of directories) holding
DataFiles.
"""
import os
import glob
import types
import shutil
import tomolab.io_


class DataFile():
    """ file manager for a given datatype

        :param name: the file name
        :type name: str
        :param writer_: writes data to a string
        :type writer_: callable[object->str]
        :param reader_: reads data from a string
        :type reader_: callable[str->object]
    """
    def __init__(self, name, writer_=(lambda _: _), reader_=(lambda _: _)):
        self.name = name
        self.writer_ = writer_
        self.reader_ = reader_

    def path(self, dir_pth):
        """ file path

        :param dir_pth: directory path
        :type dir_pth: str
        :rtype: str
        """
        return os.path.join(dir_pth, self.name)

    def exists(self, dir_pth):
        """ does this file exist?

        :param dir_pth: directory path
        :type dir_pth: str
        :rtype: bool
        """
        return os.path.isfile(self.path(dir_pth))

    def write(self, val, dir_pth):
        """ write data to this file

        :param val: value to be written
        :param dir_pth: directory path
        :type dir_pth: str
        """
        assert os.path.isdir(dir_pth), (
            f'No directory exists: {dir_pth}'
        )
        val_str = self.writer_(val)
        tomolab.io_.write_file(self.path(dir_pth), val_str)

    def read(self, dir_pth):
        """ read data from this file

        :param dir_pth: directory path
        :type dir_pth: str
        """
        assert self.exists(dir_pth), (
            f'Requested file {self} does not exist in {dir_pth}'
        )
        val_str = tomolab.io_.read_file(self.path(dir_pth))
        return self.reader_(val_str)

    def __repr__(self):
        return f"DataFile('{self.name}')"


class DataSeries():
    """ directory manager mapping locator values to a directory series

        :param prefix: directory the series lives in (ignored when there is
            a root series, whose path is used instead)
        :param map_: maps `nlocs` locators to a relative path of `depth`
            directories
        :param loc_dfile: DataFile recording the locators of each directory,
            needed to list existing locators
        :param root_ds: the DataSeries this one is nested in
    """

    def __init__(self, prefix, map_, nlocs, depth, loc_dfile=None,
                 root_ds=None, removable=False):
        self.prefix = os.path.abspath(prefix)
        self.map_ = map_
        self.nlocs = nlocs
        self.depth = depth
        self.loc_dfile = loc_dfile
        self.root = root_ds
        self.removable = removable
        self.file = types.SimpleNamespace()

    def add_data_files(self, dfile_dct):
        """ attach DataFiles to the series, by attribute name
        """
        for name, dfile in dict(dfile_dct or {}).items():
            assert isinstance(name, str)
            assert isinstance(dfile, DataFile)
            setattr(self.file, name, DataSeriesFile(dseries=self, dfile=dfile))

    def path(self, locs=()):
        """ absolute directory path
        """
        locs = list(locs)
        if self.root is None:
            prefix = self.prefix
        else:
            prefix = self.root.path(self._root_locators(locs))
            locs = self._self_locators(locs)
        assert len(locs) == self.nlocs, (
            f'{len(locs)} locators given, {self.nlocs} expected'
        )
        pth = self.map_(locs)
        assert _path_is_relative(pth)
        assert _path_has_depth(pth, self.depth)
        return os.path.join(prefix, pth)

    def exists(self, locs=()):
        """ does this directory exist?
        """
        return os.path.isdir(self.path(locs))

    def create(self, locs=()):
        """ create the directory, and its root directories, if missing
        """
        locs = list(locs)
        if self.root is not None:
            self.root.create(self._root_locators(locs))

        pth = self.path(locs)
        if not os.path.isdir(pth):
            os.makedirs(pth, exist_ok=True)
        if self.loc_dfile is not None and not self.loc_dfile.exists(pth):
            self.loc_dfile.write(self._self_locators(locs), pth)

    def remove(self, locs=()):
        """ remove this directory (only if `removable` is set)
        """
        if not self.removable:
            raise ValueError("This data series is not removable")
        if self.exists(locs):
            shutil.rmtree(self.path(locs))

    def existing(self, root_locs=()):
        """ locators of the existing directories under `root_locs`, sorted
        by path

        Each entry is the full locator list, `root_locs` included.
        """
        if self.nlocs == 0:
            return ([],) if self.exists(root_locs) else ()
        if self.loc_dfile is None:
            raise ValueError("Listing locators needs a locator DataFile")

        root_locs = list(root_locs)
        assert len(root_locs) == self.root_locator_count(), (
            f'{len(root_locs)} root locators given, '
            f'{self.root_locator_count()} expected'
        )
        prefix = (self.prefix if self.root is None
                  else self.root.path(root_locs))
        pattern = os.path.join(prefix, *('*' * self.depth))
        dir_pths = sorted(pth for pth in glob.glob(pattern)
                          if os.path.isdir(pth) and self.loc_dfile.exists(pth))
        return tuple(root_locs + list(self.loc_dfile.read(pth))
                     for pth in dir_pths)

    def root_locator_count(self):
        """ count the number of root locator values recursively
        """
        if self.root is None:
            return 0
        return self.root.nlocs + self.root.root_locator_count()

    def _self_locators(self, locs):
        assert len(locs) >= self.nlocs
        return list(locs[len(locs) - self.nlocs:])

    def _root_locators(self, locs):
        assert len(locs) >= self.nlocs, (
            f'{len(locs)} < {self.nlocs}'
        )
        return list(locs[:len(locs) - self.nlocs])

    def __repr__(self):
        return f"DataSeries('{self.prefix}', {self.map_.__name__})"


class DataSeriesFile():
    """ file manager mapping locator values to files in a directory series
    """

    def __init__(self, dseries, dfile):
        self.dir = dseries
        self.file = dfile

    def path(self, locs=()):
        """ absolute file path
        """
        return self.file.path(self.dir.path(locs))

    def exists(self, locs=()):
        """ does this file exist?
        """
        return self.file.exists(self.dir.path(locs))

    def write(self, val, locs=()):
        """ write data to this file
        """
        self.file.write(val, self.dir.path(locs))

    def read(self, locs=()):
        """ read data from this file
        """
        return self.file.read(self.dir.path(locs))

    def __repr__(self):
        return (
            "DataSeriesFile("
            f"{self.dir.prefix}, {self.dir.map_.__name__}, {self.file.name}"
            ")"
        )


def _path_is_relative(pth):
    return os.path.relpath(pth) == pth


def _path_has_depth(pth, depth):
    return len(_path_parts(pth)) == depth


def _path_parts(pth):
    return [part for part in os.path.normpath(pth).split(os.sep) if part]
