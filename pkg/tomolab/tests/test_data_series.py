""" test tomolab.schema.data_series
"""

import os
import tempfile
import pytest
import tomolab.store
import tomolab.schema


PREFIX = tempfile.mkdtemp()
print(PREFIX)

# create a dummy root DataSeries for testing
ROOT_SPEC_DFILE = tomolab.schema.data_files.locator(
    file_prefix='dir',
    map_dct_={
        'loc1': lambda locs: locs[0],
        'loc2': lambda locs: locs[1],
        'other': lambda locs: 'something else',
    },
    loc_keys=['loc1', 'loc2'],
)

ROOT_LOCS_LST = [
    [1, 'a'],
    [1, 'b'],
    [2, 'a'],
    [2, 'b'],
    [2, 'c'],
]


def root_data_series(prefix):
    """ root DataSeries
    """
    return tomolab.store.DataSeries(
        prefix,
        map_=lambda x: os.path.join(*map(str, x)),
        nlocs=2,
        depth=2,
        loc_dfile=ROOT_SPEC_DFILE,)


@pytest.mark.parametrize('name', ['simulation_trunk', 'tomogram_trunk',
                                  'reconstruction_trunk', 'roundtrip_trunk',
                                  'run_trunk'])
def test__data_series__trunk(name):
    """ test the trunk DataSeries
    """
    prefix = os.path.join(PREFIX, name)
    os.mkdir(prefix)
    ds_fn = getattr(tomolab.schema.data_series, name)

    # without a root directory
    ds_ = ds_fn(prefix)

    assert not ds_.exists()
    ds_.create()
    assert ds_.exists()
    assert ds_.existing() == ([],)

    # with a root directory
    root_ds = root_data_series(prefix)
    ds_ = ds_fn(prefix, root_ds=root_ds)

    for root_locs in ROOT_LOCS_LST:
        locs = root_locs

        assert not ds_.exists(locs)
        ds_.create(locs)
        assert ds_.exists(locs)

    assert sorted(root_ds.existing()) == sorted(ROOT_LOCS_LST)


def test__data_series__run_leaf():
    """ test data_series.run_leaf
    """
    prefix = os.path.join(PREFIX, 'run_leaf')
    os.mkdir(prefix)

    root_ds = root_data_series(prefix)
    ds_ = tomolab.schema.data_series.run_leaf(prefix, root_ds=root_ds)

    branch_locs_lst = [
        ['exact', 0],
        ['additive_1.000e-04', 0],
        ['additive_1.000e-04', 1],
        ['samples_100000', 2 ** 63],
    ]

    for root_locs in ROOT_LOCS_LST:
        for branch_locs in branch_locs_lst:
            locs = root_locs + branch_locs

            assert not ds_.exists(locs)
            ds_.create(locs)
            assert ds_.exists(locs)

    assert sorted(root_ds.existing()) == sorted(ROOT_LOCS_LST)

    for root_locs in ROOT_LOCS_LST:
        assert sorted(ds_.existing(root_locs)) == sorted(
            root_locs + branch_locs for branch_locs in branch_locs_lst)
    with pytest.raises(AssertionError):
        ds_.existing()

    locs = ROOT_LOCS_LST[0] + branch_locs_lst[0]
    ds_.remove(locs)
    assert not ds_.exists(locs)

    with pytest.raises(AssertionError):
        ds_.path(ROOT_LOCS_LST[0] + ['exact', -1])
    with pytest.raises(AssertionError):
        ds_.path(ROOT_LOCS_LST[0] + ['a/b', 0])
