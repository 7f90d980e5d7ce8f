""" test tomolab.fs
"""

import os
import tempfile
import numpy
import tomolab.fs
import tomolab.schema

PREFIX = tempfile.mkdtemp()
print(PREFIX)


def test__simulation():
    """ test tomolab.fs.simulation
    """
    prefix = os.path.join(PREFIX, 'simulation')
    os.mkdir(prefix)

    sim_fs = tomolab.fs.simulation(prefix)
    assert not sim_fs[-1].exists()
    sim_fs[-1].create()
    assert sim_fs[-1].exists()
    assert sim_fs[-1].path() == os.path.join(prefix, 'SIM')

    ref_inf_obj = tomolab.schema.info_objects.simulation(
        physical={'m': 1., 'omega': 1., 'delta': 0.3, 'hbar': 1.},
        coefficients={'lambda': 0.5, 'd_qq': 0.6, 'd_pp': 0.8, 'd_qp': 0.1},
        initial_state={'mean_q': 3., 'mean_p': 0., 'var_q': 1., 'var_p': 1.,
                       'cov_qp': 0.},
        method='closed_form', dt=1e-4, ntimes=2)
    sim_fs[-1].file.info.write(ref_inf_obj)
    assert sim_fs[-1].file.info.read() == ref_inf_obj

    ref_rows = [(0., 3., 0., 1., 1., 0.), (1., 1.2, -1.5, 0.9, 1.1, -0.2)]
    sim_fs[-1].file.trajectory.write(ref_rows)
    assert numpy.allclose(sim_fs[-1].file.trajectory.read(), ref_rows)
    assert os.path.isfile(os.path.join(prefix, 'SIM', 'trajectory.csv'))


def test__tomogram():
    """ test tomolab.fs.tomogram
    """
    prefix = os.path.join(PREFIX, 'tomogram')
    os.mkdir(prefix)

    tomo_fs = tomolab.fs.tomogram(prefix)
    tomo_fs[-1].create()

    tomo_fs[-1].file.points.write([(0., 1., 0., 0.2, 0.)])
    tomo_fs[-1].file.wigner_meta.write({'peak': 0.2})
    assert tomo_fs[-1].file.wigner_meta.read() == {'peak': 0.2}
    assert sorted(os.listdir(tomo_fs[-1].path())) == [
        'points.csv', 'wigner.json']


def test__roundtrip():
    """ test tomolab.fs.roundtrip
    """
    prefix = os.path.join(PREFIX, 'roundtrip')
    os.mkdir(prefix)

    rt_fs = tomolab.fs.roundtrip(prefix)
    assert len(rt_fs) == 3

    locs_lst = [['exact', 0], ['additive_1.000e-02', 0],
                ['additive_1.000e-02', 1]]
    for locs in locs_lst:
        assert not rt_fs[-1].exists(locs)
        rt_fs[-1].create(locs)
        assert rt_fs[-1].exists(locs)
        rt_fs[-1].file.estimate.write({'lambda': 0.5, 'seed': locs[1]}, locs)

    assert rt_fs[0].exists()
    assert rt_fs[-1].path(locs_lst[-1]) == os.path.join(
        prefix, 'RT', 'RUN', 'additive_1.000e-02', '1')
    assert sorted(rt_fs[-1].existing()) == sorted(locs_lst)
    assert rt_fs[-1].file.estimate.read(locs_lst[-1])['seed'] == 1

    # the trunk estimate is a separate file
    rt_fs[0].file.estimate.write({'lambda': 0.4})
    assert rt_fs[0].file.estimate.read() == {'lambda': 0.4}
