""" test tomolab.config
"""
import os
import json
import tempfile
import numpy
import pytest
from tomolab import config
from tomolab.model import MasterEqCoefficients
from tomolab.tomography import NoiseMode
from tomolab.tomography import TomographyLine
from tomolab.errors import ConfigError

PREFIX = tempfile.mkdtemp()
print(PREFIX)

BASE_DCT = {
    'physical': {'m': 2., 'omega': 0.5},
    'coefficients': {'lambda': 0.5, 'd_qq': 0.6, 'd_pp': 0.8, 'd_qp': 0.1},
    'initial_state': {'mean_q': 3., 'mean_p': 0., 'var_q': 1., 'var_p': 1.,
                      'cov_qp': 0.},
}


def _cfg(**sections):
    cfg_dct = dict(BASE_DCT)
    cfg_dct.update(sections)
    return config.config_from_dict(cfg_dct)


def test__defaults():
    """ test tomolab.config.config_from_dict defaults
    """
    cfg = _cfg()
    params = config.physical_params(cfg)
    assert params.delta == 0. and params.hbar == 1.
    assert config.coefficients(cfg) == MasterEqCoefficients(0.5, 0.6, 0.8,
                                                            0.1)
    assert config.initial_state(cfg).mean_q == 3.
    assert cfg.initial_state.reconstruct is False
    assert cfg.time.method == 'closed_form'
    assert config.measurement_time(cfg) == 1.
    assert numpy.array_equal(config.times(cfg), [1.])
    assert config.noise_models(cfg)[0].mode == NoiseMode.EXACT
    assert config.seeds(cfg) == [0]
    assert config.seeds(cfg, seed=99) == [99]
    assert config.curve_lines(cfg) is None
    assert config.wigner_axes(cfg) is None
    assert config.ratio_points(cfg) == 400
    assert config.output_dir(cfg) == 'tomolab_out'
    assert config.output_dir(cfg, out='elsewhere') == 'elsewhere'
    assert config.output_dir(None) == 'tomolab_out'

    cfg = config.config_from_dict({})
    assert cfg.physical is None
    with pytest.raises(ConfigError):
        config.physical_params(cfg)
    with pytest.raises(ConfigError):
        config.coefficients(cfg)


def test__unknown_keys():
    """ test tomolab.config rejection of unknown sections and keys
    """
    with pytest.raises(ConfigError):
        _cfg(plotting={'dpi': 300})
    with pytest.raises(ConfigError):
        _cfg(time={'t': 1., 'tmax': 2.})
    with pytest.raises(ConfigError):
        _cfg(noise=[1e-3])
    with pytest.raises(ConfigError):
        config.config_from_dict([BASE_DCT])


def test__choices():
    """ test tomolab.config validation of enumerated keys
    """
    for sections in ({'time': {'method': 'euler'}},
                     {'time': {'dt': 0.}},
                     {'time': {'dt': 'small'}},
                     {'tomography': {'sign_hints': 'maybe'}},
                     {'tomography': {'tol_match': -1.}},
                     {'noise': {'mode': 'shot'}},
                     {'estimation': {'mode': 'asymptotic'}},
                     {'estimation': {'lambda_method': 'fit'}},
                     {'output': {'workers': 0}},
                     {'output': {'workers': True}}):
        with pytest.raises(ConfigError):
            _cfg(**sections)


def test__coefficients():
    """ test tomolab.config.coefficients
    """
    lindblad = {'a1': [0.5, 0.], 'a2': [0., 0.], 'b1': [0., 0.5],
                'b2': [0., 0.]}
    cfg_dct = {key: val for key, val in BASE_DCT.items()
               if key != 'coefficients'}
    cfg = config.config_from_dict(dict(cfg_dct, lindblad=lindblad))
    coeffs = config.coefficients(cfg)
    assert numpy.allclose([coeffs.lambda_, *coeffs.diffusion],
                          [-0.25, 0.125, 0.125, 0.])

    with pytest.raises(ConfigError):
        config.config_from_dict(dict(BASE_DCT, lindblad=lindblad))

    cfg = _cfg(coefficients={'lambda': 0.5, 'd_qq': 0.6, 'd_pp': 0.8})
    with pytest.raises(ConfigError):
        config.coefficients(cfg)

    cfg = _cfg(physical={'m': -1., 'omega': 1.})
    with pytest.raises(ConfigError):
        config.physical_params(cfg)

    cfg = _cfg(initial_state=dict(BASE_DCT['initial_state'],
                                  reconstruct='yes'))
    with pytest.raises(ConfigError):
        config.initial_state(cfg)


def test__config_from_string():
    """ test tomolab.config.config_from_string
    """
    cfg = config.config_from_string(json.dumps(
        dict(BASE_DCT, noise={'mode': 'additive', 'sigma': 1e-6})))
    assert config.noise_models(cfg)[0].sigma == 1e-6

    cfg = config.config_from_string(
        'physical: {m: 1.0, omega: 1.0}\n'
        'time: {t: 2.5}\n')
    assert config.physical_params(cfg).omega == 1.
    assert config.measurement_time(cfg) == 2.5

    assert config.config_from_string('').physical is None

    with pytest.raises(ConfigError):
        config.config_from_string('{"physical": {"m": 1.0,')
    with pytest.raises(ConfigError):
        config.config_from_string('- 1\n- 2\n')


def test__load_config():
    """ test tomolab.config.load_config
    """
    cfg_path = os.path.join(PREFIX, 'config.json')
    with open(cfg_path, mode='w', encoding='utf-8') as file_obj:
        json.dump(BASE_DCT, file_obj)
    cfg = config.load_config(cfg_path)
    assert config.physical_params(cfg).m == 2.

    with pytest.raises(ConfigError):
        config.load_config(os.path.join(PREFIX, 'missing.json'))


def test__times():
    """ test tomolab.config.times
    """
    cfg = _cfg(time={'values': [0., 0.5, 3]})
    assert numpy.allclose(config.times(cfg), [0., 0.5, 3.])

    cfg = _cfg(time={'grid': {'start': 0., 'stop': 2., 'num': 5}})
    assert numpy.allclose(config.times(cfg), [0., 0.5, 1., 1.5, 2.])

    for time_dct in ({'values': [0.], 'grid': {'start': 0., 'stop': 1.,
                                               'num': 2}},
                     {'values': []},
                     {'values': [1., 'soon']},
                     {'values': [-1.]},
                     {'grid': {'start': 0., 'stop': 1.}},
                     {'grid': {'start': 0., 'stop': 1., 'num': 0}}):
        with pytest.raises(ConfigError):
            config.times(_cfg(time=time_dct))

    for t in (-1., 'now', float('inf')):
        with pytest.raises(ConfigError):
            config.measurement_time(_cfg(time={'t': t}))


def test__noise_models():
    """ test tomolab.config.noise_models and tomolab.config.seeds
    """
    cfg = _cfg(noise={'mode': 'additive', 'sigmas': [1e-4, 1e-2],
                      'n_seeds': 3})
    assert [noise.tag for noise in config.noise_models(cfg)] == [
        'additive_1.000e-04', 'additive_1.000e-02']
    assert config.seeds(cfg) == [0, 1, 2]
    assert config.seeds(cfg, seed=7) == [7, 1, 2]

    cfg = _cfg(noise={'mode': 'quadrature_samples', 'n': 5000,
                      'seeds': [11, 2 ** 63]})
    noise, = config.noise_models(cfg)
    assert noise.tag == 'samples_5000'
    assert config.seeds(cfg) == [11, 2 ** 63]

    for noise_dct in ({'mode': 'additive', 'sigma': -1.},
                      {'mode': 'additive', 'sigmas': []},
                      {'mode': 'quadrature_samples', 'n': 10},
                      {'mode': 'quadrature_samples', 'bandwidth': 'scott'}):
        with pytest.raises(ConfigError):
            config.noise_models(_cfg(noise=noise_dct))

    for noise_dct in ({'seeds': [-1]}, {'seeds': []}, {'n_seeds': 0}):
        with pytest.raises(ConfigError):
            config.seeds(_cfg(noise=noise_dct))


def test__plot_grids():
    """ test tomolab.config.curve_lines, wigner_axes and ratio_points
    """
    cfg = _cfg(tomography={
        'curves': {'lines': [[1., 0.], [0.5, 0.5]],
                   'grid': {'start': -1., 'stop': 1., 'num': 3}},
        'wigner': {'q': {'start': 0., 'stop': 1., 'num': 2},
                   'p': {'start': -1., 'stop': 1., 'num': 3}},
        'ratio': {'num': 10}})
    lines, xs = config.curve_lines(cfg)
    assert lines == [TomographyLine(1., 0.), TomographyLine(0.5, 0.5)]
    assert numpy.allclose(xs, [-1., 0., 1.])
    qs, ps = config.wigner_axes(cfg)
    assert len(qs) == 2 and len(ps) == 3
    assert config.ratio_points(cfg) == 10

    for tomo_dct in ({'curves': {'lines': [[0., 0.]],
                                 'grid': {'start': 0., 'stop': 1.,
                                          'num': 2}}},
                     {'curves': {'lines': [1., 0.],
                                 'grid': {'start': 0., 'stop': 1.,
                                          'num': 2}}},
                     {'curves': [1., 0.]},
                     {'wigner': {'q': {'start': 0., 'stop': 1., 'num': 2}}},
                     {'ratio': {'num': 1}}):
        cfg = _cfg(tomography=tomo_dct)
        with pytest.raises(ConfigError):
            config.curve_lines(cfg)
            config.wigner_axes(cfg)
            config.ratio_points(cfg)
