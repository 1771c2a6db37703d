import pytest
import yaml

from qfc.config import config_from_dict, config_snapshot, flatten, \
    load_config
from qfc.errors import ConfigurationError, ParameterDomainError
from qfc.medium import rb87_preset
from qfc.utils import load_yaml, save_yaml


def test_flatten():
    assert flatten({'medium': {'L': 1, 'G1': 2}, 'pulse.T': 3}) == {
        'medium.L': 1, 'medium.G1': 2, 'pulse.T': 3}


def test_defaults():
    cfg = load_config()
    assert cfg.medium == rb87_preset()
    assert cfg.omega_over_gamma == 8.0
    assert cfg.pulse.shape == 'gaussian'
    assert cfg.pulse.T == pytest.approx(20e-9)
    assert cfg.grid.n_points == 4096
    assert cfg.oracle.n_z_steps == 512


def test_sections_and_dotted_keys():
    cfg = config_from_dict({
        'medium': {'L': 2e-4, 'density': 5e18},
        'drive.Omega_over_Gamma': 12,
        'pulse': {'shape': 'time_bin', 'a': '0.6', 'b': '0+0.8j',
                  'tau': 2e-7},
        'grid': {'n_points': 1024, 'z_planes': 5},
        'oracle': {'interpolation': 'cubic'},
    })
    assert cfg.medium.L == pytest.approx(2e-4)
    assert cfg.medium.atom_density == pytest.approx(5e18)
    assert cfg.medium.G1 == rb87_preset().G1
    assert cfg.omega_over_gamma == 12.0
    assert cfg.pulse.b == 0.8j
    assert cfg.grid.n_points == 1024
    assert cfg.grid.z_planes == 5
    assert cfg.oracle.interpolation == 'cubic'


def test_unknown_keys_are_named():
    with pytest.raises(ConfigurationError) as info:
        config_from_dict({'medium': {'length': 1.0}, 'pulse': {'width': 1}})
    assert 'medium.length' in str(info.value)
    assert 'pulse.width' in str(info.value)


@pytest.mark.parametrize('d', [
    {'medium': {'L': 'long'}},
    {'pulse': {'a': 'one'}},
    ['not', 'a', 'mapping'],
])
def test_bad_values(d):
    with pytest.raises(ConfigurationError):
        config_from_dict(d)


def test_configuration_error_is_value_error():
    assert issubclass(ConfigurationError, ValueError)
    assert issubclass(ParameterDomainError, ValueError)


def test_yaml_file(tmp_path):
    fname = tmp_path / 'run.yaml'
    save_yaml({'drive': {'Omega_over_Gamma': 6}, 'pulse': {'T': 1e-8}},
              fname)
    cfg = load_config(fname)
    assert cfg.omega_over_gamma == 6.0
    assert cfg.pulse.T == pytest.approx(1e-8)


def test_missing_file(tmp_path):
    fname = tmp_path / 'absent.yaml'
    with pytest.raises(ConfigurationError, match='absent.yaml'):
        load_config(fname)


def test_malformed_yaml(tmp_path):
    fname = tmp_path / 'broken.yaml'
    fname.write_text('medium: [1, 2\n')
    with pytest.raises(ConfigurationError, match='not valid YAML'):
        load_config(fname)


@pytest.mark.parametrize('key', ['n_points', 'quadrature_nodes', 'z_planes'])
def test_grid_counts_must_be_whole(key):
    with pytest.raises(ConfigurationError, match=key):
        config_from_dict({'grid': {key: 100.7}})
    assert getattr(config_from_dict({'grid': {key: 128.0}}).grid, key) == 128


def test_oracle_steps_must_be_whole():
    with pytest.raises(ConfigurationError, match='n_z_steps'):
        config_from_dict({'oracle': {'n_z_steps': 64.5}})


def test_empty_yaml_file(tmp_path):
    fname = tmp_path / 'empty.yaml'
    fname.write_text('')
    assert load_config(fname) == load_config()


def test_snapshot_is_plain_yaml(tmp_path):
    cfg = config_from_dict({'pulse': {'shape': 'time_bin', 'b': '0.8j',
                                      'a': 0.6}})
    snapshot = config_snapshot(cfg)
    fname = tmp_path / 'snapshot.yaml'
    save_yaml(snapshot, fname)
    loaded = load_yaml(fname)
    assert loaded['drive']['Omega_over_Gamma'] == 8.0
    assert complex(loaded['pulse']['b']) == 0.8j
    assert config_from_dict({
        'medium': {('density' if k == 'atom_density' else k): v
                   for k, v in loaded['medium'].items()}}).medium == cfg.medium
    assert yaml.safe_load(yaml.safe_dump(snapshot)) == loaded
