"""
Run configuration read from a YAML file.

The file holds sections (medium, drive, pulse, grid, oracle) whose leaves are
flattened into dotted keys such as medium.G1 or pulse.T; dotted keys may also
be written flat at the top level. Unknown keys are rejected so that typos do
not silently fall back to defaults.
"""
from collections import namedtuple

import yaml

from qfc.errors import ConfigurationError
from qfc.medium import rb87_preset
from qfc.oracle import OracleSettings
from qfc.pulses import PulseSpec
from qfc.utils import load_yaml

MEDIUM_KEYS = {
    'medium.G1': 'G1',
    'medium.G2': 'G2',
    'medium.L': 'L',
    'medium.Gamma1': 'Gamma1',
    'medium.Gamma2': 'Gamma2',
    'medium.lambda1': 'lambda1',
    'medium.lambda2': 'lambda2',
    'medium.density': 'atom_density',
    'medium.Gamma_ref': 'Gamma_ref',
}
PULSE_KEYS = {
    'pulse.shape': 'shape',
    'pulse.T': 'T',
    'pulse.separation': 'separation',
    'pulse.a': 'a',
    'pulse.b': 'b',
    'pulse.tau': 'tau',
}
GRID_KEYS = {
    'grid.n_points': 'n_points',
    'grid.t_min': 't_min',
    'grid.t_max': 't_max',
    'grid.quadrature_nodes': 'quadrature_nodes',
    'grid.z_planes': 'z_planes',
}
ORACLE_KEYS = {
    'oracle.n_z_steps': 'n_z_steps',
    'oracle.interpolation': 'interpolation',
}
DRIVE_KEYS = {'drive.Omega_over_Gamma': 'omega_over_gamma'}
KNOWN_KEYS = {**MEDIUM_KEYS, **PULSE_KEYS, **GRID_KEYS, **ORACLE_KEYS,
              **DRIVE_KEYS}

GridSettings = namedtuple(
    'GridSettings', 'n_points t_min t_max quadrature_nodes z_planes',
    defaults=(4096, None, None, 256, 20))

RunConfig = namedtuple(
    'RunConfig', 'medium omega_over_gamma pulse grid oracle')


def flatten(d, prefix=''):
    """Flatten nested mappings into a dict keyed by dotted paths."""
    flat = {}
    for key, value in d.items():
        dotted = '{0}.{1}'.format(prefix, key) if prefix else str(key)
        if isinstance(value, dict):
            flat.update(flatten(value, dotted))
        else:
            flat[dotted] = value
    return flat


def _as_complex(key, value):
    try:
        return complex(str(value).replace(' ', ''))
    except ValueError:
        raise ConfigurationError(
            '{0} must be a number or complex literal such as 0.5+0.5j (got '
            '{1!r})'.format(key, value))


def _as_float(key, value):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigurationError(
            '{0} must be a number (got {1!r})'.format(key, value))


def _as_int(key, value):
    number = _as_float(key, value)
    if not number.is_integer():
        raise ConfigurationError(
            '{0} must be a whole number (got {1!r})'.format(key, value))
    return int(number)


def config_from_dict(d):
    """Build a RunConfig from a (possibly nested) mapping."""
    if d is None:
        d = {}
    if not isinstance(d, dict):
        raise ConfigurationError(
            'Config must be a mapping of sections, got {}'.format(
                type(d).__name__))
    flat = flatten(d)
    unknown = sorted(set(flat) - set(KNOWN_KEYS))
    if unknown:
        raise ConfigurationError(
            'Unknown config keys: {0}. Accepted keys are: {1}'.format(
                ', '.join(unknown), ', '.join(sorted(KNOWN_KEYS))))

    medium = rb87_preset()._replace(**{
        field: _as_float(key, flat[key]) for key, field in MEDIUM_KEYS.items()
        if key in flat})

    pulse_kwargs = {}
    for key, field in PULSE_KEYS.items():
        if key not in flat:
            continue
        if field == 'shape':
            pulse_kwargs[field] = str(flat[key])
        elif field in ('a', 'b'):
            pulse_kwargs[field] = _as_complex(key, flat[key])
        else:
            pulse_kwargs[field] = _as_float(key, flat[key])
    pulse = PulseSpec(**pulse_kwargs)

    grid_kwargs = {}
    for key, field in GRID_KEYS.items():
        if key not in flat:
            continue
        if field in ('n_points', 'quadrature_nodes', 'z_planes'):
            grid_kwargs[field] = _as_int(key, flat[key])
        else:
            grid_kwargs[field] = _as_float(key, flat[key])
    grid = GridSettings(**grid_kwargs)

    oracle_kwargs = {}
    if 'oracle.n_z_steps' in flat:
        oracle_kwargs['n_z_steps'] = _as_int(
            'oracle.n_z_steps', flat['oracle.n_z_steps'])
    if 'oracle.interpolation' in flat:
        oracle_kwargs['interpolation'] = str(flat['oracle.interpolation'])
    oracle = OracleSettings(**oracle_kwargs)

    omega_over_gamma = _as_float(
        'drive.Omega_over_Gamma', flat.get('drive.Omega_over_Gamma', 8.0))
    return RunConfig(medium=medium, omega_over_gamma=omega_over_gamma,
                     pulse=pulse, grid=grid, oracle=oracle)


def load_config(fname=None):
    """Read a RunConfig from a YAML file; None gives the Rb-87 defaults."""
    if fname is None:
        return config_from_dict({})
    try:
        d = load_yaml(fname)
    except OSError as e:
        raise ConfigurationError(
            'Cannot read config file {0}: {1}'.format(fname, e.strerror))
    except yaml.YAMLError as e:
        raise ConfigurationError(
            'Config file {0} is not valid YAML: {1}'.format(fname, e))
    return config_from_dict(d)


def config_snapshot(run_config):
    """Plain-dict view of a RunConfig for manifests."""
    pulse = {key: (str(value) if isinstance(value, complex) else value)
             for key, value in run_config.pulse._asdict().items()}
    return {
        'medium': {key: float(value) for key, value in
                   run_config.medium._asdict().items()},
        'drive': {'Omega_over_Gamma': run_config.omega_over_gamma},
        'pulse': pulse,
        'grid': dict(run_config.grid._asdict()),
        'oracle': dict(run_config.oracle._asdict()),
    }
