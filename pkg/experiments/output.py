"""
File emission for experiment results: CSV tables, JSON reports, YAML run
manifests written beside every output file, and plain-text summaries.
"""
import json
import math
from collections import namedtuple
from datetime import datetime, timezone
from enum import Enum

import numpy as np

import qfc
from qfc.utils import expand_path, pretify_dict, save_yaml

RB87_NOTE = ('Rb-87 group velocities v1 = 1.25e4 m/s, v2 = 6.25e3 m/s are '
             'quoted at Omega_ref = 8 Gamma_ref (Gamma_ref = Gamma2) and '
             'G_i = Omega_ref^2 / v_i is held fixed while Omega varies.')

RunManifest = namedtuple(
    'RunManifest', 'command config derived grid tool_version timestamp notes')


def _plain(value):
    """Recursively convert numpy scalars, complex numbers, enums and NaN
    into JSON/YAML friendly values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if hasattr(value, '_asdict'):
        return _plain(value._asdict())
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {'re': _plain(value.real), 'im': _plain(value.imag)}
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if math.isnan(value) else value
    return value


def report_to_dict(report):
    """Plain dict of a report namedtuple; complex amplitudes become
    {re, im} and undefined (NaN) values become None."""
    return _plain(report)


def write_csv(df, fname):
    fname = expand_path(fname)
    fname.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(fname, index=False, float_format='%.17g', lineterminator='\n')
    return fname


def write_json(d, fname):
    fname = expand_path(fname)
    fname.parent.mkdir(parents=True, exist_ok=True)
    with open(fname, 'w') as f:
        json.dump(_plain(d), f, indent=2)
        f.write('\n')
    return fname


def build_manifest(command, config, derived=None, grid=None, notes=None):
    """Record of the inputs behind one output file.

    Arguments:
        command: name of the experiment or subcommand
        config: plain dict of the run configuration (config_snapshot)
        derived: DerivedParams (or dict) of the run, if there is one drive
        grid: TimeGrid (or dict) used for the run
        notes: extra free-text notes

    Returns:
        RunManifest
    """
    all_notes = [RB87_NOTE] + list(notes or [])
    return RunManifest(
        command=command, config=_plain(config),
        derived=None if derived is None else _plain(derived),
        grid=None if grid is None else _plain(grid),
        tool_version=qfc.__version__,
        timestamp=datetime.now(timezone.utc).isoformat(timespec='seconds'),
        notes=all_notes)


def manifest_path(fname):
    fname = expand_path(fname)
    return fname.with_name(fname.name + '.manifest.yaml')


def save_manifest(manifest, fname):
    """Write the manifest beside the output file `fname`."""
    path = manifest_path(fname)
    save_yaml(dict(manifest._asdict()), path)
    return path


def emit_table(df, fname, manifest):
    """CSV table plus its manifest."""
    fname = write_csv(df, fname)
    save_manifest(manifest, fname)
    return fname


def emit_report(d, fname, manifest):
    """JSON report plus its manifest."""
    fname = write_json(d, fname)
    save_manifest(manifest, fname)
    return fname


def write_summary(fname, sections, args_dict=None):
    """Human-readable summary of a run.

    Arguments:
        fname: output text file
        sections: mapping of section title to a dict of values
        args_dict: program arguments, printed first if given

    Returns:
        The summary string
    """
    def _round(x):
        if isinstance(x, (float, np.floating)):
            return '{:.6g}'.format(x)
        if isinstance(x, (complex, np.complexfloating)):
            return '{:.6g}'.format(complex(x))
        return x

    if isinstance(args_dict, dict):
        summary = 'Program arguments:\n'
        summary += pretify_dict(args_dict) + '\n\n'
    else:
        summary = ''
    summary += '\n\n'.join(
        '{0}:\n{1}'.format(title, pretify_dict(
            {key: _round(value) for key, value in values.items()}))
        for title, values in sections.items())
    fname = expand_path(fname)
    fname.parent.mkdir(parents=True, exist_ok=True)
    with open(fname, 'w') as f:
        f.write(summary + '\n')
    return summary
