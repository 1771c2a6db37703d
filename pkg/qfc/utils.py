"""Path, yaml and timing helpers shared by the drivers and experiments."""
import time
from pathlib import Path

import yaml


def expand_path(path, relative_to=None):
    """Expand ~ and make absolute, optionally relative to another path."""
    path = Path(path).expanduser()
    if relative_to is not None and not path.is_absolute():
        path = Path(relative_to).expanduser() / path
    return path.resolve()


def mkdir(*paths):
    """Join paths, create the resulting directory (with parents), return it."""
    path = expand_path(Path(*paths))
    path.mkdir(parents=True, exist_ok=True)
    return path


def load_yaml(fname):
    with open(expand_path(fname), 'r') as f:
        return yaml.safe_load(f)


def save_yaml(d, fname):
    fname = expand_path(fname)
    fname.parent.mkdir(parents=True, exist_ok=True)
    with open(fname, 'w') as f:
        yaml.safe_dump(d, f, sort_keys=False)


def pretify_dict(d, padding=5):
    """Format a dict as aligned 'key: value' lines."""
    if not len(d):
        return ''
    max_key_len = max(len(str(key)) for key in d.keys())
    lines = []
    for key, value in d.items():
        lines.append('{0}:{1}{2}'.format(
            key, ' ' * (max_key_len - len(str(key)) + padding), value))
    return '\n'.join(lines)


def format_time(t):
    """Returns string containing time in hh:mm:ss.s format.

    Arguments:
        t: time in seconds

    Returns:
        String containing formatted time
    """
    h = int(t // 3600)
    m = int((t - 3600 * h) // 60)
    s = t - 3600 * h - 60 * m
    return '{0:02d}:{1:02d}:{2:04.1f}'.format(h, m, s)


class Timer:
    """Simple context manager timer: `with Timer() as t: ...; t.interval`."""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *args):
        self.end = time.perf_counter()
        self.interval = self.end - self.start
