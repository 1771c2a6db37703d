"""
Sampled temporal envelopes of single-photon wave packets.

Envelopes are complex samples on a uniform time grid, normalised so that the
photon number (c/L) * int |f(t)|^2 dt equals one for a fresh input pulse.
"""
from collections import namedtuple

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid
from scipy.interpolate import CubicSpline

from qfc.errors import ParameterDomainError

# Relative magnitude below which an envelope counts as having left the grid
EDGE_DECAY = 1e-8
# Half-width, in units of T, that a Gaussian needs inside the grid
GAUSSIAN_MARGIN = 4.0
# Minimum bin spacing of a time-bin qubit, in units of T
MIN_BIN_SPACING = 5.0

CSV_COLUMNS = ['t_s', 're_f', 'im_f']


class TimeGrid(namedtuple('TimeGrid', 't_min t_max n_points')):
    """Uniform time grid with n_points samples from t_min to t_max inclusive."""
    __slots__ = ()

    def __new__(cls, t_min, t_max, n_points):
        n_points = int(n_points)
        if n_points < 2:
            raise ParameterDomainError(
                'TimeGrid needs at least 2 points (got {})'.format(n_points))
        if not t_max > t_min:
            raise ParameterDomainError(
                'TimeGrid needs t_max > t_min (got {0}, {1})'.format(
                    t_min, t_max))
        return super().__new__(cls, float(t_min), float(t_max), n_points)

    @property
    def dt(self):
        return (self.t_max - self.t_min) / (self.n_points - 1)

    @property
    def times(self):
        return np.linspace(self.t_min, self.t_max, self.n_points)

    def contains(self, t_lo, t_hi):
        return self.t_min <= t_lo and t_hi <= self.t_max


class PulseProfile(namedtuple('PulseProfile', 'grid samples norm_L_over_c')):
    """Complex envelope f(t) on a TimeGrid.

    Fields:
        grid: TimeGrid
        samples: complex ndarray of shape (grid.n_points,)
        norm_L_over_c: the constant L/c of the photon-number normalisation (s)
    """
    __slots__ = ()

    def __new__(cls, grid, samples, norm_L_over_c):
        samples = np.array(samples, dtype=complex)
        if samples.shape != (grid.n_points,):
            raise ParameterDomainError(
                'Expected {0} samples for grid, got shape {1}'.format(
                    grid.n_points, samples.shape))
        samples.flags.writeable = False
        return super().__new__(cls, grid, samples, float(norm_L_over_c))

    def with_samples(self, samples):
        return PulseProfile(self.grid, samples, self.norm_L_over_c)


PulseSpec = namedtuple(
    'PulseSpec', 'shape T separation a b tau',
    defaults=('gaussian', 20e-9, None, 1.0, 0.0, None))


def envelope_photon_number(samples, grid, norm_L_over_c):
    """(c/L) * int |f|^2 dt by the trapezoid rule."""
    return float(trapezoid(np.abs(samples) ** 2, dx=grid.dt) / norm_L_over_c)


def photon_number(p):
    return envelope_photon_number(p.samples, p.grid, p.norm_L_over_c)


def window_photon_number(p, t_lo, t_hi):
    """Photon number carried inside [t_lo, t_hi]."""
    mask = (p.grid.times >= t_lo) & (p.grid.times <= t_hi)
    if mask.sum() < 2:
        return 0.0
    return float(trapezoid(np.abs(p.samples[mask]) ** 2, dx=p.grid.dt)
                 / p.norm_L_over_c)


def _check_span(grid, t_lo, t_hi, what):
    if not grid.contains(t_lo, t_hi):
        raise ParameterDomainError(
            'Grid [{0:.4g}, {1:.4g}] s is too narrow for {2}: it must span '
            '[{3:.4g}, {4:.4g}] s'.format(
                grid.t_min, grid.t_max, what, t_lo, t_hi))


def _gaussian_samples(T, t0, times):
    return np.exp(-2 * (times - t0) ** 2 / T ** 2)


def gaussian(T, t0, grid, norm_L_over_c):
    """Unit-photon Gaussian C exp(-2 (t - t0)^2 / T^2).

    Arguments:
        T: pulse width (s)
        t0: pulse centre (s)
        grid: TimeGrid spanning at least [t0 - 4T, t0 + 4T]
        norm_L_over_c: L/c of the photon-number normalisation (s)

    Returns:
        PulseProfile with photon number 1
    """
    if T <= 0:
        raise ParameterDomainError('T must be positive (got {})'.format(T))
    _check_span(grid, t0 - GAUSSIAN_MARGIN * T, t0 + GAUSSIAN_MARGIN * T,
                'a Gaussian of width {:.4g} s'.format(T))
    C = np.sqrt(2 * norm_L_over_c / (T * np.sqrt(np.pi)))
    return PulseProfile(
        grid, C * _gaussian_samples(T, t0, grid.times), norm_L_over_c)


def double_hump(T, separation, grid, norm_L_over_c, t0=None):
    """Two equal Gaussians of width T centred at t0 -+ separation / 2.

    t0 defaults to the centre of the grid. The normalisation includes the
    overlap of the two humps.
    """
    if T <= 0 or separation < 0:
        raise ParameterDomainError(
            'Need T > 0 and separation >= 0 (got {0}, {1})'.format(
                T, separation))
    if t0 is None:
        t0 = 0.5 * (grid.t_min + grid.t_max)
    lo, hi = t0 - separation / 2, t0 + separation / 2
    _check_span(grid, lo - GAUSSIAN_MARGIN * T, hi + GAUSSIAN_MARGIN * T,
                'a double-hump pulse')
    overlap = np.exp(-separation ** 2 / T ** 2)
    C = np.sqrt(norm_L_over_c / (T * np.sqrt(np.pi) * (1 + overlap)))
    times = grid.times
    samples = C * (_gaussian_samples(T, lo, times) +
                   _gaussian_samples(T, hi, times))
    return PulseProfile(grid, samples, norm_L_over_c)


def time_bin(a, b, T, tau, grid, norm_L_over_c):
    """Single photon a|early> + b|late> in two Gaussian bins at 0 and tau."""
    if not np.isclose(abs(a) ** 2 + abs(b) ** 2, 1, rtol=0, atol=1e-12):
        raise ParameterDomainError(
            'Time-bin amplitudes must satisfy |a|^2 + |b|^2 = 1 '
            '(got {:.15g})'.format(abs(a) ** 2 + abs(b) ** 2))
    if tau < MIN_BIN_SPACING * T:
        raise ParameterDomainError(
            'Time bins overlap: tau = {0:.4g} s < {1:g} T = {2:.4g} s'.format(
                tau, MIN_BIN_SPACING, MIN_BIN_SPACING * T))
    early = gaussian(T, 0.0, grid, norm_L_over_c)
    late = gaussian(T, tau, grid, norm_L_over_c)
    return early.with_samples(a * early.samples + b * late.samples)


def default_grid(T, max_delay, extra=0.0, n_points=4096):
    """Grid [-6T, extra + max_delay + 8T] holding input, delayed output and
    broadening; extra is the input's own extent beyond t = 0 (bin spacing,
    hump separation)."""
    return TimeGrid(-6 * T, extra + max_delay + 8 * T, n_points)


def build_pulse(spec, grid, norm_L_over_c):
    """Construct the input profile described by a PulseSpec."""
    if spec.shape == 'gaussian':
        return gaussian(spec.T, 0.0, grid, norm_L_over_c)
    if spec.shape == 'double_hump':
        separation = 2 * spec.T if spec.separation is None else spec.separation
        return double_hump(spec.T, separation, grid, norm_L_over_c,
                           t0=separation / 2)
    if spec.shape == 'time_bin':
        tau = 10 * spec.T if spec.tau is None else spec.tau
        return time_bin(spec.a, spec.b, spec.T, tau, grid, norm_L_over_c)
    raise ParameterDomainError(
        'Unknown pulse shape {}; expected one of gaussian, double_hump, '
        'time_bin'.format(spec.shape))


def pulse_extent(spec):
    """How far past t = 0 the input pulse reaches before its trailing
    margin."""
    if spec.shape == 'double_hump':
        return 2 * spec.T if spec.separation is None else spec.separation
    if spec.shape == 'time_bin':
        return 10 * spec.T if spec.tau is None else spec.tau
    return 0.0


def support(samples, grid):
    """Interval where |f| exceeds EDGE_DECAY of its peak, or None if f = 0."""
    magnitude = np.abs(samples)
    peak = magnitude.max()
    if peak == 0:
        return None
    idx = np.nonzero(magnitude > EDGE_DECAY * peak)[0]
    times = grid.times
    return times[idx[0]], times[idx[-1]]


def interpolator(samples, grid):
    """Cubic interpolant of an envelope that evaluates to 0 off the grid."""
    spline = CubicSpline(grid.times, samples, extrapolate=False)

    def evaluate(t):
        values = spline(t)
        return np.where(np.isnan(values), 0, values)

    return evaluate


def shifted(p, delay):
    """Profile delayed by `delay` seconds: f(t - delay)."""
    if delay == 0:
        return p
    return p.with_samples(interpolator(p.samples, p.grid)(
        p.grid.times - delay))


def to_csv(p, fname):
    df = pd.DataFrame({
        't_s': p.grid.times,
        're_f': p.samples.real,
        'im_f': p.samples.imag
    })
    df.to_csv(fname, index=False, float_format='%.17g', lineterminator='\n')


def from_csv(fname, norm_L_over_c):
    """Read a profile written by to_csv (or any uniform t_s, re_f, im_f
    table)."""
    df = pd.read_csv(fname)
    missing = [col for col in CSV_COLUMNS if col not in df.columns]
    if missing:
        raise ParameterDomainError(
            'Pulse CSV {0} is missing columns {1}'.format(fname, missing))
    t = df['t_s'].to_numpy(dtype=float)
    grid = TimeGrid(t[0], t[-1], len(t))
    if not np.allclose(t, grid.times, rtol=0, atol=1e-6 * grid.dt):
        raise ParameterDomainError(
            'Pulse CSV {} is not sampled on a uniform grid'.format(fname))
    samples = df['re_f'].to_numpy() + 1j * df['im_f'].to_numpy()
    return PulseProfile(grid, samples, norm_L_over_c)
