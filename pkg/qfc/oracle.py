"""
Brute-force integration of the coupled transport equations

    (d/dz + 1/v1 d/dt) E1 = -i beta E2
    (d/dz + 1/v2 d/dt) E2 = -i beta E1

by operator splitting in z: each mode is advected along its own
characteristic and the local coupling is applied as an exact 2x2 rotation.
Used as ground truth for the closed-form propagator.
"""
from collections import namedtuple

import numpy as np
import pandas as pd

from qfc.errors import NumericalFailure, ParameterDomainError
from qfc.propagator import FieldPair, check_inputs
from qfc.pulses import interpolator

MIN_Z_STEPS = 16
INTERPOLATIONS = ('spectral', 'cubic')
SCHEMES = ('strang', 'lie')


class OracleSettings(namedtuple(
        'OracleSettings', 'n_z_steps interpolation scheme',
        defaults=(512, 'spectral', 'strang'))):
    """Step count, advection interpolation ('spectral' FFT phase shift or
    'cubic' spline) and splitting scheme ('strang' second order, 'lie' first
    order)."""
    __slots__ = ()

    def validate(self):
        if int(self.n_z_steps) < MIN_Z_STEPS:
            raise ParameterDomainError(
                'n_z_steps must be >= {0} (got {1})'.format(
                    MIN_Z_STEPS, self.n_z_steps))
        if self.interpolation not in INTERPOLATIONS:
            raise ParameterDomainError(
                'interpolation must be one of {0} (got {1})'.format(
                    INTERPOLATIONS, self.interpolation))
        if self.scheme not in SCHEMES:
            raise ParameterDomainError(
                'scheme must be one of {0} (got {1})'.format(
                    SCHEMES, self.scheme))
        return self


OracleResult = namedtuple('OracleResult', 'fields coarse richardson_error')


class _SpectralAdvection:
    """Advection as a phase ramp on the FFT of the envelope. The state is
    kept in the frequency domain between steps; the coupling rotation is
    linear and pointwise, so it acts identically there."""

    def __init__(self, grid):
        self.omega = 2 * np.pi * np.fft.fftfreq(grid.n_points, d=grid.dt)

    def forward(self, samples):
        return np.fft.fft(samples)

    def backward(self, state):
        return np.fft.ifft(state)

    def advect(self, state, delay):
        return state * np.exp(-1j * self.omega * delay)


class _CubicAdvection:
    """Advection by cubic-spline evaluation at t - delay (zero inflow)."""

    def __init__(self, grid):
        self.grid = grid
        self.times = grid.times

    def forward(self, samples):
        return np.array(samples, dtype=complex)

    def backward(self, state):
        return state

    def advect(self, state, delay):
        return interpolator(state, self.grid)(self.times - delay)


def relative_l2(a, b):
    """||a - b|| / ||b|| over both modes of two FieldPairs."""
    diff = np.concatenate([a.phi1 - b.phi1, a.phi2 - b.phi2])
    ref = np.concatenate([b.phi1, b.phi2])
    norm = np.linalg.norm(ref)
    if norm == 0:
        return float(np.linalg.norm(diff))
    return float(np.linalg.norm(diff) / norm)


def _rotate(s1, s2, angle):
    c, s = np.cos(angle), np.sin(angle)
    return c * s1 - 1j * s * s2, -1j * s * s1 + c * s2


def integrate_pde(f1, f2, z, params, settings=None):
    """Integrate the transport equations from 0 to z by operator splitting.

    Arguments:
        f1, f2: PulseProfiles at z = 0 on a common grid
        z: end plane (m), 0 <= z <= L
        params: DerivedParams
        settings: OracleSettings

    Returns:
        FieldPair at z
    """
    settings = (settings or OracleSettings()).validate()
    check_inputs(f1, f2, z, params)
    n = int(settings.n_z_steps)
    h = z / n
    advection = (_SpectralAdvection if settings.interpolation == 'spectral'
                 else _CubicAdvection)(f1.grid)
    s1, s2 = advection.forward(f1.samples), advection.forward(f2.samples)
    angle = params.beta * h
    for step in range(n):
        if settings.scheme == 'strang':
            s1 = advection.advect(s1, 0.5 * h / params.v1)
            s2 = advection.advect(s2, 0.5 * h / params.v2)
            s1, s2 = _rotate(s1, s2, angle)
            s1 = advection.advect(s1, 0.5 * h / params.v1)
            s2 = advection.advect(s2, 0.5 * h / params.v2)
        else:
            s1 = advection.advect(s1, h / params.v1)
            s2 = advection.advect(s2, h / params.v2)
            s1, s2 = _rotate(s1, s2, angle)
        if not (np.all(np.isfinite(s1)) and np.all(np.isfinite(s2))):
            raise NumericalFailure(
                'Oracle integration became non-finite',
                {'step': step, 'n_z_steps': n,
                 'max_magnitude': float(np.nanmax(np.abs(
                     np.concatenate([s1, s2]))))})
    return FieldPair(z, f1.grid, advection.backward(s1),
                     advection.backward(s2), f1.norm_L_over_c)


def integrate_with_error(f1, f2, z, params, settings=None):
    """integrate_pde plus a companion run at half the step count.

    The Richardson estimate of the fine-run error is
    ||fine - coarse|| / (2^p - 1) with p the order of the scheme.
    """
    settings = (settings or OracleSettings()).validate()
    fine = integrate_pde(f1, f2, z, params, settings)
    coarse_settings = settings._replace(
        n_z_steps=max(int(settings.n_z_steps) // 2, MIN_Z_STEPS))
    coarse = integrate_pde(f1, f2, z, params, coarse_settings)
    order = 2 if settings.scheme == 'strang' else 1
    return OracleResult(
        fields=fine, coarse=coarse,
        richardson_error=relative_l2(coarse, fine) / (2 ** order - 1))


def convergence_study(f1, f2, z, params, step_counts, settings=None):
    """Successive-refinement differences over a doubling sequence of step
    counts.

    Returns:
        DataFrame with columns n_z_steps, l2_difference (relative to the
        previous, coarser run; NaN for the first row) and observed_order
        (log2 ratio of successive differences).
    """
    step_counts = [int(n) for n in step_counts]
    if len(step_counts) < 3:
        raise ParameterDomainError(
            'convergence_study needs at least 3 step counts (got {})'.format(
                len(step_counts)))
    for coarse, fine in zip(step_counts[:-1], step_counts[1:]):
        if fine != 2 * coarse:
            raise ParameterDomainError(
                'Step counts must double successively; {0} -> {1} does '
                'not'.format(coarse, fine))
    settings = settings or OracleSettings()
    results = [integrate_pde(f1, f2, z, params,
                             settings._replace(n_z_steps=n))
               for n in step_counts]
    differences = [np.nan] + [relative_l2(results[i], results[i + 1])
                              for i in range(len(results) - 1)]
    orders = [np.nan, np.nan]
    for i in range(2, len(differences)):
        prev, cur = differences[i - 1], differences[i]
        orders.append(np.log2(prev / cur) if prev > 0 and cur > 0
                      else np.nan)
    return pd.DataFrame({
        'n_z_steps': step_counts,
        'l2_difference': differences,
        'observed_order': orders
    })
