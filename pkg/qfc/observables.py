"""
Measurable quantities of the converted photon: photon numbers, quantum
efficiency, conservation residuals, qubit amplitudes, pulse delays, shape
fidelity and time-bin amplitude transfer.
"""
from collections import namedtuple

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import minimize_scalar

from qfc.errors import ParameterDomainError
from qfc.propagator import field_along_z, propagate
from qfc.pulses import envelope_photon_number, gaussian, interpolator, \
    photon_number, window_photon_number

# Half-width of a time-bin projection window, in units of T
BIN_HALF_WIDTH = 4.0
# Delay search range of the shape fidelity, in units of T
DELAY_SEARCH = 2.0
DELAY_SCAN_POINTS = 81
# Photon numbers below this are treated as an empty mode
EMPTY_MODE = 1e-12

ConversionReport = namedtuple(
    'ConversionReport',
    'n1_out n2_out qe r1 r2 conservation_residual delay1 delay2 '
    'shape_fidelity')

TimeBinReport = namedtuple('TimeBinReport', 'a_out b_out fidelity leakage')

TimeBinInput = namedtuple('TimeBinInput', 'a b tau T')


def _inner(f, g, grid, norm_L_over_c):
    """(c/L) * int conj(f) g dt."""
    return complex(trapezoid(np.conj(f) * g, dx=grid.dt) / norm_L_over_c)


def quantum_efficiency(input_profile, output):
    """n2(L) / n1(0)."""
    n_in = photon_number(input_profile)
    if n_in <= 0:
        raise ParameterDomainError(
            'Input profile carries no photons; QE is undefined')
    return output.n2 / n_in


def conservation_profile(f1, params, z_samples, f2=None, **kwargs):
    """|n1(z) + n2(z) - n_total(0)| at z_samples evenly spaced planes.

    Returns:
        (ndarray of residuals per plane, maximum residual)
    """
    if z_samples < 2:
        raise ParameterDomainError(
            'Need at least 2 z samples (got {})'.format(z_samples))
    residuals, _ = _residuals_along_z(f1, f2, params, z_samples, **kwargs)
    return residuals, float(residuals.max())


def _residuals_along_z(f1, f2, params, z_samples, **kwargs):
    if f2 is None:
        f2 = f1.with_samples(np.zeros_like(f1.samples))
    total_in = photon_number(f1) + photon_number(f2)
    planes = field_along_z(f1, f2, params, z_samples, **kwargs)
    return np.array([abs(fp.total - total_in) for fp in planes]), planes


def qubit_amplitudes(output):
    """(sqrt(n1), sqrt(n2)): weights of the frequency-entangled
    single-photon state r1|1,0> + r2|0,1>."""
    return np.sqrt(output.n1), np.sqrt(output.n2)


def centroid(envelope, grid):
    weight = np.abs(envelope) ** 2
    norm = trapezoid(weight, dx=grid.dt)
    if norm <= 0:
        raise ParameterDomainError('Centroid of a zero-norm envelope')
    return float(trapezoid(grid.times * weight, dx=grid.dt) / norm)


def rms_width(envelope, grid):
    weight = np.abs(envelope) ** 2
    norm = trapezoid(weight, dx=grid.dt)
    if norm <= 0:
        raise ParameterDomainError('Width of a zero-norm envelope')
    mean = trapezoid(grid.times * weight, dx=grid.dt) / norm
    return float(np.sqrt(
        trapezoid((grid.times - mean) ** 2 * weight, dx=grid.dt) / norm))


def centroid_delay(envelope, reference):
    """First-moment time of an envelope minus that of a reference
    profile."""
    return centroid(envelope, reference.grid) - \
        centroid(reference.samples, reference.grid)


def shape_fidelity(input_profile, output_mode, delay_free=True, T=None):
    """Normalised overlap of an output envelope with the (delayed) input.

    F = |int conj(f(t - t_d)) Phi(t) dt|^2 / (int |f|^2 int |Phi|^2),
    maximised over t_d within +-2T of the centroid delay when delay_free is
    set. A coarse scan picks the best bracket and a bounded Brent search
    refines it.

    Arguments:
        input_profile: PulseProfile f
        output_mode: complex envelope Phi on input_profile.grid
        delay_free: optimise over t_d (otherwise t_d = 0)
        T: width setting the search range; defaults to 2 sqrt(2) times the
            rms width of f (exactly T for a Gaussian exp(-2t^2/T^2))

    Returns:
        fidelity in [0, 1]
    """
    grid = input_profile.grid
    norm_out = trapezoid(np.abs(output_mode) ** 2, dx=grid.dt)
    if norm_out <= 0:
        raise ParameterDomainError('Shape fidelity of a zero-norm output')
    norm_in = trapezoid(np.abs(input_profile.samples) ** 2, dx=grid.dt)
    if norm_in <= 0:
        raise ParameterDomainError('Shape fidelity of a zero-norm input')
    f = interpolator(input_profile.samples, grid)
    times = grid.times

    def fidelity(t_d):
        overlap = trapezoid(np.conj(f(times - t_d)) * output_mode, dx=grid.dt)
        return float(abs(overlap) ** 2 / (norm_in * norm_out))

    if not delay_free:
        return min(fidelity(0.0), 1.0)

    if T is None:
        T = 2 * np.sqrt(2) * rms_width(input_profile.samples, grid)
    t_c = centroid(output_mode, grid) - centroid(input_profile.samples, grid)
    scan = t_c + T * np.linspace(-DELAY_SEARCH, DELAY_SEARCH,
                                 DELAY_SCAN_POINTS)
    values = [fidelity(t_d) for t_d in scan]
    best = int(np.argmax(values))
    step = scan[1] - scan[0]
    lo, hi = (scan[best] - step - t_c) / T, (scan[best] + step - t_c) / T
    result = minimize_scalar(
        lambda u: -fidelity(t_c + u * T), bounds=(lo, hi), method='bounded',
        options={'xatol': 1e-10})
    return min(max(-result.fun, values[best]), 1.0)


def report_along_z(f1, params, z_planes=20, f2=None, **kwargs):
    """Propagate a photon through the medium and collect all observables.

    Arguments:
        f1: input PulseProfile of mode 1
        params: DerivedParams
        z_planes: number of planes on [0, L] for the conservation residual
        f2: optional input of mode 2 (vacuum by default)
        kwargs: passed on to the propagator

    Returns:
        (ConversionReport, list of FieldPairs at z_planes planes on [0, L])
    """
    if z_planes < 2:
        raise ParameterDomainError(
            'Need at least 2 z planes (got {})'.format(z_planes))
    residuals, planes = _residuals_along_z(f1, f2, params, z_planes, **kwargs)
    output = planes[-1]
    n1, n2 = output.n1, output.n2
    r1, r2 = qubit_amplitudes(output)
    delay1 = centroid_delay(output.phi1, f1) if n1 > EMPTY_MODE else np.nan
    delay2 = centroid_delay(output.phi2, f1) if n2 > EMPTY_MODE else np.nan
    fidelity = shape_fidelity(f1, output.phi2) if n2 > EMPTY_MODE else 0.0
    report = ConversionReport(
        n1_out=n1, n2_out=n2, qe=quantum_efficiency(f1, output), r1=r1, r2=r2,
        conservation_residual=float(residuals.max()), delay1=delay1,
        delay2=delay2, shape_fidelity=fidelity)
    return report, planes


def conversion_report(f1, params, z_planes=20, f2=None, **kwargs):
    """report_along_z reduced to the exit plane.

    Returns:
        (ConversionReport, FieldPair at z = L)
    """
    report, planes = report_along_z(f1, params, z_planes, f2, **kwargs)
    return report, planes[-1]


def _reference_mode(T, t0, params, grid, norm_L_over_c, **kwargs):
    """Normalised mode-2 output of a lone bin centred at t0."""
    f = gaussian(T, t0, grid, norm_L_over_c)
    vacuum = f.with_samples(np.zeros_like(f.samples))
    phi = propagate(f, vacuum, params.L, params, **kwargs).phi2
    n = envelope_photon_number(phi, grid, norm_L_over_c)
    if n <= EMPTY_MODE:
        raise ParameterDomainError(
            'No conversion into mode 2 (beta L = {:.4g}); time-bin amplitudes '
            'are undefined'.format(params.betaL))
    return phi / np.sqrt(n)


def timebin_analyze(input_bins, output, params, **kwargs):
    """Project the converted envelope onto the two propagated bin modes.

    Arguments:
        input_bins: TimeBinInput (a, b, tau, T), bins centred at 0 and tau
        output: FieldPair at z = L produced from the time-bin input
        params: DerivedParams used for the propagation
        kwargs: passed on to the propagator for the reference modes

    Returns:
        TimeBinReport
    """
    grid, loc = output.grid, output.norm_L_over_c
    T, tau = input_bins.T, input_bins.tau
    ref0 = _reference_mode(T, 0.0, params, grid, loc, **kwargs)
    ref_tau = _reference_mode(T, tau, params, grid, loc, **kwargs)
    c0, c_tau = centroid(ref0, grid), centroid(ref_tau, grid)
    half = BIN_HALF_WIDTH * T
    if c_tau - c0 < 2 * half:
        raise ParameterDomainError(
            'Output bin windows overlap (centres {0:.4g} s and {1:.4g} s, '
            'windows +-{2:.4g} s); use a larger tau'.format(c0, c_tau, half))
    a_out = _inner(ref0, output.phi2, grid, loc)
    b_out = _inner(ref_tau, output.phi2, grid, loc)
    a, b = complex(input_bins.a), complex(input_bins.b)
    out_norm = abs(a_out) ** 2 + abs(b_out) ** 2
    in_norm = abs(a) ** 2 + abs(b) ** 2
    if out_norm <= 0:
        fidelity = 0.0
    else:
        fidelity = abs(np.conj(a) * a_out + np.conj(b) * b_out) ** 2 / (
            in_norm * out_norm)
    times = grid.times
    outside = ~(((times >= c0 - half) & (times <= c0 + half)) |
                ((times >= c_tau - half) & (times <= c_tau + half)))
    leakage = envelope_photon_number(
        np.where(outside, output.phi2, 0), grid, loc)
    return TimeBinReport(
        a_out=a_out, b_out=b_out, fidelity=float(min(fidelity, 1.0)),
        leakage=leakage)


def bin_photon_numbers(profile, input_bins):
    """Photon numbers inside the early and late windows of a profile."""
    half = BIN_HALF_WIDTH * input_bins.T
    return (window_photon_number(profile, -half, half),
            window_photon_number(profile, input_bins.tau - half,
                                 input_bins.tau + half))
