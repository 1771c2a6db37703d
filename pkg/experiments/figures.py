"""
Reproductions of the conversion experiments: QE against drive strength,
shape preservation, partial conversion, time-bin transfer, the dressed
visible/IR scheme, and analytic-versus-oracle comparison.
"""
from collections import namedtuple

import numpy as np
import pandas as pd
from pathos.multiprocessing import ProcessingPool as Pool

from qfc.errors import NumericalFailure, ParameterDomainError
from qfc.medium import derive, dressed_transform, format_flags, \
    omega_for_full_conversion, validity, worst_status
from qfc.observables import TimeBinInput, conversion_report, timebin_analyze
from qfc.oracle import OracleSettings, integrate_with_error, relative_l2
from qfc.propagator import DEFAULT_NODES, propagate
from qfc.pulses import PulseSpec, TimeGrid, build_pulse, default_grid, \
    pulse_extent

# Below this drive (in units of Gamma_ref) the lossless equations do not hold
MIN_VALID_OMEGA = 3.0

SweepSpec = namedtuple(
    'SweepSpec', 'omega_min omega_max n_points medium pulse force',
    defaults=(False,))

DressedResult = namedtuple(
    'DressedResult', 'report params medium labels validity')


def setup_run(medium, omega, pulse, n_points=4096, t_min=None, t_max=None):
    """Derived parameters and input profile for one drive strength.

    Arguments:
        medium: MediumConfig
        omega: driving Rabi frequency (rad/s)
        pulse: PulseSpec
        n_points: number of grid points
        t_min, t_max: override the default grid limits (s)

    Returns:
        (DerivedParams, PulseProfile)
    """
    params = derive(medium, omega)
    grid = default_grid(pulse.T, params.max_delay, extra=pulse_extent(pulse),
                        n_points=n_points)
    if t_min is not None or t_max is not None:
        grid = TimeGrid(grid.t_min if t_min is None else t_min,
                        grid.t_max if t_max is None else t_max, n_points)
    return params, build_pulse(pulse, grid, medium.L_over_c)


def _vacuum(profile):
    return profile.with_samples(np.zeros_like(profile.samples))


def _intensity(envelope, profile, T):
    """(c/L) |Phi|^2 T: the area under this curve against t/T is the photon
    number of the mode."""
    return np.abs(envelope) ** 2 * T / profile.norm_L_over_c


def sweep_point(omega_over_gamma, spec, grid_points=4096, z_planes=5,
                n_nodes=DEFAULT_NODES):
    """One row of the QE sweep."""
    omega = omega_over_gamma * spec.medium.Gamma_ref
    try:
        params, f1 = setup_run(spec.medium, omega, spec.pulse, grid_points)
        report, _ = conversion_report(f1, params, z_planes, n_nodes=n_nodes)
    except NumericalFailure as e:
        raise NumericalFailure(
            'Sweep aborted at Omega = {0:.6g} Gamma_ref: {1}'.format(
                omega_over_gamma, e), e.diagnostics) from e
    except ParameterDomainError as e:
        raise ParameterDomainError(
            'Sweep aborted at Omega = {0:.6g} Gamma_ref: {1}'.format(
                omega_over_gamma, e)) from e
    checks = validity(spec.medium, omega, spec.pulse.T)
    return {
        'omega_over_gamma': float(omega_over_gamma),
        'qe': report.qe,
        'n1_out': report.n1_out,
        'n2_out': report.n2_out,
        'conservation_residual': report.conservation_residual,
        'validity_flags': format_flags(checks),
        'worst_flag': worst_status(checks).value,
        'out_of_validity': bool(omega_over_gamma < MIN_VALID_OMEGA),
    }


def sweep_omega(spec, grid_points=4096, z_planes=5, n_nodes=DEFAULT_NODES,
                use_multiprocessing=False):
    """Quantum efficiency against driving Rabi frequency.

    Arguments:
        spec: SweepSpec (omega limits in units of medium.Gamma_ref)
        grid_points: time grid size for every point
        z_planes: planes used for the conservation residual of each row
        n_nodes: Gauss-Legendre nodes of the kernel integral
        use_multiprocessing: evaluate points in a process pool

    Returns:
        DataFrame ordered by omega_over_gamma
    """
    if spec.n_points < 1:
        raise ParameterDomainError(
            'Sweep needs at least one point (got {})'.format(spec.n_points))
    if spec.omega_max < spec.omega_min:
        raise ParameterDomainError(
            'omega_max ({0}) < omega_min ({1})'.format(
                spec.omega_max, spec.omega_min))
    if spec.omega_min < MIN_VALID_OMEGA and not spec.force:
        raise ParameterDomainError(
            'omega_min = {0:g} Gamma_ref is below {1:g}, where the lossless '
            'transport equations do not hold; pass force to include these '
            'points (they are tagged out_of_validity)'.format(
                spec.omega_min, MIN_VALID_OMEGA))
    if spec.n_points == 1:
        omegas = [float(spec.omega_min)]
    else:
        omegas = list(np.linspace(spec.omega_min, spec.omega_max,
                                  spec.n_points))
    n = len(omegas)
    if use_multiprocessing and n > 1:
        rows = Pool().map(sweep_point, omegas, [spec] * n, [grid_points] * n,
                          [z_planes] * n, [n_nodes] * n)
    else:
        rows = [sweep_point(omega, spec, grid_points, z_planes, n_nodes)
                for omega in omegas]
    return pd.DataFrame(rows).sort_values(
        'omega_over_gamma', kind='stable').reset_index(drop=True)


def qe_peak(table):
    """(omega_over_gamma, qe) of the sweep maximum."""
    idx = int(table['qe'].to_numpy().argmax())
    return (float(table['omega_over_gamma'].iloc[idx]),
            float(table['qe'].iloc[idx]))


def qe_crossings(table, level=0.5):
    """Drive strengths at which the QE curve crosses `level` (linear
    interpolation between rows)."""
    omega = table['omega_over_gamma'].to_numpy()
    qe = table['qe'].to_numpy() - level
    crossings = []
    for i in range(len(qe) - 1):
        if qe[i] == 0:
            crossings.append(float(omega[i]))
        elif qe[i] * qe[i + 1] < 0:
            frac = qe[i] / (qe[i] - qe[i + 1])
            crossings.append(float(omega[i] + frac * (omega[i + 1] -
                                                      omega[i])))
    return crossings


def shapes_experiment(shape, omega_over_gamma, medium, T=20e-9,
                      separation=None, grid_points=4096, z_planes=20,
                      beta_zero=False, n_nodes=DEFAULT_NODES):
    """Output waveforms of both modes for a Gaussian or double-hump input.

    Returns:
        (waveform DataFrame with columns t_over_T, abs2_phi1, abs2_phi2,
        abs2_beta0_reference; ConversionReport)
    """
    if shape not in ('gaussian', 'double_hump'):
        raise ParameterDomainError(
            'shape must be gaussian or double_hump (got {})'.format(shape))
    pulse = PulseSpec(shape=shape, T=T, separation=separation)
    params, f1 = setup_run(medium, omega_over_gamma * medium.Gamma_ref, pulse,
                           grid_points)
    if beta_zero:
        params = params.with_coupling(0.0)
    report, output = conversion_report(f1, params, z_planes, n_nodes=n_nodes)
    reference = propagate(f1, _vacuum(f1), params.L,
                          params.with_coupling(0.0), n_nodes=n_nodes)
    waveform = pd.DataFrame({
        't_over_T': f1.grid.times / T,
        'abs2_phi1': _intensity(output.phi1, f1, T),
        'abs2_phi2': _intensity(output.phi2, f1, T),
        'abs2_beta0_reference': _intensity(reference.phi1, f1, T),
    })
    return waveform, report


def partial_conversion_experiment(omega_list, medium, T=20e-9,
                                  grid_points=4096, z_planes=20,
                                  n_nodes=DEFAULT_NODES,
                                  use_multiprocessing=False):
    """Gaussian-input waveforms and reports at several drive strengths.

    Returns:
        list of (omega_over_gamma, waveform DataFrame, ConversionReport)
    """
    def run(omega_over_gamma):
        waveform, report = shapes_experiment(
            'gaussian', omega_over_gamma, medium, T=T,
            grid_points=grid_points, z_planes=z_planes, n_nodes=n_nodes)
        return float(omega_over_gamma), waveform, report

    if use_multiprocessing and len(omega_list) > 1:
        return Pool().map(run, list(omega_list))
    return [run(omega) for omega in omega_list]


def timebin_experiment(a, b, tau, omega_over_gamma, medium, T=20e-9,
                       grid_points=4096, n_nodes=DEFAULT_NODES):
    """Convert a time-bin qubit a|early> + b|late> and recover its bin
    amplitudes in mode 2.

    Returns:
        (TimeBinReport, waveform DataFrame with columns t_over_T,
        abs2_input, abs2_phi1, abs2_phi2)
    """
    if tau is None:
        tau = 10 * T
    pulse = PulseSpec(shape='time_bin', T=T, a=a, b=b, tau=tau)
    params, f1 = setup_run(medium, omega_over_gamma * medium.Gamma_ref, pulse,
                           grid_points)
    output = propagate(f1, _vacuum(f1), params.L, params, n_nodes=n_nodes)
    report = timebin_analyze(TimeBinInput(a=a, b=b, tau=tau, T=T), output,
                             params, n_nodes=n_nodes)
    waveform = pd.DataFrame({
        't_over_T': f1.grid.times / T,
        'abs2_input': _intensity(f1.samples, f1, T),
        'abs2_phi1': _intensity(output.phi1, f1, T),
        'abs2_phi2': _intensity(output.phi2, f1, T),
    })
    return report, waveform


def dressed_experiment(d, omega=None, T=20e-9, grid_points=4096, z_planes=20,
                       n_nodes=DEFAULT_NODES):
    """Run the standard pipeline on the effective medium of the dressed
    scheme.

    Arguments:
        d: DressedConfig
        omega: driving Rabi frequency (rad/s); defaults to the drive giving
            beta' L = pi / 2 on the transformed medium
        T: input pulse width (s)

    Returns:
        DressedResult(report, params, medium, labels, validity); the
        validity flags are those of the transformed medium at omega
    """
    medium = dressed_transform(d)
    if omega is None:
        omega = omega_for_full_conversion(medium)
    params, f1 = setup_run(medium, omega, PulseSpec(T=T), grid_points)
    report, _ = conversion_report(f1, params, z_planes, n_nodes=n_nodes)
    labels = {
        'lambda1_nm': medium.lambda1 * 1e9,
        'lambda2_um': medium.lambda2 * 1e6,
        'G2_over_G1': medium.G2 / medium.G1,
        'omega_over_gamma': omega / medium.Gamma_ref,
    }
    return DressedResult(report=report, params=params, medium=medium,
                         labels=labels, validity=validity(medium, omega, T))


def oracle_compare(medium, omega_over_gamma, pulse=None, settings=None,
                   grid_points=4096, n_nodes=DEFAULT_NODES):
    """Analytic propagator against the PDE oracle at z = L.

    Returns:
        dict with the relative L2 difference, the oracle's Richardson error
        estimate and the photon numbers of both paths
    """
    pulse = pulse or PulseSpec()
    settings = settings or OracleSettings()
    params, f1 = setup_run(medium, omega_over_gamma * medium.Gamma_ref, pulse,
                           grid_points)
    vacuum = _vacuum(f1)
    analytic = propagate(f1, vacuum, params.L, params, n_nodes=n_nodes)
    oracle = integrate_with_error(f1, vacuum, params.L, params, settings)
    return {
        'omega_over_gamma': float(omega_over_gamma),
        'relative_l2': relative_l2(analytic, oracle.fields),
        'richardson_error': oracle.richardson_error,
        'n1_analytic': analytic.n1,
        'n2_analytic': analytic.n2,
        'n1_oracle': oracle.fields.n1,
        'n2_oracle': oracle.fields.n2,
    }


def oracle_compare_table(omegas, medium, pulse=None, settings=None,
                         grid_points=4096, n_nodes=DEFAULT_NODES,
                         use_multiprocessing=False):
    n = len(omegas)
    if use_multiprocessing and n > 1:
        rows = Pool().map(oracle_compare, [medium] * n, list(omegas),
                          [pulse] * n, [settings] * n, [grid_points] * n,
                          [n_nodes] * n)
    else:
        rows = [oracle_compare(medium, omega, pulse, settings, grid_points,
                               n_nodes) for omega in omegas]
    return pd.DataFrame(rows)
