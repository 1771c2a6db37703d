"""
Single-photon frequency conversion in a slow-light atomic medium. This is the
main script, and can be used like so:

python3 qfc_sim.py <command> --config run.yaml --omega 8 --out <output_dir>

for example:
python3 qfc_sim.py sweep --omega-min 3 --omega-max 30 --n-points 55 -mp
python3 qfc_sim.py timebin --phase 3.14159 --out ~/qfc_output

<command> is one of check, propagate, sweep, shapes, partial, timebin,
dressed or oracle-compare. Omega is given in units of Gamma_ref (--omega) or
in rad/s (--omega-si). The exit code is 0 on success, 2 for invalid
parameters or configuration and 3 for a numerical failure.
"""
import os
import shutil
import sys

import numpy as np
import pandas as pd

from experiments.figures import SweepSpec, dressed_experiment, \
    oracle_compare_table, partial_conversion_experiment, qe_crossings, \
    qe_peak, setup_run, shapes_experiment, sweep_omega, timebin_experiment
from experiments.output import build_manifest, emit_report, emit_table, \
    report_to_dict, write_summary
from parse_args import parse_args
from qfc.config import config_snapshot, load_config
from qfc.errors import ConfigurationError, NumericalFailure, \
    ParameterDomainError
from qfc.medium import Status, derive, format_flags, rb87_dressed_preset, \
    validity, worst_status
from qfc.observables import report_along_z
from qfc.oracle import integrate_pde, relative_l2
from qfc.pulses import from_csv
from qfc.utils import Timer, format_time, mkdir, pretify_dict

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_NUMERICAL = 3


def apply_overrides(cfg, args):
    """Command line values take precedence over the config file."""
    grid = cfg.grid
    for field in ('grid_points', 'z_planes', 'quadrature_nodes'):
        value = getattr(args, field, None)
        if value is not None:
            grid = grid._replace(
                **{'n_points' if field == 'grid_points' else field: value})
    omega_over_gamma = cfg.omega_over_gamma
    if args.omega_si is not None:
        omega_over_gamma = args.omega_si / cfg.medium.Gamma_ref
    elif args.omega is not None:
        omega_over_gamma = args.omega
    oracle = cfg.oracle
    if getattr(args, 'n_z_steps', None) is not None:
        oracle = oracle._replace(n_z_steps=args.n_z_steps)
    if getattr(args, 'interpolation', None) is not None:
        oracle = oracle._replace(interpolation=args.interpolation)
    return cfg._replace(grid=grid, omega_over_gamma=omega_over_gamma,
                        oracle=oracle.validate())


def _omega(cfg):
    return cfg.omega_over_gamma * cfg.medium.Gamma_ref


def _validity_note(medium, omega, T):
    return 'validity at Omega = {0:.6g} Gamma_ref: {1}'.format(
        omega / medium.Gamma_ref, format_flags(validity(medium, omega, T)))


def _manifest(command, cfg, params=None, grid=None, notes=None, drives=None,
              **extra):
    """Manifest with the validity flags at every drive (rad/s) behind the
    file; drives defaults to that of params."""
    snapshot = config_snapshot(cfg)
    if extra:
        snapshot['command_line'] = extra
    if drives is None:
        drives = [] if params is None else [params.Omega]
    notes = list(notes or []) + [
        _validity_note(cfg.medium, omega, cfg.pulse.T) for omega in drives]
    return build_manifest(command, snapshot, derived=params, grid=grid,
                          notes=notes)


def _waveform(grid, phi1, phi2):
    return pd.DataFrame({
        't_s': grid.times,
        're_phi1': np.real(phi1),
        'im_phi1': np.imag(phi1),
        're_phi2': np.real(phi2),
        'im_phi2': np.imag(phi2),
    })


def run_check(args, cfg, output_dir):
    params = derive(cfg.medium, _omega(cfg))
    checks = validity(cfg.medium, params.Omega, cfg.pulse.T)
    emit_report({'derived': params, 'validity': checks},
                output_dir / 'check.json', _manifest('check', cfg, params))
    return {
        'Derived parameters': params._asdict(),
        'Validity ({})'.format(worst_status(checks).value): {
            key: value.value for key, value in checks.flags.items()},
    }


def run_propagate(args, cfg, output_dir):
    omega = _omega(cfg)
    if args.input_csv is not None:
        params = derive(cfg.medium, omega)
        f1 = from_csv(args.input_csv, cfg.medium.L_over_c)
    else:
        params, f1 = setup_run(cfg.medium, omega, cfg.pulse,
                               cfg.grid.n_points, cfg.grid.t_min,
                               cfg.grid.t_max)
    n_nodes = cfg.grid.quadrature_nodes
    with Timer() as t:
        report, planes = report_along_z(f1, params, cfg.grid.z_planes,
                                        n_nodes=n_nodes)
    output = planes[-1]
    print('Runtime for propagation:', format_time(t.interval))
    manifest = _manifest('propagate', cfg, params, f1.grid,
                         input_csv=args.input_csv)
    emit_table(_waveform(f1.grid, output.phi1, output.phi2),
               output_dir / 'waveform.csv', manifest)
    emit_table(pd.DataFrame({
        'z_m': [fp.z for fp in planes],
        'n1': [fp.n1 for fp in planes],
        'n2': [fp.n2 for fp in planes],
        'total': [fp.total for fp in planes],
    }), output_dir / 'planes.csv', manifest)
    result = report_to_dict(report)
    if args.oracle:
        with Timer() as t:
            oracle = integrate_pde(
                f1, f1.with_samples(np.zeros_like(f1.samples)), params.L,
                params, cfg.oracle)
        print('Runtime for PDE oracle:', format_time(t.interval))
        emit_table(_waveform(f1.grid, oracle.phi1, oracle.phi2),
                   output_dir / 'waveform_oracle.csv', manifest)
        result['oracle_relative_l2'] = relative_l2(output, oracle)
    emit_report(result, output_dir / 'report.json', manifest)
    return {'Conversion report': result}


def run_sweep(args, cfg, output_dir):
    spec = SweepSpec(omega_min=args.omega_min, omega_max=args.omega_max,
                     n_points=args.n_points, medium=cfg.medium,
                     pulse=cfg.pulse, force=args.force_validity)
    # Only the exit plane is needed unless more are asked for
    z_planes = args.z_planes if args.z_planes is not None else 2
    if args.use_multiprocessing:
        print('Using multiprocessing with {} cpus'.format(os.cpu_count()))
    with Timer() as t:
        table = sweep_omega(spec, cfg.grid.n_points, z_planes,
                            cfg.grid.quadrature_nodes,
                            use_multiprocessing=args.use_multiprocessing)
    print('Runtime for {0} sweep points: {1}'.format(
        len(table), format_time(t.interval)))
    drives = table['omega_over_gamma'] * cfg.medium.Gamma_ref
    emit_table(table, output_dir / 'sweep.csv', _manifest(
        'sweep', cfg, drives=drives, omega_min=spec.omega_min,
        omega_max=spec.omega_max, n_points=spec.n_points,
        force_validity=spec.force))
    omega_peak, qe_max = qe_peak(table)
    return {'Sweep': {
        'points': len(table),
        'peak_qe': qe_max,
        'peak_omega_over_gamma': omega_peak,
        'qe_0.5_crossings': ', '.join(
            '{:.4g}'.format(x) for x in qe_crossings(table)) or 'none',
        'max_conservation_residual': table['conservation_residual'].max(),
    }}


def run_shapes(args, cfg, output_dir):
    T = cfg.pulse.T
    separation = args.separation if args.separation is not None \
        else 2.5 * T
    with Timer() as t:
        waveform, report = shapes_experiment(
            args.shape, cfg.omega_over_gamma, cfg.medium, T=T,
            separation=separation, grid_points=cfg.grid.n_points,
            z_planes=cfg.grid.z_planes, beta_zero=args.beta_zero,
            n_nodes=cfg.grid.quadrature_nodes)
    print('Runtime for shapes experiment:', format_time(t.interval))
    params = derive(cfg.medium, _omega(cfg))
    manifest = _manifest('shapes', cfg, params, shape=args.shape,
                         separation=separation, beta_zero=args.beta_zero)
    emit_table(waveform, output_dir / 'shapes_{}.csv'.format(args.shape),
               manifest)
    emit_report(report, output_dir / 'shapes_{}.json'.format(args.shape),
                manifest)
    return {'Conversion report ({})'.format(args.shape):
            report_to_dict(report)}


def run_partial(args, cfg, output_dir):
    with Timer() as t:
        results = partial_conversion_experiment(
            args.omegas, cfg.medium, T=cfg.pulse.T,
            grid_points=cfg.grid.n_points, z_planes=cfg.grid.z_planes,
            n_nodes=cfg.grid.quadrature_nodes,
            use_multiprocessing=args.use_multiprocessing)
    print('Runtime for {0} drive strengths: {1}'.format(
        len(results), format_time(t.interval)))
    sections = {}
    for omega_over_gamma, waveform, report in results:
        params = derive(cfg.medium, omega_over_gamma * cfg.medium.Gamma_ref)
        manifest = _manifest('partial', cfg, params,
                             omega_over_gamma=omega_over_gamma)
        stem = 'partial_{:g}'.format(omega_over_gamma)
        emit_table(waveform, output_dir / (stem + '.csv'), manifest)
        emit_report(report, output_dir / (stem + '.json'), manifest)
        sections['Omega = {:g} Gamma_ref'.format(omega_over_gamma)] = {
            'r1^2': report.r1 ** 2, 'r2^2': report.r2 ** 2,
            'delay1_s': report.delay1, 'delay2_s': report.delay2}
    return sections


def run_timebin(args, cfg, output_dir):
    b = args.b * np.exp(1j * args.phase)
    with Timer() as t:
        report, waveform = timebin_experiment(
            args.a, b, args.tau, cfg.omega_over_gamma, cfg.medium,
            T=cfg.pulse.T, grid_points=cfg.grid.n_points,
            n_nodes=cfg.grid.quadrature_nodes)
    print('Runtime for time-bin conversion:', format_time(t.interval))
    print('Time-bin fidelity: {:.8f}'.format(report.fidelity))
    params = derive(cfg.medium, _omega(cfg))
    manifest = _manifest('timebin', cfg, params, a=args.a, b_abs=args.b,
                         phase=args.phase, tau=args.tau)
    emit_table(waveform, output_dir / 'timebin.csv', manifest)
    emit_report(report, output_dir / 'timebin.json', manifest)
    relative_phase = float(np.angle(report.b_out / report.a_out)) \
        if abs(report.a_out) > 0 else float('nan')
    return {'Time-bin report': {
        'fidelity': report.fidelity, 'a_out': report.a_out,
        'b_out': report.b_out, 'relative_phase': relative_phase,
        'leakage': report.leakage}}


def run_dressed(args, cfg, output_dir):
    d = rb87_dressed_preset(args.omega0_over_gamma3, args.detuning_sign)
    omega = None
    if args.omega_si is not None:
        omega = args.omega_si
    elif args.omega is not None:
        omega = args.omega * d.base.Gamma_ref
    with Timer() as t:
        result = dressed_experiment(d, omega, T=cfg.pulse.T,
                                    grid_points=cfg.grid.n_points,
                                    z_planes=cfg.grid.z_planes,
                                    n_nodes=cfg.grid.quadrature_nodes)
    print('Runtime for dressed scheme:', format_time(t.interval))
    manifest = build_manifest(
        'dressed', {'dressed': d._asdict(), 'medium': result.medium,
                    'pulse': cfg.pulse, 'grid': cfg.grid},
        derived=result.params,
        notes=['G_i of the base medium are divided by 4 (half of the '
               'ground-state atoms, couplings reduced by sqrt(2))',
               _validity_note(result.medium, result.params.Omega,
                              cfg.pulse.T)])
    if worst_status(result.validity) is Status.FAIL:
        print('Warning: dressed run outside the validity conditions '
              '({})'.format(format_flags(result.validity)))
    d_report = report_to_dict(result.report)
    d_report.update(result.labels)
    emit_report(dict(d_report, validity=result.validity),
                output_dir / 'dressed.json', manifest)
    d_report['validity'] = format_flags(result.validity)
    return {'Dressed scheme': d_report}


def run_oracle_compare(args, cfg, output_dir):
    with Timer() as t:
        table = oracle_compare_table(
            args.omegas, cfg.medium, cfg.pulse, cfg.oracle,
            grid_points=cfg.grid.n_points, n_nodes=cfg.grid.quadrature_nodes,
            use_multiprocessing=args.use_multiprocessing)
    print('Runtime for oracle comparison:', format_time(t.interval))
    drives = [w * cfg.medium.Gamma_ref for w in args.omegas]
    emit_table(table, output_dir / 'oracle_compare.csv',
               _manifest('oracle-compare', cfg, drives=drives,
                         omegas=list(args.omegas)))
    return {'Oracle comparison': {
        'configurations': len(table),
        'max_relative_l2': table['relative_l2'].max(),
        'max_richardson_error': table['richardson_error'].max()}}


COMMANDS = {
    'check': run_check,
    'propagate': run_propagate,
    'sweep': run_sweep,
    'shapes': run_shapes,
    'partial': run_partial,
    'timebin': run_timebin,
    'dressed': run_dressed,
    'oracle-compare': run_oracle_compare,
}


def main(argv=None):
    args = parse_args(argv)
    width = shutil.get_terminal_size().columns
    print()
    print('#' * width)
    print(pretify_dict(vars(args), padding=4))
    print('#' * width)
    print()
    try:
        cfg = apply_overrides(load_config(args.config), args)
        output_dir = mkdir(args.out)
        sections = COMMANDS[args.command](args, cfg, output_dir)
    except (ParameterDomainError, ConfigurationError) as e:
        print('Error: {}'.format(e), file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalFailure as e:
        print('Numerical failure: {}'.format(e), file=sys.stderr)
        return EXIT_NUMERICAL
    summary = write_summary(
        output_dir / '{}_summary.txt'.format(args.command.replace('-', '_')),
        sections, args_dict=vars(args))
    print()
    print(summary)
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
