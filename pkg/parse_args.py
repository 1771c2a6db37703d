"""Command line arguments for qfc_sim.py"""

import argparse


def _common_args():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--config', '-c', type=str, default=None,
                        help='YAML run configuration (medium, drive, pulse, '
                             'grid and oracle sections). Missing values fall '
                             'back to the Rb-87 preset.')
    parser.add_argument('--omega', type=float, default=None,
                        help='Driving Rabi frequency in units of Gamma_ref '
                             '(overrides drive.Omega_over_Gamma)')
    parser.add_argument('--omega-si', dest='omega_si', type=float,
                        default=None,
                        help='Driving Rabi frequency in rad/s (overrides '
                             '--omega)')
    parser.add_argument('--out', '-o', type=str, default='qfc_output',
                        help='Directory in which to store outputs')
    parser.add_argument('--grid-points', dest='grid_points', type=int,
                        default=None, help='Number of time grid points')
    parser.add_argument('--z-planes', dest='z_planes', type=int,
                        default=None,
                        help='Number of z planes used for conservation '
                             'residuals and per-plane photon numbers')
    parser.add_argument('--quadrature-nodes', dest='quadrature_nodes',
                        type=int, default=None,
                        help='Initial Gauss-Legendre nodes of the kernel '
                             'integral')
    parser.add_argument('--force-validity', dest='force_validity',
                        action='store_true',
                        help='Evaluate drive strengths below 3 Gamma_ref, '
                             'tagging them out_of_validity')
    parser.add_argument('--use_multiprocessing', '-mp', action='store_true',
                        help='Use multiple CPU processes')
    return parser


def _omega_list(s):
    return [float(x) for x in s.split(',') if x.strip()]


def build_parser():
    common = _common_args()
    parser = argparse.ArgumentParser(
        description='Single-photon frequency conversion in a slow-light '
                    'atomic medium')
    subparsers = parser.add_subparsers(dest='command', required=True)

    subparsers.add_parser('check', parents=[common],
                          help='Validity report for the configured medium')

    propagate = subparsers.add_parser(
        'propagate', parents=[common],
        help='Single propagation; waveform, per-plane photon numbers and a '
             'conversion report')
    propagate.add_argument('--input-csv', dest='input_csv', type=str,
                           default=None,
                           help='Input envelope of mode 1 as a CSV with '
                                'columns t_s, re_f, im_f (replaces the '
                                'configured pulse)')
    propagate.add_argument('--oracle', action='store_true',
                           help='Also integrate with the PDE oracle and '
                                'write its waveform for comparison')

    sweep = subparsers.add_parser('sweep', parents=[common],
                                  help='Quantum efficiency against Omega')
    sweep.add_argument('--omega-min', dest='omega_min', type=float,
                       default=3.0, help='Lowest Omega / Gamma_ref')
    sweep.add_argument('--omega-max', dest='omega_max', type=float,
                       default=30.0, help='Highest Omega / Gamma_ref')
    sweep.add_argument('--n-points', dest='n_points', type=int, default=55,
                       help='Number of Omega values')

    shapes = subparsers.add_parser(
        'shapes', parents=[common],
        help='Output waveforms for a Gaussian or double-hump input')
    shapes.add_argument('--shape', type=str, default='gaussian',
                        choices=['gaussian', 'double_hump'])
    shapes.add_argument('--separation', type=float, default=None,
                        help='Hump separation (s); default 2.5 T')
    shapes.add_argument('--beta-zero', dest='beta_zero', action='store_true',
                        help='Switch off the parametric coupling')

    partial = subparsers.add_parser(
        'partial', parents=[common],
        help='Waveforms and reports at several drive strengths')
    partial.add_argument('--omegas', type=_omega_list, default=[6.0, 18.0],
                         help='Comma separated Omega / Gamma_ref values')

    timebin = subparsers.add_parser(
        'timebin', parents=[common], help='Time-bin qubit conversion')
    timebin.add_argument('--a', type=float, default=2 ** -0.5,
                         help='Magnitude of the early-bin amplitude')
    timebin.add_argument('--b', type=float, default=2 ** -0.5,
                         help='Magnitude of the late-bin amplitude')
    timebin.add_argument('--phase', type=float, default=0.0,
                         help='Phase of the late-bin amplitude (rad)')
    timebin.add_argument('--tau', type=float, default=None,
                         help='Bin separation (s); default 10 T')

    dressed = subparsers.add_parser(
        'dressed', parents=[common],
        help='Dressed visible/IR conversion scheme')
    dressed.add_argument('--omega0-over-gamma3', dest='omega0_over_gamma3',
                         type=float, default=20.0,
                         help='Dressing field Rabi frequency / Gamma3')
    dressed.add_argument('--detuning-sign', dest='detuning_sign', type=int,
                         default=1, choices=[-1, 1],
                         help='Sign of Delta = +-Omega0')

    oracle = subparsers.add_parser(
        'oracle-compare', parents=[common],
        help='Analytic propagator against the PDE oracle')
    oracle.add_argument('--omegas', type=_omega_list,
                        default=[4.0, 6.0, 8.0, 12.0, 18.0],
                        help='Comma separated Omega / Gamma_ref values')
    oracle.add_argument('--n-z-steps', dest='n_z_steps', type=int,
                        default=None, help='Oracle z steps')
    oracle.add_argument('--interpolation', type=str, default=None,
                        choices=['spectral', 'cubic'],
                        help='Oracle advection scheme')
    return parser


def parse_args(argv=None):
    return build_parser().parse_args(argv)
