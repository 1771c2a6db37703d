"""
Closed-form field solution inside the medium.

For a photon entering with envelopes f1, f2 at z = 0, the envelope of mode i
(j != i) at depth z is

    Phi_i(z, t) = f_i(t - z/v_i)
        + int_0^z dx [ f_i(t - z/v_j - (v_j - v_i) x / (v_i v_j)) dJ0(psi)/dz
                       - i beta f_j(t - z/v_i - (v_i - v_j) x / (v_i v_j)) J0(psi) ]

with psi = 2 beta sqrt(x (z - x)). The x integral is done by Gauss-Legendre
quadrature; dJ0/dz = -2 beta^2 x J1(psi)/psi is smooth on [0, z] (it tends to
0 at x -> 0 and to -beta^2 z at x -> z).
"""
from collections import namedtuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import special

from qfc.errors import NumericalFailure, ParameterDomainError
from qfc.medium import CONSTANTS
from qfc.pulses import envelope_photon_number, interpolator, shifted, \
    support

DEFAULT_NODES = 256
MAX_NODES = 4096
CONSERVATION_TOL = 1e-6
# Relative slack on z > L before it is treated as outside the medium
Z_RTOL = 1e-12


class FieldPair(namedtuple('FieldPair', 'z grid phi1 phi2 norm_L_over_c')):
    """Envelopes of both modes at depth z on a shared TimeGrid."""
    __slots__ = ()

    @property
    def n1(self):
        return envelope_photon_number(self.phi1, self.grid, self.norm_L_over_c)

    @property
    def n2(self):
        return envelope_photon_number(self.phi2, self.grid, self.norm_L_over_c)

    @property
    def total(self):
        return self.n1 + self.n2


KernelTables = namedtuple(
    'KernelTables', 'z beta nodes weights psi j0 dj0_dz')


def bessel_j0(x):
    return special.j0(x)


def bessel_j1(x):
    return special.j1(x)


def j1_over_x(x):
    """J1(x)/x with its limit 1/2 at the origin."""
    x = np.asarray(x, dtype=float)
    small = x < 1e-4
    safe = np.where(small, 1.0, x)
    series = 0.5 - x ** 2 / 16 + x ** 4 / 384
    return np.where(small, series, special.j1(safe) / safe)


def kernel_tables(z, beta, n_nodes=DEFAULT_NODES):
    """Gauss-Legendre nodes on [0, z] with J0(psi) and dJ0(psi)/dz."""
    u, w = leggauss(n_nodes)
    nodes = 0.5 * z * (u + 1)
    weights = 0.5 * z * w
    psi = 2 * beta * np.sqrt(np.clip(nodes * (z - nodes), 0, None))
    return KernelTables(
        z=z, beta=beta, nodes=nodes, weights=weights, psi=psi,
        j0=bessel_j0(psi),
        dj0_dz=-2 * beta ** 2 * nodes * j1_over_x(psi))


def check_inputs(f1, f2, z, params):
    if f1.grid != f2.grid:
        raise ParameterDomainError(
            'Input envelopes must share a time grid ({0} vs {1})'.format(
                f1.grid, f2.grid))
    if not 0 <= z <= params.L * (1 + Z_RTOL):
        raise ParameterDomainError(
            'z = {0:.6g} m lies outside the medium [0, {1:.6g}] m'.format(
                z, params.L))
    max_delay = z / min(params.v1, params.v2)
    for name, f in (('f1', f1), ('f2', f2)):
        extent = support(f.samples, f.grid)
        if extent is None:
            continue
        required = extent[1] + max_delay
        if required > f.grid.t_max:
            raise ParameterDomainError(
                'Grid too narrow for the delay of {0}: need t_max >= '
                '{1:.6g} s to span [{2:.6g}, {1:.6g}] s, got t_max = '
                '{3:.6g} s'.format(name, required, f.grid.t_min,
                                   f.grid.t_max))


def _is_zero(f):
    return not np.any(f.samples)


def _mode_integral(f_self, f_other, t, z, v_self, v_other, tables):
    """Kernel integral for one mode; f_self/f_other are interpolants or
    None for an identically zero envelope."""
    weights = tables.weights
    x = tables.nodes[None, :]
    rate = 1 / (v_self * v_other)
    result = np.zeros(t.shape, dtype=complex)
    if f_self is not None:
        args = t[:, None] - z / v_other - (v_other - v_self) * rate * x
        result += f_self(t - z / v_self)
        result += (f_self(args) * tables.dj0_dz[None, :]) @ weights
    if f_other is not None:
        args = t[:, None] - z / v_self - (v_self - v_other) * rate * x
        result += -1j * tables.beta * (
            (f_other(args) * tables.j0[None, :]) @ weights)
    return result


def _general(f1, f2, z, params, n_nodes):
    t = f1.grid.times
    interp1 = None if _is_zero(f1) else interpolator(f1.samples, f1.grid)
    interp2 = None if _is_zero(f2) else interpolator(f2.samples, f2.grid)
    tables = kernel_tables(z, params.beta, n_nodes)
    phi1 = _mode_integral(interp1, interp2, t, z, params.v1, params.v2, tables)
    phi2 = _mode_integral(interp2, interp1, t, z, params.v2, params.v1, tables)
    if not (np.all(np.isfinite(phi1)) and np.all(np.isfinite(phi2))):
        raise NumericalFailure(
            'Non-finite envelope from the kernel integral',
            {'z': z, 'beta': params.beta, 'nodes': n_nodes})
    return FieldPair(z, f1.grid, phi1, phi2, f1.norm_L_over_c)


def propagate_general(f1, f2, z, params, n_nodes=DEFAULT_NODES,
                      adaptive=True, tol=CONSERVATION_TOL):
    """Evaluate the Bessel-kernel solution at depth z.

    Arguments:
        f1, f2: PulseProfiles of both modes at z = 0 on a common grid
        z: evaluation plane (m), 0 <= z <= L
        params: DerivedParams
        n_nodes: initial number of Gauss-Legendre nodes
        adaptive: double the node count until the total photon number is
            conserved to within tol (up to MAX_NODES)
        tol: conservation tolerance driving the adaptivity

    Returns:
        FieldPair at z
    """
    check_inputs(f1, f2, z, params)
    if z == 0:
        return FieldPair(0.0, f1.grid, np.array(f1.samples),
                         np.array(f2.samples), f1.norm_L_over_c)
    total_in = (envelope_photon_number(f1.samples, f1.grid, f1.norm_L_over_c)
                + envelope_photon_number(f2.samples, f2.grid,
                                         f2.norm_L_over_c))
    result = _general(f1, f2, z, params, n_nodes)
    while adaptive and n_nodes < MAX_NODES and \
            abs(result.total - total_in) > tol * max(total_in, 1.0):
        n_nodes *= 2
        result = _general(f1, f2, z, params, n_nodes)
    return result


def propagate_equal_v(f1, f2, z, params):
    """Equal group velocities: a rotation by beta * z in the frame moving
    at v."""
    if not params.equal_velocities:
        raise ParameterDomainError(
            'propagate_equal_v needs v1 = v2 (got {0:.10g}, {1:.10g} m/s)'
            .format(params.v1, params.v2))
    check_inputs(f1, f2, z, params)
    tau = f1.grid.times - z / params.v1
    g1 = interpolator(f1.samples, f1.grid)(tau)
    g2 = interpolator(f2.samples, f2.grid)(tau)
    c, s = np.cos(params.beta * z), np.sin(params.beta * z)
    return FieldPair(z, f1.grid, c * g1 - 1j * s * g2, c * g2 - 1j * s * g1,
                     f1.norm_L_over_c)


def propagate(f1, f2, z, params, **kwargs):
    """Dispatch to the equal-velocity closed form when it applies."""
    if params.equal_velocities:
        return propagate_equal_v(f1, f2, z, params)
    return propagate_general(f1, f2, z, params, **kwargs)


def field_along_z(f1, f2, params, n_planes, **kwargs):
    """FieldPairs at n_planes evenly spaced depths from 0 to L."""
    if n_planes < 2:
        raise ParameterDomainError(
            'Need at least 2 z planes (got {})'.format(n_planes))
    return [propagate(f1, f2, z, params, **kwargs)
            for z in np.linspace(0, params.L, n_planes)]


def free_space_shift(f, z):
    """Free-space propagation over z: f(t) -> f(t - z/c)."""
    return shifted(f, z / CONSTANTS.c)
