"""
Physical description of the atomic medium and driving field, the propagation
constants derived from it, and the conditions under which the lossless
transport equations hold.

All quantities are SI floats. The atom-field couplings g_i and the atom number
N only ever appear in the combination G_i = g_i^2 N / c, so the medium is
parametrised by G1 and G2 directly.
"""
from collections import namedtuple
from enum import Enum

import numpy as np

from qfc.errors import ConfigurationError, ParameterDomainError

PhysicalConstants = namedtuple('PhysicalConstants', 'c')
CONSTANTS = PhysicalConstants(c=2.99792458e8)

# Thresholds of the validity conditions; 'warn' extends a factor of
# WARN_FACTOR beyond each threshold on the bad side.
KAPPA_L_MAX = 0.1
EIT_PRODUCT_MIN = 1.0
DISPERSION_RATIO_MAX = 1.0
WARN_FACTOR = 10.0

# Dressed scheme: (Gamma3 / Omega0)^2 <= 0.01
MIN_SUPPRESSION_RATIO = 10.0
DETUNING_RTOL = 1e-9


class Status(str, Enum):
    PASS = 'pass'
    WARN = 'warn'
    FAIL = 'fail'


_MEDIUM_FIELDS = ('G1 G2 L Gamma1 Gamma2 lambda1 lambda2 atom_density '
                  'Gamma_ref')


class MediumConfig(namedtuple('MediumConfig', _MEDIUM_FIELDS)):
    """Atomic medium and quantum-field description.

    Fields:
        G1, G2: collective couplings g_i^2 N / c (rad^2 s^-1 m^-1)
        L: medium length (m)
        Gamma1, Gamma2: transverse relaxation rates (rad/s)
        lambda1, lambda2: quantum-field wavelengths (m)
        atom_density: number density (m^-3)
        Gamma_ref: unit in which Omega is quoted (rad/s)
    """
    __slots__ = ()

    def validate(self):
        bad = {key: value for key, value in self._asdict().items()
               if not np.isfinite(value) or value <= 0}
        if bad:
            raise ParameterDomainError(
                'MediumConfig fields must be strictly positive and finite; '
                'offending values: {}'.format(bad))
        return self

    @property
    def L_over_c(self):
        return self.L / CONSTANTS.c

    def swapped(self):
        """Medium with the labels of the two quantum fields exchanged."""
        return self._replace(
            G1=self.G2, G2=self.G1, Gamma1=self.Gamma2, Gamma2=self.Gamma1,
            lambda1=self.lambda2, lambda2=self.lambda1)


class DerivedParams(namedtuple(
        'DerivedParams',
        'Omega v1 v2 beta kappa1L kappa2L alpha eit_bandwidth tau1 tau2 betaL '
        'L')):
    """Propagation constants at a given driving Rabi frequency Omega."""
    __slots__ = ()

    @property
    def equal_velocities(self):
        return bool(np.isclose(self.v1, self.v2, rtol=1e-12, atol=0))

    @property
    def max_delay(self):
        return self.L / min(self.v1, self.v2)

    @property
    def L_over_c(self):
        return self.L / CONSTANTS.c

    def swapped(self):
        return self._replace(
            v1=self.v2, v2=self.v1, kappa1L=self.kappa2L,
            kappa2L=self.kappa1L, tau1=self.tau2, tau2=self.tau1)

    def with_coupling(self, beta):
        """Same transport, different parametric coupling (beta = 0 gives the
        uncoupled reference propagation)."""
        return self._replace(beta=beta, betaL=beta * self.L)


ValidityReport = namedtuple(
    'ValidityReport',
    'kappa1L kappa2L eit_product dispersion_ratio1 dispersion_ratio2 '
    'broadened_width1 broadened_width2 flags')


class DressedConfig(namedtuple('DressedConfig', 'base Omega0 Gamma3 Delta')):
    """Four-level scheme with a second drive Omega0 dressing levels 0 and 3.

    Fields:
        base: MediumConfig with the bare couplings folded into G1, G2
        Omega0: second driving Rabi frequency (rad/s)
        Gamma3: relaxation rate of level 3 (rad/s)
        Delta: one-photon detuning of both quantum fields (rad/s), +-Omega0
    """
    __slots__ = ()

    def validate(self):
        self.base.validate()
        if self.Omega0 <= 0 or self.Gamma3 <= 0:
            raise ConfigurationError(
                'Omega0 and Gamma3 must be positive (got {0}, {1})'.format(
                    self.Omega0, self.Gamma3))
        ratio = self.Omega0 / self.Gamma3
        if ratio < MIN_SUPPRESSION_RATIO:
            raise ConfigurationError(
                'Omega0/Gamma3 = {0:.4g} violates Omega0/Gamma3 >= {1:g}; '
                'excitation from the second dressed state is not '
                'suppressed'.format(ratio, MIN_SUPPRESSION_RATIO))
        if not np.isclose(abs(self.Delta), self.Omega0, rtol=DETUNING_RTOL,
                          atol=0):
            raise ConfigurationError(
                '|Delta| = {0:.10g} violates |Delta| = Omega0 = {1:.10g} '
                '(relative tolerance {2:g})'.format(
                    abs(self.Delta), self.Omega0, DETUNING_RTOL))
        return self


def _check_positive(**kwargs):
    for name, value in kwargs.items():
        if not np.isfinite(value) or value <= 0:
            raise ParameterDomainError(
                '{0} must be strictly positive and finite (got {1})'.format(
                    name, value))


def derive(config, Omega):
    """Compute all propagation constants at driving Rabi frequency Omega.

    Arguments:
        config: MediumConfig
        Omega: driving Rabi frequency (rad/s)

    Returns:
        DerivedParams
    """
    _check_positive(Omega=Omega)
    config.validate()
    v1 = Omega ** 2 / config.G1
    v2 = Omega ** 2 / config.G2
    beta = np.sqrt(config.G1 * config.G2) / Omega
    tau1 = config.L / v1
    tau2 = config.L / v2
    sigma = 3 * config.lambda1 ** 2 / (4 * np.pi)
    alpha = config.atom_density * sigma * config.L
    return DerivedParams(
        Omega=float(Omega), v1=v1, v2=v2, beta=beta,
        kappa1L=config.Gamma2 * tau1, kappa2L=config.Gamma1 * tau2,
        alpha=alpha,
        eit_bandwidth=Omega ** 2 / (config.Gamma_ref * np.sqrt(alpha)),
        tau1=tau1, tau2=tau2, betaL=beta * config.L, L=config.L)


def _flag_upper(value, threshold):
    if value <= threshold:
        return Status.PASS
    if value <= WARN_FACTOR * threshold:
        return Status.WARN
    return Status.FAIL


def _flag_lower(value, threshold):
    if value >= threshold:
        return Status.PASS
    if value >= threshold / WARN_FACTOR:
        return Status.WARN
    return Status.FAIL


def broadened_width(T, tau, Omega):
    """Width after group-velocity dispersion over a propagation time tau."""
    return T * np.sqrt(1 + 16 * tau / (T ** 2 * Omega))


def validity(config, Omega, T):
    """Evaluate the absorption, EIT-window and dispersion conditions.

    Violations are flagged rather than raised, so that sweeps can cross the
    validity boundaries.

    Arguments:
        config: MediumConfig
        Omega: driving Rabi frequency (rad/s)
        T: input pulse width (s)

    Returns:
        ValidityReport
    """
    _check_positive(T=T)
    params = derive(config, Omega)
    ratio1 = 16 * params.tau1 / (T ** 2 * Omega)
    ratio2 = 16 * params.tau2 / (T ** 2 * Omega)
    eit_product = params.eit_bandwidth * T
    flags = {
        'kappa1L': _flag_upper(params.kappa1L, KAPPA_L_MAX),
        'kappa2L': _flag_upper(params.kappa2L, KAPPA_L_MAX),
        'eit_product': _flag_lower(eit_product, EIT_PRODUCT_MIN),
        'dispersion_ratio1': _flag_upper(ratio1, DISPERSION_RATIO_MAX),
        'dispersion_ratio2': _flag_upper(ratio2, DISPERSION_RATIO_MAX),
    }
    return ValidityReport(
        kappa1L=params.kappa1L, kappa2L=params.kappa2L,
        eit_product=eit_product,
        dispersion_ratio1=ratio1, dispersion_ratio2=ratio2,
        broadened_width1=T * np.sqrt(1 + ratio1),
        broadened_width2=T * np.sqrt(1 + ratio2),
        flags=flags)


def worst_status(report):
    """The most severe flag of a ValidityReport."""
    order = [Status.PASS, Status.WARN, Status.FAIL]
    return max(report.flags.values(), key=order.index)


def format_flags(report):
    return ';'.join('{0}={1}'.format(key, status.value)
                    for key, status in report.flags.items())


def rb87_preset():
    """87Rb D1/D2 conversion (795 nm -> 780 nm) in a 100 um cold-atom trap.

    The couplings are fixed so that v1 = 1.25e4 m/s and v2 = v1 / 2 at the
    reference drive Omega_ref = 8 Gamma2.
    """
    Gamma2 = 2 * np.pi * 3e6
    omega_ref = 8 * Gamma2
    v1_ref = 1.25e4
    v2_ref = 0.5 * v1_ref
    return MediumConfig(
        G1=omega_ref ** 2 / v1_ref,
        G2=omega_ref ** 2 / v2_ref,
        L=100e-6,
        Gamma1=Gamma2 / 2,
        Gamma2=Gamma2,
        lambda1=795e-9,
        lambda2=780e-9,
        atom_density=1e19,
        Gamma_ref=Gamma2)


def rb87_dressed_preset(omega0_over_gamma3=20.0, detuning_sign=1):
    """Visible/IR scheme on 5S1/2, 5P3/2, 4D3/2 and 5P1/2 of 87Rb.

    lambda1 = 780 nm, lambda2 = 1.47 um and g2/g1 = 0.96. G1 is kept equal to
    that of rb87_preset; the relaxation rates of 5P3/2, 4D3/2 and 5P1/2 are
    approximate literature values. Omega is quoted in units of
    Gamma2 (4D3/2).
    """
    bare = rb87_preset()
    gamma_d1 = 2 * np.pi * 2.9e6
    gamma_4d = 2 * np.pi * 1e6
    base = bare._replace(
        G2=bare.G1 * 0.96 ** 2,
        Gamma1=2 * np.pi * 3e6,
        Gamma2=gamma_4d,
        lambda1=780e-9,
        lambda2=1.47e-6,
        Gamma_ref=gamma_4d)
    omega0 = omega0_over_gamma3 * gamma_d1
    return DressedConfig(
        base=base, Omega0=omega0, Gamma3=gamma_d1,
        Delta=np.sign(detuning_sign) * omega0)


def dressed_transform(d):
    """Effective two-level-ground-state medium of the dressed scheme.

    Only half of the ground-state atoms take part and both couplings drop by
    sqrt(2), so G_i -> G_i / 4: beta is quartered and both group velocities
    are quadrupled.

    Arguments:
        d: DressedConfig

    Returns:
        MediumConfig to be used with derive()
    """
    d.validate()
    return d.base._replace(G1=d.base.G1 / 4, G2=d.base.G2 / 4)


def omega_for_full_conversion(config):
    """Omega at which beta * L = pi / 2 (complete conversion for equal group
    velocities)."""
    config.validate()
    return 2 * np.sqrt(config.G1 * config.G2) * config.L / np.pi
