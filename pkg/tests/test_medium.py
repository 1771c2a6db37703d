import numpy as np
import pytest

from qfc.errors import ConfigurationError, ParameterDomainError
from qfc.medium import DressedConfig, Status, broadened_width, derive, \
    dressed_transform, format_flags, omega_for_full_conversion, \
    rb87_dressed_preset, validity, worst_status

T = 20e-9


class TestDerive:

    def test_reference_velocities(self, rb87, params_8):
        assert params_8.v1 == pytest.approx(1.25e4, rel=1e-12)
        assert params_8.v2 == pytest.approx(6.25e3, rel=1e-12)
        assert params_8.tau1 == pytest.approx(8e-9, rel=1e-12)
        assert params_8.tau2 == pytest.approx(16e-9, rel=1e-12)
        assert params_8.max_delay == pytest.approx(16e-9, rel=1e-12)

    def test_coupling(self, rb87, params_8):
        omega_ref = 8 * rb87.Gamma_ref
        expected = omega_ref / np.sqrt(1.25e4 * 6.25e3)
        assert params_8.beta == pytest.approx(expected, rel=1e-12)
        assert params_8.betaL == pytest.approx(1.706, abs=1e-3)

    @pytest.mark.parametrize('factor', [0.5, 2.0, 3.0])
    def test_scaling_with_omega(self, rb87, params_8, factor):
        params = derive(rb87, factor * params_8.Omega)
        assert params.v1 == pytest.approx(params_8.v1 * factor ** 2)
        assert params.beta == pytest.approx(params_8.beta / factor)

    def test_derived_constants(self, params_8):
        assert params_8.kappa1L == pytest.approx(0.1508, abs=1e-4)
        assert params_8.kappa2L == pytest.approx(0.1508, abs=1e-4)
        assert params_8.alpha == pytest.approx(150.9, abs=0.1)

    @pytest.mark.parametrize('omega', [0.0, -1.0, np.inf, np.nan])
    def test_bad_omega(self, rb87, omega):
        with pytest.raises(ParameterDomainError):
            derive(rb87, omega)

    @pytest.mark.parametrize('field', ['G1', 'L', 'atom_density'])
    def test_bad_medium(self, rb87, field):
        with pytest.raises(ParameterDomainError, match=field):
            derive(rb87._replace(**{field: -1.0}), 8 * rb87.Gamma_ref)

    def test_equal_velocities(self, equal_velocity_medium, rb87):
        params = derive(equal_velocity_medium, 8 * rb87.Gamma_ref)
        assert params.equal_velocities
        assert not derive(rb87, 8 * rb87.Gamma_ref).equal_velocities

    def test_swapped_medium(self, rb87, params_8):
        swapped = derive(rb87.swapped(), params_8.Omega)
        assert swapped.v1 == pytest.approx(params_8.v2)
        assert swapped.v2 == pytest.approx(params_8.v1)
        assert swapped.beta == pytest.approx(params_8.beta)
        assert params_8.swapped().tau1 == params_8.tau2

    def test_with_coupling(self, params_8):
        uncoupled = params_8.with_coupling(0.0)
        assert uncoupled.beta == 0
        assert uncoupled.betaL == 0
        assert uncoupled.v1 == params_8.v1


class TestValidity:

    def test_rb87_flags(self, rb87):
        report = validity(rb87, 8 * rb87.Gamma_ref, T)
        assert report.flags['kappa1L'] is Status.WARN
        assert report.flags['kappa2L'] is Status.WARN
        assert report.flags['eit_product'] is Status.PASS
        assert report.flags['dispersion_ratio1'] is Status.WARN
        assert report.eit_product == pytest.approx(1.96, abs=0.01)
        assert report.dispersion_ratio1 == pytest.approx(2.12, abs=0.01)
        assert worst_status(report) is Status.WARN

    def test_flags_never_raise(self, rb87):
        report = validity(rb87, 0.5 * rb87.Gamma_ref, T)
        assert worst_status(report) is Status.FAIL
        assert 'kappa1L=fail' in format_flags(report)

    def test_clean_regime(self, rb87):
        report = validity(rb87._replace(Gamma1=1.0, Gamma2=1.0),
                          8 * rb87.Gamma_ref, 1e-6)
        assert worst_status(report) is Status.PASS

    def test_broadened_width(self, rb87, params_8):
        report = validity(rb87, params_8.Omega, T)
        assert report.broadened_width2 == pytest.approx(
            broadened_width(T, params_8.tau2, params_8.Omega))
        assert report.broadened_width2 > report.broadened_width1 > T

    def test_flags_monotone_in_length(self, rb87):
        order = [Status.PASS, Status.WARN, Status.FAIL]
        reports = [validity(rb87._replace(L=L), 8 * rb87.Gamma_ref, T)
                   for L in (1e-5, 3e-5, 1e-4, 3e-4, 1e-3)]
        for key in reports[0].flags:
            ranks = [order.index(report.flags[key]) for report in reports]
            assert ranks == sorted(ranks), key
        assert [r.flags['kappa1L'] for r in reports[::2]] == order

    def test_bad_pulse_width(self, rb87):
        with pytest.raises(ParameterDomainError):
            validity(rb87, 8 * rb87.Gamma_ref, 0.0)


class TestDressed:

    def test_preset(self):
        d = rb87_dressed_preset()
        assert abs(d.base.G2 / d.base.G1 - 0.96 ** 2) <= 1e-12
        assert d.base.Gamma_ref == d.base.Gamma2
        assert d.Omega0 / d.Gamma3 == pytest.approx(20)
        assert d.Delta == pytest.approx(d.Omega0)
        assert rb87_dressed_preset(detuning_sign=-1).Delta == \
            pytest.approx(-d.Omega0)

    def test_transform(self):
        d = rb87_dressed_preset()
        medium = dressed_transform(d)
        assert medium.G1 == pytest.approx(d.base.G1 / 4)
        assert medium.G2 == pytest.approx(d.base.G2 / 4)
        assert medium.lambda2 == pytest.approx(1.47e-6)
        omega = 8 * d.base.Gamma_ref
        bare, dressed = derive(d.base, omega), derive(medium, omega)
        assert dressed.beta == pytest.approx(bare.beta / 4)
        assert dressed.v1 == pytest.approx(bare.v1 * 4)

    def test_weak_dressing_rejected(self):
        with pytest.raises(ConfigurationError, match='Omega0/Gamma3'):
            dressed_transform(rb87_dressed_preset(omega0_over_gamma3=5.0))

    def test_detuning_mismatch_rejected(self):
        d = rb87_dressed_preset()
        bad = DressedConfig(base=d.base, Omega0=d.Omega0, Gamma3=d.Gamma3,
                            Delta=0.5 * d.Omega0)
        with pytest.raises(ConfigurationError, match='Delta'):
            dressed_transform(bad)

    def test_full_conversion_drive(self, rb87):
        for medium in (rb87, dressed_transform(rb87_dressed_preset())):
            omega = omega_for_full_conversion(medium)
            assert derive(medium, omega).betaL == pytest.approx(np.pi / 2)
