import json

import numpy as np
import pandas as pd
import pytest

from experiments.figures import SweepSpec, dressed_experiment, \
    oracle_compare, partial_conversion_experiment, qe_crossings, qe_peak, \
    setup_run, shapes_experiment, sweep_omega, timebin_experiment
from experiments.output import build_manifest, emit_table, manifest_path, \
    report_to_dict, write_csv, write_json, write_summary
from qfc.errors import ConfigurationError, ParameterDomainError
from qfc.medium import rb87_dressed_preset
from qfc.observables import ConversionReport, TimeBinReport, \
    conversion_report
from qfc.pulses import PulseSpec
from qfc.utils import load_yaml

T = 20e-9


class TestSweep:

    def test_small_omega_guarded(self, rb87):
        spec = SweepSpec(2.0, 10.0, 5, rb87, PulseSpec())
        with pytest.raises(ParameterDomainError, match='force'):
            sweep_omega(spec)

    def test_forced_rows_are_tagged(self, rb87):
        spec = SweepSpec(2.5, 3.5, 2, rb87, PulseSpec(), force=True)
        table = sweep_omega(spec, grid_points=2048, z_planes=2)
        assert list(table['out_of_validity']) == [True, False]
        assert all('kappa1L=' in flags for flags in table['validity_flags'])

    def test_single_point_matches_direct_run(self, rb87):
        spec = SweepSpec(8.0, 8.0, 1, rb87, PulseSpec())
        table = sweep_omega(spec, grid_points=2048, z_planes=3)
        params, f = setup_run(rb87, 8 * rb87.Gamma_ref, PulseSpec(), 2048)
        report, _ = conversion_report(f, params, 3)
        assert len(table) == 1
        assert table['qe'].iloc[0] == pytest.approx(report.qe, rel=1e-12)
        assert table['n1_out'].iloc[0] == pytest.approx(report.n1_out,
                                                        rel=1e-12)

    def test_columns_and_order(self, rb87):
        spec = SweepSpec(6.0, 18.0, 3, rb87, PulseSpec())
        table = sweep_omega(spec, grid_points=2048, z_planes=2)
        for column in ('omega_over_gamma', 'qe', 'n1_out', 'n2_out',
                       'conservation_residual', 'validity_flags'):
            assert column in table.columns
        assert np.all(np.diff(table['omega_over_gamma']) > 0)
        assert table['qe'].iloc[1] > table['qe'].iloc[0]

    def test_rows_independent_of_order(self, rb87):
        forward = sweep_omega(SweepSpec(6.0, 10.0, 2, rb87, PulseSpec()),
                              grid_points=1024, z_planes=2)
        single = sweep_omega(SweepSpec(10.0, 10.0, 1, rb87, PulseSpec()),
                             grid_points=1024, z_planes=2)
        assert forward['qe'].iloc[1] == single['qe'].iloc[0]

    def test_peak_and_crossings(self):
        table = pd.DataFrame({'omega_over_gamma': [4.0, 6.0, 8.0, 10.0],
                              'qe': [0.2, 0.6, 0.9, 0.4]})
        assert qe_peak(table) == (8.0, 0.9)
        assert qe_crossings(table) == pytest.approx([5.5, 9.6])

    @pytest.mark.slow
    def test_efficiency_curve(self, rb87):
        spec = SweepSpec(3.0, 30.0, 55, rb87, PulseSpec())
        table = sweep_omega(spec, grid_points=2048, z_planes=2)
        omega_peak, qe_max = qe_peak(table)
        assert 6.5 <= omega_peak <= 9.5
        assert 0.85 <= qe_max <= 1.0
        crossings = qe_crossings(table)
        below = [x for x in crossings if x < omega_peak]
        above = [x for x in crossings if x > omega_peak]
        assert 5.0 <= below[-1] <= 7.0
        assert 15.5 <= above[0] <= 19.5
        assert len(above) == 1
        assert table['conservation_residual'].max() <= 1e-3


class TestShapes:

    def test_gaussian(self, rb87):
        waveform, report = shapes_experiment('gaussian', 8.0, rb87,
                                             grid_points=2048, z_planes=3)
        assert list(waveform.columns) == ['t_over_T', 'abs2_phi1',
                                          'abs2_phi2', 'abs2_beta0_reference']
        assert report.shape_fidelity >= 0.98
        assert 0.9 <= report.qe <= 1.0
        dt = waveform['t_over_T'].iloc[1] - waveform['t_over_T'].iloc[0]
        assert waveform['abs2_phi2'].sum() * dt == pytest.approx(report.qe,
                                                                 rel=1e-3)
        assert waveform['abs2_beta0_reference'].sum() * dt == \
            pytest.approx(1.0, rel=1e-3)

    def test_double_hump(self, rb87):
        separation = 2.5 * T
        waveform, report = shapes_experiment(
            'double_hump', 8.0, rb87, separation=separation,
            grid_points=4096, z_planes=3)
        assert report.shape_fidelity >= 0.98
        t = waveform['t_over_T'].to_numpy()
        phi2 = waveform['abs2_phi2'].to_numpy()
        mid = (separation / 2 + report.delay2) / T
        left, right = phi2[t < mid].max(), phi2[t >= mid].max()
        assert left / right == pytest.approx(1.0, abs=0.05)
        assert np.interp(mid, t, phi2) < 0.5 * min(left, right)

    def test_beta_zero(self, rb87):
        waveform, report = shapes_experiment('gaussian', 8.0, rb87,
                                             grid_points=1024, z_planes=2,
                                             beta_zero=True)
        assert not waveform['abs2_phi2'].any()
        assert report.qe == 0
        assert np.allclose(waveform['abs2_phi1'],
                           waveform['abs2_beta0_reference'])

    def test_unknown_shape(self, rb87):
        with pytest.raises(ParameterDomainError):
            shapes_experiment('time_bin', 8.0, rb87)


class TestPartialConversion:

    def test_equal_split(self, rb87):
        results = partial_conversion_experiment([6.0, 18.0], rb87,
                                                grid_points=2048, z_planes=2)
        assert [omega for omega, _, _ in results] == [6.0, 18.0]
        (_, _, low), (_, _, high) = results
        for report in (low, high):
            assert report.r1 ** 2 == pytest.approx(0.5, abs=0.1)
            assert report.r2 ** 2 == pytest.approx(0.5, abs=0.1)
        assert low.delay1 > low.delay2
        assert high.delay2 > high.delay1

    def test_strong_drive(self, rb87):
        (_, _, report), = partial_conversion_experiment(
            [100.0], rb87, grid_points=1024, z_planes=2)
        assert report.qe < 0.05
        assert report.n1_out > report.n2_out


class TestTimeBin:

    def test_equal_superposition(self, rb87):
        report, waveform = timebin_experiment(2 ** -0.5, 2 ** -0.5, 10 * T,
                                              8.0, rb87)
        assert report.fidelity >= 0.999
        assert 'abs2_input' in waveform.columns

    def test_relative_phase(self, rb87):
        report, _ = timebin_experiment(2 ** -0.5, -2 ** -0.5, None, 8.0,
                                       rb87)
        assert abs(abs(np.angle(report.b_out / report.a_out)) - np.pi) < 1e-3

    def test_single_bin_matches_gaussian(self, rb87):
        report, _ = timebin_experiment(1.0, 0.0, 10 * T, 8.0, rb87)
        _, gaussian_report = shapes_experiment('gaussian', 8.0, rb87,
                                               grid_points=4096, z_planes=2)
        assert abs(report.a_out) ** 2 == pytest.approx(gaussian_report.qe,
                                                       rel=1e-4)


class TestDressed:

    def test_full_conversion(self):
        result = dressed_experiment(rb87_dressed_preset(), grid_points=2048,
                                    z_planes=3)
        assert result.report.qe >= 0.95
        assert result.labels['G2_over_G1'] == pytest.approx(0.92, abs=0.01)
        assert result.labels['lambda1_nm'] == pytest.approx(780)
        assert result.labels['lambda2_um'] == pytest.approx(1.47)
        assert result.params.betaL == pytest.approx(np.pi / 2)
        assert result.labels['omega_over_gamma'] == pytest.approx(
            result.params.Omega / result.medium.Gamma2)
        assert set(result.validity.flags) >= {'kappa1L', 'eit_product'}

    def test_invalid_dressing(self):
        with pytest.raises(ConfigurationError):
            dressed_experiment(rb87_dressed_preset(omega0_over_gamma3=2.0))


def test_oracle_compare(rb87):
    row = oracle_compare(rb87, 8.0, grid_points=2048)
    assert row['relative_l2'] <= 1e-3
    assert row['n2_oracle'] == pytest.approx(row['n2_analytic'], abs=1e-4)


class TestOutput:

    def test_csv_format(self, tmp_path):
        fname = write_csv(pd.DataFrame({'x': [1 / 3], 'y': ['a']}),
                          tmp_path / 'table.csv')
        with open(fname, newline='') as f:
            text = f.read()
        assert text == 'x,y\n0.33333333333333331,a\n'

    def test_report_to_dict(self):
        report = ConversionReport(
            n1_out=np.float64(0.5), n2_out=0.5, qe=0.5, r1=0.7, r2=0.7,
            conservation_residual=1e-9, delay1=np.nan, delay2=1e-9,
            shape_fidelity=0.99)
        d = report_to_dict(report)
        assert d['delay1'] is None
        assert isinstance(d['n1_out'], float)
        timebin = report_to_dict(TimeBinReport(
            a_out=0.5 + 0.25j, b_out=0j, fidelity=1.0, leakage=0.0))
        assert timebin['a_out'] == {'re': 0.5, 'im': 0.25}

    def test_manifest_beside_output(self, tmp_path, rb87, params_8):
        manifest = build_manifest('sweep', {'medium': rb87}, params_8,
                                  notes=['extra'])
        fname = emit_table(pd.DataFrame({'x': [1.0]}), tmp_path / 'out.csv',
                           manifest)
        path = manifest_path(fname)
        assert path.name == 'out.csv.manifest.yaml'
        loaded = load_yaml(path)
        assert loaded['command'] == 'sweep'
        assert loaded['derived']['v1'] == pytest.approx(1.25e4)
        assert loaded['config']['medium']['L'] == pytest.approx(rb87.L)
        assert loaded['notes'][-1] == 'extra'
        assert 'Omega_ref' in loaded['notes'][0]
        assert loaded['tool_version']

    def test_json_and_summary(self, tmp_path):
        fname = write_json({'value': np.float64(2.0), 'z': 1j},
                           tmp_path / 'report.json')
        with open(fname) as f:
            assert json.load(f) == {'value': 2.0, 'z': {'re': 0.0, 'im': 1.0}}
        summary = write_summary(tmp_path / 'summary.txt',
                                {'Report': {'qe': 0.123456789}},
                                args_dict={'command': 'sweep'})
        assert 'Program arguments' in summary
        assert 'qe:' in summary and '0.123457' in summary
        assert (tmp_path / 'summary.txt').read_text() == summary + '\n'
