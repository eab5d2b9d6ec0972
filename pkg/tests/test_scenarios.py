"""
Testes de orquestração: cenários nomeados, varreduras e varreduras de referência.
"""
import numpy as np
import pytest

from fransonsim.config.settings import ComputeSettings
from fransonsim.core.exceptions import ComputationError, ConfigurationError, UsageError
from fransonsim.services.scenarios import (
    ScenarioRunner, SweepStats, create_scenario_runner, scenario_delays
)
from fransonsim.services.shg import classical_variance_general
from fransonsim.core.units import fwhm_from_variance


@pytest.fixture
def runner():
    return ScenarioRunner(ComputeSettings())


class TestClassicalScan:

    def test_transform_limited(self, runner, config):
        trace, summary = runner.run_classical_scan(config.with_overrides(beta1=0.0, beta2=0.0))

        assert summary.fitted_fwhm == pytest.approx(19.76, rel=0.02)
        assert summary.relative_fwhm_error < 0.02
        assert not summary.violated
        assert trace.delays.size == config.delay_count

    def test_cancellation(self, runner, config):
        _, reference = runner.run_classical_scan(config.with_overrides(beta1=0.0, beta2=0.0))
        _, cancelled = runner.run_classical_scan(config)

        assert cancelled.fitted_fwhm == pytest.approx(reference.fitted_fwhm, rel=0.005)
        assert not cancelled.violated
        assert cancelled.config_echo["beta2"] == "-850.0"

    def test_single_arm(self, runner, config):
        _, summary = runner.run_classical_scan(config.with_overrides(beta2=0.0))

        assert summary.fitted_fwhm == pytest.approx(239.3, rel=0.02)
        assert summary.closed_form_variance == pytest.approx(
            classical_variance_general(config.sigma, config.sigma_s, 850.0, 0.0)
        )
        assert not summary.violated

    def test_explicit_delay_span(self, config):
        delays = scenario_delays(config.with_overrides(delay_span=100.0, delay_count=101))

        assert delays.size == 101
        assert delays[0] == pytest.approx(-100.0)
        assert delays[-1] == pytest.approx(100.0)


class TestQuantumCorrelation:

    def test_entangled_state_violates(self, runner, config):
        distribution, details, summary = runner.run_quantum_correlation(config)

        assert details.relative_error < 0.02
        assert summary.variance == pytest.approx(72.5, rel=0.02)
        assert summary.violated
        assert np.sum(distribution.values) * distribution.cell_area == pytest.approx(1.0)

    def test_separable_state_does_not_violate(self, runner, config):
        _, details, summary = runner.run_quantum_correlation(config.with_overrides(sigma_c_ratio=10.0))

        assert details.relative_error < 0.05
        assert not summary.violated

    def test_no_dispersion_no_violation(self, runner, config):
        _, _, summary = runner.run_quantum_correlation(config.with_overrides(beta1=0.0, beta2=0.0))

        assert summary.fitted_fwhm == pytest.approx(fwhm_from_variance(1.0 / config.sigma ** 2), rel=0.01)
        assert not summary.violated

    @pytest.mark.parametrize("ratio", [1e-3, 20.0])
    def test_ratio_out_of_range(self, runner, config, ratio):
        with pytest.raises(ConfigurationError):
            runner.run_quantum_correlation(config.with_overrides(sigma_c_ratio=ratio))


class TestSweep:

    def test_rows_keep_given_order(self, runner, config):
        summaries, stats = runner.run_sweep(config, "beta", [1e3, 0.0, 5e3], workers=2)

        assert [s.scenario for s in summaries] == [
            "sweep-beta=1000.0", "sweep-beta=0.0", "sweep-beta=5000.0"
        ]
        assert stats.successful_count == 3
        assert stats.success_rate == 100.0
        widths = [s.fitted_fwhm for s in summaries]
        assert max(widths) == pytest.approx(min(widths), rel=0.01)

    def test_single_value_matches_direct_run(self, runner, config):
        summaries, _ = runner.run_sweep(config, "beta", [850.0])
        _, direct = runner.run_classical_scan(config)

        assert summaries[0].fitted_fwhm == direct.fitted_fwhm
        assert summaries[0].config_echo == direct.config_echo

    def test_sigma_c_ratio_runs_quantum(self, runner, config):
        summaries, _ = runner.run_sweep(config, "sigma_c_ratio", [0.01, 10.0])

        assert [s.violated for s in summaries] == [True, False]

    def test_failed_rows_abort_sweep(self, runner, config):
        with pytest.raises(ComputationError, match="1 de 2"):
            runner.run_sweep(config, "sigma_c_ratio", [0.01, 20.0])

    @pytest.mark.parametrize("parameter, values, scenario", [
        ("gamma", [1.0], None),
        ("beta", [], None),
        ("beta", [1.0], "hybrid"),
    ])
    def test_usage_errors(self, runner, config, parameter, values, scenario):
        with pytest.raises(UsageError):
            runner.run_sweep(config, parameter, values, scenario=scenario)


class TestReferenceScans:

    def test_four_settings(self, runner):
        results = runner.reproduce_fig3()
        widths = {setting.label: summary.fitted_fwhm for setting, _, summary in results}

        assert list(widths) == ["transform_limited", "arm1_dispersed", "arm2_dispersed", "cancelled"]
        assert widths["transform_limited"] == pytest.approx(19.76, rel=0.02)
        assert widths["cancelled"] == pytest.approx(widths["transform_limited"], rel=0.005)
        assert widths["arm1_dispersed"] == pytest.approx(239.3, rel=0.02)
        assert widths["arm2_dispersed"] == pytest.approx(239.3, rel=0.02)

    def test_annotated_with_laboratory_widths(self, runner):
        for setting, _, summary in runner.reproduce_fig3():
            assert summary.reference_fwhm == setting.reference_fwhm
            assert "laboratório" in summary.note
            assert summary.scenario == setting.label


class TestSweepStats:

    def test_counters(self):
        stats = SweepStats()
        stats.record_success("a")
        stats.record_success("b")
        stats.record_failure("c", "CoverageError")

        assert stats.total_processed == 3
        assert stats.success_rate == pytest.approx(200.0 / 3.0)
        assert stats.failures_by_type == {"CoverageError": 1}
        assert stats.processing_time_seconds >= 0.0

    def test_factory_uses_settings(self, monkeypatch):
        from fransonsim.config.settings import reload_settings

        monkeypatch.setenv("FRANSON_WORKERS", "3")
        reload_settings()
        assert create_scenario_runner().compute.workers == 3
