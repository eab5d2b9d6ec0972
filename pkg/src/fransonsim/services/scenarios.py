"""
Orquestração de cenários: varredura clássica, correlação quântica,
varreduras de parâmetros e o conjunto de varreduras de referência.
"""
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config.library import get_data_library
from ..config.scenario import MAX_SIGMA_C_RATIO, MIN_SIGMA_C_RATIO, ScenarioConfig
from ..config.settings import ComputeSettings
from ..core.exceptions import ComputationError, ConfigurationError, FransonSimError, UsageError
from ..core.models import (
    CorrelationTrace, DistributionSummary, MonochromatorSpec, RunSummary, ScanSetting,
    TwoTimeDistribution
)
from ..core.units import fwhm_from_variance
from .analysis import check_violation, fit_gaussian_trace
from .biphoton import quantum_variance_general, simulate_two_time, summarize_distribution
from .shg import classical_variance_general, default_delays, delay_scan

logger = logging.getLogger(__name__)

SWEEP_PARAMETERS = ("beta", "sigma_c_ratio", "mono_fwhm")
SCENARIO_KINDS = ("classical", "quantum")


class SweepStats:
    """Estatísticas de uma varredura de parâmetros."""

    def __init__(self):
        self._lock = threading.Lock()
        self.reset()

    def reset(self):
        """Reinicia contadores."""
        self.successful_runs: List[str] = []
        self.failed_runs: List[str] = []
        self.failures_by_type: Dict[str, int] = {}
        self.start_time = time.perf_counter()

    def record_success(self, label: str):
        with self._lock:
            self.successful_runs.append(label)

    def record_failure(self, label: str, failure_type: str):
        with self._lock:
            self.failed_runs.append(label)
            self.failures_by_type[failure_type] = self.failures_by_type.get(failure_type, 0) + 1

    @property
    def successful_count(self) -> int:
        return len(self.successful_runs)

    @property
    def failed_count(self) -> int:
        return len(self.failed_runs)

    @property
    def total_processed(self) -> int:
        return self.successful_count + self.failed_count

    @property
    def success_rate(self) -> float:
        total = self.total_processed
        return (self.successful_count / total * 100) if total > 0 else 0.0

    @property
    def processing_time_seconds(self) -> float:
        return time.perf_counter() - self.start_time


def _elapsed_ms(start: float) -> float:
    return (time.perf_counter() - start) * 1e3


def scenario_delays(config: ScenarioConfig) -> np.ndarray:
    """Atrasos do cenário: janela explícita ou ±5 FWHM esperadas."""
    if config.delay_span is None:
        return default_delays(config.sigma, config.sigma_s, config.beta1, config.beta2, count=config.delay_count)
    step = 2.0 * config.delay_span / (config.delay_count - 1)
    return (np.arange(config.delay_count) - (config.delay_count - 1) / 2.0) * step


class ScenarioRunner:
    """Executa cenários nomeados a partir de um ScenarioConfig."""

    def __init__(self, compute: Optional[ComputeSettings] = None):
        self.compute = compute or ComputeSettings()

    def run_classical_scan(
        self,
        config: ScenarioConfig,
        scenario: str = "classical-scan"
    ) -> Tuple[CorrelationTrace, RunSummary]:
        """
        Varredura de atraso clássica, ajuste gaussiano e comparação com a forma fechada.

        O veredito usa a variância ajustada, a dispersão média (β1+β2)/2 vista
        pela coordenada de atraso e a variância inicial 1/σ².
        """
        start = time.perf_counter()
        logger.info(f"🔬 {scenario}: β1={config.beta1:g} fs², β2={config.beta2:g} fs²")

        sigma, sigma_s = config.sigma, config.sigma_s
        mono = MonochromatorSpec(center=2.0 * config.omega0, sigma_s=sigma_s)
        trace = delay_scan(
            sigma, config.omega0, config.beta1, config.beta2, mono,
            delays=scenario_delays(config),
            coverage=config.coverage,
            count=config.grid_count,
            workers=self.compute.workers,
            chunk_size=self.compute.scan_chunk_size,
            max_detection_points=self.compute.max_detection_points,
        )
        fit = fit_gaussian_trace(trace)

        closed_form = classical_variance_general(sigma, sigma_s, config.beta1, config.beta2)
        initial = 1.0 / sigma ** 2
        report = check_violation(
            fit.variance, initial, (config.beta1 + config.beta2) / 2.0, config.violation_tolerance
        )

        summary = RunSummary(
            scenario=scenario,
            fitted_fwhm=fit.fwhm,
            closed_form_fwhm=fwhm_from_variance(closed_form),
            variance=fit.variance,
            bound=report.bound,
            violated=report.violated,
            wall_time_ms=_elapsed_ms(start),
            config_echo=config.to_echo(),
            closed_form_variance=closed_form,
            initial_variance=initial,
        )
        logger.info(
            f"✅ {scenario}: FWHM ajustada {summary.fitted_fwhm:.2f} fs "
            f"(forma fechada {summary.closed_form_fwhm:.2f} fs)"
        )
        return trace, summary

    def run_quantum_correlation(
        self,
        config: ScenarioConfig,
        scenario: str = "quantum-correlation"
    ) -> Tuple[TwoTimeDistribution, DistributionSummary, RunSummary]:
        """
        Distribuição de coincidências com σ_c = sigma_c_ratio·σ e veredito da desigualdade.

        O limite usa β1 e a variância inicial 1/σ², a forma em que a
        desigualdade é enunciada para β2 = −β1.
        """
        if not MIN_SIGMA_C_RATIO <= config.sigma_c_ratio <= MAX_SIGMA_C_RATIO:
            raise ConfigurationError(
                f"sigma_c_ratio deve estar em [{MIN_SIGMA_C_RATIO:g}, {MAX_SIGMA_C_RATIO:g}]",
                key="sigma_c_ratio"
            )

        start = time.perf_counter()
        logger.info(f"🔬 {scenario}: σ_c/σ={config.sigma_c_ratio:g}, β1={config.beta1:g} fs²")

        sigma, sigma_c = config.sigma, config.sigma_c
        distribution = simulate_two_time(
            config.omega0, sigma, sigma_c, config.beta1, config.beta2,
            count=config.joint_grid_count, workers=self.compute.fft_workers,
        )
        closed_form = quantum_variance_general(sigma, sigma_c, config.beta1, config.beta2)
        details = summarize_distribution(distribution, closed_form)

        initial = 1.0 / sigma ** 2
        report = check_violation(details.difference_variance, initial, config.beta1, config.violation_tolerance)

        summary = RunSummary(
            scenario=scenario,
            fitted_fwhm=fwhm_from_variance(details.difference_variance),
            closed_form_fwhm=fwhm_from_variance(closed_form),
            variance=details.difference_variance,
            bound=report.bound,
            violated=report.violated,
            wall_time_ms=_elapsed_ms(start),
            config_echo=config.to_echo(),
            closed_form_variance=closed_form,
            initial_variance=initial,
        )
        verdict = "viola" if report.violated else "não viola"
        logger.info(
            f"✅ {scenario}: Δτ_Q²={details.difference_variance:.4g} fs² {verdict} o limite {report.bound:.4g} fs²"
        )
        return distribution, details, summary

    def _run(self, kind: str, config: ScenarioConfig, scenario: str) -> RunSummary:
        if kind == "classical":
            return self.run_classical_scan(config, scenario)[1]
        return self.run_quantum_correlation(config, scenario)[2]

    def run_sweep(
        self,
        config: ScenarioConfig,
        sweep_parameter: str,
        values: Sequence[float],
        scenario: Optional[str] = None,
        workers: Optional[int] = None
    ) -> Tuple[List[RunSummary], SweepStats]:
        """
        Uma execução por valor, linhas na ordem dada.

        beta ajusta β1 = v e β2 = −v. Todas as linhas são tentadas; se alguma
        falhar a varredura termina com ComputationError.
        """
        if sweep_parameter not in SWEEP_PARAMETERS:
            raise UsageError(f"Parâmetro de varredura desconhecido {sweep_parameter!r}; use {', '.join(SWEEP_PARAMETERS)}")
        if not values:
            raise UsageError("Lista de valores da varredura está vazia")

        kind = scenario or ("quantum" if sweep_parameter == "sigma_c_ratio" else "classical")
        if kind not in SCENARIO_KINDS:
            raise UsageError(f"Cenário desconhecido {kind!r}; use {' ou '.join(SCENARIO_KINDS)}")

        rows = []
        for value in values:
            value = float(value)
            if sweep_parameter == "beta":
                row_config = config.with_overrides(beta1=value, beta2=-value)
            else:
                row_config = config.with_overrides(**{sweep_parameter: value})
            rows.append((f"sweep-{sweep_parameter}={value!r}", row_config))

        workers = workers or self.compute.workers
        # paralelismo só entre linhas; cada linha roda sequencialmente
        row_runner = ScenarioRunner(replace(self.compute, workers=1)) if workers > 1 else self
        stats = SweepStats()
        logger.info(f"📊 Varredura de {sweep_parameter} ({kind}): {len(rows)} valores, {workers} workers")

        def run_row(row: Tuple[str, ScenarioConfig]) -> Optional[RunSummary]:
            label, row_config = row
            try:
                summary = row_runner._run(kind, row_config, label)
            except FransonSimError as e:
                stats.record_failure(label, type(e).__name__)
                logger.error(f"❌ {label}: {e}")
                return None
            stats.record_success(label)
            return summary

        if workers > 1 and len(rows) > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                summaries = list(executor.map(run_row, rows))
        else:
            summaries = [run_row(row) for row in rows]

        logger.info(
            f"📊 Varredura concluída: {stats.successful_count}/{stats.total_processed} "
            f"({stats.success_rate:.0f}%) em {stats.processing_time_seconds:.1f}s"
        )
        if stats.failed_count:
            raise ComputationError(
                f"{stats.failed_count} de {stats.total_processed} execuções falharam: {', '.join(stats.failed_runs)}"
            )
        return summaries, stats

    def reproduce_fig3(
        self,
        config: Optional[ScenarioConfig] = None
    ) -> List[Tuple[ScanSetting, CorrelationTrace, RunSummary]]:
        """
        As quatro varreduras de referência (sem dispersão, dispersão em um braço,
        no outro e cancelada), anotadas com a largura medida em laboratório.
        """
        config = config or ScenarioConfig()
        results = []
        for setting in get_data_library().get_reference_scans():
            scan_config = config.with_overrides(beta1=setting.beta1, beta2=setting.beta2)
            trace, summary = self.run_classical_scan(scan_config, scenario=setting.label)
            note = f"modelo gaussiano {summary.fitted_fwhm:.1f} fs"
            if setting.reference_fwhm is not None:
                note += f"; laboratório {setting.reference_fwhm:.1f} fs"
            if setting.description:
                note += f" ({setting.description})"
            summary = replace(summary, reference_fwhm=setting.reference_fwhm, note=note)
            results.append((setting, trace, summary))
        return results


def create_scenario_runner() -> ScenarioRunner:
    """Cria instância do executor com configurações padrão."""
    from ..config.settings import get_settings

    return ScenarioRunner(get_settings().compute)
