"""
Gravação determinística de resultados (CSV para gráficos, JSON para resumos).
"""
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import pandas as pd

from ..core.models import CorrelationTrace, DistributionSummary, OutputFormat, RunSummary
from ..utils.file_utils import ensure_directory, format_float, generate_filename, get_file_size_mb

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ("tau_fs", "intensity_norm")
SLICE_COLUMNS = ("t1_fs", "t2_fs", "probability")


class ResultWriter:
    """Grava traços, recortes 2D, resumos e tabelas sob um diretório de saída."""

    def __init__(
        self,
        output_dir: Path,
        output_format: OutputFormat = OutputFormat.BOTH,
        significant_digits: int = 9,
        include_timing: bool = False
    ):
        self.output_dir = Path(output_dir)
        self.output_format = output_format
        self.significant_digits = significant_digits
        self.include_timing = include_timing

    # Helpers

    def _path(self, scenario: str, kind: str, extension: str) -> Path:
        return ensure_directory(self.output_dir) / generate_filename(scenario, kind, extension)

    def _round(self, value):
        if isinstance(value, float):
            return format_float(value, self.significant_digits)
        return value

    def _write_csv(self, frame: pd.DataFrame, path: Path) -> Path:
        frame.to_csv(path, index=False, float_format=f"%.{self.significant_digits}g")
        logger.debug(f"CSV salvo: {path} ({get_file_size_mb(path):.3f} MB)")
        return path

    def _write_json(self, payload: Dict[str, object], path: Path) -> Path:
        with open(path, 'w', encoding='utf-8') as f:
            f.write(json.dumps(payload, indent=2, ensure_ascii=False))
            f.write("\n")
        logger.debug(f"JSON salvo: {path}")
        return path

    def _record(self, summary: RunSummary) -> Dict[str, object]:
        return {key: self._round(value) for key, value in summary.to_record(self.include_timing).items()}

    # API

    def write_config_echo(self, scenario: str, echo: Dict[str, str]) -> Path:
        """Eco key=value da configuração; relê-lo reproduz a execução."""
        path = self._path(scenario, "config", ".txt")
        path.write_text("".join(f"{key}={value}\n" for key, value in echo.items()), encoding="utf-8")
        return path

    def write_run(
        self,
        summary: RunSummary,
        trace: Optional[CorrelationTrace] = None,
        distribution: Optional[DistributionSummary] = None,
        slice_frame: Optional[pd.DataFrame] = None
    ) -> List[Path]:
        """
        Grava uma execução de cenário.

        Em formato csv (ou both) o traço e o recorte 2D vão para CSV; em
        formato json apenas, o traço é embutido no resumo JSON.
        """
        scenario = summary.scenario
        paths: List[Path] = []

        if self.output_format.writes_csv:
            if trace is not None:
                frame = pd.DataFrame({TRACE_COLUMNS[0]: trace.delays, TRACE_COLUMNS[1]: trace.intensities})
                paths.append(self._write_csv(frame, self._path(scenario, "trace", ".csv")))
            if slice_frame is not None:
                paths.append(self._write_csv(slice_frame.loc[:, list(SLICE_COLUMNS)], self._path(scenario, "slice", ".csv")))
            paths.append(self._write_csv(pd.DataFrame([self._record(summary)]), self._path(scenario, "summary", ".csv")))

        if self.output_format.writes_json:
            payload = self._record(summary)
            if distribution is not None:
                payload["distribution"] = {
                    key: self._round(float(value)) if key != "grid_count" else value
                    for key, value in vars(distribution).items()
                }
            if trace is not None and not self.output_format.writes_csv:
                payload["trace"] = {
                    TRACE_COLUMNS[0]: [self._round(float(v)) for v in trace.delays],
                    TRACE_COLUMNS[1]: [self._round(float(v)) for v in trace.intensities],
                }
            payload["config_echo"] = dict(summary.config_echo)
            paths.append(self._write_json(payload, self._path(scenario, "summary", ".json")))

        paths.append(self.write_config_echo(scenario, summary.config_echo))
        logger.info(f"💾 {scenario}: {len(paths)} arquivos em {self.output_dir}")
        return paths

    def write_report(self, name: str, rows: Sequence[Dict[str, object]]) -> List[Path]:
        """Relatório genérico de linhas escalares (ex.: veredito da desigualdade)."""
        rounded = [{key: self._round(value) for key, value in row.items()} for row in rows]
        paths: List[Path] = []
        if self.output_format.writes_csv:
            paths.append(self._write_csv(pd.DataFrame(rounded), self._path(name, "report", ".csv")))
        if self.output_format.writes_json:
            paths.append(self._write_json({"rows": rounded}, self._path(name, "report", ".json")))
        return paths

    def write_table(self, name: str, summaries: Sequence[RunSummary]) -> List[Path]:
        """Tabela com uma linha por execução, na ordem recebida."""
        records = [self._record(summary) for summary in summaries]
        paths: List[Path] = []
        if self.output_format.writes_csv:
            paths.append(self._write_csv(pd.DataFrame(records), self._path(name, "table", ".csv")))
        if self.output_format.writes_json:
            paths.append(self._write_json({"rows": records}, self._path(name, "table", ".json")))
        logger.info(f"📊 Tabela {name}: {len(records)} linhas")
        return paths


def create_result_writer(
    output_dir: Optional[str] = None,
    output_format: Optional[OutputFormat] = None,
    include_timing: bool = False
) -> ResultWriter:
    """Cria instância do gravador com configurações padrão."""
    from ..config.settings import get_settings

    settings = get_settings().output
    return ResultWriter(
        output_dir=Path(output_dir or settings.output_dir),
        output_format=output_format or settings.output_format,
        significant_digits=settings.significant_digits,
        include_timing=include_timing,
    )
