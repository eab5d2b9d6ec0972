"""
Opções e tratamento de erros compartilhados pelos subcomandos.
"""
import traceback
from contextlib import contextmanager
from typing import Optional

import click

from ...config.scenario import ScenarioConfig, load_scenario
from ...core.exceptions import FransonSimError
from ...core.models import OutputFormat
from ...services.output import ResultWriter, create_result_writer


def output_options(func):
    """--config, --out, --format e --timings."""
    func = click.option('--timings', is_flag=True, help='Inclui wall_time_ms nos resumos')(func)
    func = click.option('--format', 'output_format', type=click.Choice(['csv', 'json', 'both']),
                        help='Formato de saída (padrão: FRANSON_OUTPUT_FORMAT)')(func)
    func = click.option('--out', 'output_dir', type=click.Path(file_okay=False),
                        help='Diretório de saída (padrão: FRANSON_OUTPUT_DIR)')(func)
    func = click.option('--config', 'config_path', type=click.Path(dir_okay=False),
                        help='Arquivo de cenário key=value')(func)
    return func


def load_config(config_path: Optional[str]) -> ScenarioConfig:
    return load_scenario(config_path) if config_path else ScenarioConfig()


def make_writer(output_dir: Optional[str], output_format: Optional[str], timings: bool) -> ResultWriter:
    return create_result_writer(
        output_dir=output_dir,
        output_format=OutputFormat(output_format) if output_format else None,
        include_timing=timings,
    )


@contextmanager
def report_errors(ctx: click.Context, scenario: str):
    """Converte FransonSimError em mensagem ❌ e código de saída próprio."""
    try:
        yield
    except FransonSimError as e:
        click.echo(f"❌ {scenario}: {e}", err=True)
        if (ctx.obj or {}).get('verbose', False):
            traceback.print_exc()
        ctx.exit(e.exit_code)
