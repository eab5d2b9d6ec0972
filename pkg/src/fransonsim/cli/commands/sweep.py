"""
Comando sweep: uma execução por valor de parâmetro, tabela única.
"""
from typing import Optional

import click

from ...core.exceptions import UsageError
from ...services.scenarios import SWEEP_PARAMETERS, create_scenario_runner
from .common import load_config, make_writer, output_options, report_errors


def parse_values(raw: str):
    """Lista separada por vírgulas ('0,1e3,1e4')."""
    try:
        return [float(item) for item in raw.split(',') if item.strip()]
    except ValueError:
        raise UsageError(f"Valores inválidos: {raw!r} (use números separados por vírgula)")


@click.command('sweep')
@click.argument('parameter', type=click.Choice(SWEEP_PARAMETERS))
@click.argument('values')
@output_options
@click.option('--scenario', type=click.Choice(['classical', 'quantum']),
              help='Tipo de execução (padrão: quantum para sigma_c_ratio, classical para os demais)')
@click.option('--workers', type=click.IntRange(min=1), help='Execuções simultâneas (padrão: FRANSON_WORKERS)')
@click.pass_context
def sweep_cli(ctx, parameter: str, values: str, config_path: Optional[str], output_dir: Optional[str],
              output_format: Optional[str], timings: bool, scenario: Optional[str], workers: Optional[int]):
    """
    Varre PARAMETER sobre VALUES (beta ajusta β1 = v e β2 = −v).

    Exemplo: franson-sim sweep beta 0,1e3,1e4,1e5
    """
    with report_errors(ctx, f'sweep {parameter}'):
        config = load_config(config_path)
        summaries, stats = create_scenario_runner().run_sweep(
            config, parameter, parse_values(values), scenario=scenario, workers=workers
        )
        paths = make_writer(output_dir, output_format, timings).write_table(f"sweep_{parameter}", summaries)

        click.echo(f"📊 {parameter:>14} | FWHM ajustada | forma fechada | violada")
        for summary in summaries:
            value = summary.scenario.split('=', 1)[1]
            click.echo(f"   {value:>14} | {summary.fitted_fwhm:10.3f} fs | {summary.closed_form_fwhm:10.3f} fs | {summary.violated}")
        click.echo(f"✅ {stats.successful_count} execuções em {stats.processing_time_seconds:.1f}s")
        click.echo(f"💾 {len(paths)} arquivos gravados")
