"""
Comando reproduce-fig3 (alias reference-scans): as quatro configurações de dispersão de referência.
"""
from typing import Optional

import click

from ...services.scenarios import create_scenario_runner
from .common import load_config, make_writer, output_options, report_errors


@click.command('reproduce-fig3')
@output_options
@click.pass_context
def reproduce_fig3_cli(ctx, config_path: Optional[str], output_dir: Optional[str],
                        output_format: Optional[str], timings: bool):
    """Gera os quatro traços de referência e a tabela modelo × laboratório."""
    with report_errors(ctx, 'reproduce-fig3'):
        config = load_config(config_path)
        writer = make_writer(output_dir, output_format, timings)

        results = create_scenario_runner().reproduce_fig3(config)
        for _, trace, summary in results:
            writer.write_run(summary, trace=trace)
        paths = writer.write_table("reference_scans", [summary for _, _, summary in results])

        click.echo("📊 Varreduras de referência")
        click.echo("-" * 60)
        for setting, _, summary in results:
            reference = f"{setting.reference_fwhm:.1f} fs" if setting.reference_fwhm is not None else "-"
            click.echo(f"{setting.label:>18} | modelo {summary.fitted_fwhm:8.2f} fs | laboratório {reference}")
        click.echo("-" * 60)
        click.echo(f"💾 Tabela: {', '.join(str(path) for path in paths)}")
