"""
CLI principal do simulador de cancelamento de dispersão.
"""
import logging
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional

import click

from .. import __version__
from ..config.library import get_data_library
from ..config.scenario import describe_defaults
from ..config.settings import LoggingSettings, get_settings
from ..core.exceptions import FransonSimError
from .commands.classical import classical_scan_cli
from .commands.dispersion import bk7_beta_cli
from .commands.inequality import inequality_check_cli
from .commands.quantum import quantum_correlation_cli
from .commands.reference import reproduce_fig3_cli
from .commands.sweep import sweep_cli


def setup_logging(verbose: bool = False, settings: Optional[LoggingSettings] = None) -> None:
    """Configura logging da aplicação."""
    settings = settings or LoggingSettings()
    level = logging.DEBUG if verbose else getattr(logging, settings.level, logging.INFO)

    handlers = [logging.StreamHandler(sys.stdout)]
    if settings.file_path:
        handlers.append(RotatingFileHandler(
            settings.file_path,
            maxBytes=int(settings.max_size_mb * 1024 * 1024),
            backupCount=settings.backup_count,
            encoding='utf-8'
        ))

    logging.basicConfig(level=level, format=settings.format, handlers=handlers, force=True)

    # Reduzir verbosidade de libs externas
    if not verbose:
        logging.getLogger('matplotlib').setLevel(logging.WARNING)
        logging.getLogger('numexpr').setLevel(logging.WARNING)


@click.group(invoke_without_command=True)
@click.option('--verbose', '-v', is_flag=True, help='Modo verboso')
@click.option('--print-defaults', is_flag=True, help='Mostra os parâmetros padrão e sua origem')
@click.version_option(__version__, prog_name='franson-sim')
@click.pass_context
def cli(ctx, verbose: bool, print_defaults: bool):
    """
    Simulador do análogo clássico do cancelamento de dispersão não local.

    Varreduras de SHG filtrado, distribuições de coincidência do bifóton e a
    desigualdade de variâncias, com saída CSV/JSON para gráficos.
    """
    ctx.ensure_object(dict)
    ctx.obj['verbose'] = verbose

    try:
        settings = get_settings()
    except FransonSimError as e:
        click.echo(f"❌ Erro ao carregar configurações: {e}", err=True)
        ctx.exit(e.exit_code)

    setup_logging(verbose, settings.logging)

    if print_defaults:
        click.echo(describe_defaults())
        ctx.exit(0)
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@cli.command()
@click.pass_context
def info(ctx):
    """Mostra versão, configurações e dados disponíveis."""
    verbose = ctx.obj.get('verbose', False)
    settings = get_settings()

    click.echo(f"🔬 FRANSON-SIM {__version__} - INFORMAÇÕES")
    click.echo("=" * 50)
    click.echo(f"Workers: {settings.compute.workers} (chunk {settings.compute.scan_chunk_size} atrasos)")
    click.echo(f"Nós de detecção (máx.): {settings.compute.max_detection_points}")
    click.echo(f"FFT workers: {settings.compute.fft_workers}")
    click.echo(f"Saída: {settings.output.output_dir} ({settings.output.output_format.value})")

    try:
        stats = get_data_library().get_statistics()
        click.echo(f"Meios: {', '.join(stats['media'])}")
        click.echo(f"Varreduras de referência: {len(stats['reference_scans'])}")
        if verbose:
            click.echo(f"Dados: {stats['data_dir']}")
            for label in stats['reference_scans']:
                click.echo(f"  - {label}")
    except FransonSimError as e:
        click.echo(f"Dados: ❌ Erro ao carregar ({e})")

    click.echo("=" * 50)


# Adicionar subcomandos
cli.add_command(classical_scan_cli, name='classical-scan')
cli.add_command(quantum_correlation_cli, name='quantum-correlation')
cli.add_command(sweep_cli, name='sweep')
cli.add_command(inequality_check_cli, name='inequality-check')
cli.add_command(reproduce_fig3_cli, name='reproduce-fig3')
cli.add_command(reproduce_fig3_cli, name='reference-scans')
cli.add_command(bk7_beta_cli, name='bk7-beta')


def main():
    """Ponto de entrada principal."""
    try:
        code = cli.main(prog_name='franson-sim', standalone_mode=False)
    except (click.exceptions.Abort, KeyboardInterrupt):
        click.echo("\n⚠️  Operação cancelada pelo usuário", err=True)
        sys.exit(130)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except FransonSimError as e:
        click.echo(f"❌ {e}", err=True)
        sys.exit(e.exit_code)
    except Exception as e:
        click.echo(f"❌ Erro crítico: {e}", err=True)
        sys.exit(1)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == '__main__':
    main()
