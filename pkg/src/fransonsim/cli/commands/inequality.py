"""
Comando inequality-check: limite da desigualdade de variâncias e vereditos
clássico e quântico pelas formas fechadas.
"""
from typing import Optional

import click

from ...services.analysis import (
    cancellation_persistence_bound, check_violation, classical_inequality_check, franson_bound
)
from ...services.biphoton import quantum_variance_general
from .common import load_config, make_writer, output_options, report_errors


@click.command('inequality-check')
@output_options
@click.option('--measured', type=float, help='Variância medida (fs²) para um veredito direto')
@click.option('--initial', type=float, help='Variância inicial (fs²); padrão 1/σ²')
@click.option('--beta', type=float, help='β (fs²) do veredito direto; padrão β1')
@click.pass_context
def inequality_check_cli(ctx, config_path: Optional[str], output_dir: Optional[str], output_format: Optional[str],
                         timings: bool, measured: Optional[float], initial: Optional[float], beta: Optional[float]):
    """Avalia ⟨Δτ_F²⟩ ≥ ⟨Δτ²⟩ + (2β)²/⟨Δτ²⟩ para o cenário configurado."""
    with report_errors(ctx, 'inequality-check'):
        config = load_config(config_path)
        sigma, sigma_s, sigma_c = config.sigma, config.sigma_s, config.sigma_c
        initial = initial if initial is not None else 1.0 / sigma ** 2
        beta = beta if beta is not None else config.beta1
        tolerance = config.violation_tolerance

        reports = {
            'classical': classical_inequality_check(sigma, sigma_s, config.beta1, config.beta2, tolerance),
            'quantum': check_violation(
                quantum_variance_general(sigma, sigma_c, config.beta1, config.beta2),
                1.0 / sigma ** 2, config.beta1, tolerance
            ),
        }
        if measured is not None:
            reports['direct'] = check_violation(measured, initial, beta, tolerance)

        rows = [
            {
                'case': case,
                'measured_variance': report.measured_variance,
                'initial_variance': report.initial_variance,
                'beta': report.beta,
                'bound': report.bound,
                'margin': report.margin,
                'violated': report.violated,
            }
            for case, report in reports.items()
        ]
        paths = make_writer(output_dir, output_format, timings).write_report('inequality_check', rows)

        click.echo(f"📊 Limite para β={config.beta1:g} fs²: {franson_bound(1.0 / sigma ** 2, config.beta1):.4g} fs²")
        for row in rows:
            status = "❗ VIOLADA" if row['violated'] else "✅ respeitada"
            click.echo(f"   {row['case']:>9}: medida {row['measured_variance']:.4g} fs², "
                       f"limite {row['bound']:.4g} fs² → {status}")
        click.echo(f"   Persistência clássica 1/(σσ_s): {cancellation_persistence_bound(sigma, sigma_s):.3g} fs²")
        click.echo(f"   Persistência quântica 1/(σσ_c): {cancellation_persistence_bound(sigma, sigma_c):.3g} fs²")
        click.echo(f"💾 {len(paths)} arquivos gravados")
