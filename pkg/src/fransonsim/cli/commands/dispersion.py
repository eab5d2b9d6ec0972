"""
Comando bk7-beta: coeficiente β de uma placa de BK7.
"""
import re
from typing import Tuple

import click

from ...core.exceptions import UsageError
from ...services.spectral import bk7_beta, group_delay_dispersion
from ...config.library import load_sellmeier_medium
from .common import report_errors

_GLASS_PATTERN = re.compile(
    r'^\s*(?P<length>[\d.eE+-]+)\s*(mm)?\s*@?\s*(?P<wavelength>[\d.eE+-]+)\s*(nm)?\s*$'
)


def parse_glass_spec(text: str) -> Tuple[float, float]:
    """'38.65mm @807nm' ou '38.65 807' → (mm, nm)."""
    match = _GLASS_PATTERN.match(text)
    if not match:
        raise UsageError(f"Especificação inválida {text!r}; use por exemplo '38.65mm @807nm'")
    try:
        return float(match.group('length')), float(match.group('wavelength'))
    except ValueError:
        raise UsageError(f"Especificação inválida {text!r}; use por exemplo '38.65mm @807nm'")


@click.command('bk7-beta')
@click.argument('spec', nargs=-1, required=True)
@click.pass_context
def bk7_beta_cli(ctx, spec: Tuple[str, ...]):
    """
    β (fs²) de SPEC, por exemplo: franson-sim bk7-beta 38.65mm @807nm
    """
    with report_errors(ctx, 'bk7-beta'):
        length, wavelength = parse_glass_spec(" ".join(spec))
        beta = bk7_beta(length, wavelength)
        gdd = group_delay_dispersion(load_sellmeier_medium("BK7"), wavelength)

        click.echo(f"β = {beta:.3f} fs²")
        click.echo(f"   BK7, {length:g} mm @ {wavelength:g} nm (GVD {gdd:.4f} fs²/mm, GDD {2 * beta:.3f} fs²)")
