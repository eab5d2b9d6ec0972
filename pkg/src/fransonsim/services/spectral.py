"""
Núcleo espectral: grades de frequência, espectros gaussianos, fases de
dispersão e atraso, coeficientes de Sellmeier e transformada para o tempo.
"""
import logging
import math
from typing import Optional

import numpy as np
from scipy import fft as sp_fft

from ..config.library import load_sellmeier_medium
from ..core.exceptions import CoverageError, DomainError, InvalidParameterError
from ..core.models import (
    DispersionSpec, FrequencyGrid, SellmeierMedium, SpectralAmplitude, TemporalIntensity
)
from ..core.units import FWHM_PER_SIGMA, NM_PER_MM, NM_PER_UM, SPEED_OF_LIGHT_NM_PER_FS, angular_frequency

logger = logging.getLogger(__name__)

MIN_COVERAGE = 6.0
DEFAULT_COVERAGE = 8.0
DEFAULT_GRID_COUNT = 4096
# Concordância exigida entre a derivada analítica e a numérica
DERIVATIVE_AGREEMENT = 1e-3


def make_frequency_grid(
    center: float,
    sigma: float,
    coverage: float = DEFAULT_COVERAGE,
    count: int = DEFAULT_GRID_COUNT
) -> FrequencyGrid:
    """
    Cria grade simétrica cobrindo center ± coverage·sigma.

    Args:
        center: Frequência central (rad/fs)
        sigma: Largura rms de referência (rad/fs)
        coverage: Meia largura em múltiplos de sigma (≥ 6)
        count: Número de amostras (≥ 16)

    Returns:
        FrequencyGrid com spacing = 2·coverage·sigma/(count−1)
    """
    if not (math.isfinite(sigma) and sigma > 0):
        raise InvalidParameterError("sigma", sigma, "deve ser positivo")
    if not coverage >= MIN_COVERAGE:
        raise InvalidParameterError("coverage", coverage, f"mínimo {MIN_COVERAGE:g}σ")
    if int(count) != count or count < 16:
        raise InvalidParameterError("count", count, "mínimo 16 amostras")

    spacing = 2.0 * coverage * sigma / (count - 1)
    return FrequencyGrid(center=float(center), spacing=spacing, count=int(count), coverage=float(coverage))


def sigma_from_fwhm_wavelength(fwhm: float, center_wavelength: float) -> float:
    """
    Converte a FWHM espectral em comprimento de onda (nm) na largura rms do
    campo em frequência angular (rad/fs), na aproximação de banda estreita.
    """
    if not (fwhm > 0 and center_wavelength > 0):
        raise InvalidParameterError("fwhm", fwhm, "FWHM e comprimento de onda devem ser positivos")
    if fwhm >= center_wavelength:
        raise InvalidParameterError("fwhm", fwhm, f"deve ser menor que {center_wavelength} nm")

    return 2.0 * math.pi * SPEED_OF_LIGHT_NM_PER_FS * fwhm / (center_wavelength ** 2 * FWHM_PER_SIGMA)


def _offsets(grid: FrequencyGrid, reference: float) -> np.ndarray:
    """ω − reference, exato quando reference coincide com o centro da grade."""
    if reference == grid.center:
        return grid.offsets
    return grid.frequencies - reference


def gaussian_field_spectrum(grid: FrequencyGrid, center: float, sigma: float) -> SpectralAmplitude:
    """Campo limitado por transformada exp(−(ω−center)²/2σ²)."""
    if not sigma > 0:
        raise InvalidParameterError("sigma", sigma, "deve ser positivo")
    if not grid.covers(center, MIN_COVERAGE * sigma):
        raise CoverageError(
            f"Grade [{grid.lower:.4f}, {grid.upper:.4f}] rad/fs não cobre {center:.4f} ± 6σ",
            hint="aumente coverage ou count"
        )

    x = _offsets(grid, center)
    return SpectralAmplitude(grid=grid, samples=np.exp(-x ** 2 / (2.0 * sigma ** 2)))


def apply_quadratic_dispersion(field: SpectralAmplitude, disp: DispersionSpec) -> SpectralAmplitude:
    """Multiplica cada amostra por exp(iβ(ω−ω0)²)."""
    if disp.beta == 0:
        return field
    x = _offsets(field.grid, disp.reference)
    return field.with_samples(field.samples * np.exp(1j * disp.beta * x ** 2))


def apply_delay(field: SpectralAmplitude, tau: float) -> SpectralAmplitude:
    """Multiplica cada amostra por exp(−iωτ) (τ em fs)."""
    if tau == 0:
        return field
    return field.with_samples(field.samples * np.exp(-1j * field.frequencies * tau))


def spectral_energy(field: SpectralAmplitude) -> float:
    return field.energy


def time_domain_intensity(field: SpectralAmplitude, workers: Optional[int] = None) -> TemporalIntensity:
    """
    |e(t)|² na grade temporal conjugada, com e(t) = (2π)^{-1/2} ∫E(ω)e^{iωt}dω.

    A normalização preserva a energia: Σ|e|²Δt = Σ|E|²Δω.
    """
    grid = field.grid
    n = grid.count
    amplitude = sp_fft.fftshift(sp_fft.ifft(field.samples, workers=workers))
    values = np.abs(amplitude) ** 2 * (n * grid.spacing) ** 2 / (2.0 * math.pi)
    times = (np.arange(n) - n // 2) * grid.time_step
    return TemporalIntensity(times=times, values=values)


# ---------------------------------------------------------------------------
# Sellmeier
# ---------------------------------------------------------------------------

def _check_band(medium: SellmeierMedium, wavelength_nm: float) -> None:
    if not (math.isfinite(wavelength_nm) and wavelength_nm > 0):
        raise InvalidParameterError("wavelength", wavelength_nm, "deve ser positivo")
    if not medium.in_band(wavelength_nm):
        low, high = medium.band_um
        raise DomainError(
            f"{wavelength_nm:g} nm fora da faixa de validade de {medium.name} ({low:g}–{high:g} µm)"
        )


def _index_derivatives(medium: SellmeierMedium, wavelength_nm: float):
    """n, dn/dλ e d²n/dλ² (λ em µm) pela derivação analítica da forma de Sellmeier."""
    lam = wavelength_nm / NM_PER_UM
    n_squared, first, second = 1.0, 0.0, 0.0
    for b, c in medium.coefficients:
        denominator = lam ** 2 - c
        n_squared += b * lam ** 2 / denominator
        first += -2.0 * b * c * lam / denominator ** 2
        second += 2.0 * b * c * (3.0 * lam ** 2 + c) / denominator ** 3

    if n_squared <= 1.0:
        raise DomainError(f"Índice de {medium.name} não é real e > 1 em {wavelength_nm:g} nm")

    n = math.sqrt(n_squared)
    dn = first / (2.0 * n)
    d2n = (second - 2.0 * dn ** 2) / (2.0 * n)
    return n, dn, d2n


def refractive_index(medium: SellmeierMedium, wavelength_nm: float) -> float:
    _check_band(medium, wavelength_nm)
    return _index_derivatives(medium, wavelength_nm)[0]


def group_delay_dispersion(medium: SellmeierMedium, wavelength_nm: float) -> float:
    """
    d²k/dω² por unidade de comprimento (fs²/mm).

    Usa k″ = λ³/(2πc²)·d²n/dλ².
    """
    _check_band(medium, wavelength_nm)
    _, _, d2n_um = _index_derivatives(medium, wavelength_nm)
    d2n_nm = d2n_um / 1e6
    k2_per_nm = wavelength_nm ** 3 / (2.0 * math.pi * SPEED_OF_LIGHT_NM_PER_FS ** 2) * d2n_nm
    return k2_per_nm * NM_PER_MM


def medium_beta(medium: SellmeierMedium, wavelength_nm: float) -> float:
    """β = ½·(d²k/dω²)·L em fs²."""
    return 0.5 * group_delay_dispersion(medium, wavelength_nm) * medium.length_mm


def numerical_medium_beta(
    medium: SellmeierMedium,
    wavelength_nm: float,
    step_fraction: float = 2e-4
) -> float:
    """β por diferenças centrais de k(ω) = n(ω)·ω/c."""
    _check_band(medium, wavelength_nm)
    omega = float(angular_frequency(wavelength_nm))
    h = step_fraction * omega

    def wavenumber(w: float) -> float:
        lam = 2.0 * math.pi * SPEED_OF_LIGHT_NM_PER_FS / w
        return _index_derivatives(medium, lam)[0] * w / SPEED_OF_LIGHT_NM_PER_FS

    k2_per_nm = (wavenumber(omega + h) - 2.0 * wavenumber(omega) + wavenumber(omega - h)) / h ** 2
    return 0.5 * k2_per_nm * medium.length_mm * NM_PER_MM


def bk7_beta(length: float, wavelength: float) -> float:
    """
    Coeficiente quadrático β (fs²) de uma placa de BK7.

    Args:
        length: Espessura percorrida (mm)
        wavelength: Comprimento de onda central (nm)
    """
    if not (math.isfinite(length) and length >= 0):
        raise InvalidParameterError("length", length, "deve ser ≥ 0")

    medium = load_sellmeier_medium("BK7", length)
    beta = medium_beta(medium, wavelength)

    if length > 0:
        check = numerical_medium_beta(medium, wavelength)
        if abs(check - beta) > DERIVATIVE_AGREEMENT * abs(beta):
            logger.warning(
                f"⚠️ Derivada numérica diverge da analítica: {check:.3f} vs {beta:.3f} fs²"
            )

    logger.debug(f"β(BK7, {length} mm, {wavelength} nm) = {beta:.3f} fs²")
    return beta
