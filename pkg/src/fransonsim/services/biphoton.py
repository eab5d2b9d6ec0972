"""
Lado quântico: amplitude espectral conjunta com correlação de energia
ajustável, dispersão em cada fóton e distribuição de coincidências t1, t2.

A base SUM_DIFFERENCE usa os eixos Σ = ω1+ω2 (centrado em 2ω0) e
Δ = ω1−ω2 (centrado em 0), cujos tempos conjugados são s = (t1+t2)/2 e
d = (t1−t2)/2. Nessa base σ e σ_c ficam desacoplados e cada janela
temporal pode ser dimensionada separadamente.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np
import pandas as pd
from scipy import fft as sp_fft

from ..config.settings import get_settings
from ..core.exceptions import CoverageError, InvalidParameterError, WindowOverflowError
from ..core.models import (
    ApproximateVariance, DistributionSummary, FrequencyGrid, JointBasis, JointSpectralAmplitude,
    TwoTimeDistribution
)

logger = logging.getLogger(__name__)

DEFAULT_JOINT_GRID_COUNT = 512
# janela temporal em desvios padrão de cada direção
WINDOW_RMS = 7.0
# pisos da janela: ±6/σ em t1−t2 e ±6/σ_c em t1+t2
WINDOW_FLOOR = 6.0
FREQUENCY_COVERAGE = 6.0
EDGE_TOLERANCE = 1e-6
SMALL_PUMP_RATIO = 0.1
COVERAGE_HINT = "aumente joint_grid_count"


def _require_bandwidths(sigma: float, sigma_c: float) -> None:
    if not (math.isfinite(sigma) and sigma > 0):
        raise InvalidParameterError("sigma", sigma, "deve ser positivo")
    if not (math.isfinite(sigma_c) and sigma_c > 0):
        raise InvalidParameterError("sigma_c", sigma_c, "deve ser positivo (σ_c = 0 não é normalizável)")


def _sum_bandwidth(sigma: float, sigma_c: float) -> float:
    """Largura rms da amplitude ao longo de Σ − 2ω0."""
    return 1.0 / math.sqrt(1.0 / (2.0 * sigma ** 2) + 1.0 / sigma_c ** 2)


def time_covariance(sigma: float, sigma_c: float, beta1: float = 0.0, beta2: float = 0.0) -> np.ndarray:
    """
    Covariância exata de ((t1+t2)/2, (t1−t2)/2) para o estado gaussiano disperso.

    Com x = (Σ−2ω0, ω1−ω2) a amplitude é exp(−½xᵀMx), M = A − 2iB, onde A
    contém as larguras e B as fases quadráticas; |transformada|² é gaussiana
    com covariância ½·(Re M⁻¹)⁻¹.
    """
    _require_bandwidths(sigma, sigma_c)
    amplitude = np.diag([1.0 / _sum_bandwidth(sigma, sigma_c) ** 2, 1.0 / (2.0 * sigma ** 2)])
    total, difference = (beta1 + beta2) / 4.0, (beta1 - beta2) / 4.0
    phase = np.array([[total, difference], [difference, total]])
    kernel = amplitude - 2j * phase
    return 0.5 * np.linalg.inv(np.linalg.inv(kernel).real)


def quantum_variance_general(sigma: float, sigma_c: float, beta1: float, beta2: float) -> float:
    """Δ(t1−t2)² (fs²) para β1, β2 arbitrários."""
    return float(4.0 * time_covariance(sigma, sigma_c, beta1, beta2)[1, 1])


def quantum_variance_closed_form(sigma: float, sigma_c: float, beta1: float) -> float:
    """Δτ_Q² (fs²) para β2 = −β1."""
    s2, c2 = sigma ** 2, sigma_c ** 2
    return (1.0 / s2) * (1.0 + 4.0 * beta1 ** 2 * sigma ** 4 * c2 / (2.0 * s2 + c2))


def effective_bandwidth(sigma: float, sigma_c: float) -> float:
    """Largura efetiva √(σσ_c) no regime de bombeio estreito."""
    _require_bandwidths(sigma, sigma_c)
    return math.sqrt(sigma * sigma_c)


def approx_variance_small_pump(sigma: float, sigma_c: float, beta1: float) -> ApproximateVariance:
    """(1/σ²)(1 + 2β1²σ²σ_c²), válida para σ_c ≤ σ/10."""
    value = (1.0 / sigma ** 2) * (1.0 + 2.0 * beta1 ** 2 * sigma ** 2 * sigma_c ** 2)
    in_regime = sigma_c <= SMALL_PUMP_RATIO * sigma
    warning = None
    if not in_regime:
        warning = f"σ_c/σ = {sigma_c / sigma:.3g} > {SMALL_PUMP_RATIO:g}: aproximação fora do regime de validade"
        logger.warning(f"⚠️ {warning}")
    return ApproximateVariance(value=value, in_regime=in_regime, warning=warning)


def two_time_probability_closed_form(sigma: float, sigma_c: float, beta1: float, t1, t2):
    """P(t1, t2) para β2 = −β1, normalizada ao pico."""
    s2, c2 = sigma ** 2, sigma_c ** 2
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    numerator = sigma ** 4 * (t1 - t2) ** 2 + s2 * c2 * (t1 ** 2 + t2 ** 2)
    denominator = 2.0 * s2 + c2 + 4.0 * beta1 ** 2 * sigma ** 4 * c2
    value = np.exp(-numerator / denominator)
    return float(value) if value.ndim == 0 else value


# ---------------------------------------------------------------------------
# Grades e amplitude conjunta
# ---------------------------------------------------------------------------

def biphoton_grids(
    omega0: float,
    sigma: float,
    sigma_c: float,
    beta1: float = 0.0,
    beta2: float = 0.0,
    count: int = DEFAULT_JOINT_GRID_COUNT
) -> Tuple[FrequencyGrid, FrequencyGrid]:
    """
    Grades (Σ, Δ) dimensionadas pela covariância temporal esperada.

    Cada janela cobre ±7 desvios de sua direção, nunca menos que ±6/σ em
    t1−t2 nem ±6/σ_c em t1+t2; o passo em frequência é 2π/janela.
    """
    covariance = time_covariance(sigma, sigma_c, beta1, beta2)
    sum_window = max(WINDOW_RMS * math.sqrt(4.0 * covariance[0, 0]), WINDOW_FLOOR / sigma_c)
    difference_window = max(WINDOW_RMS * math.sqrt(4.0 * covariance[1, 1]), WINDOW_FLOOR / sigma)

    # janela em t1±t2 de ±W corresponde a s ou d em ±W/2, período total W
    sum_grid = FrequencyGrid(center=2.0 * omega0, spacing=2.0 * math.pi / sum_window, count=count)
    difference_grid = FrequencyGrid(center=0.0, spacing=2.0 * math.pi / difference_window, count=count)

    _check_joint_coverage(sum_grid, difference_grid, omega0, sigma, sigma_c, JointBasis.SUM_DIFFERENCE)
    logger.debug(
        f"biphoton_grids: janelas ±{sum_window:.1f} fs (t1+t2), ±{difference_window:.1f} fs (t1−t2), {count}² pts"
    )
    return sum_grid, difference_grid


def _check_joint_coverage(
    grid1: FrequencyGrid,
    grid2: FrequencyGrid,
    omega0: float,
    sigma: float,
    sigma_c: float,
    basis: JointBasis
) -> None:
    if basis is JointBasis.PHOTON:
        required = ((grid1, omega0, FREQUENCY_COVERAGE * sigma), (grid2, omega0, FREQUENCY_COVERAGE * sigma))
    else:
        required = (
            (grid1, 2.0 * omega0, FREQUENCY_COVERAGE * _sum_bandwidth(sigma, sigma_c)),
            (grid2, 0.0, FREQUENCY_COVERAGE * math.sqrt(2.0) * sigma),
        )
    for axis, (grid, center, half_width) in enumerate(required, start=1):
        if not grid.covers(center, half_width):
            raise CoverageError(
                f"Eixo {axis} [{grid.lower:.4f}, {grid.upper:.4f}] não cobre {center:.4f} ± {half_width:.4g} rad/fs",
                hint=COVERAGE_HINT
            )


def _axis_offsets(grid: FrequencyGrid, reference: float) -> np.ndarray:
    if reference == grid.center:
        return grid.offsets
    return grid.frequencies - reference


def _photon_offsets(
    grid1: FrequencyGrid,
    grid2: FrequencyGrid,
    omega0: float,
    basis: JointBasis
) -> Tuple[np.ndarray, np.ndarray]:
    """Malhas (ω1−ω0, ω2−ω0) em cada célula."""
    if basis is JointBasis.PHOTON:
        first, second = _axis_offsets(grid1, omega0), _axis_offsets(grid2, omega0)
        return np.meshgrid(first, second, indexing="ij")
    total = _axis_offsets(grid1, 2.0 * omega0)
    difference = _axis_offsets(grid2, 0.0)
    u, v = np.meshgrid(total, difference, indexing="ij")
    return (u + v) / 2.0, (u - v) / 2.0


def joint_spectral_amplitude(
    omega0: float,
    sigma: float,
    sigma_c: float,
    grids: Tuple[FrequencyGrid, FrequencyGrid],
    basis: JointBasis = JointBasis.PHOTON
) -> JointSpectralAmplitude:
    """
    f(ω1, ω2) = g(ω1)·g(ω2)·exp(−(ω1+ω2−2ω0)²/2σ_c²) com g gaussiana de largura σ.

    Args:
        grids: Par de grades; eixos (ω1, ω2) ou (Σ, Δ) conforme basis
        basis: Interpretação dos eixos
    """
    _require_bandwidths(sigma, sigma_c)
    grid1, grid2 = grids
    _check_joint_coverage(grid1, grid2, omega0, sigma, sigma_c, basis)

    x1, x2 = _photon_offsets(grid1, grid2, omega0, basis)
    if basis is JointBasis.SUM_DIFFERENCE:
        u = np.broadcast_to(_axis_offsets(grid1, 2.0 * omega0)[:, None], x1.shape)
    else:
        u = x1 + x2
    samples = np.exp(-(x1 ** 2 + x2 ** 2) / (2.0 * sigma ** 2) - u ** 2 / (2.0 * sigma_c ** 2))

    return JointSpectralAmplitude(
        grid1=grid1, grid2=grid2, samples=samples,
        sigma=sigma, sigma_c=sigma_c, omega0=omega0, basis=basis,
    )


def apply_dispersion_jsa(jsa: JointSpectralAmplitude, beta1: float, beta2: float) -> JointSpectralAmplitude:
    """Multiplica por exp(iβ1(ω1−ω0)²)·exp(iβ2(ω2−ω0)²)."""
    if beta1 == 0 and beta2 == 0:
        return jsa
    x1, x2 = _photon_offsets(jsa.grid1, jsa.grid2, jsa.omega0, jsa.basis)
    phase = np.exp(1j * (beta1 * x1 ** 2 + beta2 * x2 ** 2))
    return jsa.with_samples(jsa.samples * phase, jsa.beta1 + beta1, jsa.beta2 + beta2)


# ---------------------------------------------------------------------------
# Distribuição de dois tempos
# ---------------------------------------------------------------------------

def _time_axis(grid: FrequencyGrid) -> np.ndarray:
    return (np.arange(grid.count) - grid.count // 2) * grid.time_step


def two_time_probability(jsa: JointSpectralAmplitude, workers: Optional[int] = None) -> TwoTimeDistribution:
    """
    P(t1, t2) = |transformada inversa 2D de f|², normalizada à unidade.

    Raises:
        WindowOverflowError: Caudas acima de 10⁻⁶ do pico na borda da janela
    """
    workers = workers or get_settings().compute.fft_workers
    amplitude = sp_fft.fftshift(sp_fft.ifft2(jsa.samples, workers=workers))
    values = np.abs(amplitude) ** 2

    peak = values.max()
    edge = max(values[0, :].max(), values[-1, :].max(), values[:, 0].max(), values[:, -1].max())
    edge_ratio = float(edge / peak)
    if edge_ratio > EDGE_TOLERANCE:
        raise WindowOverflowError(
            f"Distribuição excede a janela temporal ({jsa.grid1.count}×{jsa.grid2.count} pts)",
            edge_ratio=edge_ratio,
            hint=COVERAGE_HINT
        )

    times1, times2 = _time_axis(jsa.grid1), _time_axis(jsa.grid2)
    cell_area = jsa.grid1.time_step * jsa.grid2.time_step
    values = values / (values.sum() * cell_area)
    return TwoTimeDistribution(times1=times1, times2=times2, values=values, basis=jsa.basis)


def _time_difference(dist: TwoTimeDistribution) -> np.ndarray:
    t1, t2 = dist.photon_times()
    return t1 - t2


def _weighted_variance(values: np.ndarray, weights: np.ndarray) -> Tuple[float, float]:
    mean = float(np.sum(weights * values))
    variance = float(np.sum(weights * (values - mean) ** 2))
    return mean, max(variance, 0.0)


def time_difference_variance(dist: TwoTimeDistribution) -> float:
    """E[(t1−t2)²] − E[t1−t2]² por soma direta na grade."""
    return _weighted_variance(_time_difference(dist), dist.values * dist.cell_area)[1]


def time_difference_mean(dist: TwoTimeDistribution) -> float:
    return _weighted_variance(_time_difference(dist), dist.values * dist.cell_area)[0]


def time_sum_variance(dist: TwoTimeDistribution) -> float:
    t1, t2 = dist.photon_times()
    return _weighted_variance(t1 + t2, dist.values * dist.cell_area)[1]


def simulate_two_time(
    omega0: float,
    sigma: float,
    sigma_c: float,
    beta1: float,
    beta2: float,
    count: int = DEFAULT_JOINT_GRID_COUNT,
    workers: Optional[int] = None
) -> TwoTimeDistribution:
    """Cadeia completa: grades (Σ, Δ), amplitude conjunta, dispersão e transformada."""
    grids = biphoton_grids(omega0, sigma, sigma_c, beta1, beta2, count)
    jsa = joint_spectral_amplitude(omega0, sigma, sigma_c, grids, JointBasis.SUM_DIFFERENCE)
    return two_time_probability(apply_dispersion_jsa(jsa, beta1, beta2), workers=workers)


def summarize_distribution(dist: TwoTimeDistribution, closed_form_variance: float) -> DistributionSummary:
    times1, times2 = dist.times1, dist.times2
    factor = 2.0 if dist.basis is JointBasis.SUM_DIFFERENCE else 1.0
    return DistributionSummary(
        difference_variance=time_difference_variance(dist),
        sum_variance=time_sum_variance(dist),
        difference_mean=time_difference_mean(dist),
        closed_form_variance=closed_form_variance,
        difference_window=factor * float(times2[-1] - times2[0]),
        sum_window=factor * float(times1[-1] - times1[0]),
        grid_count=int(times1.size),
    )


def distribution_slice(dist: TwoTimeDistribution, points: Optional[int] = None) -> pd.DataFrame:
    """
    Recorte reduzido (points × points) em torno do centro, em coordenadas t1, t2.

    Mantém a densidade de probabilidade das células amostradas; não é
    renormalizado.
    """
    points = points or get_settings().output.slice_points
    n1, n2 = dist.times1.size, dist.times2.size
    step1, step2 = max(n1 // points, 1), max(n2 // points, 1)

    def centered(n: int, step: int) -> np.ndarray:
        middle = n // 2
        half = min(points // 2, middle // step, (n - 1 - middle) // step)
        return middle + step * np.arange(-half, half + 1)

    rows, columns = centered(n1, step1), centered(n2, step2)
    t1, t2 = dist.photon_times()
    cells = np.ix_(rows, columns)
    return pd.DataFrame({
        "t1_fs": t1[cells].ravel(),
        "t2_fs": t2[cells].ravel(),
        "probability": dist.values[cells].ravel(),
    })
