"""
Cadeia clássica: geração de segundo harmônico, detecção por monocromador,
varredura de atraso e formas fechadas gaussianas.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid
from scipy.signal import fftconvolve

from ..config.settings import get_settings
from ..core.exceptions import CoverageError, GridMismatchError, InvalidParameterError
from ..core.models import (
    MIN_TRACE_POINTS, CorrelationTrace, DispersionSpec, FrequencyGrid, MonochromatorSpec,
    SpectralAmplitude
)
from ..core.units import angular_frequency, fwhm_from_variance
from .spectral import (
    DEFAULT_COVERAGE, DEFAULT_GRID_COUNT, apply_quadratic_dispersion, gaussian_field_spectrum,
    make_frequency_grid, sigma_from_fwhm_wavelength
)

logger = logging.getLogger(__name__)

DEFAULT_DELAY_COUNT = 201
DEFAULT_SPAN_FWHM = 5.0
MIN_DETECTION_POINTS = 41
# nós de quadratura por σ_s (ou por estrutura espectral, se menor)
NODES_PER_WIDTH = 6
# distância mínima, em larguras rms, entre o traço e a réplica da soma discreta
ALIAS_GUARD_WIDTHS = 8.0
MAX_SCAN_GRID_COUNT = 65536


def monochromator_from_fwhm(fwhm_nm: float, shg_wavelength_nm: float) -> MonochromatorSpec:
    """Monocromador centrado no comprimento de onda do SHG com resolução FWHM dada."""
    sigma_s = sigma_from_fwhm_wavelength(fwhm_nm, shg_wavelength_nm)
    return MonochromatorSpec(center=float(angular_frequency(shg_wavelength_nm)), sigma_s=sigma_s)


def shg_spectrum(
    field1: SpectralAmplitude,
    field2: SpectralAmplitude,
    method: str = "fft"
) -> SpectralAmplitude:
    """
    E_SHG(ω) = ∫E1(ω′)E2(ω−ω′)dω′ como convolução discreta.

    A grade de saída é centrada na soma dos centros, com o mesmo passo e
    meia largura √2 vezes a meia largura da grade de entrada.

    Args:
        field1: Campo do braço 1
        field2: Campo do braço 2 (mesma grade)
        method: "fft" (scipy.signal.fftconvolve) ou "direct" (numpy.convolve)
    """
    grid = field1.grid
    if not grid.matches(field2.grid):
        raise GridMismatchError(
            f"Grades incompatíveis: ({grid.center}, {grid.spacing}, {grid.count}) vs "
            f"({field2.grid.center}, {field2.grid.spacing}, {field2.grid.count})"
        )

    if method == "fft":
        full = fftconvolve(field1.samples, field2.samples, mode="full")
    elif method == "direct":
        full = np.convolve(field1.samples, field2.samples, mode="full")
    else:
        raise InvalidParameterError("method", method, "use 'fft' ou 'direct'")

    n = grid.count
    half_points = min(int(math.floor(math.sqrt(2.0) * (n - 1) / 2.0 + 1e-9)), n - 1)
    band = full[n - 1 - half_points:n + half_points] * grid.spacing

    out_grid = FrequencyGrid(
        center=2.0 * grid.center,
        spacing=grid.spacing,
        count=2 * half_points + 1,
        coverage=grid.coverage * math.sqrt(2.0) if grid.coverage else None,
    )
    return SpectralAmplitude(grid=out_grid, samples=band)


def monochromator_signal(shg: SpectralAmplitude, mono: MonochromatorSpec) -> float:
    """∫S(ω)|E_SHG(ω)|²dω por quadratura trapezoidal na grade do SHG."""
    grid = shg.grid
    required = min(6.0 * mono.sigma_s, grid.half_span)
    if not grid.covers(mono.center, required):
        raise CoverageError(
            f"Grade do SHG não cobre {mono.center:.4f} ± {required:.3g} rad/fs",
            hint="centralize o monocromador na banda do SHG"
        )

    integrand = mono.response(grid.frequencies) * np.abs(shg.samples) ** 2
    return float(trapezoid(integrand, dx=grid.spacing))


# ---------------------------------------------------------------------------
# Formas fechadas
# ---------------------------------------------------------------------------

def classical_trace_closed_form(sigma: float, sigma_s: float, beta1: float, tau):
    """I(τ) para β2 = −β1, normalizado ao pico."""
    s2, ss2 = sigma ** 2, sigma_s ** 2
    tau = np.asarray(tau, dtype=float)
    exponent = -s2 * (s2 + ss2) * tau ** 2 / (2.0 * (s2 + ss2 + 4.0 * beta1 ** 2 * sigma ** 4 * ss2))
    value = np.exp(exponent)
    return float(value) if value.ndim == 0 else value


def classical_variance_closed_form(sigma: float, sigma_s: float, beta1: float) -> float:
    """Δτ_C² (fs²) para β2 = −β1."""
    s2, ss2 = sigma ** 2, sigma_s ** 2
    return (1.0 / s2) * (1.0 + 4.0 * beta1 ** 2 * sigma ** 4 * ss2 / (s2 + ss2))


def general_variance_unequal_dispersion(sigma: float, beta1: float, beta2: float) -> float:
    """Variância do traço para β1, β2 arbitrários no limite σ_s → 0."""
    return (1.0 / sigma ** 2) * (1.0 + (beta1 + beta2) ** 2 * sigma ** 4)


def classical_variance_general(sigma: float, sigma_s: float, beta1: float, beta2: float) -> float:
    """
    Variância exata do traço gaussiano para β1, β2 e σ_s arbitrários.

    A amplitude do SHG na dessintonia δ é uma integral gaussiana em ω′; o
    expoente de |E_SHG|²·S é uma forma quadrática real em (δ, τ) cuja
    integração em δ fornece exp(−τ²/2V).
    """
    if not sigma > 0:
        raise InvalidParameterError("sigma", sigma, "deve ser positivo")
    if sigma_s < 0:
        raise InvalidParameterError("sigma_s", sigma_s, "deve ser ≥ 0")

    q_xx = 2.0 / sigma ** 2 - 2j * (beta1 + beta2)
    q_xd = -1.0 / sigma ** 2 + 2j * beta2
    q_dd = 1.0 / sigma ** 2 - 2j * beta2

    delta_delta = (-q_dd + q_xd ** 2 / q_xx).real
    delta_tau = (2j * q_xd / q_xx).real
    tau_tau = (-1.0 / q_xx).real

    if sigma_s > 0:
        delta_delta -= 1.0 / (2.0 * sigma_s ** 2)
        tau_tau -= delta_tau ** 2 / (4.0 * delta_delta)

    return -1.0 / (2.0 * tau_tau)


def default_delays(
    sigma: float,
    sigma_s: float,
    beta1: float,
    beta2: float,
    count: int = DEFAULT_DELAY_COUNT,
    span_fwhm: float = DEFAULT_SPAN_FWHM
) -> np.ndarray:
    """Atrasos simétricos sobre ± span_fwhm larguras esperadas."""
    if count < MIN_TRACE_POINTS:
        raise InvalidParameterError("count", count, f"mínimo {MIN_TRACE_POINTS} atrasos")
    expected = fwhm_from_variance(classical_variance_general(sigma, sigma_s, beta1, beta2))
    step = 2.0 * span_fwhm * expected / (count - 1)
    return (np.arange(count) - (count - 1) / 2.0) * step


# ---------------------------------------------------------------------------
# Varredura de atraso
# ---------------------------------------------------------------------------

def _detection_nodes(
    sigma: float,
    beta1: float,
    beta2: float,
    mono: MonochromatorSpec,
    grid: FrequencyGrid,
    max_points: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Nós (dessintonia em relação ao centro do monocromador) e pesos S·trapézio."""
    half = min(6.0 * mono.sigma_s, math.sqrt(2.0) * grid.half_span)
    feature = 1.0 / (2.0 * max(abs(beta1), abs(beta2)) * sigma + 1.0 / sigma)
    resolution = min(mono.sigma_s, feature) / NODES_PER_WIDTH

    count = max(2 * int(math.ceil(half / resolution)) + 1, MIN_DETECTION_POINTS)
    if count > max_points:
        logger.warning(
            f"⚠️ Quadratura do monocromador limitada a {max_points} nós (pedido {count})"
        )
        count = max_points if max_points % 2 else max_points - 1

    step = 2.0 * half / (count - 1)
    nodes = (np.arange(count) - (count - 1) / 2.0) * step
    weights = np.full(count, step)
    weights[0] = weights[-1] = step / 2.0
    weights *= np.exp(-nodes ** 2 / (2.0 * mono.sigma_s ** 2))
    return nodes, weights


def scan_grid_count(
    sigma: float,
    beta1: float,
    beta2: float,
    max_delay: float,
    detection_half: float = 0.0,
    coverage: float = DEFAULT_COVERAGE
) -> int:
    """
    Menor número de amostras da grade fundamental para uma varredura sem réplicas.

    A soma discreta em ω′ é periódica em τ com período 2π/Δω. Cada período
    contém um pulso de amplitude gaussiana com largura rms
    W = √(2(1 + (β1+β2)²σ⁴))/σ, centrado em τ + 2β2δ (δ = dessintonia de
    detecção). O período precisa exceder o maior centro mais
    ALIAS_GUARD_WIDTHS·W.

    Args:
        max_delay: Maior |τ| da varredura (fs)
        detection_half: Maior |δ| entre os nós de detecção (rad/fs)
    """
    width = math.sqrt(2.0 * (1.0 + (beta1 + beta2) ** 2 * sigma ** 4)) / sigma
    period = abs(max_delay) + 2.0 * abs(beta2) * detection_half + ALIAS_GUARD_WIDTHS * width
    spacing = 2.0 * math.pi / period
    return int(math.ceil(2.0 * coverage * sigma / spacing)) + 1


def _scan_chunk(kernel: np.ndarray, offsets: np.ndarray, weights: np.ndarray, taus: np.ndarray) -> np.ndarray:
    # fase global e^{−iω0τ} omitida; não altera |E_SHG|²
    phases = np.exp(-1j * np.outer(offsets, taus))
    amplitudes = kernel @ phases
    return weights @ (np.abs(amplitudes) ** 2)


def delay_scan(
    sigma: float,
    omega0: float,
    beta1: float,
    beta2: float,
    mono: MonochromatorSpec,
    delays: Optional[Sequence[float]] = None,
    coverage: float = DEFAULT_COVERAGE,
    count: int = DEFAULT_GRID_COUNT,
    workers: Optional[int] = None,
    chunk_size: Optional[int] = None,
    max_detection_points: Optional[int] = None
) -> CorrelationTrace:
    """
    Traço de correlação do SHG filtrado versus atraso.

    Para cada τ: campos gaussianos nos dois braços, β1 no braço 1 e β2 no
    braço 2, atraso τ no braço 1, convolução e filtro do monocromador. A
    integral do filtro usa nós próprios em torno do centro do monocromador,
    de modo que σ_s menor que o passo da grade continua resolvido; o campo
    do braço 2 é avaliado analiticamente nas frequências parceiras.

    count é o mínimo de amostras: a grade é ampliada até scan_grid_count
    quando a dispersão residual ou a janela de atrasos exigem.

    Raises:
        CoverageError: Grade necessária acima de MAX_SCAN_GRID_COUNT
    """
    compute = get_settings().compute
    workers = workers or compute.workers
    chunk_size = chunk_size or compute.scan_chunk_size
    max_detection_points = max_detection_points or compute.max_detection_points

    if delays is None:
        delays = default_delays(sigma, mono.sigma_s, beta1, beta2)
    delays = np.asarray(delays, dtype=float)
    if delays.ndim != 1 or delays.size < MIN_TRACE_POINTS:
        raise InvalidParameterError("delays", delays.size, f"mínimo {MIN_TRACE_POINTS} atrasos")

    grid = make_frequency_grid(omega0, sigma, coverage, count)
    nodes, weights = _detection_nodes(sigma, beta1, beta2, mono, grid, max_detection_points)
    detuning = mono.center - 2.0 * omega0

    required = scan_grid_count(
        sigma, beta1, beta2, float(np.max(np.abs(delays))),
        abs(detuning) + float(np.max(np.abs(nodes))), grid.coverage
    )
    if required > grid.count:
        if required > MAX_SCAN_GRID_COUNT:
            raise CoverageError(
                f"Varredura exige {required} amostras de frequência (máximo {MAX_SCAN_GRID_COUNT})",
                hint="reduza delay_span ou a dispersão residual |β1+β2|"
            )
        logger.info(f"📊 delay_scan: grade ampliada de {grid.count} para {required} pontos")
        grid = make_frequency_grid(omega0, sigma, coverage, required)

    arm1 = apply_quadratic_dispersion(
        gaussian_field_spectrum(grid, omega0, sigma), DispersionSpec(beta1, omega0)
    )
    partner_offsets = (detuning + nodes)[:, None] - grid.offsets[None, :]
    arm2 = np.exp(-partner_offsets ** 2 / (2.0 * sigma ** 2) + 1j * beta2 * partner_offsets ** 2)
    kernel = arm1.samples[None, :] * arm2 * grid.spacing

    logger.debug(
        f"delay_scan: grade {grid.count} pts (período {grid.time_window:.0f} fs), "
        f"{nodes.size} nós de detecção, {delays.size} atrasos"
    )

    chunks = [delays[i:i + chunk_size] for i in range(0, delays.size, chunk_size)]
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            parts = list(executor.map(
                lambda taus: _scan_chunk(kernel, grid.offsets, weights, taus), chunks
            ))
    else:
        parts = [_scan_chunk(kernel, grid.offsets, weights, taus) for taus in chunks]

    trace = CorrelationTrace.normalized(delays, np.concatenate(parts))
    expected = fwhm_from_variance(classical_variance_general(sigma, mono.sigma_s, beta1, beta2))
    if trace.span < 4.0 * expected:
        logger.warning(
            f"⚠️ Janela de atrasos ({trace.span:.1f} fs) menor que 4× a FWHM esperada ({expected:.1f} fs)"
        )
    return trace
