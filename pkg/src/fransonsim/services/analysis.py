"""
Análise de traços: ajuste gaussiano, largura a meia altura, limite da
desigualdade de variâncias e critério de persistência do cancelamento.
"""
import logging
import math
import warnings
from typing import Sequence

import numpy as np
from scipy.optimize import OptimizeWarning, curve_fit

from ..core.exceptions import FitFailureError, InsufficientSamplingError, InvalidParameterError
from ..core.models import CorrelationTrace, GaussianFit, VarianceReport
from .shg import classical_variance_general

logger = logging.getLogger(__name__)

MIN_POINTS_ABOVE_HALF = 8
DEFAULT_TOLERANCE = 0.01
MAX_TOLERANCE = 0.1
FIT_XTOL = 1e-10
FIT_MAX_EVALUATIONS = 2000


def _gaussian(tau, amplitude, center, width, baseline):
    return amplitude * np.exp(-(tau - center) ** 2 / (2.0 * width ** 2)) + baseline


def _moment_estimate(delays: np.ndarray, intensities: np.ndarray) -> GaussianFit:
    """Estimativa inicial: centro e largura pelos momentos acima da linha de base."""
    baseline = float(intensities.min())
    weights = intensities - baseline
    total = weights.sum()
    if not total > 0:
        raise FitFailureError("Traço plano: nenhuma estrutura acima da linha de base")
    center = float(np.sum(weights * delays) / total)
    width = math.sqrt(float(np.sum(weights * (delays - center) ** 2) / total))
    residual = _gaussian(delays, intensities.max() - baseline, center, width, baseline) - intensities
    return GaussianFit.from_parameters(
        center, width, intensities.max() - baseline, baseline, float(np.sqrt(np.mean(residual ** 2)))
    )


def fit_gaussian_trace(trace: CorrelationTrace) -> GaussianFit:
    """
    Ajuste por mínimos quadrados de amplitude·exp(−(τ−c)²/2w²) + baseline.

    Raises:
        InsufficientSamplingError: Menos de 8 pontos acima de meia altura
        FitFailureError: Traço plano, ou ajuste não convergiu (carrega a estimativa por momentos)
    """
    delays = trace.delays
    intensities = trace.intensities
    peak = float(intensities.max())
    above_half = int(np.count_nonzero(intensities >= 0.5 * peak)) if peak > 0 else 0
    if above_half < MIN_POINTS_ABOVE_HALF:
        raise InsufficientSamplingError(above_half, MIN_POINTS_ABOVE_HALF)

    estimate = _moment_estimate(delays, intensities)
    p0 = [estimate.amplitude, estimate.center, estimate.rms_width, estimate.baseline]

    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", OptimizeWarning)
            params, _ = curve_fit(
                _gaussian, delays, intensities, p0=p0,
                xtol=FIT_XTOL, ftol=FIT_XTOL, maxfev=FIT_MAX_EVALUATIONS
            )
    except (RuntimeError, ValueError) as e:
        logger.error(f"❌ Ajuste gaussiano falhou: {e}")
        raise FitFailureError(f"Ajuste gaussiano não convergiu: {e}", estimate=estimate)

    if not np.all(np.isfinite(params)) or params[2] == 0:
        raise FitFailureError("Ajuste gaussiano retornou parâmetros inválidos", estimate=estimate)

    residual = _gaussian(delays, *params) - intensities
    fit = GaussianFit.from_parameters(
        center=params[1],
        rms_width=params[2],
        amplitude=params[0],
        baseline=params[3],
        residual_rms=float(np.sqrt(np.mean(residual ** 2))),
    )
    logger.debug(f"Ajuste: FWHM={fit.fwhm:.3f} fs, centro={fit.center:.3g} fs, resíduo={fit.residual_rms:.2e}")
    return fit


def measure_fwhm(axis: Sequence[float], values: Sequence[float]) -> float:
    """Largura a meia altura pelos cruzamentos interpolados linearmente."""
    axis = np.asarray(axis, dtype=float)
    values = np.asarray(values, dtype=float)
    peak_index = int(np.argmax(values))
    half = values[peak_index] / 2.0
    if not half > 0:
        raise InsufficientSamplingError(0, MIN_POINTS_ABOVE_HALF)

    below = np.nonzero(values[:peak_index] < half)[0]
    above = np.nonzero(values[peak_index:] < half)[0]
    if below.size == 0 or above.size == 0:
        raise InvalidParameterError("values", "array", "meia altura não atingida nos dois lados")

    i = below[-1]
    left = axis[i] + (half - values[i]) * (axis[i + 1] - axis[i]) / (values[i + 1] - values[i])
    j = peak_index + above[0]
    right = axis[j - 1] + (half - values[j - 1]) * (axis[j] - axis[j - 1]) / (values[j] - values[j - 1])
    return float(right - left)


def trace_variance(trace: CorrelationTrace) -> float:
    """Segundo momento central do traço ponderado pela intensidade."""
    weights = trace.intensities / trace.intensities.sum()
    mean = np.sum(weights * trace.delays)
    return float(np.sum(weights * (trace.delays - mean) ** 2))


def franson_bound(initial_variance: float, beta: float) -> float:
    """⟨Δτ²⟩ + (2β)²/⟨Δτ²⟩ em fs²."""
    if not (math.isfinite(initial_variance) and initial_variance > 0):
        raise InvalidParameterError("initial_variance", initial_variance, "deve ser positiva")
    return initial_variance + 4.0 * beta ** 2 / initial_variance


def check_violation(
    measured_variance: float,
    initial_variance: float,
    beta: float,
    tolerance: float = DEFAULT_TOLERANCE
) -> VarianceReport:
    """Violada quando a variância medida fica abaixo de bound·(1 − tolerance)."""
    if not (math.isfinite(measured_variance) and measured_variance > 0):
        raise InvalidParameterError("measured_variance", measured_variance, "deve ser positiva")
    if not 0 < tolerance <= MAX_TOLERANCE:
        raise InvalidParameterError("tolerance", tolerance, f"deve estar em (0, {MAX_TOLERANCE:g}]")

    bound = franson_bound(initial_variance, beta)
    violated = measured_variance < bound * (1.0 - tolerance)
    return VarianceReport(
        measured_variance=measured_variance,
        initial_variance=initial_variance,
        beta=beta,
        bound=bound,
        violated=violated,
        tolerance=tolerance,
    )


def cancellation_persistence_bound(sigma: float, sigma_narrow: float) -> float:
    """1/(σ·σ_narrow): dispersão até a qual o cancelamento persiste (fs²)."""
    for name, value in (("sigma", sigma), ("sigma_narrow", sigma_narrow)):
        if not (math.isfinite(value) and value > 0):
            raise InvalidParameterError(name, value, "deve ser positivo")
    return 1.0 / (sigma * sigma_narrow)


def classical_inequality_check(
    sigma: float,
    sigma_s: float,
    beta1: float,
    beta2: float,
    tolerance: float = DEFAULT_TOLERANCE
) -> VarianceReport:
    """
    Veredito para o sinal clássico com detecção local.

    A coordenada de atraso enxerga a dispersão média β_eff = (β1+β2)/2 e a
    variância inicial é a do pulso limitado por transformada, 1/σ².
    """
    measured = classical_variance_general(sigma, sigma_s, beta1, beta2)
    return check_violation(measured, 1.0 / sigma ** 2, (beta1 + beta2) / 2.0, tolerance)
