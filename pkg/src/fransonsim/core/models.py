"""
Modelos de dados do simulador.

Todos os modelos são imutáveis após a construção; arrays numpy são marcados
como somente leitura.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, Optional, Tuple

import numpy as np

from .exceptions import InvalidParameterError
from .units import FWHM_PER_SIGMA, NM_PER_UM

# Contagem mínima de amostras de uma grade
MIN_GRID_COUNT = 16
MIN_TRACE_POINTS = 32
NORMALIZATION_TOLERANCE = 1e-6


def _frozen_array(values, dtype, name: str) -> np.ndarray:
    """Converte para array somente leitura validando finitude."""
    array = np.array(values, dtype=dtype, copy=True)
    if not np.all(np.isfinite(array)):
        raise InvalidParameterError(name, "array", "contém valores não finitos")
    array.setflags(write=False)
    return array


def _require_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise InvalidParameterError(name, value, "deve ser finito e positivo")


class OutputFormat(Enum):
    """Formatos de saída suportados pela CLI."""
    CSV = "csv"
    JSON = "json"
    BOTH = "both"

    @property
    def writes_csv(self) -> bool:
        return self in (OutputFormat.CSV, OutputFormat.BOTH)

    @property
    def writes_json(self) -> bool:
        return self in (OutputFormat.JSON, OutputFormat.BOTH)


class JointBasis(Enum):
    """Eixos de uma amplitude espectral conjunta."""
    PHOTON = "photon"                  # (ω1, ω2)
    SUM_DIFFERENCE = "sum_difference"  # (ω1+ω2, ω1−ω2)


@dataclass(frozen=True)
class FrequencyGrid:
    """Amostragem uniforme em frequência angular (rad/fs)."""
    center: float
    spacing: float
    count: int
    coverage: Optional[float] = None

    def __post_init__(self):
        """Validação após inicialização."""
        if not math.isfinite(self.center):
            raise InvalidParameterError("center", self.center, "deve ser finito")
        _require_positive("spacing", self.spacing)
        if int(self.count) != self.count or self.count < MIN_GRID_COUNT:
            raise InvalidParameterError("count", self.count, f"mínimo {MIN_GRID_COUNT} amostras")
        object.__setattr__(self, "count", int(self.count))

    @cached_property
    def offsets(self) -> np.ndarray:
        """Deslocamentos ω − center, simétricos em torno de zero."""
        values = (np.arange(self.count) - (self.count - 1) / 2.0) * self.spacing
        values.setflags(write=False)
        return values

    @cached_property
    def frequencies(self) -> np.ndarray:
        values = self.center + self.offsets
        values.setflags(write=False)
        return values

    @property
    def half_span(self) -> float:
        return (self.count - 1) * self.spacing / 2.0

    @property
    def lower(self) -> float:
        return self.center - self.half_span

    @property
    def upper(self) -> float:
        return self.center + self.half_span

    @property
    def time_step(self) -> float:
        """Passo da grade temporal conjugada (fs)."""
        return 2.0 * np.pi / (self.spacing * self.count)

    @property
    def time_window(self) -> float:
        return 2.0 * np.pi / self.spacing

    def covers(self, center: float, half_width: float) -> bool:
        """Verifica se a grade cobre center ± half_width (tolerância de meio passo)."""
        slack = 0.5 * self.spacing
        return self.lower <= center - half_width + slack and self.upper >= center + half_width - slack

    def matches(self, other: "FrequencyGrid") -> bool:
        """Mesma amostragem (centro, passo e contagem)."""
        return (
            self.count == other.count
            and math.isclose(self.spacing, other.spacing, rel_tol=1e-12)
            and math.isclose(self.center, other.center, rel_tol=1e-12, abs_tol=1e-15)
        )


@dataclass(frozen=True, eq=False)
class SpectralAmplitude:
    """Amostras complexas E(ω) sobre uma grade."""
    grid: FrequencyGrid
    samples: np.ndarray

    def __post_init__(self):
        samples = _frozen_array(self.samples, np.complex128, "samples")
        if samples.shape != (self.grid.count,):
            raise InvalidParameterError(
                "samples", samples.shape, f"esperado ({self.grid.count},)"
            )
        object.__setattr__(self, "samples", samples)

    @property
    def frequencies(self) -> np.ndarray:
        return self.grid.frequencies

    @property
    def magnitudes(self) -> np.ndarray:
        return np.abs(self.samples)

    @property
    def energy(self) -> float:
        """Σ|E(ω)|² Δω."""
        return float(np.sum(np.abs(self.samples) ** 2) * self.grid.spacing)

    def with_samples(self, samples: np.ndarray) -> "SpectralAmplitude":
        return SpectralAmplitude(grid=self.grid, samples=samples)


@dataclass(frozen=True)
class DispersionSpec:
    """Fase quadrática φ(ω) = β(ω−ω0)²; β em fs², ω0 em rad/fs."""
    beta: float
    reference: float

    def __post_init__(self):
        if not math.isfinite(self.beta):
            raise InvalidParameterError("beta", self.beta, "deve ser finito")
        _require_positive("reference", self.reference)

    @property
    def group_delay_dispersion(self) -> float:
        """φ″(ω0) = 2β."""
        return 2.0 * self.beta


@dataclass(frozen=True)
class SellmeierMedium:
    """Meio dispersivo descrito pela forma de Sellmeier de três termos."""
    name: str
    coefficients: Tuple[Tuple[float, float], ...]  # pares (B_i, C_i[µm²])
    length_mm: float = 0.0
    band_um: Tuple[float, float] = (0.3, 2.5)

    def __post_init__(self):
        if len(self.coefficients) != 3:
            raise InvalidParameterError("coefficients", len(self.coefficients), "esperados três pares (B, C)")
        if not (math.isfinite(self.length_mm) and self.length_mm >= 0):
            raise InvalidParameterError("length_mm", self.length_mm, "deve ser ≥ 0")
        low, high = self.band_um
        if not (0 < low < high):
            raise InvalidParameterError("band_um", self.band_um, "faixa de validade inválida")
        object.__setattr__(
            self, "coefficients", tuple((float(b), float(c)) for b, c in self.coefficients)
        )

    def with_length(self, length_mm: float) -> "SellmeierMedium":
        return SellmeierMedium(self.name, self.coefficients, length_mm, self.band_um)

    def in_band(self, wavelength_nm: float) -> bool:
        low, high = self.band_um
        return low * NM_PER_UM <= wavelength_nm <= high * NM_PER_UM


@dataclass(frozen=True, eq=False)
class TemporalIntensity:
    """Intensidade no domínio do tempo (fs, unidades arbitrárias)."""
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = _frozen_array(self.times, float, "times")
        values = _frozen_array(self.values, float, "values")
        if times.shape != values.shape:
            raise InvalidParameterError("values", values.shape, "tamanho diferente de times")
        if np.any(values < 0):
            raise InvalidParameterError("values", float(values.min()), "intensidade negativa")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @property
    def time_step(self) -> float:
        return float(self.times[1] - self.times[0])

    @property
    def energy(self) -> float:
        return float(np.sum(self.values) * self.time_step)


@dataclass(frozen=True, eq=False)
class CorrelationTrace:
    """Intensidade detectada versus atraso τ (fs), normalizada ao pico."""
    delays: np.ndarray
    intensities: np.ndarray

    def __post_init__(self):
        delays = _frozen_array(self.delays, float, "delays")
        intensities = _frozen_array(self.intensities, float, "intensities")
        if delays.ndim != 1 or delays.shape != intensities.shape:
            raise InvalidParameterError("intensities", intensities.shape, "incompatível com delays")
        if delays.size < MIN_TRACE_POINTS:
            raise InvalidParameterError("delays", delays.size, f"mínimo {MIN_TRACE_POINTS} atrasos")
        if np.any(np.diff(delays) <= 0):
            raise InvalidParameterError("delays", "array", "deve ser estritamente crescente")
        if np.any(intensities < 0) or np.any(intensities > 1.0 + 1e-12):
            raise InvalidParameterError("intensities", "array", "fora de [0, 1]")
        object.__setattr__(self, "delays", delays)
        object.__setattr__(self, "intensities", intensities)

    @classmethod
    def normalized(cls, delays, raw_intensities) -> "CorrelationTrace":
        """Cria traço normalizado ao pico unitário."""
        raw = np.asarray(raw_intensities, dtype=float)
        peak = raw.max() if raw.size else 0.0
        if peak > 0:
            raw = raw / peak
        return cls(delays=delays, intensities=np.clip(raw, 0.0, 1.0))

    @property
    def span(self) -> float:
        return float(self.delays[-1] - self.delays[0])


@dataclass(frozen=True)
class MonochromatorSpec:
    """Resposta gaussiana S(ω) centrada em 2ω0 com resolução rms σ_s."""
    center: float
    sigma_s: float

    def __post_init__(self):
        _require_positive("center", self.center)
        _require_positive("sigma_s", self.sigma_s)

    def response(self, frequencies) -> np.ndarray:
        offsets = np.asarray(frequencies, dtype=float) - self.center
        return np.exp(-offsets ** 2 / (2.0 * self.sigma_s ** 2))


@dataclass(frozen=True, eq=False)
class JointSpectralAmplitude:
    """Amplitude espectral conjunta f sobre duas grades."""
    grid1: FrequencyGrid
    grid2: FrequencyGrid
    samples: np.ndarray
    sigma: float
    sigma_c: float
    omega0: float
    basis: JointBasis = JointBasis.PHOTON
    beta1: float = 0.0
    beta2: float = 0.0

    def __post_init__(self):
        samples = _frozen_array(self.samples, np.complex128, "samples")
        if samples.shape != (self.grid1.count, self.grid2.count):
            raise InvalidParameterError(
                "samples", samples.shape, f"esperado ({self.grid1.count}, {self.grid2.count})"
            )
        if not np.sum(np.abs(samples) ** 2) > 0:
            raise InvalidParameterError("samples", "array", "estado sem norma")
        _require_positive("sigma", self.sigma)
        _require_positive("sigma_c", self.sigma_c)
        object.__setattr__(self, "samples", samples)

    def photon_frequencies(self) -> Tuple[np.ndarray, np.ndarray]:
        """Malhas (ω1, ω2) correspondentes a cada célula."""
        axis1, axis2 = np.meshgrid(self.grid1.frequencies, self.grid2.frequencies, indexing="ij")
        if self.basis is JointBasis.PHOTON:
            return axis1, axis2
        return (axis1 + axis2) / 2.0, (axis1 - axis2) / 2.0

    def with_samples(self, samples: np.ndarray, beta1: float, beta2: float) -> "JointSpectralAmplitude":
        return JointSpectralAmplitude(
            grid1=self.grid1, grid2=self.grid2, samples=samples,
            sigma=self.sigma, sigma_c=self.sigma_c, omega0=self.omega0,
            basis=self.basis, beta1=beta1, beta2=beta2,
        )


@dataclass(frozen=True, eq=False)
class TwoTimeDistribution:
    """Densidade de probabilidade de coincidência, normalizada à unidade."""
    times1: np.ndarray
    times2: np.ndarray
    values: np.ndarray
    basis: JointBasis = JointBasis.PHOTON

    def __post_init__(self):
        times1 = _frozen_array(self.times1, float, "times1")
        times2 = _frozen_array(self.times2, float, "times2")
        values = _frozen_array(self.values, float, "values")
        if values.shape != (times1.size, times2.size):
            raise InvalidParameterError("values", values.shape, "incompatível com os eixos")
        if np.any(values < 0):
            raise InvalidParameterError("values", float(values.min()), "probabilidade negativa")
        object.__setattr__(self, "times1", times1)
        object.__setattr__(self, "times2", times2)
        object.__setattr__(self, "values", values)
        total = float(np.sum(values) * self.cell_area)
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise InvalidParameterError("values", total, "soma × área da célula deve ser 1")

    @property
    def cell_area(self) -> float:
        step1 = self.times1[1] - self.times1[0] if self.times1.size > 1 else 1.0
        step2 = self.times2[1] - self.times2[0] if self.times2.size > 1 else 1.0
        return float(step1 * step2)

    def photon_times(self) -> Tuple[np.ndarray, np.ndarray]:
        """Malhas (t1, t2) de cada célula."""
        axis1, axis2 = np.meshgrid(self.times1, self.times2, indexing="ij")
        if self.basis is JointBasis.PHOTON:
            return axis1, axis2
        # eixos (s, d) com s=(t1+t2)/2 e d=(t1−t2)/2
        return axis1 + axis2, axis1 - axis2


@dataclass(frozen=True)
class GaussianFit:
    """Resultado do ajuste amplitude·exp(−(τ−c)²/2w²) + baseline."""
    center: float
    rms_width: float
    fwhm: float
    amplitude: float
    baseline: float
    residual_rms: float

    def __post_init__(self):
        _require_positive("rms_width", self.rms_width)
        if not math.isclose(self.fwhm, FWHM_PER_SIGMA * self.rms_width, rel_tol=1e-9):
            raise InvalidParameterError("fwhm", self.fwhm, "inconsistente com rms_width")
        if not self.residual_rms >= 0:
            raise InvalidParameterError("residual_rms", self.residual_rms, "deve ser ≥ 0")

    @classmethod
    def from_parameters(cls, center, rms_width, amplitude, baseline, residual_rms) -> "GaussianFit":
        rms_width = abs(float(rms_width))
        return cls(
            center=float(center),
            rms_width=rms_width,
            fwhm=FWHM_PER_SIGMA * rms_width,
            amplitude=float(amplitude),
            baseline=float(baseline),
            residual_rms=float(residual_rms),
        )

    @property
    def variance(self) -> float:
        return self.rms_width ** 2


@dataclass(frozen=True)
class VarianceReport:
    """Veredito da desigualdade clássica ⟨Δτ_F²⟩ ≥ ⟨Δτ²⟩ + (2β)²/⟨Δτ²⟩."""
    measured_variance: float
    initial_variance: float
    beta: float
    bound: float
    violated: bool
    tolerance: float = 0.01

    def __post_init__(self):
        if self.bound < self.initial_variance * (1.0 - 1e-12):
            raise InvalidParameterError("bound", self.bound, "menor que a variância inicial")

    @property
    def margin(self) -> float:
        """Razão medida/limite (< 1 indica estreitamento abaixo do limite)."""
        return self.measured_variance / self.bound


@dataclass(frozen=True)
class ApproximateVariance:
    """Variância aproximada acompanhada do aviso de regime."""
    value: float
    in_regime: bool
    warning: Optional[str] = None


@dataclass(frozen=True)
class DistributionSummary:
    """Resumo numérico de uma distribuição de dois tempos."""
    difference_variance: float
    sum_variance: float
    difference_mean: float
    closed_form_variance: float
    difference_window: float
    sum_window: float
    grid_count: int

    @property
    def relative_error(self) -> float:
        return abs(self.difference_variance - self.closed_form_variance) / self.closed_form_variance


@dataclass(frozen=True)
class ScanSetting:
    """Par de dispersões (β1, β2) de uma varredura de referência."""
    label: str
    beta1: float
    beta2: float
    reference_fwhm: Optional[float] = None
    description: str = ""


@dataclass(frozen=True)
class RunSummary:
    """Resumo de uma execução de cenário."""
    scenario: str
    fitted_fwhm: float
    closed_form_fwhm: float
    variance: float
    bound: float
    violated: bool
    wall_time_ms: float
    config_echo: Dict[str, str] = field(default_factory=dict)
    closed_form_variance: Optional[float] = None
    initial_variance: Optional[float] = None
    reference_fwhm: Optional[float] = None
    note: str = ""

    def __post_init__(self):
        numeric = {
            "fitted_fwhm": self.fitted_fwhm,
            "closed_form_fwhm": self.closed_form_fwhm,
            "variance": self.variance,
            "bound": self.bound,
            "wall_time_ms": self.wall_time_ms,
        }
        for optional in ("closed_form_variance", "initial_variance", "reference_fwhm"):
            if getattr(self, optional) is not None:
                numeric[optional] = getattr(self, optional)
        for name, value in numeric.items():
            if not math.isfinite(value):
                raise InvalidParameterError(name, value, "resumo com valor não finito")

    @property
    def relative_fwhm_error(self) -> float:
        return abs(self.fitted_fwhm - self.closed_form_fwhm) / self.closed_form_fwhm

    def to_record(self, include_timing: bool = False) -> Dict[str, object]:
        """Campos escalares em ordem estável (sem o eco da configuração)."""
        record: Dict[str, object] = {
            "scenario": self.scenario,
            "fitted_fwhm": self.fitted_fwhm,
            "closed_form_fwhm": self.closed_form_fwhm,
            "variance": self.variance,
            "closed_form_variance": self.closed_form_variance,
            "initial_variance": self.initial_variance,
            "bound": self.bound,
            "violated": self.violated,
            "reference_fwhm": self.reference_fwhm,
            "note": self.note,
        }
        if include_timing:
            record["wall_time_ms"] = self.wall_time_ms
        return record
