"""
Configuração de cenário: arquivo texto plano key=value.

Linhas em branco e iniciadas por # são ignoradas; chaves desconhecidas ou
repetidas são erros. Floats são ecoados com repr, de modo que reler o eco
reproduz a execução bit a bit.
"""
import logging
import math
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Dict, Optional, Union

from ..core.exceptions import ConfigurationError
from ..core.units import angular_frequency
from ..services.spectral import MIN_COVERAGE, sigma_from_fwhm_wavelength

logger = logging.getLogger(__name__)

AUTO = "auto"
MIN_DELAY_COUNT = 32
MIN_SIGMA_C_RATIO = 1.0 / 200.0
MAX_SIGMA_C_RATIO = 10.0

# Origem de cada valor padrão (exibida por --print-defaults)
DEFAULT_PROVENANCE: Dict[str, str] = {
    "center_wavelength": "comprimento de onda central do laser Ti:safira (nm)",
    "field_fwhm": "largura espectral FWHM do pulso (nm)",
    "beta1": "β do braço 1: 38,65 mm de BK7 em 807 nm ≈ 850 fs²",
    "beta2": "β do braço 2: compressor de prismas com dispersão oposta (fs²)",
    "mono_fwhm": "resolução FWHM do monocromador no comprimento de onda do SHG (nm)",
    "sigma_c_ratio": "σ_c/σ dos cenários quânticos (0,01 = forte anticorrelação)",
    "delay_span": "meia janela de atrasos em fs (auto = ±5 FWHM esperadas)",
    "delay_count": "número de atrasos da varredura",
    "grid_count": "amostras da grade de frequência fundamental",
    "coverage": "meia largura da grade em múltiplos de σ",
    "joint_grid_count": "amostras por eixo da grade conjunta (Σ, Δ)",
    "violation_tolerance": "tolerância relativa do veredito da desigualdade nos cenários",
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Parâmetros de um cenário (unidades: nm, fs, fs²)."""
    center_wavelength: float = 807.0
    field_fwhm: float = 97.0
    beta1: float = 850.0
    beta2: float = -850.0
    mono_fwhm: float = 0.02
    sigma_c_ratio: float = 0.01
    delay_span: Optional[float] = None
    delay_count: int = 201
    grid_count: int = 4096
    coverage: float = 8.0
    joint_grid_count: int = 512
    violation_tolerance: float = 0.05

    def __post_init__(self):
        """Validação após inicialização."""
        for key in ("center_wavelength", "field_fwhm", "mono_fwhm", "sigma_c_ratio"):
            value = getattr(self, key)
            if not (math.isfinite(value) and value > 0):
                raise ConfigurationError(f"{key} deve ser positivo, recebido {value!r}", key=key)
        for key in ("beta1", "beta2"):
            if not math.isfinite(getattr(self, key)):
                raise ConfigurationError(f"{key} deve ser finito", key=key)
        if self.field_fwhm >= self.center_wavelength:
            raise ConfigurationError("field_fwhm deve ser menor que center_wavelength", key="field_fwhm")
        if self.delay_span is not None and not (math.isfinite(self.delay_span) and self.delay_span > 0):
            raise ConfigurationError("delay_span deve ser positivo ou auto", key="delay_span")
        if self.delay_count < MIN_DELAY_COUNT:
            raise ConfigurationError(f"delay_count deve ser ≥ {MIN_DELAY_COUNT}", key="delay_count")
        if self.grid_count < 16 or self.joint_grid_count < 16:
            raise ConfigurationError("grid_count e joint_grid_count devem ser ≥ 16", key="grid_count")
        if not self.coverage >= MIN_COVERAGE:
            raise ConfigurationError(f"coverage deve ser ≥ {MIN_COVERAGE:g}", key="coverage")
        if not 0 < self.violation_tolerance <= 0.1:
            raise ConfigurationError("violation_tolerance deve estar em (0, 0.1]", key="violation_tolerance")

    # Grandezas derivadas

    @property
    def omega0(self) -> float:
        return float(angular_frequency(self.center_wavelength))

    @property
    def sigma(self) -> float:
        """Largura rms do campo (rad/fs)."""
        return sigma_from_fwhm_wavelength(self.field_fwhm, self.center_wavelength)

    @property
    def shg_wavelength(self) -> float:
        return self.center_wavelength / 2.0

    @property
    def sigma_s(self) -> float:
        """Resolução rms do monocromador (rad/fs)."""
        return sigma_from_fwhm_wavelength(self.mono_fwhm, self.shg_wavelength)

    @property
    def sigma_c(self) -> float:
        return self.sigma_c_ratio * self.sigma

    def with_overrides(self, **changes) -> "ScenarioConfig":
        """Cópia com valores alterados (revalidada)."""
        return replace(self, **changes)

    def to_echo(self) -> Dict[str, str]:
        """Eco textual de cada chave, na ordem dos campos."""
        return {item.name: _format_value(getattr(self, item.name)) for item in fields(self)}

    def to_text(self) -> str:
        return "".join(f"{key}={value}\n" for key, value in self.to_echo().items())


def _format_value(value: Union[float, int, None]) -> str:
    if value is None:
        return AUTO
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


_FIELD_TYPES = {
    "center_wavelength": float,
    "field_fwhm": float,
    "beta1": float,
    "beta2": float,
    "mono_fwhm": float,
    "sigma_c_ratio": float,
    "delay_span": float,
    "delay_count": int,
    "grid_count": int,
    "coverage": float,
    "joint_grid_count": int,
    "violation_tolerance": float,
}


def _parse_value(key: str, raw: str, line_number: int):
    if key == "delay_span" and raw.lower() == AUTO:
        return None
    try:
        return _FIELD_TYPES[key](raw)
    except ValueError:
        expected = "inteiro" if _FIELD_TYPES[key] is int else "número"
        raise ConfigurationError(f"{key}: esperado {expected}, recebido {raw!r}", key=key, line_number=line_number)


def parse_scenario_text(text: str, base: Optional[ScenarioConfig] = None) -> ScenarioConfig:
    """
    Interpreta o texto key=value sobre a configuração base (padrões se None).

    Raises:
        ConfigurationError: Linha malformada, chave desconhecida, repetida ou valor inválido
    """
    values: Dict[str, object] = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigurationError(f"esperado key=value, recebido {stripped!r}", line_number=line_number)

        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ConfigurationError(f"chave desconhecida {key!r}", key=key, line_number=line_number)
        if key in values:
            raise ConfigurationError(f"chave repetida {key!r}", key=key, line_number=line_number)
        values[key] = _parse_value(key, raw, line_number)

    return replace(base or ScenarioConfig(), **values)


def load_scenario(path: Union[str, Path]) -> ScenarioConfig:
    """Lê um arquivo de cenário."""
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"Arquivo de cenário {path} não encontrado")
    config = parse_scenario_text(path.read_text(encoding="utf-8"))
    logger.debug(f"Cenário carregado de {path}")
    return config


def describe_defaults() -> str:
    """Texto com cada padrão e sua origem."""
    defaults = ScenarioConfig().to_echo()
    width = max(len(key) for key in defaults)
    return "\n".join(
        f"{key.ljust(width)} = {value:<10}  # {DEFAULT_PROVENANCE[key]}"
        for key, value in defaults.items()
    )
