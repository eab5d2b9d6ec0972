"""
Configuração centralizada do simulador (variáveis de ambiente).
"""
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

from ..core.exceptions import ConfigurationError
from ..core.models import OutputFormat

load_dotenv()


def _env_int(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name, str(default))
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} deve ser inteiro, recebido {raw!r}", key=name)
    if value < minimum:
        raise ConfigurationError(f"{name} deve ser ≥ {minimum}, recebido {value}", key=name)
    return value


@dataclass
class ComputeSettings:
    """Paralelismo e limites numéricos."""
    workers: int = 1
    scan_chunk_size: int = 32
    max_detection_points: int = 801
    fft_workers: int = 1

    @classmethod
    def from_env(cls) -> 'ComputeSettings':
        """Cria configuração a partir de variáveis de ambiente."""
        return cls(
            workers=_env_int('FRANSON_WORKERS', 1),
            scan_chunk_size=_env_int('FRANSON_SCAN_CHUNK', 32),
            max_detection_points=_env_int('FRANSON_MAX_DETECTION_POINTS', 801, minimum=41),
            fft_workers=_env_int('FRANSON_FFT_WORKERS', 1),
        )


@dataclass
class OutputSettings:
    """Destino e formatação dos arquivos de resultado."""
    output_dir: str = "./results"
    output_format: OutputFormat = OutputFormat.BOTH
    significant_digits: int = 9
    slice_points: int = 64

    @classmethod
    def from_env(cls) -> 'OutputSettings':
        """Cria configuração a partir de variáveis de ambiente."""
        raw_format = os.getenv('FRANSON_OUTPUT_FORMAT', 'both').lower()
        try:
            output_format = OutputFormat(raw_format)
        except ValueError:
            raise ConfigurationError(
                f"FRANSON_OUTPUT_FORMAT inválido: {raw_format!r} (use csv, json ou both)",
                key='FRANSON_OUTPUT_FORMAT'
            )
        return cls(
            output_dir=os.getenv('FRANSON_OUTPUT_DIR', './results'),
            output_format=output_format,
            significant_digits=_env_int('FRANSON_SIGNIFICANT_DIGITS', 9),
            slice_points=_env_int('FRANSON_SLICE_POINTS', 64, minimum=2),
        )


@dataclass
class LoggingSettings:
    """Configurações de logging."""
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s"
    file_path: Optional[str] = None
    max_size_mb: float = 5.0
    backup_count: int = 5

    @classmethod
    def from_env(cls) -> 'LoggingSettings':
        """Cria configuração a partir de variáveis de ambiente."""
        try:
            max_size_mb = float(os.getenv('LOG_MAX_SIZE_MB', '5.0'))
        except ValueError:
            raise ConfigurationError("LOG_MAX_SIZE_MB deve ser numérico", key='LOG_MAX_SIZE_MB')
        return cls(
            level=os.getenv('LOG_LEVEL', 'INFO').upper(),
            file_path=os.getenv('LOG_FILE_PATH') or None,
            max_size_mb=max_size_mb,
            backup_count=_env_int('LOG_BACKUP_COUNT', 5, minimum=0),
        )


@dataclass
class AppSettings:
    """Configurações completas da aplicação."""
    compute: ComputeSettings
    output: OutputSettings
    logging: LoggingSettings

    @classmethod
    def from_env(cls) -> 'AppSettings':
        """Cria todas as configurações a partir de variáveis de ambiente."""
        return cls(
            compute=ComputeSettings.from_env(),
            output=OutputSettings.from_env(),
            logging=LoggingSettings.from_env()
        )


# Instância global de configuração
def get_settings() -> AppSettings:
    """Obtém configurações da aplicação (singleton)."""
    if not hasattr(get_settings, '_settings'):
        get_settings._settings = AppSettings.from_env()
    return get_settings._settings


def reload_settings() -> AppSettings:
    """Recarrega configurações da aplicação."""
    if hasattr(get_settings, '_settings'):
        delattr(get_settings, '_settings')
    return get_settings()
