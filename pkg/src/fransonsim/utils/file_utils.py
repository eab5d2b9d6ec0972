"""
Utilitários para manipulação de arquivos de resultado.
"""
import math
import re
import unicodedata
from pathlib import Path
from typing import Optional


def sanitize_filename(filename: str) -> str:
    """
    Sanitiza nome de arquivo removendo caracteres inválidos.

    Args:
        filename: Nome original (rótulo do cenário)

    Returns:
        Nome em minúsculas compatível com sistemas de arquivo
    """
    if not filename:
        return "cenario"

    # Normalizar unicode (remover acentos)
    filename = unicodedata.normalize('NFKD', filename)
    filename = filename.encode('ASCII', 'ignore').decode('ASCII').lower()

    # Sinal negativo vira "m" para não colidir com o valor positivo
    filename = re.sub(r'(^|[=_\s])-(?=\d)', r'\1m', filename)

    filename = re.sub(r'[\s\-\.\(\)\[\]=<>:"/\\|?*+]+', '_', filename)
    filename = re.sub(r'[^\w]', '_', filename)
    filename = re.sub(r'_+', '_', filename).strip('_')

    if not filename:
        filename = 'cenario'

    # Limitar tamanho (max 100 caracteres para compatibilidade)
    if len(filename) > 100:
        filename = filename[:100].rstrip('_')

    return filename


def generate_filename(scenario: str, kind: str, extension: str) -> str:
    """
    Gera nome de arquivo com padrão: CENARIO_TIPO.extensao

    Args:
        scenario: Rótulo do cenário
        kind: Tipo do conteúdo (trace, slice, summary, table)
        extension: Extensão com ou sem ponto
    """
    extension = extension if extension.startswith('.') else f'.{extension}'
    return f"{sanitize_filename(scenario)}_{kind}{extension}"


def ensure_directory(path: Path) -> Path:
    """
    Garante que um diretório existe, criando se necessário.

    Args:
        path: Caminho do diretório

    Returns:
        Path do diretório criado
    """
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def get_file_size_mb(file_path: Path) -> float:
    """Retorna tamanho do arquivo em MB."""
    if not file_path.exists():
        return 0.0
    return file_path.stat().st_size / (1024 * 1024)


def format_float(value: Optional[float], digits: int = 9) -> Optional[float]:
    """Arredonda para `digits` algarismos significativos (None e não finitos passam)."""
    if value is None or not math.isfinite(value) or value == 0:
        return value
    return float(f"{value:.{digits}g}")
