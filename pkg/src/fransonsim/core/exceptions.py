"""
Exceções customizadas para o simulador de cancelamento de dispersão.
"""
from typing import Any, Optional


class FransonSimError(Exception):
    """Exceção base para erros do simulador."""
    exit_code = 1


class UsageError(FransonSimError):
    """Uso incorreto da CLI ou da API de cenários."""
    exit_code = 2


class ConfigurationError(UsageError):
    """Erro no arquivo de cenário ou nas variáveis de ambiente."""

    def __init__(self, message: str, key: Optional[str] = None, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"linha {line_number}: {message}"
        super().__init__(message)
        self.key = key
        self.line_number = line_number


class ComputationError(FransonSimError):
    """Falha em uma etapa numérica."""
    exit_code = 3


class InvalidParameterError(ComputationError, ValueError):
    """Parâmetro físico ou numérico fora do domínio permitido."""

    def __init__(self, parameter: str, value: Any, reason: str = ""):
        message = f"Parâmetro inválido {parameter}={value!r}"
        if reason:
            message = f"{message}: {reason}"
        super().__init__(message)
        self.parameter = parameter
        self.value = value


class CoverageError(ComputationError):
    """Grade de frequências não cobre a janela espectral exigida."""

    def __init__(self, message: str, hint: Optional[str] = None):
        super().__init__(f"{message} ({hint})" if hint else message)
        self.hint = hint


class GridMismatchError(ComputationError):
    """Operação entre amplitudes definidas em grades diferentes."""
    pass


class DomainError(ComputationError):
    """Comprimento de onda fora da faixa de validade do meio."""
    pass


class WindowOverflowError(ComputationError):
    """Distribuição temporal não cabe na janela da transformada."""

    def __init__(self, message: str, edge_ratio: float, hint: str = "aumente joint_grid_count"):
        super().__init__(f"{message} (borda/pico={edge_ratio:.2e}; {hint})")
        self.edge_ratio = edge_ratio
        self.hint = hint


class InsufficientSamplingError(ComputationError):
    """Traço com poucos pontos acima de meia altura."""

    def __init__(self, points_above_half: int, required: int = 8):
        super().__init__(
            f"Apenas {points_above_half} pontos acima de meia altura (mínimo {required})"
        )
        self.points_above_half = points_above_half
        self.required = required


class FitFailureError(ComputationError):
    """Ajuste gaussiano não convergiu."""

    def __init__(self, message: str, estimate: Any = None):
        super().__init__(message)
        self.estimate = estimate
