"""
Franson-sim - análogo clássico do cancelamento de dispersão não local.

Este pacote fornece:
- Núcleo espectral (grades, pulsos gaussianos, dispersão, Sellmeier)
- Cadeia clássica de SHG com monocromador e varredura de atraso
- Amplitude conjunta do bifóton e distribuição de coincidências
- Ajuste de traços e a desigualdade de variâncias
- CLI com cenários, varreduras e saída CSV/JSON
"""

__version__ = "1.0.0"
__author__ = "Catalise Analytics"
__email__ = "dev@catalise.com.br"

# Importações principais para facilitar uso
from .config.settings import get_settings, AppSettings
from .config.scenario import ScenarioConfig, load_scenario, parse_scenario_text
from .core.models import (
    CorrelationTrace,
    DispersionSpec,
    FrequencyGrid,
    GaussianFit,
    JointBasis,
    JointSpectralAmplitude,
    MonochromatorSpec,
    RunSummary,
    SpectralAmplitude,
    TwoTimeDistribution,
    VarianceReport,
)
from .core.exceptions import (
    FransonSimError,
    UsageError,
    ConfigurationError,
    ComputationError,
    CoverageError,
    WindowOverflowError,
)
from .services.spectral import bk7_beta, make_frequency_grid
from .services.shg import classical_variance_closed_form, delay_scan
from .services.biphoton import quantum_variance_closed_form, simulate_two_time
from .services.analysis import check_violation, fit_gaussian_trace, franson_bound
from .services.scenarios import ScenarioRunner, create_scenario_runner

# Funcionalidades principais
__all__ = [
    # Versão e metadados
    '__version__',
    '__author__',
    '__email__',

    # Configuração
    'get_settings',
    'AppSettings',
    'ScenarioConfig',
    'load_scenario',
    'parse_scenario_text',

    # Modelos principais
    'CorrelationTrace',
    'DispersionSpec',
    'FrequencyGrid',
    'GaussianFit',
    'JointBasis',
    'JointSpectralAmplitude',
    'MonochromatorSpec',
    'RunSummary',
    'SpectralAmplitude',
    'TwoTimeDistribution',
    'VarianceReport',

    # Exceções
    'FransonSimError',
    'UsageError',
    'ConfigurationError',
    'ComputationError',
    'CoverageError',
    'WindowOverflowError',

    # Operações
    'bk7_beta',
    'make_frequency_grid',
    'classical_variance_closed_form',
    'delay_scan',
    'quantum_variance_closed_form',
    'simulate_two_time',
    'check_violation',
    'fit_gaussian_trace',
    'franson_bound',
    'ScenarioRunner',
    'create_scenario_runner',
]


def get_version():
    """Retorna versão do pacote."""
    return __version__


def quick_start():
    """
    Guia rápido de uso do sistema.

    Returns:
        str: Texto com instruções básicas
    """
    return """
🔬 FRANSON-SIM - GUIA RÁPIDO

📋 Comandos principais:
   franson-sim info                      # Configurações e dados
   franson-sim --print-defaults          # Parâmetros padrão e origem
   franson-sim bk7-beta 38.65mm @807nm   # β de uma placa de BK7

📊 Cenários:
   franson-sim classical-scan --beta1 850 --beta2 -850
   franson-sim quantum-correlation --sigma-c-ratio 0.01
   franson-sim reproduce-fig3 --out ./results
   franson-sim sweep beta 0,1e3,1e4,1e5
   franson-sim inequality-check

📚 Documentação completa:
   franson-sim --help
   franson-sim sweep --help
"""


def validate_environment():
    """
    Valida se o ambiente está configurado corretamente.

    Returns:
        tuple[bool, list[str]]: (sucesso, lista_de_problemas)
    """
    from .config.library import get_data_library

    problems = []

    try:
        get_settings()
    except FransonSimError as e:
        problems.append(f"Erro ao carregar configurações: {e}")

    try:
        stats = get_data_library().get_statistics()
        if 'BK7' not in stats['media']:
            problems.append("BK7 ausente da tabela de Sellmeier")
        if not stats['reference_scans']:
            problems.append("Nenhuma varredura de referência encontrada")
    except FransonSimError as e:
        problems.append(f"Erro ao carregar dados: {e}")

    return len(problems) == 0, problems
