"""
Acesso aos arquivos de dados versionados (coeficientes de Sellmeier e
varreduras de referência).
"""
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from ..core.exceptions import ConfigurationError
from ..core.models import ScanSetting, SellmeierMedium

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
SELLMEIER_COLUMNS = ["name", "B1", "B2", "B3", "C1", "C2", "C3", "lambda_min_um", "lambda_max_um"]


class DataLibrary:
    """Carrega e mantém em cache os dados de materiais e de referência."""

    def __init__(self, data_dir: Optional[Path] = None):
        self.data_dir = Path(data_dir) if data_dir else DATA_DIR
        self.sellmeier_file = self.data_dir / "sellmeier.txt"
        self.reference_file = self.data_dir / "reference_scans.json"
        self._media: Dict[str, SellmeierMedium] = {}
        self._media_loaded = False
        self._scans: List[ScanSetting] = []

    def _load_media(self) -> Dict[str, SellmeierMedium]:
        """Lê a tabela de Sellmeier (linhas iniciadas por # são comentários)."""
        if not self.sellmeier_file.exists():
            raise ConfigurationError(f"Arquivo de Sellmeier {self.sellmeier_file} não encontrado")

        try:
            table = pd.read_csv(self.sellmeier_file, comment="#", skipinitialspace=True)
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            logger.error(f"Erro ao ler {self.sellmeier_file}: {e}")
            raise ConfigurationError(f"Arquivo de Sellmeier inválido: {e}")

        missing = [column for column in SELLMEIER_COLUMNS if column not in table.columns]
        if missing:
            raise ConfigurationError(f"Colunas ausentes em {self.sellmeier_file.name}: {missing}")

        media = {}
        for row in table.itertuples(index=False):
            name = str(row.name).strip().upper()
            media[name] = SellmeierMedium(
                name=name,
                coefficients=((row.B1, row.C1), (row.B2, row.C2), (row.B3, row.C3)),
                band_um=(float(row.lambda_min_um), float(row.lambda_max_um)),
            )

        logger.debug(f"Carregados {len(media)} meios de {self.sellmeier_file}")
        return media

    def _load_reference_scans(self) -> List[ScanSetting]:
        if not self.reference_file.exists():
            raise ConfigurationError(f"Arquivo {self.reference_file} não encontrado")
        try:
            with open(self.reference_file, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"Arquivo de referência inválido: {e}")

        return [
            ScanSetting(
                label=item["label"],
                beta1=float(item["beta1"]),
                beta2=float(item["beta2"]),
                reference_fwhm=item.get("reference_fwhm"),
                description=item.get("description", ""),
            )
            for item in data.get("scans", [])
        ]

    def get_medium(self, name: str, length_mm: float = 0.0) -> SellmeierMedium:
        """Retorna o meio pelo nome com a espessura informada."""
        if not self._media_loaded:
            self._media = self._load_media()
            self._media_loaded = True
        key = name.strip().upper()
        if key not in self._media:
            raise ConfigurationError(f"Meio {name!r} não encontrado em {self.sellmeier_file.name}")
        return self._media[key].with_length(length_mm)

    def get_reference_scans(self) -> List[ScanSetting]:
        if not self._scans:
            self._scans = self._load_reference_scans()
        return list(self._scans)

    def get_statistics(self) -> Dict[str, object]:
        """Resumo dos dados disponíveis (usado pelo comando info)."""
        if not self._media_loaded:
            self._media = self._load_media()
            self._media_loaded = True
        return {
            'media': sorted(self._media),
            'reference_scans': [scan.label for scan in self.get_reference_scans()],
            'data_dir': str(self.data_dir),
        }


_data_library: Optional[DataLibrary] = None


def get_data_library() -> DataLibrary:
    """Obtém instância global da biblioteca de dados."""
    global _data_library

    if _data_library is None:
        _data_library = DataLibrary()

    return _data_library


def load_sellmeier_medium(name: str, length_mm: float = 0.0) -> SellmeierMedium:
    """Carrega um meio da tabela de Sellmeier com a espessura informada."""
    return get_data_library().get_medium(name, length_mm)
