"""
Fixtures compartilhadas pelos testes.
"""
import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path

import pytest

# Permite rodar os testes sem instalar o pacote
SRC_DIR = Path(__file__).resolve().parent.parent / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from fransonsim.config.scenario import ScenarioConfig  # noqa: E402
from fransonsim.config.settings import get_settings, reload_settings  # noqa: E402
from fransonsim.core.models import MonochromatorSpec  # noqa: E402


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """Isola cada teste das variáveis FRANSON_* / LOG_* do ambiente."""
    for name in list(os.environ):
        if name.startswith("FRANSON_") or name.startswith("LOG_"):
            monkeypatch.delenv(name, raising=False)
    reload_settings()
    yield
    # ainda com o ambiente do teste; só descarta o cache
    if hasattr(get_settings, "_settings"):
        del get_settings._settings


@pytest.fixture(autouse=True)
def restore_root_logging():
    """Remove os handlers instalados por setup_logging (CliRunner fecha o stream)."""
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if type(handler) in (logging.StreamHandler, RotatingFileHandler):
            root.removeHandler(handler)
            handler.close()


@pytest.fixture
def config():
    return ScenarioConfig()


@pytest.fixture
def sigma(config):
    """σ ≈ 0,119143 rad/fs para 97 nm FWHM em 807 nm."""
    return config.sigma


@pytest.fixture
def sigma_s(config):
    return config.sigma_s


@pytest.fixture
def omega0(config):
    return config.omega0


@pytest.fixture
def mono(omega0, sigma_s):
    return MonochromatorSpec(center=2.0 * omega0, sigma_s=sigma_s)
