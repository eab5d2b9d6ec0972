"""Configuração: variáveis de ambiente, cenários e dados versionados."""
