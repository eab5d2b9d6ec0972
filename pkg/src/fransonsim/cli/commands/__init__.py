"""Subcomandos da CLI."""
