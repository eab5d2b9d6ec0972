"""Serviços numéricos e de orquestração."""
