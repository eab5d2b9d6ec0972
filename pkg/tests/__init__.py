"""Testes do simulador franson-sim."""
