"""Modelos, exceções e unidades."""
