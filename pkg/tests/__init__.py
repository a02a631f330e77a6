"""Testes do weakram."""
