"""Estágios do pipeline de jobs."""
