"""Encadeamento dos estágios e modo lote."""
