"""Aritmética local, extensões, grupos e construções de geradores."""
