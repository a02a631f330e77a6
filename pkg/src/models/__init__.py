"""Modelos Pydantic de jobs, relatórios e certificados."""
