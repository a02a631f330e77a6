"""
Leitura de arquivos de job.

Formato chave = valor com seções::

    [base]
    kind = padic        ; padic | laurent
    p = 3
    f = 1

    [extension]
    polynomial = x^6 + 6*x^2 + 6
    ; ou: unramified_degree = 2 e eisenstein = x^3 - 3

    [task]
    command = construct ; analyze | construct | verify | assoc-order
    n = 1
    element = pi^2
    precision = 40
    seed = 0
"""

import configparser
from pathlib import Path
from typing import Any, Dict, Optional

from loguru import logger
from pydantic import ValidationError

from ..errors import ParseError
from ..models.schemas import JobSpec

SECTIONS = {
    "base": ("kind", "p", "f", "precision"),
    "extension": ("polynomial", "unramified_degree", "eisenstein"),
    "task": ("command", "n", "element", "precision", "seed"),
}


def parse_job_text(text: str, source: Optional[str] = None) -> JobSpec:
    """
    Converte o texto de um job em ``JobSpec``.

    Raises:
        ParseError: seção ou chave desconhecida, valor inválido
    """
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    try:
        parser.read_string(text, source=source or "<job>")
    except configparser.Error as exc:
        raise ParseError(f"Arquivo de job malformado: {exc}") from exc

    values: Dict[str, Any] = {}
    for section in parser.sections():
        allowed = SECTIONS.get(section)
        if allowed is None:
            raise ParseError(f"Seção desconhecida [{section}]")
        for key, value in parser.items(section):
            if key not in allowed:
                raise ParseError(f"Chave desconhecida '{key}' em [{section}]")
            values[key] = value.strip()
    if "base" not in parser.sections() or "extension" not in parser.sections():
        raise ParseError("Job exige as seções [base] e [extension]")
    if source is not None:
        values["source"] = source
    try:
        spec = JobSpec.model_validate(values)
    except ValidationError as exc:
        raise ParseError(f"Job inválido: {exc.errors()[0]['msg']}") from exc
    logger.debug(f"Job lido: {spec.command.value} sobre {spec.base_label()}")
    return spec


def load_job(path: Path | str) -> JobSpec:
    """Lê e valida um arquivo de job do disco."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"Não foi possível ler {path}: {exc}") from exc
    return parse_job_text(text, source=str(path))
