"""CLI principal do weakram."""

import argparse
import asyncio
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv
from loguru import logger

from .config import get_settings
from .errors import WeakramError
from .models.schemas import Command
from .pipeline.job_pipeline import EXIT_CRASH, JobPipeline, run_batch
from .tools.job_file import load_job

LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level} | {name}:{function}:{line} | {message}"


def configure_logging() -> None:
    """Sinks do loguru: stderr no nível configurado e arquivo com rotação."""
    settings = get_settings()
    logger.remove()
    logger.add(sys.stderr, level=settings.log_level, format=LOG_FORMAT)
    Path(settings.log_file).parent.mkdir(parents=True, exist_ok=True)
    logger.add(
        settings.log_file,
        rotation=settings.log_rotation,
        retention=settings.log_retention,
        level=settings.log_level,
        format=LOG_FORMAT,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakram",
        description="Geradores livres de 𝔓_L^n sobre O_K[G] em extensões fracamente ramificadas",
    )
    parser.add_argument("command", choices=[c.value for c in Command])
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--spec", type=Path, help="Arquivo de job")
    source.add_argument(
        "--batch",
        type=Path,
        help="Diretório com arquivos *.job (vale o comando de cada arquivo)",
    )
    parser.add_argument("--out", type=Path, help="Certificado JSON (ou diretório no modo lote)")
    parser.add_argument("--precision", type=int, help="Dígitos π_K-ádicos de trabalho")
    parser.add_argument("--seed", type=int, help="Semente das escolhas determinísticas")
    return parser


async def run_single(args: argparse.Namespace) -> int:
    """Executa um job e grava o certificado."""
    try:
        spec = load_job(args.spec)
        overrides = {"command": Command(args.command)}
        if args.precision is not None:
            overrides["precision"] = args.precision
        if args.seed is not None:
            overrides["seed"] = args.seed
        spec = spec.model_validate(spec.model_dump() | overrides)
    except WeakramError as error:
        logger.error(str(error))
        return error.exit_code
    except ValueError as error:
        logger.error(f"Parâmetros inválidos: {error}")
        return 3

    result = await JobPipeline().execute(spec)
    if result.certificate is not None:
        text = result.certificate.to_json()
        if args.out:
            args.out.parent.mkdir(parents=True, exist_ok=True)
            args.out.write_text(text, encoding="utf-8")
            logger.info(f"Certificado gravado em {args.out}")
        else:
            sys.stdout.write(text)
    return result.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    """Ponto de entrada do script ``weakram``."""
    load_dotenv()
    args = build_parser().parse_args(argv)
    configure_logging()
    logger.info(f"weakram {get_settings().tool_version}: {args.command}")
    try:
        if args.batch is not None:
            codes = asyncio.run(run_batch(args.batch, args.out or args.batch))
            for name, code in codes.items():
                logger.info(f"{name}: saída {code}")
            return max(codes.values(), default=0)
        return asyncio.run(run_single(args))
    except Exception as error:
        logger.exception(f"Erro não tratado: {error}")
        return EXIT_CRASH


if __name__ == "__main__":
    sys.exit(main())
