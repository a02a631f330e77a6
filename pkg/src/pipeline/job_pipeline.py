"""Pipeline de estágios para os comandos do weakram."""

import asyncio
import uuid
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional

from loguru import logger

from ..config import get_settings
from ..errors import PrecisionExhausted, TheoremViolation, WeakramError
from ..models.schemas import Certificate, Command, JobSpec, JobState, Verdict
from ..stages.analyzer import AnalyzerStage
from ..stages.assoc_order import AssociatedOrderStage
from ..stages.base_stage import BaseStage
from ..stages.constructor import CandidateStage, ConstructorStage
from ..stages.verifier import VerifierStage
from ..tools.job_file import load_job

EXIT_OK = 0
EXIT_CRASH = 1
EXIT_NOT_FREE = 2


def exit_code_for(error: BaseException) -> int:
    """Código de saída de uma exceção: 2 hipótese, 3 leitura, 4 precisão, 1 falha."""
    if isinstance(error, WeakramError):
        return error.exit_code
    return EXIT_CRASH


@dataclass
class JobResult:
    """Resultado de um job: certificado (se houver) e código de saída."""

    exit_code: int
    certificate: Optional[Certificate] = None
    error: Optional[str] = None
    state: Optional[JobState] = None


class JobPipeline:
    """
    Encadeia os estágios de cada comando.

    Fluxo:
    - analyze: Analyzer
    - construct: Analyzer → Constructor → Verifier
    - verify: Analyzer → Candidate → Verifier
    - assoc-order: Analyzer → Constructor(n=1) → Verifier(n=1) → AssociatedOrder

    PrecisionExhausted reinicia o job inteiro com a precisão multiplicada,
    no máximo ``max_precision_escalations`` vezes.
    """

    def __init__(self) -> None:
        self.settings = get_settings()

    def stages_for(self, command: Command) -> List[BaseStage]:
        if command == Command.ANALYZE:
            return [AnalyzerStage()]
        if command == Command.CONSTRUCT:
            return [AnalyzerStage(), ConstructorStage(), VerifierStage()]
        if command == Command.VERIFY:
            return [AnalyzerStage(), CandidateStage(), VerifierStage()]
        return [AnalyzerStage(), ConstructorStage(n=1), VerifierStage(n=1), AssociatedOrderStage()]

    async def run(self, spec: JobSpec, job_id: Optional[str] = None) -> JobState:
        """Executa o job e devolve o estado final."""
        state = JobState(
            job_id=job_id or str(uuid.uuid4()),
            spec=spec,
            max_escalations=self.settings.max_precision_escalations,
        )
        logger.info(f"Iniciando job {state.job_id}: {spec.command.value} sobre {spec.base_label()}")
        stages = self.stages_for(spec.command)
        while True:
            try:
                for stage in stages:
                    state = await stage.run(state)
                break
            except PrecisionExhausted:
                if not stage.should_escalate(state):
                    logger.error(f"Precisão esgotada após {state.escalations} escalonamento(s)")
                    raise
                stage.escalate(state)
        if spec.command in (Command.CONSTRUCT, Command.ASSOC_ORDER) and state.freeness:
            if not state.freeness.verdict:
                raise TheoremViolation("A construção produziu um elemento não livre")
        logger.info(f"Job {state.job_id} concluído")
        return state

    def certificate(self, state: JobState) -> Certificate:
        """Monta o certificado determinístico a partir do estado final."""
        spec = state.spec
        if spec.command == Command.ANALYZE:
            verdict = Verdict.ANALYZED
        elif spec.command == Command.ASSOC_ORDER:
            verdict = Verdict.VERIFIED
        else:
            verdict = Verdict.FREE if state.freeness and state.freeness.verdict else Verdict.NOT_FREE
        trace = state.construction_trace
        return Certificate(
            schema_version=self.settings.schema_version,
            tool_version=self.settings.tool_version,
            command=spec.command,
            base=spec.base_label(),
            input=spec.polynomial or f"unramified_degree={spec.unramified_degree}; eisenstein={spec.eisenstein}",
            precision=state.precision,
            seed=spec.seed,
            extension=state.extension_report,
            group=state.group_report,
            path=trace.method if trace else None,
            construction=trace,
            freeness=state.freeness,
            associated_order=state.associated_order,
            verdict=verdict,
        )

    async def execute(self, spec: JobSpec) -> JobResult:
        """Executa o job convertendo erros em códigos de saída."""
        try:
            state = await self.run(spec)
        except Exception as error:
            code = exit_code_for(error)
            logger.error(f"Job falhou (saída {code}): {error}")
            return JobResult(exit_code=code, error=str(error))
        certificate = self.certificate(state)
        code = EXIT_NOT_FREE if certificate.verdict == Verdict.NOT_FREE else EXIT_OK
        return JobResult(exit_code=code, certificate=certificate, state=state)


def run_job_file(path: str, out_dir: str) -> int:
    """Executa um arquivo de job num processo isolado e grava o certificado."""
    try:
        spec = load_job(path)
    except WeakramError as error:
        logger.error(f"{path}: {error}")
        return error.exit_code
    result = asyncio.run(JobPipeline().execute(spec))
    if result.certificate is not None:
        target = Path(out_dir) / (Path(path).stem + ".json")
        target.write_text(result.certificate.to_json(), encoding="utf-8")
    return result.exit_code


async def run_batch(directory: Path | str, out_dir: Path | str) -> Dict[str, int]:
    """
    Executa todos os ``*.job`` de um diretório em paralelo.

    Returns:
        Código de saída por nome de arquivo
    """
    settings = get_settings()
    paths = sorted(Path(directory).glob("*.job"))
    Path(out_dir).mkdir(parents=True, exist_ok=True)
    logger.info(f"Lote com {len(paths)} jobs em {settings.batch_workers} processos")
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=settings.batch_workers) as pool:
        codes = await asyncio.gather(
            *(loop.run_in_executor(pool, run_job_file, str(p), str(out_dir)) for p in paths)
        )
    return {p.name: code for p, code in zip(paths, codes)}
