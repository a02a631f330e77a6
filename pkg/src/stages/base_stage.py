"""Classe base para todos os estágios de um job."""

from abc import ABC, abstractmethod

from loguru import logger

from ..config import get_settings
from ..errors import PrecisionExhausted
from ..models.schemas import JobState


class BaseStage(ABC):
    """Classe base para os estágios do pipeline (análise, construção, verificação)."""

    def __init__(self, name: str):
        self.name = name
        self.settings = get_settings()
        logger.debug(f"Estágio {self.name} inicializado")

    @abstractmethod
    async def execute(self, state: JobState) -> JobState:
        """
        Executa a lógica principal do estágio.

        Args:
            state: Estado atual do job

        Returns:
            Estado atualizado após processamento
        """

    async def run(self, state: JobState) -> JobState:
        """Executa o estágio registrando falhas no estado."""
        logger.info(f"Executando estágio: {self.name}")
        try:
            return await self.execute(state)
        except Exception as error:
            await self.handle_error(state, error)
            raise

    def add_processing_note(self, state: JobState, note: str) -> None:
        """Adiciona uma nota de processamento ao estado."""
        state.processing_notes.append(f"[{self.name}] {note}")
        logger.info(f"{self.name}: {note}")

    def should_escalate(self, state: JobState) -> bool:
        """Verifica se ainda cabe uma nova tentativa com precisão maior."""
        return state.escalations < state.max_escalations

    def escalate(self, state: JobState) -> None:
        """Multiplica a precisão e descarta os objetos calculados."""
        state.escalations += 1
        state.precision *= self.settings.precision_escalation_factor
        state.tower = state.automorphisms = state.group = state.ramification = None
        state.construction = state.candidate = None
        self.add_processing_note(
            state,
            f"Precisão esgotada; repetindo com N = {state.precision} "
            f"({state.escalations}/{state.max_escalations})",
        )

    async def handle_error(self, state: JobState, error: Exception) -> None:
        """Trata erros durante a execução."""
        if isinstance(error, PrecisionExhausted):
            logger.warning(f"{self.name}: {error}")
            return
        error_msg = f"Erro no estágio {self.name}: {error}"
        logger.error(error_msg)
        self.add_processing_note(state, error_msg)
