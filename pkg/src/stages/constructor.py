"""Estágio de construção: escolhe o caminho e produz o candidato ε."""

from typing import Any

from ..models.schemas import ConstructionTrace, JobState, Method
from ..tools.generator import gen_construct
from ..tools.local_field import LocalElement, format_element, parse_element
from .base_stage import BaseStage


def render_parameter(value: Any, digits: int) -> Any:
    """Valor de parâmetro em forma determinística para o certificado."""
    if isinstance(value, LocalElement):
        return format_element(value, digits)
    if isinstance(value, (list, tuple)):
        return [render_parameter(v, digits) for v in value]
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)


class ConstructorStage(BaseStage):
    """Constrói um gerador livre de 𝔓_L^n pelo caminho mais barato aplicável."""

    def __init__(self, n: int | None = None) -> None:
        super().__init__("Constructor")
        self.n = n

    async def execute(self, state: JobState) -> JobState:
        n = state.spec.n if self.n is None else self.n
        construction = gen_construct(
            state.tower,
            state.automorphisms,
            state.group,
            state.ramification,
            n,
            seed=state.spec.seed,
        )
        digits = self.settings.display_digits
        state.construction = construction
        state.candidate = construction.element
        state.construction_trace = ConstructionTrace(
            method=Method(construction.trace.method),
            element=format_element(construction.element, digits),
            parameters={
                key: render_parameter(value, digits)
                for key, value in sorted(construction.trace.parameters.items())
            },
            intermediate_fields=construction.trace.intermediate_fields,
        )
        self.add_processing_note(state, f"Caminho {construction.trace.method} com n = {n}")
        return state


class CandidateStage(BaseStage):
    """Lê o elemento candidato informado no job (comando verify)."""

    def __init__(self) -> None:
        super().__init__("Candidate")

    async def execute(self, state: JobState) -> JobState:
        state.candidate = parse_element(state.tower, state.spec.element or "0")
        self.add_processing_note(state, f"Candidato lido: {state.spec.element}")
        return state
