"""Estágio da ordem associada."""

from ..models.schemas import AssociatedOrderReport, IndexChain, JobState
from ..tools.group_module import gm_verify_assoc_order_theorem
from ..tools.local_field import format_element
from .base_stage import BaseStage


class AssociatedOrderStage(BaseStage):
    """Compara 𝔄_{L/K} com O_K[G][π_K^{-1}Tr_{G_0}] e testa ε como gerador de O_L."""

    def __init__(self) -> None:
        super().__init__("AssociatedOrder")

    async def execute(self, state: JobState) -> JobState:
        report = gm_verify_assoc_order_theorem(
            state.tower,
            state.automorphisms,
            state.group,
            state.ramification,
            state.candidate,
            max_escalations=self.settings.max_precision_escalations,
        )
        chain = report.chain
        state.associated_order = AssociatedOrderReport(
            oracle_vs_extended=report.oracle_vs_extended,
            extended_vs_oracle=report.extended_vs_oracle,
            extended_index=report.extended_index,
            chain=IndexChain(
                integers_over_ideal=chain.integers_over_ideal,
                extended_over_group_ring=chain.extended_over_group_ring,
                image_over_group_image=chain.image_over_group_image,
                image_over_ideal=chain.image_over_ideal,
                integers_over_image=chain.integers_over_image,
            ),
            containment=report.containment,
            wild_trace_valuation=report.wild_trace_valuation,
            wild_trace_ok=report.wild_trace_ok,
            denominator=report.denominator,
            generator=format_element(state.candidate, self.settings.display_digits),
            verdict=report.verdict,
        )
        self.add_processing_note(
            state, f"[𝔄 : O_K[G]] = 𝔓_K^{report.extended_index}, denominador {report.denominator}"
        )
        return state
