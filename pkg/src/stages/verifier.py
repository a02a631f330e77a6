"""Estágio de verificação: certificado de liberdade do candidato."""

from ..errors import TheoremViolation
from ..models.schemas import FreenessReport, JobState
from ..tools.generator import gen_classify_p_extension
from ..tools.group_module import gm_is_free_generator, gm_trace_obstruction
from ..tools.local_field import format_element
from .base_stage import BaseStage


class VerifierStage(BaseStage):
    """Decide se o candidato gera 𝔓_L^n livremente sobre O_K[G]."""

    def __init__(self, n: int | None = None) -> None:
        super().__init__("Verifier")
        self.n = n

    async def execute(self, state: JobState) -> JobState:
        L, auts, ramification = state.tower, state.automorphisms, state.ramification
        n = state.spec.n if self.n is None else self.n
        delta = state.candidate
        certificate = gm_is_free_generator(
            L, auts, delta, n, self.settings.brute_force_limit, state.group
        )
        classification = None
        allows = None
        totally_p = ramification.e == L.degree and ramification.wild_order == L.degree
        if totally_p and L.degree > 1 and ramification.weakly_ramified:
            classification = not delta.is_zero() and gen_classify_p_extension(
                L, ramification, delta, n
            )
            allows = gm_trace_obstruction(L, auts, n).possible
            if classification != certificate.verdict:
                raise TheoremViolation("Classificação por valuação e determinante discordam")
            if certificate.verdict and not allows:
                raise TheoremViolation("Obstrução pelo traço contradiz o certificado")

        state.freeness = FreenessReport(
            n=n,
            element=format_element(delta, self.settings.display_digits),
            residue_matrix=certificate.matrix,
            determinant=certificate.det,
            verdict=certificate.verdict,
            spanning_check=certificate.spanning_check,
            spanning_method=certificate.spanning_method,
            trace_criterion=certificate.trace_criterion,
            classification=classification,
            trace_obstruction_allows=allows,
        )
        self.add_processing_note(
            state, f"Veredito para n = {n}: {'livre' if certificate.verdict else 'não livre'}"
        )
        return state
