"""Estágio de análise: torre, automorfismos, filtração e identificação de G."""

from ..models.schemas import ExtensionReport, GroupReport, JobSpec, JobState
from ..tools.extension import (
    ExtensionTower,
    ext_automorphisms,
    ext_create,
    ext_from_layers,
    ext_group,
    ext_ramification,
    ext_trace_profile,
    ext_unramified,
    ext_working_precision,
)
from ..tools.group_theory import grp_identify
from ..tools.local_field import BaseField
from .base_stage import BaseStage

# Precisão provisória usada só para ler o polinômio e estimar N.
PROBE_PRECISION = 20


def build_tower(spec: JobSpec, precision: int) -> ExtensionTower:
    """Torre L/K descrita pelo job, na precisão dada."""
    base = BaseField(spec.kind.value, spec.p, spec.f, precision)
    if spec.polynomial:
        return ext_create(base, spec.polynomial)
    if not spec.eisenstein:
        return ext_unramified(base, spec.unramified_degree or 1)
    return ext_from_layers(base, spec.unramified_degree or 1, spec.eisenstein)


def working_precision(spec: JobSpec, margin: int) -> int:
    """N explícito do job, ou a estimativa a partir da diferente local."""
    if spec.precision is not None:
        return spec.precision
    probe = build_tower(spec, PROBE_PRECISION)
    return max(PROBE_PRECISION, ext_working_precision(probe, spec.n, margin))


class AnalyzerStage(BaseStage):
    """Constrói L/K, calcula Gal(L/K), a filtração e o perfil de traços."""

    def __init__(self) -> None:
        super().__init__("Analyzer")

    async def execute(self, state: JobState) -> JobState:
        spec = state.spec
        if not state.precision:
            state.precision = working_precision(spec, self.settings.precision_margin)
            self.add_processing_note(state, f"Precisão de trabalho N = {state.precision}")

        tower = build_tower(spec, state.precision)
        auts = ext_automorphisms(tower)
        group = ext_group(tower, auts)
        ramification = ext_ramification(tower, auts)
        state.tower, state.automorphisms = tower, auts
        state.group, state.ramification = group, ramification

        span = 2 * group.order
        profile = ext_trace_profile(tower, auts, -span, span) if tower.e > 1 else {}
        wild = ramification.wild_inertia
        state.extension_report = ExtensionReport(
            degree=tower.degree,
            e=ramification.e,
            f=ramification.f,
            presentation=spec.polynomial or f"f={spec.unramified_degree}, E={spec.eisenstein}",
            substitutions=tower.substitutions,
            filtration_orders=ramification.orders,
            lower_numbers={str(k): v for k, v in sorted(ramification.lower_numbers.items())},
            weakly_ramified=ramification.weakly_ramified,
            different_valuation=ramification.different_valuation,
            different_check=ramification.different_check,
            different_check_method=ramification.different_check_method,
            monogenic=tower.monogenic,
            trace_profile={str(i): v for i, v in profile.items()},
        )
        state.group_report = GroupReport(
            order=group.order,
            identification=grp_identify(group),
            abelian=group.is_abelian(),
            inertia_identification=grp_identify(group, ramification.inertia),
            wild_identification=grp_identify(group, wild),
            wild_elementary_abelian=group.is_elementary_abelian(spec.p, wild),
            filtration_orders=ramification.orders,
        )
        self.add_processing_note(
            state,
            f"|G| = {group.order} ({state.group_report.identification}), "
            f"filtração {ramification.orders}",
        )
        return state
