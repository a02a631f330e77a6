"""Modelos Pydantic para jobs, relatórios e certificados do weakram."""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import isprime


class Command(str, Enum):
    """Comandos aceitos pela CLI."""

    ANALYZE = "analyze"
    CONSTRUCT = "construct"
    VERIFY = "verify"
    ASSOC_ORDER = "assoc-order"


class BaseKind(str, Enum):
    """Backends do corpo base: Q_p (padic) ou F_p((t)) (laurent)."""

    PADIC = "padic"
    LAURENT = "laurent"


class Method(str, Enum):
    """Caminhos de construção, do mais barato ao mais caro."""

    UNRAMIFIED = "unramified"
    TOT_TAME = "tot_tame"
    TOT_WEAK_P = "tot_weak_p"
    TOT_WEAK = "tot_weak"
    DOUBLY_SPLIT = "doubly_split"
    TRACE_DESCENT = "trace_descent"


class Verdict(str, Enum):
    """Veredito final do certificado."""

    FREE = "free"
    NOT_FREE = "not_free"
    VERIFIED = "verified"
    ANALYZED = "analyzed"


class JobSpec(BaseModel):
    """Arquivo de job validado."""

    kind: BaseKind = Field(..., description="Backend do corpo base")
    p: int = Field(..., ge=2, description="Característica residual")
    f: int = Field(default=1, ge=1, description="Grau residual do corpo base")
    polynomial: Optional[str] = Field(None, description="Polinômio definidor de L/K")
    unramified_degree: Optional[int] = Field(None, ge=1, description="Grau da camada não ramificada")
    eisenstein: Optional[str] = Field(None, description="Polinômio de Eisenstein sobre K")
    command: Command = Field(default=Command.ANALYZE)
    n: int = Field(default=1, description="Expoente do ideal 𝔓_L^n")
    element: Optional[str] = Field(None, description="Elemento candidato (verify)")
    precision: Optional[int] = Field(None, ge=4, description="Dígitos π_K-ádicos de trabalho")
    seed: int = Field(default=0, ge=0)
    source: Optional[str] = Field(None, description="Arquivo de origem")

    @field_validator("p")
    @classmethod
    def _prime(cls, value: int) -> int:
        if not isprime(value):
            raise ValueError(f"p = {value} não é primo")
        return value

    @field_validator("f")
    @classmethod
    def _prime_residue_field(cls, value: int) -> int:
        if value != 1:
            raise ValueError(f"f = {value}: torres exigem corpo base com corpo residual F_p")
        return value

    @model_validator(mode="after")
    def _presentation(self) -> "JobSpec":
        layered = self.unramified_degree is not None or self.eisenstein is not None
        if self.polynomial and layered:
            raise ValueError("Use polynomial ou unramified_degree + eisenstein, não ambos")
        if not self.polynomial and not layered:
            raise ValueError("Extensão sem polinômio definidor")
        if self.command == Command.VERIFY and not self.element:
            raise ValueError("verify exige o campo element")
        return self

    def base_label(self) -> str:
        if self.kind == BaseKind.LAURENT:
            return f"F_{self.p}((t))"
        return f"Q_{self.p}"


class ExtensionReport(BaseModel):
    """Invariantes de L/K."""

    degree: int
    e: int
    f: int
    presentation: str
    substitutions: List[str] = Field(default_factory=list)
    filtration_orders: List[int]
    lower_numbers: Dict[str, Optional[int]] = Field(
        default_factory=dict, description="i_G(σ) por automorfismo"
    )
    weakly_ramified: bool
    different_valuation: int
    different_check: int
    different_check_method: str
    monogenic: bool = Field(True, description="{α^i} certificada como O_K-base de O_L")
    trace_profile: Dict[str, int] = Field(
        default_factory=dict, description="i ↦ v_K(Tr_G(𝔓_L^i))"
    )


class GroupReport(BaseModel):
    """Identificação de G e de sua filtração."""

    order: int
    identification: str
    abelian: bool
    inertia_identification: str
    wild_identification: str
    wild_elementary_abelian: bool
    filtration_orders: List[int]


class ConstructionTrace(BaseModel):
    """Registro das escolhas de uma construção."""

    method: Method
    element: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    intermediate_fields: List[str] = Field(default_factory=list)


class FreenessReport(BaseModel):
    """Certificado de liberdade de um candidato em 𝔓_L^n."""

    n: int
    element: str
    residue_matrix: List[List[int]]
    determinant: int
    verdict: bool
    spanning_check: Optional[bool] = None
    spanning_method: str = ""
    trace_criterion: Optional[bool] = None
    classification: Optional[bool] = Field(
        None, description="v_L(δ) = n e n ≡ 1 mod |G| (p-extensões totalmente ramificadas)"
    )
    trace_obstruction_allows: Optional[bool] = None


class IndexChain(BaseModel):
    integers_over_ideal: int
    extended_over_group_ring: int
    image_over_group_image: int
    image_over_ideal: int
    integers_over_image: int


class AssociatedOrderReport(BaseModel):
    """Comparação entre a ordem associada e O_K[G][π_K^{-1}Tr_{G_0}]."""

    oracle_vs_extended: int
    extended_vs_oracle: int
    extended_index: int
    chain: IndexChain
    containment: bool
    wild_trace_valuation: int
    wild_trace_ok: bool
    denominator: int
    generator: str
    verdict: bool


class Certificate(BaseModel):
    """Certificado JSON com ordem de campos fixa."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=1, alias="schema")
    tool_version: str
    command: Command
    base: str
    input: str
    precision: int
    seed: int
    extension: ExtensionReport
    group: GroupReport
    path: Optional[Method] = None
    construction: Optional[ConstructionTrace] = None
    freeness: Optional[FreenessReport] = None
    associated_order: Optional[AssociatedOrderReport] = None
    verdict: Verdict

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2) + "\n"


class JobState(BaseModel):
    """Estado compartilhado entre os estágios de um job."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    job_id: str
    spec: JobSpec
    precision: int = Field(default=0, description="Dígitos de trabalho em uso")
    escalations: int = Field(default=0)
    max_escalations: int = Field(default=1)

    # Objetos matemáticos (não serializados)
    tower: Any = None
    automorphisms: Any = None
    group: Any = None
    ramification: Any = None
    construction: Any = None
    candidate: Any = None

    extension_report: Optional[ExtensionReport] = None
    group_report: Optional[GroupReport] = None
    construction_trace: Optional[ConstructionTrace] = None
    freeness: Optional[FreenessReport] = None
    associated_order: Optional[AssociatedOrderReport] = None
    processing_notes: List[str] = Field(default_factory=list)
