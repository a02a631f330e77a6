"""
Reticulados sobre O_K[G]: bases de ideais, certificado de liberdade,
critério do traço, índices de módulos e a ordem associada.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from loguru import logger

from ..errors import (
    DimensionMismatch,
    NotInIdeal,
    NotWeaklyRamified,
    NotWildlyRamified,
    PrecisionExhausted,
    TheoremViolation,
)
from .extension import Automorphism, ExtensionTower, RamificationData, embed_base, ext_trace
from .group_theory import FiniteGroup
from .lattice import det_valuation, inverse, residue_rank, residue_det, row_basis
from .local_field import LocalElement, LocalField


@dataclass
class IdealBasis:
    """O_K-base {π_L^{n+j}·y^i} de 𝔓_L^n, valuações n..n+e-1 (f vezes cada)."""

    n: int
    elements: List[LocalElement]
    valuations: List[int]


def gm_ideal_basis(L: ExtensionTower, n: int) -> IdealBasis:
    scale = L.pi_power(n)
    elements = [scale * b for b in L.basis()]
    valuations = [n + index // L.f for index in range(L.degree)]
    return IdealBasis(n=n, elements=elements, valuations=valuations)


def _residue_coordinates(x: LocalElement) -> List[int]:
    """Coordenadas inteiras de x módulo π_K na base padrão."""
    if x.is_zero():
        if x.shift < 1:
            raise PrecisionExhausted("Coordenadas sem dígito certificado")
        return [0] * x.field.degree
    if x.shift < 0:
        raise NotInIdeal(f"Coordenadas não inteiras (π_K^{x.shift})")
    if x.shift > 0:
        return [0] * x.field.degree
    return [x.field.prime.residue(c) for c in x.coeffs]


@dataclass
class FreenessCertificate:
    """Matriz residual das coordenadas de {σ(δ)} na base de 𝔓_L^n."""

    candidate: LocalElement
    n: int
    matrix: List[List[int]]
    det: int
    verdict: bool
    spanning_check: Optional[bool] = None
    spanning_method: str = ""
    trace_criterion: Optional[bool] = None
    notes: List[str] = field(default_factory=list)


def gm_is_free_generator(
    L: ExtensionTower,
    auts: Sequence[Automorphism],
    delta: LocalElement,
    n: int,
    brute_force_limit: int = 2**20,
    group: Optional[FiniteGroup] = None,
) -> FreenessCertificate:
    """
    Decide se δ gera 𝔓_L^n livremente sobre O_K[G].

    Colunas: coordenadas de σ(δ)·π_L^{-n} reduzidas módulo π_K; o veredito é
    det ≠ 0 em F_p. A mesma matriz alimenta a verificação independente por
    varredura do span e, para p-grupos, o critério do traço.

    Raises:
        NotInIdeal: v_L(δ) < n
    """
    if not delta.is_zero() and delta.valuation() < n:
        raise NotInIdeal(f"v_L(δ) = {delta.valuation()} < {n}")
    scale = L.pi_power(-n)
    columns = [_residue_coordinates(aut.apply(delta) * scale) for aut in auts]
    matrix = [[columns[j][i] for j in range(len(auts))] for i in range(L.degree)]
    det = residue_det(matrix, L.p)
    certificate = FreenessCertificate(
        candidate=delta, n=n, matrix=matrix, det=det, verdict=det != 0
    )
    certificate.spanning_check, certificate.spanning_method = gm_span_check(
        L.p, columns, brute_force_limit
    )
    if certificate.spanning_check != certificate.verdict:
        raise TheoremViolation("Determinante e varredura do span discordam")
    if group is not None and _is_p_group(len(auts), L.p):
        module = gm_ideal_residue_module(L, auts, n, group)
        certificate.trace_criterion = gm_trace_criterion(L.p, group, module, columns[group.identity])
        if certificate.trace_criterion != certificate.verdict:
            raise TheoremViolation("Critério do traço e determinante discordam")
    logger.debug(f"Certificado n={n}: det={det}, veredito={certificate.verdict}")
    return certificate


def _is_p_group(order: int, p: int) -> bool:
    while order % p == 0:
        order //= p
    return order == 1


def gm_span_check(p: int, vectors: Sequence[Sequence[int]], limit: int = 2**20) -> tuple:
    """
    F_p-span de vetores tem dimensão cheia? Enumera combinações se p^k ≤ limit.

    Returns:
        (veredito, método) com método "enumeration" ou "rank"
    """
    count = len(vectors)
    dim = len(vectors[0])
    if p**count <= limit:
        span = set()
        for combo in itertools.product(range(p), repeat=count):
            span.add(
                tuple(sum(c * v[i] for c, v in zip(combo, vectors)) % p for i in range(dim))
            )
        return len(span) == p**dim, "enumeration"
    return residue_rank([list(v) for v in vectors], p) == dim, "rank"


# Módulos residuais


@dataclass
class GroupModule:
    """k[G]-módulo de dimensão finita sobre F_p; action[g] é a matriz de g."""

    p: int
    group: FiniteGroup
    action: List[List[List[int]]]

    @property
    def dimension(self) -> int:
        return len(self.action[0])

    def act(self, g: int, x: Sequence[int]) -> List[int]:
        matrix = self.action[g]
        return [sum(a * b for a, b in zip(row, x)) % self.p for row in matrix]

    def orbit_vectors(self, x: Sequence[int]) -> List[List[int]]:
        return [self.act(g, x) for g in self.group.elements]


def regular_module(p: int, group: FiniteGroup) -> GroupModule:
    """k[G] com G agindo por multiplicação à esquerda."""
    n = group.order
    action = []
    for g in group.elements:
        matrix = [[0] * n for _ in range(n)]
        for h in group.elements:
            matrix[group.mul(g, h)][h] = 1
        action.append(matrix)
    return GroupModule(p, group, action)


def gm_ideal_residue_module(
    L: ExtensionTower, auts: Sequence[Automorphism], n: int, group: FiniteGroup
) -> GroupModule:
    """𝔓_L^n / π_K·𝔓_L^n como F_p[G]-módulo, na base de gm_ideal_basis."""
    basis = gm_ideal_basis(L, n)
    scale = L.pi_power(-n)
    action = []
    for aut in auts:
        columns = [_residue_coordinates(aut.apply(b) * scale) for b in basis.elements]
        action.append([[columns[j][i] for j in range(L.degree)] for i in range(L.degree)])
    return GroupModule(L.p, group, action)


def gm_trace_criterion(p: int, group: FiniteGroup, module: GroupModule, x: Sequence[int]) -> bool:
    """
    Para G um p-grupo e dim M = |G|: x gera M livremente sse Tr_G·x ≠ 0.

    Raises:
        DimensionMismatch: dim M ≠ |G|
    """
    if module.dimension != group.order:
        raise DimensionMismatch(f"dim M = {module.dimension} ≠ |G| = {group.order}")
    if not _is_p_group(group.order, p):
        raise DimensionMismatch(f"|G| = {group.order} não é potência de {p}")
    total = [0] * module.dimension
    for g in group.elements:
        total = [(a + b) % p for a, b in zip(total, module.act(g, x))]
    return any(total)


def gm_brute_force_free(module: GroupModule, x: Sequence[int]) -> bool:
    """k[G]·x = M por enumeração de todas as combinações."""
    verdict, _ = gm_span_check(module.p, module.orbit_vectors(x), limit=module.p ** module.dimension + 1)
    return verdict


# Índices


def gm_module_index(M_basis: Sequence[Sequence[LocalElement]], N_basis: Sequence[Sequence[LocalElement]]) -> int:
    """k com [M:N] = 𝔓_K^k, para bases em coordenadas de um mesmo K-espaço."""
    if len(M_basis) != len(N_basis):
        raise DimensionMismatch("Bases de tamanhos diferentes")
    return det_valuation(N_basis) - det_valuation(M_basis)


# Anel de grupo


@dataclass
class GroupRingElement:
    """Σ c_g·g com c_g ∈ K, indexado pelos automorfismos."""

    coeffs: List[LocalElement]

    def apply(self, x: LocalElement, auts: Sequence[Automorphism]) -> LocalElement:
        L = x.field
        total = L.zero()
        for c, aut in zip(self.coeffs, auts):
            if c.is_zero():
                continue
            total = total + embed_base(L, c) * aut.apply(x)
        return total

    def is_integral(self) -> bool:
        return all(c.is_zero() or c.shift >= 0 for c in self.coeffs)


def _indicator(K: LocalField, size: int, members: Sequence[int], scale: Optional[LocalElement] = None) -> List[LocalElement]:
    value = scale if scale is not None else K.one()
    wanted = set(members)
    return [value if g in wanted else K.zero() for g in range(size)]


def group_ring_basis(K: LocalField, size: int) -> List[List[LocalElement]]:
    return [_indicator(K, size, [g]) for g in range(size)]


def gm_extended_group_ring(
    group: FiniteGroup, inertia: Sequence[int], K: LocalField
) -> List[List[LocalElement]]:
    """Base de O_K[G][π_K^{-1}·Tr_{G_0}] como vetores em K^G."""
    size = group.order
    pi_inverse = K.base_uniformizer().inverse()
    generators = group_ring_basis(K, size)
    for g in group.elements:
        coset = [group.mul(g, h) for h in inertia]
        generators.append(_indicator(K, size, coset, pi_inverse))
    return row_basis(generators, size)


@dataclass
class AssociatedOrder:
    """O_K-base de 𝔄_{L/K} em K[G] e as linhas de integralidade usadas."""

    basis: List[GroupRingElement]
    constraint_basis: List[List[LocalElement]]
    denominator: int
    bound: Optional[int] = None
    escalations: int = 0

    def vectors(self) -> List[List[LocalElement]]:
        return [b.coeffs for b in self.basis]


def _action_rows(L: ExtensionTower, auts: Sequence[Automorphism]) -> List[List[LocalElement]]:
    """Linha (s, t): g ↦ coordenada t de σ_g(b_s)."""
    images = [[L.coordinates(aut.apply(b)) for aut in auts] for b in L.basis()]
    return [
        [images[s][g][t] for g in range(len(auts))]
        for s in range(L.degree)
        for t in range(L.degree)
    ]


def gm_associated_order(
    L: ExtensionTower,
    auts: Sequence[Automorphism],
    different_valuation: Optional[int] = None,
    max_escalations: int = 1,
) -> AssociatedOrder:
    """
    𝔄 = {x ∈ K[G] : x·O_L ⊆ O_L} como reticulado dual do span das linhas de ação.

    Se B é base escalonada das linhas, 𝔄 é gerado pelas colunas de B^{-1}. O
    denominador é conferido contra a cota π_K^{-v}, v = v_L(𝔇); se a cota
    satura, ela é dobrada até ``max_escalations`` vezes.

    Raises:
        TheoremViolation: o denominador excede a cota após as duplicações
    """
    K = L.coordinate_field
    rows = _action_rows(L, auts)
    constraint = row_basis(rows, len(auts))
    inv = inverse(constraint, K)
    columns = [[inv[i][j] for i in range(len(auts))] for j in range(len(auts))]
    denominator = max(0, max(-c.valuation() for col in columns for c in col if not c.is_zero()))
    bound = different_valuation
    escalations = 0
    if bound is not None:
        while denominator > bound:
            if escalations >= max_escalations:
                raise TheoremViolation(
                    f"Denominador {denominator} excede a cota {bound} "
                    f"(diferente {different_valuation}, {escalations} duplicações)"
                )
            bound = max(1, 2 * bound)
            escalations += 1
            logger.warning(f"Cota do denominador saturada; nova cota π_K^-{bound}")
    logger.info(f"Ordem associada calculada; denominador π_K^-{denominator}")
    return AssociatedOrder(
        basis=[GroupRingElement(col) for col in columns],
        constraint_basis=constraint,
        denominator=denominator,
        bound=bound,
        escalations=escalations,
    )


def stabilizes_integers(L: ExtensionTower, auts: Sequence[Automorphism], x: GroupRingElement) -> bool:
    return all(
        c.is_zero() or c.shift >= 0
        for b in L.basis()
        for c in L.coordinates(x.apply(b, auts))
    )


@dataclass
class IndexChain:
    """Cadeia de índices que prova O_K[G][π_K^{-1}Tr_{G_0}]·ε = O_L."""

    integers_over_ideal: int
    extended_over_group_ring: int
    image_over_group_image: int
    image_over_ideal: int
    integers_over_image: int


@dataclass
class AssociatedOrderReport:
    oracle_vs_extended: int
    extended_vs_oracle: int
    extended_index: int
    chain: IndexChain
    containment: bool
    wild_trace_valuation: int
    wild_trace_ok: bool
    denominator: int
    verdict: bool


def _coords(L: ExtensionTower, xs: Sequence[LocalElement]) -> List[List[LocalElement]]:
    return [L.coordinates(x) for x in xs]


def gm_verify_assoc_order_theorem(
    L: ExtensionTower,
    auts: Sequence[Automorphism],
    group: FiniteGroup,
    ramification: RamificationData,
    epsilon: LocalElement,
    max_escalations: int = 1,
) -> AssociatedOrderReport:
    """
    Verifica 𝔄_{L/K} = O_K[G][π_K^{-1}Tr_{G_0}] e que ε gera O_L sobre ela.

    Raises:
        TheoremViolation: alguma igualdade ou contenção falha
    """
    if ramification.wild_order == 1:
        raise NotWildlyRamified("G_1 trivial: a ordem associada é O_K[G]")
    if not ramification.weakly_ramified:
        raise NotWeaklyRamified("G_2 não trivial")
    K = L.coordinate_field
    size = group.order
    inertia = ramification.inertia
    extended = gm_extended_group_ring(group, inertia, K)
    oracle = gm_associated_order(L, auts, ramification.different_valuation, max_escalations)
    oracle_vectors = oracle.vectors()
    forward = gm_module_index(oracle_vectors, extended)
    backward = gm_module_index(extended, oracle_vectors)
    contained = all(stabilizes_integers(L, auts, GroupRingElement(v)) for v in extended)
    group_ring = group_ring_basis(K, size)
    extended_index = gm_module_index(extended, group_ring)

    integers = _coords(L, L.basis())
    ideal = _coords(L, gm_ideal_basis(L, 1).elements)
    image = _coords(L, [GroupRingElement(v).apply(epsilon, auts) for v in extended])
    group_image = _coords(L, [aut.apply(epsilon) for aut in auts])
    chain = IndexChain(
        integers_over_ideal=gm_module_index(integers, ideal),
        extended_over_group_ring=extended_index,
        image_over_group_image=gm_module_index(image, group_image),
        image_over_ideal=gm_module_index(image, ideal),
        integers_over_image=gm_module_index(integers, image),
    )
    image_integral = all(c.is_zero() or c.shift >= 0 for row in image for c in row)

    traces = [ext_trace(b, auts, inertia) for b in L.basis()]
    wild_valuation = min(t.valuation() for t in traces if not t.is_zero())
    wild_ok = wild_valuation >= len(inertia)

    verdict = (
        forward == 0
        and backward == 0
        and contained
        and extended_index == size // len(inertia)
        and chain.integers_over_image == 0
        and image_integral
        and wild_ok
    )
    report = AssociatedOrderReport(
        oracle_vs_extended=forward,
        extended_vs_oracle=backward,
        extended_index=extended_index,
        chain=chain,
        containment=contained and image_integral,
        wild_trace_valuation=wild_valuation,
        wild_trace_ok=wild_ok,
        denominator=oracle.denominator,
        verdict=verdict,
    )
    if not verdict:
        raise TheoremViolation(f"Teorema da ordem associada falhou: {report}")
    logger.info(f"Ordem associada verificada: índice sobre O_K[G] = {extended_index}")
    return report


# Obstrução pelo traço


@dataclass
class TraceObstruction:
    n: int
    min_trace_valuation: int
    bound: int
    possible: bool


def gm_trace_obstruction(L: ExtensionTower, auts: Sequence[Automorphism], n: int) -> TraceObstruction:
    """
    Para p-extensões totalmente fraca ramificadas: algum δ ∈ 𝔓_L^n pode ser livre
    sse min v_L(Tr_G(b)) < n + |G| sobre a base de 𝔓_L^n.
    """
    basis = gm_ideal_basis(L, n)
    values = []
    for b in basis.elements:
        trace = ext_trace(b, auts)
        if not trace.is_zero():
            values.append(trace.valuation())
    if not values:
        raise PrecisionExhausted("Traços indistinguíveis de zero")
    bound = n + len(auts)
    smallest = min(values)
    return TraceObstruction(n=n, min_trace_valuation=smallest, bound=bound, possible=smallest < bound)


def gm_ideal_sample(L: ExtensionTower, n: int, count: int = 20, seed: int = 0) -> List[LocalElement]:
    """Amostra de 𝔓_L^n: a base e combinações inteiras pseudoaleatórias dela."""
    basis = gm_ideal_basis(L, n).elements
    rng = random.Random(seed)
    sample = list(basis[:count])
    while len(sample) < count:
        coeffs = [rng.randrange(0, L.p**2) for _ in basis]
        if not any(coeffs):
            continue
        element = L.zero()
        for c, b in zip(coeffs, basis):
            if c:
                element = element + b * c
        sample.append(element)
    return sample
