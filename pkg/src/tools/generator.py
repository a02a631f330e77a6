"""
Construções explícitas de geradores livres de 𝔓_L^n sobre O_K[G].

Cada construção devolve o candidato e um registro das escolhas feitas; a
certificação fica a cargo de ``gm_is_free_generator``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from loguru import logger

from ..errors import (
    BadExponent,
    InvalidDegree,
    NotDoublySplit,
    NotTotallyRamified,
    NotWeaklyRamified,
    TheoremViolation,
    WildDegree,
)
from .extension import (
    Automorphism,
    ExtensionTower,
    RamificationData,
    TowerEmbedding,
    embed_base,
    ext_automorphisms,
    ext_compositum,
    ext_fixed_field_uniformizer,
    ext_group,
    ext_ramification,
    ext_tame_kummer_uniformizer,
    ext_trace,
    ext_unramified,
    subgroup_fixing,
)
from .finite_field import ff_normal_basis_element
from .group_theory import FiniteGroup, SplitData, grp_complement, grp_doubly_split
from .local_field import LocalElement

METHODS = ("unramified", "tot_tame", "tot_weak_p", "tot_weak", "doubly_split", "trace_descent")


@dataclass
class ConstructionTrace:
    """Escolhas de uma construção: método, parâmetros e corpos intermediários."""

    method: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    intermediate_fields: List[str] = field(default_factory=list)


@dataclass
class Construction:
    element: LocalElement
    trace: ConstructionTrace
    tower: ExtensionTower


def bezout(p_power: int, c: int) -> tuple:
    """(a, b) com a·p^r + b·c = 1 e 0 ≤ a < c."""
    if c == 1:
        return 0, 1
    a = pow(p_power, -1, c)
    b = (1 - a * p_power) // c
    return a, b


def _units(L: ExtensionTower, count: int, units: Optional[Sequence[LocalElement]]) -> List[LocalElement]:
    if units is None:
        return [L.one() for _ in range(count)]
    if len(units) != count:
        raise InvalidDegree(f"Esperadas {count} unidades, recebidas {len(units)}")
    return [u if u.field == L else embed_base(L, u) for u in units]


def _check_exponent(n: int, modulus: int) -> None:
    if (n - 1) % modulus:
        raise BadExponent(f"n = {n} não é ≡ 1 mod {modulus}")


def gen_unramified(L: ExtensionTower, seed: int = 0) -> Construction:
    """β = levantamento de um elemento normal do corpo residual."""
    if L.e != 1:
        raise NotTotallyRamified("gen_unramified exige e = 1")
    residue = ff_normal_basis_element(L.residue_field, L.f, 1, seed)
    beta = L.lift_residue(residue)
    trace = ConstructionTrace("unramified", {"beta": beta, "beta_residue": str(residue)})
    return Construction(beta, trace, L)


def gen_tot_tame(
    L: ExtensionTower,
    n: int,
    units: Optional[Sequence[LocalElement]] = None,
) -> Construction:
    """δ = π_L^n·(u_0 + u_1·π_L + ... + u_{e-1}·π_L^{e-1}) com π_L de Kummer."""
    if L.f != 1:
        raise NotTotallyRamified("gen_tot_tame exige L/K totalmente ramificada")
    if L.e % L.p == 0:
        raise WildDegree(f"e = {L.e} divisível por p = {L.p}")
    pi = ext_tame_kummer_uniformizer(L, L.uniformizer(), L.e)
    us = _units(L, L.e, units)
    alpha = L.zero()
    power = L.one()
    for u in us:
        alpha = alpha + u * power
        power = power * pi
    delta = pi**n * alpha
    trace = ConstructionTrace(
        "tot_tame", {"n": n, "pi_L": pi, "u": [str(u) for u in us]}
    )
    return Construction(delta, trace, L)


def gen_tot_weak_p(L: ExtensionTower, ramification: RamificationData, n: int) -> Construction:
    """δ = π_L^n para p-extensões totalmente e fracamente ramificadas."""
    if ramification.e != L.degree:
        raise NotTotallyRamified("G_0 ≠ G")
    if not ramification.weakly_ramified:
        raise NotWeaklyRamified("G_2 não trivial")
    _check_exponent(n, L.degree)
    delta = L.uniformizer() ** n
    return Construction(delta, ConstructionTrace("tot_weak_p", {"n": n}), L)


def gen_doubly_split(
    L: ExtensionTower,
    auts: Sequence[Automorphism],
    ramification: RamificationData,
    split: SplitData,
    n: int,
    units: Optional[Sequence[LocalElement]] = None,
    seed: int = 0,
    method: str = "doubly_split",
) -> Construction:
    """
    ε = π_T^{nb}·π_S^{na}·α·β.

    π_S é uniformizador de L^S com π_S^c uniformizador de K, π_T qualquer
    uniformizador de L^T, α = Σ u_i·π_S^i e β normal para L^I/K.
    """
    if not ramification.weakly_ramified:
        raise NotWeaklyRamified("G_2 não trivial")
    p_power, c = len(split.W), len(split.C)
    _check_exponent(n, p_power)
    a, b = bezout(p_power, c)

    s_uniformizer = ext_fixed_field_uniformizer(L, auts, split.S, ramification)
    pi_s = ext_tame_kummer_uniformizer(L, s_uniformizer.element, c)
    t_uniformizer = ext_fixed_field_uniformizer(L, auts, split.T, ramification)
    pi_t = t_uniformizer.element

    if pi_t.valuation() * b + pi_s.valuation() * a != 1:
        raise TheoremViolation("v_L(π_T^b·π_S^a) ≠ 1")
    us = _units(L, c, units)
    alpha = L.zero()
    power = L.one()
    for u in us:
        alpha = alpha + u * power
        power = power * pi_s
    residue = ff_normal_basis_element(L.residue_field, L.f, 1, seed)
    beta = L.lift_residue(residue)
    epsilon = pi_t ** (n * b) * pi_s ** (n * a) * alpha * beta
    trace = ConstructionTrace(
        method,
        {
            "n": n,
            "a": a,
            "b": b,
            "c": c,
            "r_order": p_power,
            "pi_S": pi_s,
            "pi_T": pi_t,
            "pi_T_recipe": f"{t_uniformizer.method}(j={t_uniformizer.exponent}, i={t_uniformizer.residue_power})",
            "beta": beta,
            "u": [str(u) for u in us],
            "W": split.W,
            "C": split.C,
            "U": split.U,
            "tau": split.tau,
        },
        ["L^S", "L^T", "L^I"],
    )
    logger.info(f"Construção {method}: a={a}, b={b}, c={c}, |W|={p_power}")
    return Construction(epsilon, trace, L)


def gen_tot_weak(
    L: ExtensionTower,
    auts: Sequence[Automorphism],
    group: FiniteGroup,
    ramification: RamificationData,
    n: int,
    units: Optional[Sequence[LocalElement]] = None,
    seed: int = 0,
) -> Construction:
    """
    δ = π_F^{nb}·π_E^{na}·α com E = L^W, F = L^C e I = W⋊C.

    ``seed`` escolhe o complemento C entre os encontrados pela busca.
    """
    if ramification.e != L.degree:
        raise NotTotallyRamified("G_0 ≠ G")
    if not ramification.weakly_ramified:
        raise NotWeaklyRamified("G_2 não trivial")
    W = ramification.wild_inertia
    C = grp_complement(group, W, index=seed)
    split = SplitData(W=W, I=group.elements, C=C, U=[group.identity], T=C, S=W, tau=group.identity, d=1)
    construction = gen_doubly_split(L, auts, ramification, split, n, units, method="tot_weak")
    construction.trace.intermediate_fields = ["E = L^W", "F = L^C"]
    return construction


@dataclass
class Compositum:
    """L' = L·K' com seus dados de Galois e o mergulho L → L'."""

    tower: ExtensionTower
    automorphisms: List[Automorphism]
    group: FiniteGroup
    ramification: RamificationData
    split: SplitData
    embedding: TowerEmbedding


def build_compositum(L: ExtensionTower) -> Compositum:
    """K' não ramificada de grau [L:K] e L' = LK' com SplitData verificada."""
    d = L.degree
    Kprime = ext_unramified(L.base, d)
    Lp = ext_compositum(L, Kprime)
    auts = ext_automorphisms(Lp)
    group = ext_group(Lp, auts)
    ramification = ext_ramification(Lp, auts)
    split = grp_doubly_split(
        group,
        ramification.inertia,
        ramification.wild_inertia,
        L.p,
        lambda g: auts[g].frobenius_power,
    )
    return Compositum(Lp, auts, group, ramification, split, TowerEmbedding(L, Lp))


def gen_general(
    L: ExtensionTower,
    ramification: RamificationData,
    n: int,
    seed: int = 0,
    compositum: Optional[Compositum] = None,
) -> tuple:
    """
    ε = Tr_{L'/L}(ε') com ε' gerador livre de 𝔓_{L'}^n sobre O_K[Gal(L'/K)].

    Returns:
        (Construction em L, Construction de ε' em L', Compositum)
    """
    if not ramification.weakly_ramified:
        raise NotWeaklyRamified("G_2 não trivial")
    _check_exponent(n, ramification.wild_order)
    comp = compositum or build_compositum(L)
    inner = gen_doubly_split(
        comp.tower, comp.automorphisms, comp.ramification, comp.split, n, seed=seed
    )
    fixing = subgroup_fixing(comp.tower, comp.automorphisms, L)
    image = ext_trace(inner.element, comp.automorphisms, fixing)
    epsilon = comp.embedding.restrict(image)
    trace = ConstructionTrace(
        "trace_descent",
        dict(inner.trace.parameters, d=L.degree, compositum_degree=comp.tower.degree),
        [f"L' (e={comp.tower.e}, f={comp.tower.f})"] + inner.trace.intermediate_fields,
    )
    logger.info(f"Descida pelo traço a partir de L' de grau {comp.tower.degree}")
    return Construction(epsilon, trace, L), inner, comp


def gen_classify_p_extension(
    L: ExtensionTower, ramification: RamificationData, delta: LocalElement, n: int
) -> bool:
    """Em p-extensões totalmente fracamente ramificadas: livre sse v_L(δ) = n e n ≡ 1 mod |G|."""
    if ramification.e != L.degree or ramification.wild_order != L.degree:
        raise NotTotallyRamified("Classificação exige p-extensão totalmente ramificada")
    if not ramification.weakly_ramified:
        raise NotWeaklyRamified("G_2 não trivial")
    return delta.valuation() == n and (n - 1) % L.degree == 0


def gen_select_path(L: ExtensionTower, ramification: RamificationData) -> str:
    """Caminho mais barato aplicável, na ordem de METHODS."""
    if L.e == 1:
        return "unramified"
    if not ramification.weakly_ramified:
        raise NotWeaklyRamified("G_2 não trivial")
    totally = ramification.e == L.degree
    if totally and ramification.wild_order == 1:
        return "tot_tame"
    if totally and ramification.wild_order == L.degree:
        return "tot_weak_p"
    if totally:
        return "tot_weak"
    return "doubly_split"


def gen_construct(
    L: ExtensionTower,
    auts: Sequence[Automorphism],
    group: FiniteGroup,
    ramification: RamificationData,
    n: int,
    seed: int = 0,
) -> Construction:
    """Executa o caminho selecionado; doubly_split recai em trace_descent se a cisão falha."""
    path = gen_select_path(L, ramification)
    logger.info(f"Caminho de construção: {path}")
    if path == "unramified":
        base = gen_unramified(L, seed)
        element = base.element.scale_pi_k(n)
        base.trace.parameters["n"] = n
        return Construction(element, base.trace, L)
    if path == "tot_tame":
        return gen_tot_tame(L, n)
    if path == "tot_weak_p":
        return gen_tot_weak_p(L, ramification, n)
    if path == "tot_weak":
        return gen_tot_weak(L, auts, group, ramification, n, seed=seed)
    _check_exponent(n, ramification.wild_order)
    try:
        split = grp_doubly_split(
            group,
            ramification.inertia,
            ramification.wild_inertia,
            L.p,
            lambda g: auts[g].frobenius_power,
            complement_index=seed,
        )
        return gen_doubly_split(L, auts, ramification, split, n, seed=seed)
    except NotDoublySplit as exc:
        logger.info(f"Cisão direta falhou ({exc}); usando descida pelo traço")
    construction, _, _ = gen_general(L, ramification, n, seed)
    return construction
