"""
Grupos finitos dados por tábua de composição.

Os elementos são os índices 0..n-1 da lista canônica de automorfismos e
table[a][b] = a∘b. Todos os algoritmos são exaustivos (|G| ≤ 100).
"""

from dataclasses import dataclass
from math import lcm
from typing import Callable, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set

from loguru import logger

from ..errors import NoComplement, NotDoublySplit, NotNormalSylow


class FiniteGroup:
    """Grupo finito com elementos 0..n-1 e identidade explícita."""

    def __init__(self, table: Sequence[Sequence[int]], identity: int = 0):
        self.table = [list(row) for row in table]
        self.order = len(self.table)
        self.identity = identity
        self._inverse = [
            next(b for b in range(self.order) if self.table[a][b] == identity)
            for a in range(self.order)
        ]

    @property
    def elements(self) -> List[int]:
        return list(range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self._inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse(a), -k
        result = self.identity
        for _ in range(k):
            result = self.table[result][a]
        return result

    def element_order(self, a: int) -> int:
        k, current = 1, a
        while current != self.identity:
            current = self.table[current][a]
            k += 1
        return k

    def conjugate(self, g: int, a: int) -> int:
        """g·a·g^{-1}."""
        return self.table[self.table[g][a]][self.inverse(g)]

    def check_axioms(self) -> bool:
        """Associatividade, identidade e inversos, verificados exaustivamente."""
        n, t, e = self.order, self.table, self.identity
        if any(t[e][a] != a or t[a][e] != a for a in range(n)):
            return False
        if any(sorted(row) != list(range(n)) for row in t):
            return False
        return all(
            t[t[a][b]][c] == t[a][t[b][c]]
            for a in range(n)
            for b in range(n)
            for c in range(n)
        )

    # Subconjuntos e subgrupos

    def generate(self, generators: Iterable[int]) -> List[int]:
        """Fecho de um conjunto de geradores."""
        members: Set[int] = {self.identity}
        frontier = [self.identity]
        gens = list(generators)
        while frontier:
            current = frontier.pop()
            for g in gens:
                nxt = self.table[current][g]
                if nxt not in members:
                    members.add(nxt)
                    frontier.append(nxt)
        return sorted(members)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        members = set(subset)
        if self.identity not in members:
            return False
        return all(self.table[a][self.inverse(b)] in members for a in members for b in members)

    def product_set(self, left: Iterable[int], right: Iterable[int]) -> Set[int]:
        return {self.table[a][b] for a in left for b in right}

    def is_normal(self, subgroup: Iterable[int], within: Optional[Iterable[int]] = None) -> bool:
        members = set(subgroup)
        ambient = self.elements if within is None else list(within)
        return all(self.conjugate(g, a) in members for g in ambient for a in members)

    def normalizes(self, g: int, subgroup: Iterable[int]) -> bool:
        members = set(subgroup)
        return {self.conjugate(g, a) for a in members} == members

    def normalizer(self, subgroup: Iterable[int], within: Optional[Iterable[int]] = None) -> List[int]:
        members = list(subgroup)
        ambient = self.elements if within is None else list(within)
        return [g for g in ambient if self.normalizes(g, members)]

    def is_abelian(self, subset: Optional[Iterable[int]] = None) -> bool:
        members = self.elements if subset is None else list(subset)
        return all(self.table[a][b] == self.table[b][a] for a in members for b in members)

    def exponent(self, subset: Optional[Iterable[int]] = None) -> int:
        members = self.elements if subset is None else list(subset)
        result = 1
        for a in members:
            result = lcm(result, self.element_order(a))
        return result

    def is_cyclic(self, subset: Optional[Iterable[int]] = None) -> bool:
        members = self.elements if subset is None else list(subset)
        return any(self.element_order(a) == len(members) for a in members)

    def is_elementary_abelian(self, p: int, subset: Optional[Iterable[int]] = None) -> bool:
        members = self.elements if subset is None else list(subset)
        return self.is_abelian(members) and all(
            a == self.identity or self.element_order(a) == p for a in members
        )


def _prime_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def grp_identify(G: FiniteGroup, subset: Optional[Sequence[int]] = None) -> str:
    """Nome do tipo de isomorfismo: trivial, C_n, C_p^k, S_3, D_k ou genérico."""
    members = G.elements if subset is None else list(subset)
    n = len(members)
    if n == 1:
        return "trivial"
    if G.is_cyclic(members):
        return f"C_{n}"
    if G.is_abelian(members):
        orders = {G.element_order(a) for a in members if a != G.identity}
        if len(orders) == 1:
            p = orders.pop()
            k = 0
            while n > 1:
                n //= p
                k += 1
            return f"C_{p}^{k}"
        return f"abelian of order {len(members)}"
    if n % 2 == 0:
        half = n // 2
        rotations = [a for a in members if G.element_order(a) == half]
        for r in rotations:
            cyclic = set(G.generate([r]))
            for s in members:
                if s in cyclic or G.element_order(s) != 2:
                    continue
                if G.conjugate(s, r) == G.inverse(r):
                    return "S_3" if n == 6 else f"D_{half}"
    return f"group of order {n}"


def grp_sylow_p(G: FiniteGroup, p: int, within: Optional[Sequence[int]] = None) -> List[int]:
    """
    Elementos de ordem potência de p, verificados como subgrupo.

    Raises:
        NotNormalSylow: o conjunto não é fechado (Sylow não normal)
    """
    ambient = G.elements if within is None else list(within)
    members = sorted(a for a in ambient if _prime_power_of(G.element_order(a), p))
    if not G.is_subgroup(members):
        raise NotNormalSylow(f"Elementos de ordem potência de {p} não formam subgrupo")
    return members


def _complements(G: FiniteGroup, N: Sequence[int], ambient: Sequence[int]) -> Iterator[List[int]]:
    """Complementos distintos de N no ambiente, na ordem do retrocesso."""
    normal = set(N)
    target = len(ambient) // len(normal)
    seen: Set[FrozenSet[int]] = set()

    def search(current: List[int]) -> Iterator[List[int]]:
        if len(current) == target:
            yield current
            return
        covered = G.product_set(current, normal)
        start = next(g for g in ambient if g not in covered)
        for n in sorted(normal):
            candidate = G.mul(start, n)
            extended = G.generate(current + [candidate])
            if len(extended) > target or target % len(extended):
                continue
            if set(extended) & normal != {G.identity}:
                continue
            yield from search(extended)

    for found in search([G.identity]):
        key = frozenset(found)
        if key not in seen:
            seen.add(key)
            yield found


def grp_complement(
    G: FiniteGroup,
    N: Sequence[int],
    within: Optional[Sequence[int]] = None,
    index: int = 0,
) -> List[int]:
    """
    Complemento H de N (NH = ambiente, N ∩ H = 1) por retrocesso nas classes laterais.

    A busca percorre as classes na ordem canônica dos elementos. ``index = 0``
    devolve o primeiro complemento encontrado; índices maiores escolhem outros,
    módulo o número de complementos.

    Raises:
        NoComplement: nenhum complemento existe
    """
    ambient = sorted(G.elements if within is None else within)
    found: List[List[int]] = []
    for complement in _complements(G, N, ambient):
        found.append(complement)
        if len(found) > index:
            break
    if not found:
        raise NoComplement(f"Nenhum complemento para subgrupo de ordem {len(set(N))}")
    result = found[index % len(found)]
    logger.debug(f"Complemento de ordem {len(result)} encontrado (índice {index})")
    return result


def grp_frobenius_lift_in_normalizer(
    G: FiniteGroup,
    I: Sequence[int],
    C: Sequence[int],
    rho: Callable[[int], int],
    d: int,
) -> int:
    """
    τ com ρ(τ) = Frobenius, τ de ordem d e τ·C·τ^{-1} = C.

    Parte de um levantamento τ0 e percorre τ = i^{-1}·τ0 com i ∈ I.
    """
    if d == 1:
        return G.identity
    lifts = [g for g in G.elements if rho(g) % d == 1]
    if not lifts:
        raise NotDoublySplit("Nenhum levantamento do Frobenius")
    tau0 = lifts[0]
    for i in sorted(I):
        tau = G.mul(G.inverse(i), tau0)
        if G.normalizes(tau, C) and G.element_order(tau) == d:
            return tau
    for tau in lifts:
        if G.normalizes(tau, C) and G.element_order(tau) == d:
            return tau
    raise NotDoublySplit("Nenhum levantamento do Frobenius normaliza C com ordem d")


@dataclass
class SplitData:
    """Dados da estrutura duplamente cindida G = W⋊T = I⋊U."""

    W: List[int]
    I: List[int]
    C: List[int]
    U: List[int]
    T: List[int]
    S: List[int]
    tau: int
    d: int


def _check_semidirect(G: FiniteGroup, normal: Sequence[int], complement: Sequence[int], whole: Sequence[int], label: str) -> None:
    product = G.product_set(normal, complement)
    if set(normal) & set(complement) != {G.identity}:
        raise NotDoublySplit(f"{label}: interseção não trivial")
    if len(product) != len(normal) * len(complement) or product != set(whole):
        raise NotDoublySplit(f"{label}: produto não é o grupo todo")
    if not G.is_normal(normal, whole):
        raise NotDoublySplit(f"{label}: fator não normal")


def grp_doubly_split(
    G: FiniteGroup,
    inertia: Sequence[int],
    wild: Sequence[int],
    p: int,
    rho: Callable[[int], int],
    complement_index: int = 0,
) -> SplitData:
    """
    Monta e verifica SplitData: I = W⋊C, G = I⋊U, T = C⋊U, G = W⋊T e S = WU.

    Raises:
        NotDoublySplit: alguma decomposição falha
    """
    W = grp_sylow_p(G, p, inertia)
    if set(W) != set(wild):
        raise NotDoublySplit("G_1 difere do p-Sylow da inércia")
    C = grp_complement(G, W, inertia, index=complement_index)
    d = G.order // len(inertia)
    tau = grp_frobenius_lift_in_normalizer(G, inertia, C, rho, d)
    U = G.generate([tau])
    T = G.generate(list(C) + [tau])
    S = sorted(G.product_set(W, U))
    if not G.is_subgroup(S) or len(S) != len(W) * len(U):
        raise NotDoublySplit("S = WU não é subgrupo")
    _check_semidirect(G, W, C, inertia, "I = W⋊C")
    _check_semidirect(G, inertia, U, G.elements, "G = I⋊U")
    _check_semidirect(G, C, U, T, "T = C⋊U")
    _check_semidirect(G, W, T, G.elements, "G = W⋊T")
    logger.info(
        f"Estrutura duplamente cindida: |W|={len(W)}, |C|={len(C)}, |U|={len(U)}, |T|={len(T)}"
    )
    return SplitData(W=W, I=sorted(inertia), C=C, U=U, T=T, S=S, tau=tau, d=d)
