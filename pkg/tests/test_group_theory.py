"""Testes para grupos finitos dados por tábua."""

from itertools import permutations, product
from typing import List, Sequence, Tuple

import pytest

from src.errors import NoComplement, NotNormalSylow
from src.tools.group_theory import (
    FiniteGroup,
    grp_complement,
    grp_doubly_split,
    grp_identify,
    grp_sylow_p,
)


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)])


def klein() -> FiniteGroup:
    """C_2 × C_2 com elementos (a, b) ↦ 2a + b."""
    pairs = list(product(range(2), repeat=2))
    index = {pair: idx for idx, pair in enumerate(pairs)}
    return FiniteGroup(
        [[index[((x[0] + y[0]) % 2, (x[1] + y[1]) % 2)] for y in pairs] for x in pairs]
    )


def permutation_group(perms: Sequence[Tuple[int, ...]]) -> FiniteGroup:
    """Tábua de (a∘b)(x) = a(b(x)); a identidade deve vir primeiro."""
    index = {perm: idx for idx, perm in enumerate(perms)}
    return FiniteGroup([[index[tuple(a[b[x]] for x in range(len(a)))] for b in perms] for a in perms])


def closure(generators: Sequence[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    size = len(generators[0])
    identity = tuple(range(size))
    members = [identity]
    frontier = [identity]
    while frontier:
        current = frontier.pop()
        for g in generators:
            nxt = tuple(current[g[x]] for x in range(size))
            if nxt not in members:
                members.append(nxt)
                frontier.append(nxt)
    return members


@pytest.fixture
def s3() -> FiniteGroup:
    return permutation_group(sorted(permutations(range(3))))


@pytest.fixture
def d4() -> FiniteGroup:
    """Simetrias do quadrado: rotação (0 1 2 3) e reflexão (1 3)."""
    return permutation_group(closure([(1, 2, 3, 0), (0, 3, 2, 1)]))


class TestFiniteGroup:
    """Testes das operações básicas da tábua."""

    def test_axioms(self, s3, d4):
        assert s3.check_axioms()
        assert d4.check_axioms()
        assert d4.order == 8

    def test_broken_table(self):
        """Testa uma tábua cujas linhas não são permutações."""
        assert not FiniteGroup([[0, 1, 2], [1, 0, 0], [2, 0, 0]]).check_axioms()

    def test_orders_and_inverses(self, s3):
        for a in s3.elements:
            assert s3.mul(a, s3.inverse(a)) == s3.identity
            assert s3.power(a, s3.element_order(a)) == s3.identity
        assert sorted(s3.element_order(a) for a in s3.elements) == [1, 2, 2, 2, 3, 3]

    def test_generate(self):
        G = cyclic(6)
        assert G.generate([2]) == [0, 2, 4]
        assert G.generate([1]) == list(range(6))

    def test_normality(self, s3):
        """Testa A_3 normal e ⟨(0 1)⟩ não normal em S_3."""
        a3 = [a for a in s3.elements if s3.element_order(a) in (1, 3)]
        transposition = next(a for a in s3.elements if s3.element_order(a) == 2)
        assert s3.is_normal(a3)
        assert not s3.is_normal([s3.identity, transposition])
        assert s3.normalizer([s3.identity, transposition]) == sorted([s3.identity, transposition])

    def test_exponent(self, s3):
        assert s3.exponent() == 6
        assert klein().is_elementary_abelian(2)
        assert not cyclic(4).is_elementary_abelian(2)


class TestIdentify:
    """Testes de identificação do tipo de isomorfismo."""

    @pytest.mark.parametrize(
        "group, label",
        [
            (FiniteGroup([[0]]), "trivial"),
            (cyclic(4), "C_4"),
            (cyclic(6), "C_6"),
            (klein(), "C_2^2"),
        ],
    )
    def test_abelian(self, group, label):
        assert grp_identify(group) == label

    def test_s3(self, s3):
        assert grp_identify(s3) == "S_3"

    def test_d4(self, d4):
        assert grp_identify(d4) == "D_4"

    def test_subset(self, s3):
        a3 = [a for a in s3.elements if s3.element_order(a) in (1, 3)]
        assert grp_identify(s3, a3) == "C_3"


class TestSylowAndComplements:
    """Testes de p-Sylow e complementos."""

    def test_normal_sylow(self, s3):
        assert len(grp_sylow_p(s3, 3)) == 3

    def test_non_normal_sylow(self, s3):
        """Testa que as transposições de S_3 não formam subgrupo."""
        with pytest.raises(NotNormalSylow):
            grp_sylow_p(s3, 2)

    def test_complement_in_s3(self, s3):
        a3 = grp_sylow_p(s3, 3)
        complement = grp_complement(s3, a3)
        assert len(complement) == 2
        assert set(complement) & set(a3) == {s3.identity}
        assert s3.product_set(a3, complement) == set(s3.elements)

    def test_complement_choice(self, s3):
        """Testa os três complementos de A_3 em S_3 e o índice módulo 3."""
        a3 = grp_sylow_p(s3, 3)
        choices = [frozenset(grp_complement(s3, a3, index=i)) for i in range(4)]
        assert len(set(choices[:3])) == 3
        assert choices[3] == choices[0]
        for complement in choices:
            assert complement & set(a3) == {s3.identity}
            assert s3.product_set(a3, complement) == set(s3.elements)

    def test_unique_complement(self):
        """Testa que C_2 é o único complemento de C_3 em C_6."""
        G = cyclic(6)
        assert grp_complement(G, [0, 2, 4], index=1) == grp_complement(G, [0, 2, 4])

    def test_no_complement(self):
        """Testa que {0, 2} não tem complemento em C_4."""
        with pytest.raises(NoComplement):
            grp_complement(cyclic(4), [0, 2])


class TestDoublySplit:
    """Testes da decomposição G = W⋊T = I⋊U."""

    def test_cyclic_six(self):
        """Testa C_6 com inércia {0, 2, 4} e Frobenius g ↦ g mod 2."""
        G = cyclic(6)
        split = grp_doubly_split(G, [0, 2, 4], [0, 2, 4], 3, lambda g: g)
        assert split.W == [0, 2, 4]
        assert split.C == [0]
        assert split.d == 2
        assert split.tau == 3
        assert set(split.U) == {0, 3}
        assert set(split.S) == set(G.elements)

    def test_totally_ramified_s3(self, s3):
        """Testa S_3 totalmente ramificado: U trivial e T = C."""
        W = grp_sylow_p(s3, 3)
        split = grp_doubly_split(s3, s3.elements, W, 3, lambda g: 0)
        assert split.d == 1
        assert split.tau == s3.identity
        assert split.T == sorted(split.C)
        assert len(split.C) == 2
