"""Testes para liberdade sobre O_K[G], critério do traço e ordem associada."""

from itertools import product

import pytest

from src.errors import NotInIdeal, NotWildlyRamified, TheoremViolation
from src.tools.generator import gen_construct
from src.tools.group_module import (
    gm_associated_order,
    gm_brute_force_free,
    gm_ideal_basis,
    gm_ideal_residue_module,
    gm_ideal_sample,
    gm_is_free_generator,
    gm_module_index,
    gm_span_check,
    gm_trace_criterion,
    gm_trace_obstruction,
    gm_verify_assoc_order_theorem,
    group_ring_basis,
    regular_module,
)
from src.tools.group_theory import FiniteGroup


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)])


KLEIN = FiniteGroup([[a ^ b for b in range(4)] for a in range(4)])


class TestSpanCheck:
    """Testes da verificação independente do span."""

    def test_enumeration(self):
        assert gm_span_check(2, [[1, 0], [1, 1]]) == (True, "enumeration")
        assert gm_span_check(3, [[1, 2], [2, 1]]) == (False, "enumeration")

    def test_rank_fallback(self):
        """Testa o posto quando p^k excede o limite."""
        vectors = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert gm_span_check(2, vectors, limit=4) == (True, "rank")


class TestTraceCriterion:
    """Critério do traço contra força bruta em F_p[G]."""

    @pytest.mark.parametrize(
        "p, group",
        [(2, cyclic(2)), (3, cyclic(3)), (2, KLEIN)],
        ids=["C_2/F_2", "C_3/F_3", "C_2^2/F_2"],
    )
    def test_exhaustive(self, p, group):
        """Testa todos os vetores do módulo regular."""
        module = regular_module(p, group)
        for x in product(range(p), repeat=group.order):
            assert gm_trace_criterion(p, group, module, x) == gm_brute_force_free(module, x), x

    def test_ideal_module(self, cyclotomic):
        """Testa 𝔓_L / π_K·𝔓_L: π_L gera, π_L^2 não."""
        L, group = cyclotomic.tower, cyclotomic.group
        module = gm_ideal_residue_module(L, cyclotomic.auts, 1, group)
        assert module.dimension == 3
        assert gm_trace_criterion(3, group, module, [1, 0, 0])
        assert not gm_trace_criterion(3, group, module, [0, 1, 0])


class TestFreeness:
    """Testes do certificado de liberdade."""

    @pytest.mark.parametrize("n", [1, 4, -2])
    def test_cyclotomic_power_of_uniformizer(self, cyclotomic, n):
        """Testa π_L^n com n ≡ 1 mod 3."""
        L = cyclotomic.tower
        certificate = gm_is_free_generator(
            L, cyclotomic.auts, L.uniformizer() ** n, n, group=cyclotomic.group
        )
        assert certificate.verdict
        assert certificate.spanning_check
        assert certificate.trace_criterion

    def test_cyclotomic_n2_has_no_generator(self, cyclotomic):
        """Testa que nenhum elemento da amostra gera 𝔓_L^2."""
        L = cyclotomic.tower
        for delta in gm_ideal_sample(L, 2):
            certificate = gm_is_free_generator(L, cyclotomic.auts, delta, 2, group=cyclotomic.group)
            assert not certificate.verdict
            assert certificate.det == 0

    def test_trace_obstruction(self, cyclotomic):
        L, auts = cyclotomic.tower, cyclotomic.auts
        assert gm_trace_obstruction(L, auts, 1).possible
        assert gm_trace_obstruction(L, auts, 4).possible
        assert not gm_trace_obstruction(L, auts, 2).possible

    def test_not_in_ideal(self, cyclotomic):
        L = cyclotomic.tower
        with pytest.raises(NotInIdeal):
            gm_is_free_generator(L, cyclotomic.auts, L.one(), 1)

    def test_artin_schreier(self, artin_schreier):
        """Testa a extensão de Artin-Schreier: π_L gera 𝔓_L, π_L^2 não gera 𝔓_L^2."""
        L, auts, group = artin_schreier.tower, artin_schreier.auts, artin_schreier.group
        assert gm_is_free_generator(L, auts, L.uniformizer(), 1, group=group).verdict
        assert not gm_is_free_generator(L, auts, L.uniformizer() ** 2, 2, group=group).verdict

    def test_ideal_basis_valuations(self, unramified_quadratic):
        basis = gm_ideal_basis(unramified_quadratic.tower, 3)
        assert basis.valuations == [3, 3]
        assert all(b.valuation() == 3 for b in basis.elements)


class TestModuleIndex:
    """Testes de [M:N] em potências de 𝔓_K."""

    @staticmethod
    def ideal(L, n):
        return [L.coordinates(b) for b in gm_ideal_basis(L, n).elements]

    def test_same_module(self, flagship):
        L = flagship.tower
        assert gm_module_index(self.ideal(L, 2), self.ideal(L, 2)) == 0

    def test_unramified_maximal_ideal(self, unramified_quadratic):
        """Testa [O_L : 𝔓_L] = 𝔓_K^d para L/K não ramificada de grau d."""
        L = unramified_quadratic.tower
        assert gm_module_index(self.ideal(L, 0), self.ideal(L, 1)) == 2

    @pytest.mark.parametrize("name", ["cyclotomic", "tame_quartic", "unramified_quadratic"])
    def test_multiplicativity(self, request, name):
        """Testa [M:P] = [M:N] + [N:P] para O_L ⊇ 𝔓_L ⊇ 𝔓_L^3."""
        L = request.getfixturevalue(name).tower
        M, N, P = self.ideal(L, 0), self.ideal(L, 1), self.ideal(L, 3)
        assert gm_module_index(M, P) == gm_module_index(M, N) + gm_module_index(N, P)
        assert gm_module_index(P, M) == -gm_module_index(M, P)


class TestAssociatedOrder:
    """Testes da igualdade 𝔄_{L/K} = O_K[G][π_K^{-1}Tr_{G_0}]."""

    @pytest.mark.parametrize("name", ["cyclotomic", "artin_schreier", "flagship"])
    def test_theorem(self, request, name):
        example = request.getfixturevalue(name)
        L, auts, group, data = example.tower, example.auts, example.group, example.ramification
        epsilon = gen_construct(L, auts, group, data, 1).element
        report = gm_verify_assoc_order_theorem(L, auts, group, data, epsilon)
        assert report.verdict
        assert report.extended_index == 1
        assert report.oracle_vs_extended == 0
        assert report.extended_vs_oracle == 0
        assert report.chain.integers_over_image == 0
        assert report.wild_trace_ok

    def test_tame_extension_is_rejected(self, tame_quadratic):
        """Testa que G_1 trivial não entra na verificação."""
        example = tame_quadratic
        with pytest.raises(NotWildlyRamified):
            gm_verify_assoc_order_theorem(
                example.tower,
                example.auts,
                example.group,
                example.ramification,
                example.tower.uniformizer(),
            )

    @pytest.mark.parametrize("name", ["tame_quadratic", "tame_quartic", "unramified_quadratic"])
    def test_without_wild_inertia_is_group_ring(self, request, name):
        """Testa 𝔄_{L/K} = O_K[G] quando G_1 é trivial."""
        example = request.getfixturevalue(name)
        L, auts = example.tower, example.auts
        order = gm_associated_order(L, auts, example.ramification.different_valuation)
        group_ring = group_ring_basis(L.coordinate_field, len(auts))

        assert order.denominator == 0
        assert order.escalations == 0
        assert gm_module_index(order.vectors(), group_ring) == 0
        assert gm_module_index(group_ring, order.vectors()) == 0

    def test_bound_is_doubled_once(self, cyclotomic):
        """Testa a cota do denominador: dobrada uma vez e depois violação."""
        L, auts = cyclotomic.tower, cyclotomic.auts
        order = gm_associated_order(L, auts, different_valuation=0, max_escalations=1)
        assert order.denominator == 1
        assert (order.bound, order.escalations) == (1, 1)

        with pytest.raises(TheoremViolation):
            gm_associated_order(L, auts, different_valuation=0, max_escalations=0)
