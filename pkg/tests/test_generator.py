"""Testes para as construções explícitas de geradores livres."""

import pytest

from src.errors import BadExponent, NotTotallyRamified, WildDegree
from src.tools.extension import ext_from_layers, ext_trace, subgroup_fixing
from src.tools.generator import (
    bezout,
    build_compositum,
    gen_classify_p_extension,
    gen_construct,
    gen_general,
    gen_select_path,
    gen_tot_tame,
    gen_tot_weak,
    gen_tot_weak_p,
    gen_unramified,
)
from src.tools.group_module import gm_ideal_basis, gm_is_free_generator, gm_module_index
from src.tools.group_theory import grp_identify
from src.tools.lattice import row_basis
from tests.conftest import galois_example


def is_free(example, delta, n) -> bool:
    return gm_is_free_generator(example.tower, example.auts, delta, n, group=example.group).verdict


class TestBezout:
    @pytest.mark.parametrize("p_power, c", [(3, 2), (9, 2), (5, 4), (1, 2), (3, 1)])
    def test_identity(self, p_power, c):
        """Testa a·p^r + b·c = 1 com 0 ≤ a < c."""
        a, b = bezout(p_power, c)
        assert a * p_power + b * c == 1
        assert 0 <= a < max(c, 1)


class TestPathSelection:
    """Testes do despachante de caminhos."""

    @pytest.mark.parametrize(
        "name, path",
        [
            ("unramified_quadratic", "unramified"),
            ("tame_quadratic", "tot_tame"),
            ("tame_quartic", "tot_tame"),
            ("cyclotomic", "tot_weak_p"),
            ("artin_schreier", "tot_weak_p"),
            ("flagship", "tot_weak"),
        ],
    )
    def test_select(self, request, name, path):
        example = request.getfixturevalue(name)
        assert gen_select_path(example.tower, example.ramification) == path

    def test_mixed_extension(self, q3):
        """Testa Q_9(√3): e = 2, f = 2, cisão direta."""
        example = galois_example(ext_from_layers(q3, 2, "x^2 - 3"))
        assert grp_identify(example.group) == "C_2^2"
        assert gen_select_path(example.tower, example.ramification) == "doubly_split"
        construction = gen_construct(example.tower, example.auts, example.group, example.ramification, 1)
        assert construction.trace.method == "doubly_split"
        assert is_free(example, construction.element, 1)


class TestUnramified:
    def test_normal_basis_lift(self, unramified_quadratic):
        """Testa β normal e sua escala π_K^n."""
        example = unramified_quadratic
        beta = gen_unramified(example.tower).element
        assert is_free(example, beta, 0)
        delta = gen_construct(example.tower, example.auts, example.group, example.ramification, 3).element
        assert is_free(example, delta, 3)

    def test_rejects_ramified(self, cyclotomic):
        with pytest.raises(NotTotallyRamified):
            gen_unramified(cyclotomic.tower)


class TestTotallyTame:
    """Testes de δ = π_L^n·Σ u_i·π_L^i."""

    @pytest.mark.parametrize("n", [-1, 0, 1, 2, 5])
    def test_all_units_give_generators(self, tame_quartic, n):
        construction = gen_tot_tame(tame_quartic.tower, n)
        assert construction.trace.method == "tot_tame"
        assert is_free(tame_quartic, construction.element, n)

    def test_non_unit_coefficient(self, tame_quadratic, q5):
        """Testa que trocar u_1 = 1 por 5 destrói a liberdade."""
        good = gen_tot_tame(tame_quadratic.tower, 1, [q5.from_int(1), q5.from_int(2)])
        bad = gen_tot_tame(tame_quadratic.tower, 1, [q5.from_int(1), q5.from_int(5)])
        assert is_free(tame_quadratic, good.element, 1)
        assert not is_free(tame_quadratic, bad.element, 1)

    @pytest.mark.parametrize("n", [-1, 1, 2])
    @pytest.mark.parametrize("index", range(4))
    def test_each_non_unit_breaks_freeness(self, tame_quartic, q5, n, index):
        """Testa que trocar qualquer u_i por 5 destrói a liberdade."""
        L = tame_quartic.tower
        units = [q5.from_int(v) for v in (1, 2, 3, 4)]
        assert is_free(tame_quartic, gen_tot_tame(L, n, units).element, n)
        units[index] = q5.from_int(5)
        assert not is_free(tame_quartic, gen_tot_tame(L, n, units).element, n)

    def test_wild_degree(self, cyclotomic):
        with pytest.raises(WildDegree):
            gen_tot_tame(cyclotomic.tower, 1)


class TestWeaklyRamifiedPGroup:
    """Testes de δ = π_L^n em p-extensões."""

    @pytest.mark.parametrize("n", [1, 4, 7, -2])
    def test_cyclotomic(self, cyclotomic, n):
        construction = gen_tot_weak_p(cyclotomic.tower, cyclotomic.ramification, n)
        assert is_free(cyclotomic, construction.element, n)

    @pytest.mark.parametrize("n", [1, 3, -1])
    def test_artin_schreier(self, artin_schreier, n):
        construction = gen_tot_weak_p(artin_schreier.tower, artin_schreier.ramification, n)
        assert is_free(artin_schreier, construction.element, n)

    @pytest.mark.parametrize("n", [0, 2, 3])
    def test_bad_exponent(self, cyclotomic, n):
        with pytest.raises(BadExponent):
            gen_tot_weak_p(cyclotomic.tower, cyclotomic.ramification, n)

    def test_classification(self, cyclotomic):
        """Testa livre sse v_L(δ) = n e n ≡ 1 mod |G|."""
        L, data = cyclotomic.tower, cyclotomic.ramification
        pi = L.uniformizer()
        assert gen_classify_p_extension(L, data, pi, 1)
        assert not gen_classify_p_extension(L, data, pi**2, 1)
        assert not gen_classify_p_extension(L, data, pi**2, 2)
        assert gen_classify_p_extension(L, data, pi + pi**2, 1)

    def test_classification_needs_p_extension(self, flagship):
        with pytest.raises(NotTotallyRamified):
            gen_classify_p_extension(flagship.tower, flagship.ramification, flagship.tower.uniformizer(), 1)


class TestTotallyWeak:
    """Testes do exemplo S_3: E = L^W, F = L^C."""

    def test_flagship_parameters(self, flagship):
        construction = gen_tot_weak(
            flagship.tower, flagship.auts, flagship.group, flagship.ramification, 1
        )
        params = construction.trace.parameters
        assert construction.trace.method == "tot_weak"
        assert (params["a"], params["b"], params["c"]) == (1, -1, 2)
        assert construction.trace.intermediate_fields == ["E = L^W", "F = L^C"]
        assert construction.element.valuation() == 1

    @pytest.mark.parametrize("n", [1, 4, -2])
    def test_flagship_generators(self, flagship, n):
        construction = gen_construct(
            flagship.tower, flagship.auts, flagship.group, flagship.ramification, n
        )
        assert is_free(flagship, construction.element, n)

    def test_two_complements(self, flagship):
        """Testa que complementos C diferentes (sementes 0 e 1) certificam."""
        example = flagship
        first, second = (
            gen_construct(example.tower, example.auts, example.group, example.ramification, 1, seed=seed)
            for seed in (0, 1)
        )
        assert first.trace.parameters["C"] != second.trace.parameters["C"]
        assert is_free(example, first.element, 1)
        assert is_free(example, second.element, 1)

    def test_flagship_bad_exponent(self, flagship):
        with pytest.raises(BadExponent):
            gen_construct(flagship.tower, flagship.auts, flagship.group, flagship.ramification, 2)


@pytest.mark.slow
class TestTraceDescent:
    """Descida pelo traço a partir de L' = L·K' (grau 36 para o exemplo S_3)."""

    @pytest.fixture(scope="class")
    def compositum(self, flagship):
        return build_compositum(flagship.tower)

    def test_split_data(self, compositum):
        split = compositum.split
        assert compositum.tower.degree == 36
        assert (len(split.W), len(split.C), split.d) == (3, 2, 6)
        assert compositum.group.element_order(split.tau) == 6
        assert compositum.group.normalizes(split.tau, split.C)

    def test_descended_generator(self, flagship, compositum):
        construction, inner, _ = gen_general(
            flagship.tower, flagship.ramification, 1, compositum=compositum
        )
        assert construction.trace.method == "trace_descent"
        assert construction.trace.parameters["compositum_degree"] == 36
        assert gm_is_free_generator(
            compositum.tower, compositum.automorphisms, inner.element, 1
        ).verdict
        assert is_free(flagship, construction.element, 1)

    @pytest.mark.parametrize("n", [1, 2])
    def test_trace_is_surjective(self, flagship, compositum, n):
        """Testa Tr_{L'/L}(𝔓_{L'}^n) = 𝔓_L^n a partir de uma base de 𝔓_{L'}^n."""
        L = flagship.tower
        Lp, auts = compositum.tower, compositum.automorphisms
        fixing = subgroup_fixing(Lp, auts, L)
        images = [
            compositum.embedding.restrict(ext_trace(b, auts, fixing))
            for b in gm_ideal_basis(Lp, n).elements
        ]
        spanned = row_basis([L.coordinates(x) for x in images], L.degree)
        target = [L.coordinates(b) for b in gm_ideal_basis(L, n).elements]
        assert gm_module_index(target, spanned) == 0
