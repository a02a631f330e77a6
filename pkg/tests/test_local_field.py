"""Testes para a aritmética de corpos locais com precisão."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.errors import (
    DivisionByZero,
    FieldMismatch,
    InvalidField,
    ParseError,
    PrecisionExhausted,
    UnknownOperation,
)
from src.tools.local_field import (
    BaseField,
    format_element,
    lf_arithmetic,
    lf_uniformizer,
    lf_valuation,
    parse_element,
)

Q3 = BaseField("padic", 3, 1, 20)
F2T = BaseField("laurent", 2, 1, 20)


class TestBaseField:
    """Testes de construção do corpo base."""

    def test_invalid_kind(self):
        """Testa backend desconhecido e p não primo."""
        with pytest.raises(InvalidField):
            BaseField("real", 3)
        with pytest.raises(InvalidField):
            BaseField("padic", 6)

    def test_uniformizer(self):
        """Testa π_K = p em Q_p e π_K = t em F_p((t))."""
        assert lf_uniformizer(Q3) == 3
        assert lf_valuation(lf_uniformizer(F2T)) == 1

    def test_characteristic(self):
        assert Q3.characteristic == 0
        assert F2T.characteristic == 2

    def test_unramified_base(self):
        """Testa Q_9 = Q_3(w) com w^2 = -1."""
        q9 = BaseField("padic", 3, 2, 20)
        w = q9.residue_generator()
        assert w * w == -1
        assert q9.degree == 2


class TestValuationAndPrecision:
    """Testes de valuação e precisão absoluta."""

    def test_valuation(self):
        """Testa valuações de inteiros e racionais."""
        assert Q3.from_int(18).valuation() == 2
        assert Q3.from_rational(1, 3).valuation() == -1
        assert Q3.from_rational(5, 7).valuation() == 0

    def test_zero_has_no_valuation(self):
        """Testa que zero não tem valuação certificada."""
        zero = Q3.zero()
        assert zero.is_zero()
        assert zero.abs_precision == 20
        with pytest.raises(PrecisionExhausted):
            zero.valuation()

    def test_sum_keeps_smallest_precision(self):
        """Testa que a soma herda a menor precisão absoluta."""
        x = Q3.from_int(1).with_abs_precision(5)
        assert (x + Q3.from_int(9)).abs_precision == 5

    def test_product_keeps_relative_precision(self):
        """Testa que o produto preserva a precisão relativa."""
        x = Q3.from_int(1).with_abs_precision(5)
        assert (x * 9).abs_precision == 7

    def test_scale_is_exact(self):
        x = Q3.from_int(2)
        assert x.scale_pi_k(3) == 54
        assert x.scale_pi_k(3).abs_precision == x.abs_precision + 3


class TestArithmetic:
    """Testes de operações aritméticas."""

    def test_inverse(self):
        """Testa inversos de unidades e não unidades."""
        for n in (2, 5, 6, 45, 100):
            x = Q3.from_int(n)
            assert x * x.inverse() == 1

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            Q3.zero().inverse()
        with pytest.raises(DivisionByZero):
            F2T.from_rational(1, 2)

    def test_field_mismatch(self):
        """Testa operação entre corpos diferentes."""
        with pytest.raises(FieldMismatch):
            Q3.one() + F2T.one()

    def test_dispatch(self):
        """Testa o despachante lf_arithmetic."""
        x, y = Q3.from_int(6), Q3.from_int(2)
        assert lf_arithmetic(x, y, "div") == 3
        assert lf_arithmetic(x, y, "sub") == 4
        with pytest.raises(UnknownOperation) as info:
            lf_arithmetic(x, y, "pow")
        assert info.value.exit_code == 1

    def test_dispatch_without_certified_digit(self):
        """Testa que 1 - 1 com 3 dígitos não devolve um zero silencioso."""
        x = Q3.from_int(1).with_abs_precision(3)
        with pytest.raises(PrecisionExhausted):
            lf_arithmetic(x, Q3.from_int(1), "sub")
        with pytest.raises(PrecisionExhausted):
            lf_arithmetic(Q3.from_int(9).with_abs_precision(2), Q3.from_int(1), "mul")

    def test_fraction_coercion(self):
        x = Q3.from_int(2)
        assert x * Fraction(1, 2) == 1

    def test_laurent_inverse(self):
        """Testa (1 + t)^{-1} = 1 + t + t^2 + ... em F_2((t))."""
        x = parse_element(F2T, "1 + t")
        assert x * x.inverse() == 1
        assert parse_element(F2T, "t^-1 + 1") * parse_element(F2T, "t") == x

    @given(
        st.integers(min_value=1, max_value=10**6),
        st.integers(min_value=1, max_value=10**6),
    )
    def test_valuation_is_additive(self, a, b):
        """Propriedade: v(ab) = v(a) + v(b)."""
        x, y = Q3.from_int(a), Q3.from_int(b)
        assert (x * y).valuation() == x.valuation() + y.valuation()

    @given(
        st.integers(min_value=-(10**6), max_value=10**6).filter(lambda n: n != 0),
        st.integers(min_value=1, max_value=10**6),
    )
    def test_division_inverts_product(self, a, b):
        """Propriedade: (a·b)/b = a."""
        x, y = Q3.from_int(a), Q3.from_int(b)
        assert (x * y) / y == x


class TestTextSyntax:
    """Testes da sintaxe textual de elementos."""

    def test_parse_with_precision(self):
        """Testa o sufixo + O(pi^N)."""
        x = parse_element(Q3, "1 + 3 + O(pi^3)")
        assert x == 4
        assert x.abs_precision == 3

    def test_format(self):
        """Testa a forma canônica com sufixo de precisão."""
        assert format_element(Q3.from_int(4), 3) == "4 + O(pi^3)"
        assert format_element(Q3.zero(5)) == "O(pi^5)"

    def test_format_negative_shift(self):
        """Testa a impressão de 1/3 e a releitura."""
        text = format_element(Q3.from_rational(1, 3), 2)
        assert text == "3^-1*1 + O(pi^1)"
        assert parse_element(Q3, text) * 3 == 1

    def test_laurent_format(self):
        x = parse_element(F2T, "t^-1 + t")
        assert format_element(x, 3) == "t^-1 + t + O(pi^2)"

    @pytest.mark.parametrize("text", ["1 +", "x^2", "sqrt(2)", "y + 1", "t + 1"])
    def test_parse_errors(self, text):
        """Testa expressões inválidas no corpo Q_3."""
        with pytest.raises(ParseError):
            parse_element(Q3, text)
