"""Testes para polinômios, polígonos de Newton e raízes."""

from fractions import Fraction

import pytest

from src.errors import HenselFailure, ParseError
from src.tools.local_field import BaseField
from src.tools.polynomial import (
    Polynomial,
    integral_roots,
    lf_hensel_root,
    newton_polygon,
    parse_polynomial,
)

Q3 = BaseField("padic", 3, 1, 20)
Q7 = BaseField("padic", 7, 1, 20)


class TestPolynomial:
    """Testes de operações básicas."""

    def test_parse(self):
        """Testa leitura e grau."""
        g = parse_polynomial(Q3, "x^3 - 3*x + 1")
        assert g.degree == 3
        assert g.coeff(1) == -3
        assert g(Q3.from_int(2)) == 3

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            parse_polynomial(Q3, "x^-1 + 1")
        with pytest.raises(ParseError):
            parse_polynomial(Q3, "0")

    def test_taylor_shift(self):
        """Testa G(x + 1) para G = x^2."""
        g = Polynomial.from_ints(Q3, [0, 0, 1]).taylor_shift(Q3.one())
        assert [c == v for c, v in zip(g.coeffs, [1, 2, 1])] == [True, True, True]

    def test_reverse_and_monic(self):
        """Testa x^2·G(1/x) normalizado."""
        g = Polynomial.from_ints(Q3, [3, 1, 1]).reverse().monic()
        assert g.degree == 2
        assert g.coeff(0) == Q3.from_rational(1, 3)

    def test_derivative(self):
        g = parse_polynomial(Q3, "x^6 + 6*x^2 + 6").derivative()
        assert g.degree == 5
        assert g.coeff(1) == 12


class TestNewtonPolygon:
    """Testes do polígono de Newton inferior."""

    def test_single_segment(self):
        """Testa x^2 + 3x + 3: um segmento de inclinação -1/2."""
        g = parse_polynomial(Q3, "x^2 + 3*x + 3")
        assert newton_polygon(g) == [(0, 2, Fraction(-1, 2))]

    def test_two_segments(self):
        g = parse_polynomial(Q3, "x^2 + x + 3")
        assert newton_polygon(g) == [(0, 1, Fraction(-1)), (1, 2, Fraction(0))]


class TestRoots:
    """Testes de Hensel e busca de raízes."""

    def test_hensel_square_root(self):
        """Testa √2 em Q_7 a partir de 3."""
        g = parse_polynomial(Q7, "x^2 - 2")
        root = lf_hensel_root(g, Q7.from_int(3))
        assert root * root == 2
        assert root.residue().coeffs == (3,)

    def test_hensel_failure(self):
        """Testa ponto inicial sem a hipótese de Hensel."""
        g = parse_polynomial(Q7, "x^2 - 2")
        with pytest.raises(HenselFailure):
            lf_hensel_root(g, Q7.from_int(1))

    def test_integral_roots(self):
        """Testa as duas raízes de x^2 - 2 com seus caminhos residuais."""
        roots = integral_roots(parse_polynomial(Q7, "x^2 - 2"))
        assert [path for _, path in roots] == [(3,), (4,)]
        assert roots[0][0] + roots[1][0] == 0

    def test_no_roots(self):
        """Testa polinômio sem raízes residuais."""
        assert integral_roots(parse_polynomial(Q3, "x^2 + 1")) == []
