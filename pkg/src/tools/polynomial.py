"""
Polinômios sobre corpos locais: leitura textual, polígono de Newton,
levantamento de Hensel e busca de raízes inteiras.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from loguru import logger

from ..errors import HenselFailure, InvalidDegree, ParseError, PrecisionExhausted
from .finite_field import FFElement, ff_poly_roots
from .local_field import (
    LocalElement,
    LocalField,
    monomial_value,
    parse_terms,
    split_precision,
)

NewtonSegment = Tuple[int, int, Fraction]


class Polynomial:
    """Polinômio com coeficientes em um corpo local, ordem crescente de grau."""

    def __init__(self, field: LocalField, coeffs: Sequence[LocalElement]):
        self.field = field
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = coeffs

    @classmethod
    def from_ints(cls, field: LocalField, values: Sequence[int]) -> "Polynomial":
        return cls(field, [field.from_int(v) for v in values])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> LocalElement:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def leading(self) -> LocalElement:
        return self.coeffs[-1]

    def __call__(self, x: LocalElement) -> LocalElement:
        if not self.coeffs:
            return self.field.zero()
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.field, [self.coeff(i) + other.coeff(i) for i in range(size)])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.field, [self.coeff(i) - other.coeff(i) for i in range(size)])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.coeffs or not other.coeffs:
            return Polynomial(self.field, [])
        out = [self.field.zero() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, out)

    def scale(self, c: LocalElement) -> "Polynomial":
        return Polynomial(self.field, [c * a for a in self.coeffs])

    def derivative(self) -> "Polynomial":
        return Polynomial(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Polynomial":
        inverse = self.leading().inverse()
        return Polynomial(self.field, [c * inverse for c in self.coeffs[:-1]] + [self.field.one()])

    def reverse(self) -> "Polynomial":
        """x^d·G(1/x)."""
        return Polynomial(self.field, list(reversed(self.coeffs)))

    def scale_variable(self, c: LocalElement) -> "Polynomial":
        """G(c·x)."""
        out = []
        power = self.field.one()
        for a in self.coeffs:
            out.append(a * power)
            power = power * c
        return Polynomial(self.field, out)

    def taylor_shift(self, r: LocalElement) -> "Polynomial":
        """G(r + x), por divisões sintéticas sucessivas."""
        work = list(self.coeffs)
        n = len(work)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                work[j] = work[j] + r * work[j + 1]
        return Polynomial(self.field, work)

    def content(self) -> int:
        """Menor valuação dos coeficientes não nulos."""
        return min(c.valuation() for c in self.coeffs if not c.is_zero())

    def residual(self) -> List[FFElement]:
        """Redução de um polinômio inteiro ao corpo residual."""
        return [c.residue() for c in self.coeffs]

    def map_coefficients(self, target: LocalField, embed) -> "Polynomial":  # type: ignore[no-untyped-def]
        return Polynomial(target, [embed(c) for c in self.coeffs])

    def __repr__(self) -> str:
        return f"Polynomial(deg={self.degree}, {[str(c) for c in self.coeffs]})"


def parse_polynomial(field: LocalField, text: str) -> Polynomial:
    """
    Lê um polinômio em x com coeficientes na sintaxe de elementos.

    Raises:
        ParseError: expoente negativo em x ou símbolo desconhecido
    """
    body, _ = split_precision(text)
    buckets: dict = {}
    for coeff, powers in parse_terms(body):
        degree = powers.pop("x", 0)
        if degree < 0:
            raise ParseError(f"Expoente negativo de x em '{text}'")
        value = monomial_value(field, coeff, powers)
        buckets[degree] = buckets[degree] + value if degree in buckets else value
    if not buckets:
        raise ParseError(f"Polinômio nulo: '{text}'")
    size = max(buckets) + 1
    poly = Polynomial(field, [buckets.get(i, field.zero()) for i in range(size)])
    logger.debug(f"Polinômio lido com grau {poly.degree}: {text}")
    return poly


def newton_polygon(poly: Polynomial) -> List[NewtonSegment]:
    """
    Polígono de Newton inferior de Σ c_i x^i.

    Returns:
        Segmentos (i_inicial, i_final, inclinação)
    """
    points = [(i, c.valuation()) for i, c in enumerate(poly.coeffs) if not c.is_zero()]
    hull: List[Tuple[int, int]] = []
    for point in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (point[0] - x1) >= (point[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(point)
    return [
        (x1, x2, Fraction(y2 - y1, x2 - x1))
        for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    ]


def lf_hensel_root(g: Polynomial, x0: LocalElement, max_iterations: int = 64) -> LocalElement:
    """
    Refina x0 a uma raiz de g por iteração de Newton.

    Exige v(g(x0)) > 2·v(g'(x0)).
    """
    value = g(x0)
    if value.is_zero():
        return x0
    dg = g.derivative()
    slope = dg(x0)
    if slope.is_zero() or value.valuation() <= 2 * slope.valuation():
        raise HenselFailure(
            f"Hipótese de Hensel falhou: v(g(x0))={value.valuation()}, "
            f"v(g'(x0))={slope.valuation_or(-1)}"
        )
    x = x0
    for _ in range(max_iterations):
        value = g(x)
        if value.is_zero():
            return x
        step = value / dg(x)
        if step.is_zero():
            return x
        x = x - step
    raise PrecisionExhausted("Iteração de Hensel não estabilizou")


def integral_roots(
    poly: Polynomial, max_depth: Optional[int] = None
) -> List[Tuple[LocalElement, Tuple[int, ...]]]:
    """
    Todas as raízes de um polinômio separável no anel de inteiros.

    Cada raiz vem com o caminho de resíduos (índices em k_L) que a distingue:
    raízes residuais simples são levantadas por Hensel; as múltiplas são
    refinadas recursivamente em H(z) = G(r̂ + π_L·z).

    Raises:
        PrecisionExhausted: o aglomerado não se separa na precisão de trabalho
    """
    field = poly.field
    depth_cap = max_depth if max_depth is not None else field.e * field.precision
    pi = field.uniformizer()
    results = list(_roots(poly, pi, 0, depth_cap))
    results.sort(key=lambda item: item[1])
    return results


def _roots(
    poly: Polynomial, pi: LocalElement, depth: int, depth_cap: int
) -> Iterator[Tuple[LocalElement, Tuple[int, ...]]]:
    if poly.degree < 1:
        return
    field = poly.field
    normalized = poly.scale(field.pi_power(-poly.content()))
    residual = normalized.residual()
    if all(c.is_zero() for c in residual[1:]):
        return
    for root, multiplicity in ff_poly_roots(residual):
        lifted = field.lift_residue(root)
        if multiplicity == 1:
            yield lf_hensel_root(normalized, lifted), (root.index(),)
            continue
        if depth >= depth_cap:
            raise PrecisionExhausted(
                f"Raízes não separadas após {depth} refinamentos"
            )
        shifted = normalized.taylor_shift(lifted).scale_variable(pi)
        for inner, path in _roots(shifted, pi, depth + 1, depth_cap):
            yield lifted + pi * inner, (root.index(),) + path


def poly_from_prime_coeffs(field: LocalField, coeffs: Sequence) -> Polynomial:  # type: ignore[type-arg]
    """Polinômio cujos coeficientes são escalares do anel primo do corpo."""
    if not coeffs:
        raise InvalidDegree("Polinômio vazio")
    return Polynomial(field, [field.element(field.order.scalar(c)) for c in coeffs])
