"""Aritmética exata em corpos finitos F_{p^f}.

Os polinômios sobre F_p são manipulados com ``sympy.polys.galoistools``, que usa
listas de coeficientes do grau mais alto para o mais baixo. Os elementos do
corpo guardam os coeficientes do grau mais baixo para o mais alto.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from loguru import logger
from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_gcd,
    gf_gcdex,
    gf_mul,
    gf_pow_mod,
    gf_rem,
    gf_strip,
    gf_sub,
)

from ..errors import DivisionByZero, FieldMismatch, InvalidDegree, InvalidField


def _to_gf(coeffs: Sequence[int]) -> List[int]:
    return gf_strip([int(c) for c in reversed(coeffs)])


def _from_gf(poly: Sequence[int], length: int) -> Tuple[int, ...]:
    coeffs = [int(c) for c in reversed(poly)]
    return tuple(coeffs + [0] * (length - len(coeffs)))


def is_irreducible(p: int, modulus: Sequence[int]) -> bool:
    """
    Verifica a irredutibilidade de um polinômio mônico sobre F_p.

    Critério: gcd(x^{p^k} - x, g) = 1 para 1 ≤ k < f e x^{p^f} ≡ x mod g.

    Args:
        p: Característica
        modulus: Coeficientes do grau mais baixo para o mais alto

    Returns:
        True se o polinômio é irredutível
    """
    f = len(modulus) - 1
    g = _to_gf(modulus)
    x = [1, 0]
    for k in range(1, f):
        h = gf_sub(gf_pow_mod(x, p**k, g, p, ZZ), x, p, ZZ)
        if gf_gcd(h, g, p, ZZ) != [1]:
            return False
    frob = gf_pow_mod(x, p**f, g, p, ZZ)
    return gf_sub(frob, gf_rem(x, g, p, ZZ), p, ZZ) == []


@lru_cache(maxsize=None)
def find_irreducible(p: int, f: int) -> Tuple[int, ...]:
    """Retorna o menor polinômio mônico irredutível de grau f (ordem lexicográfica)."""
    for tail in itertools.product(range(p), repeat=f):
        modulus = tuple(reversed(tail)) + (1,)
        if is_irreducible(p, modulus):
            logger.debug(f"Módulo irredutível de grau {f} sobre F_{p}: {modulus}")
            return modulus
    raise InvalidField(f"Nenhum polinômio irredutível de grau {f} sobre F_{p}")


class FFField:
    """Corpo finito F_{p^f} = F_p[w]/(modulus)."""

    def __init__(self, p: int, f: int, modulus: Optional[Sequence[int]] = None):
        if not isprime(p):
            raise InvalidField(f"Característica {p} não é prima")
        if f < 1:
            raise InvalidDegree(f"Grau {f} inválido para corpo finito")
        self.p = p
        self.f = f
        if modulus is None:
            modulus = find_irreducible(p, f)
        reduced = tuple(int(c) % p for c in modulus)
        if len(reduced) != f + 1 or reduced[-1] != 1:
            raise InvalidDegree(f"Módulo {tuple(modulus)} não é mônico de grau {f}")
        if not is_irreducible(p, reduced):
            raise InvalidField(f"Módulo {reduced} é redutível sobre F_{p}")
        self.modulus = reduced
        self._modulus_gf = _to_gf(reduced)

    @property
    def order(self) -> int:
        return self.p**self.f

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FFField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        return f"FFField(p={self.p}, f={self.f}, modulus={self.modulus})"

    def reduce(self, coeffs: Sequence[int]) -> "FFElement":
        """Reduz um polinômio arbitrário em w (grau baixo → alto) módulo o módulo."""
        poly = gf_rem(_to_gf([c % self.p for c in coeffs]), self._modulus_gf, self.p, ZZ)
        return FFElement(self, _from_gf(poly, self.f))

    def element(self, coeffs: Sequence[int]) -> "FFElement":
        return self.reduce(coeffs)

    @property
    def zero(self) -> "FFElement":
        return FFElement(self, (0,) * self.f)

    @property
    def one(self) -> "FFElement":
        return FFElement(self, (1,) + (0,) * (self.f - 1))

    @property
    def gen(self) -> "FFElement":
        """Classe de w; vale 0 quando f = 1 e o módulo é w."""
        return self.reduce((0, 1))

    def from_int(self, n: int) -> "FFElement":
        return FFElement(self, (n % self.p,) + (0,) * (self.f - 1))

    def from_index(self, index: int) -> "FFElement":
        coeffs = []
        for _ in range(self.f):
            index, digit = divmod(index, self.p)
            coeffs.append(digit)
        return FFElement(self, tuple(coeffs))

    def elements(self) -> Iterator["FFElement"]:
        """Itera todos os elementos na ordem do índice Σ c_i p^i."""
        for index in range(self.order):
            yield self.from_index(index)


@dataclass(frozen=True)
class FFElement:
    """Elemento de F_{p^f}, coeficientes reduzidos mod p."""

    field: FFField
    coeffs: Tuple[int, ...]

    def _check(self, other: "FFElement") -> None:
        if not isinstance(other, FFElement) or other.field != self.field:
            raise FieldMismatch("Operação entre corpos finitos distintos")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: "FFElement") -> "FFElement":
        self._check(other)
        p = self.field.p
        return FFElement(
            self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "FFElement") -> "FFElement":
        self._check(other)
        p = self.field.p
        return FFElement(
            self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "FFElement":
        p = self.field.p
        return FFElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other: "FFElement | int") -> "FFElement":
        field = self.field
        if isinstance(other, int):
            return FFElement(field, tuple((a * other) % field.p for a in self.coeffs))
        self._check(other)
        if field.f == 1:
            return FFElement(field, ((self.coeffs[0] * other.coeffs[0]) % field.p,))
        prod = gf_mul(_to_gf(self.coeffs), _to_gf(other.coeffs), field.p, ZZ)
        rem = gf_rem(prod, field._modulus_gf, field.p, ZZ)
        return FFElement(field, _from_gf(rem, field.f))

    __rmul__ = __mul__

    def inverse(self) -> "FFElement":
        field = self.field
        if self.is_zero():
            raise DivisionByZero("Inverso de zero em corpo finito")
        if field.f == 1:
            return FFElement(field, (pow(self.coeffs[0], -1, field.p),))
        s, _, h = gf_gcdex(_to_gf(self.coeffs), field._modulus_gf, field.p, ZZ)
        if h != [1]:
            raise DivisionByZero(f"Elemento {self} não invertível")
        rem = gf_rem(s, field._modulus_gf, field.p, ZZ)
        return FFElement(field, _from_gf(rem, field.f))

    def __truediv__(self, other: "FFElement") -> "FFElement":
        self._check(other)
        return self * other.inverse()

    def __pow__(self, exponent: int) -> "FFElement":
        base = self if exponent >= 0 else self.inverse()
        exponent = abs(exponent)
        result = self.field.one
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def frobenius(self, base_degree: int = 1) -> "FFElement":
        return ff_frobenius(self, base_degree)

    def trace(self, base_degree: int = 1) -> "FFElement":
        return ff_trace(self, base_degree)

    def index(self) -> int:
        return sum(c * self.field.p**i for i, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        terms = []
        for i in reversed(range(len(self.coeffs))):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                monomial = "w" if i == 1 else f"w^{i}"
                terms.append(monomial if c == 1 else f"{c}*{monomial}")
        return " + ".join(terms) if terms else "0"


def _check_degree(x: FFElement, base_degree: int) -> None:
    if base_degree < 1 or x.field.f % base_degree:
        raise InvalidDegree(
            f"Grau base {base_degree} não divide f = {x.field.f}"
        )


def ff_arithmetic(x: FFElement, y: Optional[FFElement], op: str) -> FFElement:
    """Despacha add | sub | mul | inv (inv ignora y)."""
    if op == "inv":
        return x.inverse()
    if y is None:
        raise FieldMismatch(f"Operação {op} exige dois operandos")
    operations = {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__}
    if op not in operations:
        raise ValueError(f"Operação desconhecida: {op}")
    return operations[op](y)


def ff_frobenius(x: FFElement, base_degree: int = 1) -> FFElement:
    """Retorna x^{p^{base_degree}}."""
    _check_degree(x, base_degree)
    return x ** (x.field.p**base_degree)


def ff_trace(x: FFElement, base_degree: int = 1) -> FFElement:
    """Traço de F_{p^f} para o subcorpo de grau base_degree."""
    _check_degree(x, base_degree)
    total = x.field.zero
    conjugate = x
    for _ in range(x.field.f // base_degree):
        total = total + conjugate
        conjugate = ff_frobenius(conjugate, base_degree)
    return total


def ff_determinant(rows: Sequence[Sequence[FFElement]]) -> FFElement:
    """Determinante por eliminação gaussiana sobre o corpo finito."""
    matrix = [list(row) for row in rows]
    size = len(matrix)
    field = matrix[0][0].field
    det = field.one
    for col in range(size):
        pivot = next((r for r in range(col, size) if matrix[r][col]), None)
        if pivot is None:
            return field.zero
        if pivot != col:
            matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
            det = -det
        det = det * matrix[col][col]
        inverse = matrix[col][col].inverse()
        for r in range(col + 1, size):
            factor = matrix[r][col] * inverse
            if factor:
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[col])]
    return det


def ff_is_normal(x: FFElement, ext_degree: int, base_degree: int = 1) -> bool:
    """
    Verifica se x gera base normal de F_{q^ext} sobre F_q, q = p^{base_degree}.

    Usa o determinante de Moore dos conjugados: as colunas são os conjugados de x
    e as linhas suas imagens por potências de Frobenius.
    """
    degree = ext_degree * base_degree
    _check_degree(x, degree)
    if x.is_zero() or ff_frobenius(x, degree) != x:
        return False
    conjugates = [x]
    for _ in range(ext_degree - 1):
        conjugates.append(ff_frobenius(conjugates[-1], base_degree))
    moore = [
        [conjugates[(i + j) % ext_degree] for j in range(ext_degree)]
        for i in range(ext_degree)
    ]
    return bool(ff_determinant(moore))


def ff_normal_basis_element(
    field: FFField, ext_degree: int, base_degree: int = 1, seed: int = 0
) -> FFElement:
    """
    Busca determinística de um gerador de base normal.

    Com seed = 0 os candidatos seguem a ordem do índice (1, w, w + 1, ...); com
    seed > 0 vêm de um gerador pseudoaleatório semeado. Candidatos fora do
    subcorpo de grau ext·base são projetados nele pelo traço.
    """
    degree = ext_degree * base_degree
    if field.f % degree:
        raise InvalidDegree(f"Grau {degree} não divide f = {field.f}")
    rng = random.Random(seed)
    attempts = 0
    while True:
        attempts += 1
        if seed == 0:
            if attempts >= field.order:
                break
            candidate = field.from_index(attempts)
        else:
            candidate = field.from_index(rng.randrange(1, field.order))
        if degree < field.f:
            candidate = ff_trace(candidate, degree)
        if ff_is_normal(candidate, ext_degree, base_degree):
            logger.debug(f"Elemento normal {candidate} após {attempts} tentativas")
            return candidate
        if seed and attempts > 64 * field.order:
            break
    raise InvalidDegree(f"Nenhum elemento normal encontrado em {field}")


def ff_embedding_root(small: FFField, big: FFField) -> FFElement:
    """Raiz do módulo de ``small`` dentro de ``big`` (varredura exaustiva)."""
    if big.f % small.f or big.p != small.p:
        raise InvalidDegree(f"{small} não mergulha em {big}")
    coeffs = [big.from_int(c) for c in small.modulus]
    for candidate in big.elements():
        if ff_frobenius(candidate, small.f) != candidate:
            continue
        if ff_poly_eval(coeffs, candidate).is_zero():
            return candidate
    raise InvalidDegree(f"Módulo de {small} sem raiz em {big}")


def ff_poly_eval(coeffs: Sequence[FFElement], x: FFElement) -> FFElement:
    """Avalia por Horner; coeficientes do grau mais baixo para o mais alto."""
    acc = x.field.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _strip(coeffs: Sequence[FFElement]) -> List[FFElement]:
    out = list(coeffs)
    while out and out[-1].is_zero():
        out.pop()
    return out


def _divide_linear(coeffs: Sequence[FFElement], root: FFElement) -> List[FFElement]:
    """Quociente da divisão sintética por (z - root)."""
    degree = len(coeffs) - 1
    quotient: List[FFElement] = [root.field.zero] * degree
    acc = root.field.zero
    for i in range(degree, 0, -1):
        acc = coeffs[i] + root * acc
        quotient[i - 1] = acc
    return quotient


def ff_poly_roots(coeffs: Sequence[FFElement]) -> List[Tuple[FFElement, int]]:
    """
    Raízes de um polinômio sobre F_q com multiplicidades, na ordem do índice.

    Args:
        coeffs: Coeficientes do grau mais baixo para o mais alto (não todos nulos)

    Returns:
        Lista de pares (raiz, multiplicidade)
    """
    poly = _strip(coeffs)
    if not poly:
        raise DivisionByZero("Polinômio residual identicamente nulo")
    field = poly[0].field
    roots: List[Tuple[FFElement, int]] = []
    if len(poly) == 1:
        return roots
    for candidate in field.elements():
        if not ff_poly_eval(poly, candidate).is_zero():
            continue
        multiplicity = 0
        reduced = poly
        while len(reduced) > 1 and ff_poly_eval(reduced, candidate).is_zero():
            reduced = _strip(_divide_linear(reduced, candidate))
            multiplicity += 1
        roots.append((candidate, multiplicity))
    return roots
