"""
Aritmética de precisão finita em corpos locais completos.

Dois backends compartilham o mesmo código:

- ``padic``: Z_p e suas extensões, inteiros módulo p^N;
- ``laurent``: F_p[[t]], séries truncadas em t^N.

Todo corpo (base ou torre) é apresentado como O = R[y]/(ĝ)[x]/(E), com R o anel
primo truncado, ĝ o levantamento mônico do módulo residual e E um polinômio de
Eisenstein sobre R (E = x - π_K no corpo base). Elementos são π_K^shift vezes um
vetor inteiro de coordenadas na base plana y^i·π^j (índice j·f + i), conhecido
módulo π_K^rel.
"""

from __future__ import annotations

import re
from abc import ABC, abstractmethod
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

from loguru import logger
from sympy import Add, Integer, Rational, Symbol, expand
from sympy import isprime
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from ..errors import (
    DivisionByZero,
    FieldMismatch,
    InvalidDegree,
    InvalidField,
    ParseError,
    PrecisionExhausted,
    UnknownOperation,
)
from .finite_field import FFElement, FFField

Coeffs = Tuple[Any, ...]


class PrimeRing(ABC):
    """Anel primo truncado: Z_p/p^N ou F_p[[t]]/t^N."""

    kind: str = ""

    def __init__(self, p: int, precision: int):
        self.p = p
        self.precision = precision

    @property
    @abstractmethod
    def zero(self) -> Any: ...

    @property
    @abstractmethod
    def one(self) -> Any: ...

    @abstractmethod
    def from_int(self, n: int) -> Any: ...

    @abstractmethod
    def add(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def sub(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def neg(self, a: Any) -> Any: ...

    @abstractmethod
    def mul(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def is_zero(self, a: Any) -> bool: ...

    @abstractmethod
    def valuation(self, a: Any) -> int:
        """Valuação; devolve ``precision`` para o zero."""

    @abstractmethod
    def shift_up(self, a: Any, k: int) -> Any:
        """Multiplica por π^k."""

    @abstractmethod
    def shift_down(self, a: Any, k: int) -> Any:
        """Divide exatamente por π^k (exige valuação ≥ k)."""

    @abstractmethod
    def truncate(self, a: Any, r: int) -> Any:
        """Reduz módulo π^r."""

    @abstractmethod
    def residue(self, a: Any) -> int: ...

    @abstractmethod
    def unit_inverse(self, a: Any) -> Any: ...

    @abstractmethod
    def digits(self, a: Any, count: int) -> List[int]:
        """Primeiros ``count`` dígitos π-ádicos."""

    def linear_combination(self, scalars: Sequence[Any], vectors: Sequence[Coeffs]) -> Coeffs:
        """Σ s_i·v_i coordenada a coordenada."""
        size = len(vectors[0])
        out = [self.zero] * size
        for scalar, vector in zip(scalars, vectors):
            if self.is_zero(scalar):
                continue
            for idx, value in enumerate(vector):
                if not self.is_zero(value):
                    out[idx] = self.add(out[idx], self.mul(scalar, value))
        return tuple(out)


class PadicIntegers(PrimeRing):
    """Z_p módulo p^N, elementos como inteiros em [0, p^N)."""

    kind = "padic"

    def __init__(self, p: int, precision: int):
        super().__init__(p, precision)
        self.modulus = p**precision

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 % self.modulus

    def from_int(self, n: int) -> int:
        return n % self.modulus

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.modulus

    def neg(self, a: int) -> int:
        return (-a) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.modulus

    def is_zero(self, a: int) -> bool:
        return a == 0

    def valuation(self, a: int) -> int:
        if a == 0:
            return self.precision
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return v

    def shift_up(self, a: int, k: int) -> int:
        return (a * self.p**k) % self.modulus

    def shift_down(self, a: int, k: int) -> int:
        return a // self.p**k

    def truncate(self, a: int, r: int) -> int:
        return a % self.p ** max(r, 0)

    def residue(self, a: int) -> int:
        return a % self.p

    def unit_inverse(self, a: int) -> int:
        return pow(a, -1, self.modulus)

    def digits(self, a: int, count: int) -> List[int]:
        out = []
        for _ in range(count):
            a, digit = divmod(a, self.p)
            out.append(digit)
        return out

    def linear_combination(self, scalars: Sequence[int], vectors: Sequence[Coeffs]) -> Coeffs:
        size = len(vectors[0])
        out = [0] * size
        for scalar, vector in zip(scalars, vectors):
            if scalar:
                for idx, value in enumerate(vector):
                    out[idx] += scalar * value
        return tuple(value % self.modulus for value in out)


class PowerSeries(PrimeRing):
    """F_p[[t]] módulo t^N, elementos como tuplas de N coeficientes."""

    kind = "laurent"

    @property
    def zero(self) -> Tuple[int, ...]:
        return (0,) * self.precision

    @property
    def one(self) -> Tuple[int, ...]:
        return (1,) + (0,) * (self.precision - 1)

    def from_int(self, n: int) -> Tuple[int, ...]:
        return (n % self.p,) + (0,) * (self.precision - 1)

    def add(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: Tuple[int, ...]) -> Tuple[int, ...]:
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
        size = self.precision
        out = [0] * size
        for i, ai in enumerate(a):
            if ai:
                for j in range(size - i):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
        p = self.p
        return tuple(c % p for c in out)

    def is_zero(self, a: Tuple[int, ...]) -> bool:
        return not any(a)

    def valuation(self, a: Tuple[int, ...]) -> int:
        for idx, c in enumerate(a):
            if c:
                return idx
        return self.precision

    def shift_up(self, a: Tuple[int, ...], k: int) -> Tuple[int, ...]:
        if k >= self.precision:
            return self.zero
        return (0,) * k + a[: self.precision - k]

    def shift_down(self, a: Tuple[int, ...], k: int) -> Tuple[int, ...]:
        return a[k:] + (0,) * min(k, self.precision)

    def truncate(self, a: Tuple[int, ...], r: int) -> Tuple[int, ...]:
        r = min(max(r, 0), self.precision)
        return a[:r] + (0,) * (self.precision - r)

    def residue(self, a: Tuple[int, ...]) -> int:
        return a[0]

    def unit_inverse(self, a: Tuple[int, ...]) -> Tuple[int, ...]:
        p = self.p
        lead = pow(a[0], -1, p)
        out = [lead] + [0] * (self.precision - 1)
        for k in range(1, self.precision):
            acc = sum(a[i] * out[k - i] for i in range(1, k + 1))
            out[k] = (-lead * acc) % p
        return tuple(out)

    def digits(self, a: Tuple[int, ...], count: int) -> List[int]:
        return list(a[:count]) + [0] * max(0, count - self.precision)


def make_prime_ring(kind: str, p: int, precision: int) -> PrimeRing:
    if kind == "padic":
        return PadicIntegers(p, precision)
    if kind == "laurent":
        return PowerSeries(p, precision)
    raise InvalidField(f"Tipo de corpo desconhecido: {kind}")


class IntegralOrder:
    """
    O = R[y]/(ĝ)[x]/(E) truncado em π_K^N, sobre vetores planos de coordenadas.

    A multiplicação reduz primeiro em y (camada não ramificada) e depois em x
    (camada de Eisenstein).
    """

    def __init__(
        self,
        prime: PrimeRing,
        residue_field: FFField,
        unram_modulus: Sequence[Any],
        eisenstein: Sequence[Any],
    ):
        self.prime = prime
        self.residue_field = residue_field
        self.f = residue_field.f
        self.e = len(eisenstein) - 1
        self.degree = self.e * self.f
        self.unram_modulus = tuple(unram_modulus)
        self.eisenstein = tuple(eisenstein)
        self._zero_block = (prime.zero,) * self.f

    @property
    def zero(self) -> Coeffs:
        return (self.prime.zero,) * self.degree

    @property
    def one(self) -> Coeffs:
        return self.basis_element(0)

    def basis_element(self, index: int) -> Coeffs:
        coeffs = [self.prime.zero] * self.degree
        coeffs[index] = self.prime.one
        return tuple(coeffs)

    def scalar(self, value: Any) -> Coeffs:
        return (value,) + (self.prime.zero,) * (self.degree - 1)

    def add(self, a: Coeffs, b: Coeffs) -> Coeffs:
        add = self.prime.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a: Coeffs, b: Coeffs) -> Coeffs:
        sub = self.prime.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a: Coeffs) -> Coeffs:
        return tuple(self.prime.neg(x) for x in a)

    def scale(self, a: Coeffs, scalar: Any) -> Coeffs:
        mul = self.prime.mul
        return tuple(mul(x, scalar) for x in a)

    def shift_up(self, a: Coeffs, k: int) -> Coeffs:
        if k == 0:
            return a
        return tuple(self.prime.shift_up(x, k) for x in a)

    def shift_down(self, a: Coeffs, k: int) -> Coeffs:
        if k == 0:
            return a
        return tuple(self.prime.shift_down(x, k) for x in a)

    def truncate(self, a: Coeffs, r: int) -> Coeffs:
        return tuple(self.prime.truncate(x, r) for x in a)

    def is_zero(self, a: Coeffs) -> bool:
        return all(self.prime.is_zero(x) for x in a)

    def coord_valuation(self, a: Coeffs) -> int:
        """Menor valuação π_K-ádica das coordenadas."""
        return min(self.prime.valuation(x) for x in a)

    def valuation(self, a: Coeffs) -> Optional[int]:
        """v_L de um vetor inteiro; None se todas as coordenadas são nulas."""
        best: Optional[int] = None
        prime, f, e = self.prime, self.f, self.e
        for j in range(e):
            block_v = min(prime.valuation(c) for c in a[j * f : (j + 1) * f])
            if block_v >= prime.precision:
                continue
            candidate = e * block_v + j
            if best is None or candidate < best:
                best = candidate
        return best

    def residue(self, a: Coeffs) -> FFElement:
        """Classe residual em k_L (apenas o bloco π^0 contribui)."""
        return FFElement(
            self.residue_field, tuple(self.prime.residue(c) for c in a[: self.f])
        )

    def lift_residue(self, value: FFElement) -> Coeffs:
        block = tuple(self.prime.from_int(c) for c in value.coeffs)
        return block + (self.prime.zero,) * (self.degree - self.f)

    def _block_mul(self, a: Coeffs, b: Coeffs) -> Coeffs:
        prime, f = self.prime, self.f
        if f == 1:
            return (prime.mul(a[0], b[0]),)
        prod = [prime.zero] * (2 * f - 1)
        for i, ai in enumerate(a):
            if prime.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                if not prime.is_zero(bj):
                    prod[i + j] = prime.add(prod[i + j], prime.mul(ai, bj))
        modulus = self.unram_modulus
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k]
            if prime.is_zero(c):
                continue
            for i in range(f):
                prod[k - f + i] = prime.sub(prod[k - f + i], prime.mul(c, modulus[i]))
        return tuple(prod[:f])

    def _block_is_zero(self, block: Coeffs) -> bool:
        return all(self.prime.is_zero(c) for c in block)

    def mul(self, a: Coeffs, b: Coeffs) -> Coeffs:
        prime, f, e = self.prime, self.f, self.e
        if e == 1:
            return self._block_mul(a, b)
        left = [a[j * f : (j + 1) * f] for j in range(e)]
        right = [b[j * f : (j + 1) * f] for j in range(e)]
        prod: List[Coeffs] = [self._zero_block] * (2 * e - 1)
        for i, ai in enumerate(left):
            if self._block_is_zero(ai):
                continue
            for j, bj in enumerate(right):
                if self._block_is_zero(bj):
                    continue
                term = self._block_mul(ai, bj)
                prod[i + j] = tuple(prime.add(x, y) for x, y in zip(prod[i + j], term))
        eisenstein = self.eisenstein
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k]
            if self._block_is_zero(c):
                continue
            for i in range(e):
                coefficient = eisenstein[i]
                if prime.is_zero(coefficient):
                    continue
                prod[k - e + i] = tuple(
                    prime.sub(x, prime.mul(y, coefficient))
                    for x, y in zip(prod[k - e + i], c)
                )
        return tuple(c for block in prod[:e] for c in block)


class LocalField:
    """Dados comuns ao corpo base e às torres: anel primo, ordem e resíduo."""

    def __init__(
        self,
        kind: str,
        p: int,
        precision: int,
        prime: PrimeRing,
        residue_field: FFField,
        unram_modulus: Sequence[Any],
        eisenstein: Sequence[Any],
    ):
        if precision < 1:
            raise InvalidDegree(f"Precisão {precision} inválida")
        self.kind = kind
        self.p = p
        self.precision = precision
        self.prime = prime
        self.residue_field = residue_field
        self.order = IntegralOrder(prime, residue_field, unram_modulus, eisenstein)
        self.e = self.order.e
        self.f = residue_field.f
        self.degree = self.order.degree

    @property
    def _key(self) -> Tuple[Any, ...]:
        return (
            self.kind,
            self.p,
            self.precision,
            self.residue_field.modulus,
            self.order.unram_modulus,
            self.order.eisenstein,
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LocalField) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "laurent" else 0

    # Construtores de elementos

    def element(self, coeffs: Sequence[Any], shift: int = 0, rel: Optional[int] = None) -> "LocalElement":
        return LocalElement(self, tuple(coeffs), shift, rel)

    def zero(self, abs_digits: Optional[int] = None) -> "LocalElement":
        digits = self.precision if abs_digits is None else abs_digits
        return LocalElement(self, self.order.zero, digits, 0)

    def one(self) -> "LocalElement":
        return LocalElement(self, self.order.one)

    def from_int(self, n: int) -> "LocalElement":
        return self.from_rational(n, 1)

    def from_rational(self, numerator: int, denominator: int = 1) -> "LocalElement":
        """Imagem de um racional; no caso laurent o denominador deve ser primo com p."""
        if denominator == 0:
            raise DivisionByZero("Denominador nulo")
        prime = self.prime
        if numerator == 0:
            return self.zero()
        if self.kind == "laurent":
            if denominator % self.p == 0:
                raise DivisionByZero(f"{denominator} se anula em característica {self.p}")
            value = (numerator * pow(denominator, -1, self.p)) % self.p
            return LocalElement(self, self.order.scalar(prime.from_int(value)))
        shift = 0
        while numerator % self.p == 0:
            numerator //= self.p
            shift += 1
        while denominator % self.p == 0:
            denominator //= self.p
            shift -= 1
        unit = prime.mul(prime.from_int(numerator), prime.unit_inverse(prime.from_int(denominator)))
        return LocalElement(self, self.order.scalar(unit), shift)

    def base_uniformizer(self) -> "LocalElement":
        """π_K visto como elemento deste corpo."""
        return LocalElement(self, self.order.one, 1)

    def uniformizer(self) -> "LocalElement":
        """π_L: a raiz de Eisenstein (π_K quando e = 1)."""
        if self.e == 1:
            return self.base_uniformizer()
        return LocalElement(self, self.order.basis_element(self.f))

    def residue_generator(self) -> "LocalElement":
        """ŵ = y, levantamento do gerador residual (0 quando f = 1)."""
        if self.f == 1:
            return self.lift_residue(self.residue_field.gen)
        return LocalElement(self, self.order.basis_element(1))

    def lift_residue(self, value: FFElement) -> "LocalElement":
        return LocalElement(self, self.order.lift_residue(value))

    def basis(self) -> List["LocalElement"]:
        """Base padrão y^i·π^j de O sobre O_K."""
        return [LocalElement(self, self.order.basis_element(i)) for i in range(self.degree)]

    @cached_property
    def varpi(self) -> "LocalElement":
        """Unidade ϖ = π_L^e / π_K, exata a partir dos coeficientes de Eisenstein."""
        prime, order = self.prime, self.order
        if self.e == 1:
            return self.one()
        coeffs = [prime.zero] * self.degree
        for j in range(self.e):
            value = prime.neg(prime.shift_down(order.eisenstein[j], 1))
            coeffs[j * self.f] = value
        return LocalElement(self, tuple(coeffs), 0, self.precision - 1)

    @cached_property
    def pi_inverse(self) -> "LocalElement":
        """π_L^{-1} = π_K^{-1}·π_L^{e-1}·ϖ^{-1}."""
        if self.e == 1:
            return LocalElement(self, self.order.one, -1)
        numerator = self.uniformizer() ** (self.e - 1)
        quotient = numerator * self.varpi._unit_inverse()
        return LocalElement(self, quotient.coeffs, quotient.shift - 1, quotient.rel)

    def pi_power(self, n: int) -> "LocalElement":
        if n >= 0:
            return self.uniformizer() ** n
        return self.pi_inverse ** (-n)

    @cached_property
    def coordinate_field(self) -> "BaseField":
        """Corpo das coordenadas (K com corpo residual primo) na mesma precisão."""
        return BaseField(self.kind, self.p, 1, self.precision)

    def coordinates(self, x: "LocalElement") -> List["LocalElement"]:
        """Coordenadas O_K de x na base padrão, como elementos de K."""
        target = self.coordinate_field
        return [
            LocalElement(target, (c,), x.shift, x.rel) for c in x.coeffs
        ]

    def from_coordinates(self, coords: Sequence["LocalElement"]) -> "LocalElement":
        shift = min(c.shift for c in coords)
        rel = min(c.shift + c.rel for c in coords) - shift
        order = self.order
        flat = tuple(
            self.prime.shift_up(c.coeffs[0], c.shift - shift) for c in coords
        )
        return LocalElement(self, order.truncate(flat, rel), shift, rel)

    def describe(self) -> str:
        return f"{self.kind}(p={self.p}, e={self.e}, f={self.f}, N={self.precision})"


class BaseField(LocalField):
    """
    Corpo base K: Q_p não ramificado de grau f ou F_{p^f}((t)).

    A precisão padrão N conta dígitos π_K-ádicos.
    """

    def __init__(self, kind: str, p: int, f: int = 1, default_precision: int = 20):
        if kind not in ("padic", "laurent"):
            raise InvalidField(f"Tipo de corpo desconhecido: {kind}")
        if not isprime(p):
            raise InvalidField(f"Característica residual {p} não é prima")
        if default_precision < 1:
            raise InvalidDegree("A precisão deve ser positiva")
        prime = make_prime_ring(kind, p, default_precision)
        residue = FFField(p, f)
        unram = [prime.from_int(c) for c in residue.modulus]
        eisenstein = [prime.neg(prime.shift_up(prime.one, 1)), prime.one]
        super().__init__(kind, p, default_precision, prime, residue, unram, eisenstein)
        self.default_precision = default_precision

    def with_precision(self, precision: int) -> "BaseField":
        return BaseField(self.kind, self.p, self.f, precision)

    def __repr__(self) -> str:
        name = f"Q_{self.p}" if self.kind == "padic" else f"F_{self.p}((t))"
        if self.f > 1:
            name = f"{name}[f={self.f}]"
        return f"BaseField({name}, N={self.precision})"


class LocalElement:
    """
    Elemento π_K^shift·(vetor inteiro) conhecido módulo π_K^{shift+rel}.

    ``abs_precision`` é medida na valuação do próprio corpo: e·(shift + rel).
    """

    __slots__ = ("field", "coeffs", "shift", "rel")

    def __init__(
        self,
        field: LocalField,
        coeffs: Coeffs,
        shift: int = 0,
        rel: Optional[int] = None,
    ):
        order = field.order
        rel = field.precision if rel is None else min(rel, field.precision)
        rel = max(rel, 0)
        coeffs = order.truncate(coeffs, rel)
        if rel > 0:
            v = order.coord_valuation(coeffs)
            if v >= rel:
                shift, rel, coeffs = shift + rel, 0, order.zero
            elif v > 0:
                coeffs = order.shift_down(coeffs, v)
                shift, rel = shift + v, rel - v
        else:
            coeffs = order.zero
        self.field = field
        self.coeffs = coeffs
        self.shift = shift
        self.rel = rel

    # Precisão e valuação

    @property
    def abs_precision(self) -> int:
        return self.field.e * (self.shift + self.rel)

    def is_zero(self) -> bool:
        return self.rel == 0

    def valuation(self) -> int:
        if self.is_zero():
            raise PrecisionExhausted(
                f"Elemento indistinguível de zero módulo 𝔓^{self.abs_precision}"
            )
        inner = self.field.order.valuation(self.coeffs)
        assert inner is not None
        return self.field.e * self.shift + inner

    def valuation_or(self, default: int) -> int:
        return default if self.is_zero() else self.valuation()

    def is_integral(self) -> bool:
        return self.shift >= 0

    def residue(self) -> FFElement:
        """Classe residual de um elemento inteiro."""
        if self.shift < 0 and not self.is_zero():
            raise InvalidDegree("Resíduo de elemento não inteiro")
        if self.is_zero() or self.shift > 0:
            return self.field.residue_field.zero
        return self.field.order.residue(self.coeffs)

    def leading_residue(self) -> FFElement:
        """Resíduo de x·π_L^{-v(x)}."""
        v = self.valuation()
        return (self * self.field.pi_power(-v)).residue()

    def truncated(self, rel: int) -> "LocalElement":
        return LocalElement(self.field, self.coeffs, self.shift, min(rel, self.rel))

    def with_abs_precision(self, abs_precision: int) -> "LocalElement":
        digits = abs_precision // self.field.e
        return LocalElement(self.field, self.coeffs, self.shift, digits - self.shift)

    # Aritmética

    def _coerce(self, other: Any) -> "LocalElement":
        if isinstance(other, LocalElement):
            if other.field != self.field:
                raise FieldMismatch(
                    f"Elementos de corpos distintos: {self.field.describe()} e {other.field.describe()}"
                )
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            return self.field.from_rational(other.numerator, other.denominator)
        raise FieldMismatch(f"Operando não suportado: {type(other).__name__}")

    def __add__(self, other: Any) -> "LocalElement":
        other = self._coerce(other)
        order = self.field.order
        shift = min(self.shift, other.shift)
        rel = min(self.shift + self.rel, other.shift + other.rel) - shift
        if rel <= 0:
            return LocalElement(self.field, order.zero, shift + rel, 0)
        a = order.shift_up(self.coeffs, self.shift - shift)
        b = order.shift_up(other.coeffs, other.shift - shift)
        return LocalElement(self.field, order.add(a, b), shift, rel)

    __radd__ = __add__

    def __neg__(self) -> "LocalElement":
        return LocalElement(self.field, self.field.order.neg(self.coeffs), self.shift, self.rel)

    def __sub__(self, other: Any) -> "LocalElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "LocalElement":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "LocalElement":
        other = self._coerce(other)
        shift = self.shift + other.shift
        rel = min(self.rel, other.rel)
        if rel == 0:
            return LocalElement(self.field, self.field.order.zero, shift + rel, 0)
        product = self.field.order.mul(self.coeffs, other.coeffs)
        return LocalElement(self.field, product, shift, rel)

    __rmul__ = __mul__

    def scale_pi_k(self, k: int) -> "LocalElement":
        """Multiplica por π_K^k (exato, sem perda de precisão)."""
        return LocalElement(self.field, self.coeffs, self.shift + k, self.rel)

    def _unit_inverse(self) -> "LocalElement":
        """Inversa de uma unidade inteira por iteração de Newton z ← z(2 - xz)."""
        field = self.field
        start = field.lift_residue(field.order.residue(self.coeffs).inverse())
        z = LocalElement(field, start.coeffs, 0, self.rel)
        correct = 1
        target = field.e * self.rel
        while correct < target:
            z = z * (2 - self * z)
            correct *= 2
        return z

    def inverse(self) -> "LocalElement":
        if self.is_zero():
            raise DivisionByZero(
                f"Divisão por elemento nulo módulo 𝔓^{self.abs_precision}"
            )
        field = self.field
        integral = LocalElement(field, self.coeffs, 0, self.rel)
        v = field.order.valuation(self.coeffs) or 0
        if v:
            shifted = field.pi_inverse**v
            unit = integral * shifted
            result = unit._unit_inverse() * shifted
        else:
            result = integral._unit_inverse()
        return LocalElement(field, result.coeffs, result.shift - self.shift, result.rel)

    def __truediv__(self, other: Any) -> "LocalElement":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Any) -> "LocalElement":
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "LocalElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (LocalElement, int)):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LocalElement({format_element(self)})"

    def __str__(self) -> str:
        return format_element(self)


# Operações nomeadas


def lf_arithmetic(x: LocalElement, y: LocalElement, op: str) -> LocalElement:
    """Despacha add | sub | mul | div com as regras de precisão absoluta."""
    operations = {
        "add": lambda: x + y,
        "sub": lambda: x - y,
        "mul": lambda: x * y,
        "div": lambda: x / y,
    }
    if op not in operations:
        raise UnknownOperation(f"Operação desconhecida: {op}")
    result = operations[op]()
    if result.is_zero():
        raise PrecisionExhausted(
            f"Nenhum dígito certificado no resultado de {op} (módulo 𝔓^{result.abs_precision})"
        )
    return result


def lf_valuation(x: LocalElement) -> int:
    return x.valuation()


def lf_uniformizer(field: LocalField) -> LocalElement:
    return field.uniformizer()


# Sintaxe textual

SYMBOLS: Dict[str, Symbol] = {name: Symbol(name) for name in ("x", "t", "w", "pi")}
_PRECISION_SUFFIX = re.compile(r"\+\s*O\(\s*pi\s*\^\s*(-?\d+)\s*\)\s*$")
_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def split_precision(text: str) -> Tuple[str, Optional[int]]:
    """Separa o sufixo ``+O(pi^N)`` opcional."""
    match = _PRECISION_SUFFIX.search(text)
    if not match:
        return text.strip(), None
    return text[: match.start()].strip(), int(match.group(1))


def parse_terms(text: str) -> List[Tuple[Fraction, Dict[str, int]]]:
    """
    Lê uma expressão polinomial (expoentes inteiros, inclusive negativos).

    Returns:
        Lista de (coeficiente racional, {símbolo: expoente})
    """
    if not text.strip():
        raise ParseError("Expressão vazia")
    try:
        expr = parse_expr(text, local_dict=dict(SYMBOLS), transformations=_TRANSFORMATIONS)
    except Exception as exc:  # sympy levanta SyntaxError, TokenError, TypeError...
        raise ParseError(f"Expressão inválida '{text}': {exc}") from exc
    names = {symbol: name for name, symbol in SYMBOLS.items()}
    terms: List[Tuple[Fraction, Dict[str, int]]] = []
    for term in Add.make_args(expand(expr)):
        coeff, rest = term.as_coeff_Mul()
        if not isinstance(coeff, Rational):
            raise ParseError(f"Coeficiente não racional em '{text}': {coeff}")
        powers: Dict[str, int] = {}
        for base, exponent in rest.as_powers_dict().items():
            if base == 1:
                continue
            if base not in names or not isinstance(exponent, Integer):
                raise ParseError(f"Termo não suportado em '{text}': {base}^{exponent}")
            powers[names[base]] = int(exponent)
        if coeff != 0:
            terms.append((Fraction(int(coeff.p), int(coeff.q)), powers))
    return terms


def monomial_value(field: LocalField, coeff: Fraction, powers: Dict[str, int]) -> LocalElement:
    """Valor de c·t^a·w^b·pi^c no corpo dado (sem o símbolo x)."""
    value = field.from_rational(coeff.numerator, coeff.denominator)
    for name, exponent in powers.items():
        if name == "t":
            if field.kind != "laurent":
                raise ParseError("O símbolo t só existe no backend laurent")
            value = value.scale_pi_k(exponent)
        elif name == "w":
            value = value * field.residue_generator() ** exponent
        elif name == "pi":
            value = value * field.pi_power(exponent)
        else:
            raise ParseError(f"Símbolo {name} fora de contexto")
    return value


def parse_element(field: LocalField, text: str) -> LocalElement:
    """Lê um elemento na sintaxe textual, com sufixo de precisão opcional."""
    body, precision = split_precision(text)
    total = field.zero()
    first = True
    for coeff, powers in parse_terms(body):
        term = monomial_value(field, coeff, powers)
        total = term if first else total + term
        first = False
    if first:
        total = field.zero()
    if precision is not None:
        total = total.with_abs_precision(precision)
    logger.debug(f"Elemento lido: {text!r}")
    return total


def _format_prime(field: LocalField, value: Any, shift: int, rel: int) -> str:
    """Escalar do anel primo vezes π_K^shift, na sintaxe do backend."""
    prime = field.prime
    if field.kind == "padic":
        unit = prime.truncate(value, rel)
        if shift >= 0:
            return str(unit * field.p**shift)
        return f"{field.p}^{shift}*{unit}"
    terms = []
    for k, digit in enumerate(prime.digits(value, rel)):
        if not digit:
            continue
        exponent = k + shift
        monomial = "1" if exponent == 0 else ("t" if exponent == 1 else f"t^{exponent}")
        if monomial == "1":
            terms.append(str(digit))
        else:
            terms.append(monomial if digit == 1 else f"{digit}*{monomial}")
    return " + ".join(terms) if terms else "0"


def format_element(x: LocalElement, digits: Optional[int] = None) -> str:
    """
    Texto canônico de um elemento, sempre com sufixo ``+ O(pi^N)``.

    Args:
        x: Elemento
        digits: Limite de dígitos π_K-ádicos relativos a imprimir

    Returns:
        Representação textual determinística
    """
    field = x.field
    if digits is not None:
        x = x.truncated(digits)
    suffix = f"O(pi^{x.abs_precision})"
    if x.is_zero():
        return suffix
    terms = []
    for index, coefficient in enumerate(x.coeffs):
        if field.prime.is_zero(coefficient):
            continue
        j, i = divmod(index, field.f)
        text = _format_prime(field, coefficient, x.shift, x.rel)
        factors = []
        if i:
            factors.append("w" if i == 1 else f"w^{i}")
        if j:
            factors.append("pi" if j == 1 else f"pi^{j}")
        if not factors:
            terms.append(text)
            continue
        if " + " in text or field.kind == "padic" and "^" in text:
            text = f"({text})"
        terms.append("*".join(([] if text == "1" else [text]) + factors))
    return " + ".join(terms + [suffix])
