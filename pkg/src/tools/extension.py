"""
Extensões de Galois L/K sobre um corpo base com corpo residual primo.

Uma torre é apresentada por uma camada não ramificada O_K[y]/(ĝ) de grau f e
uma camada de Eisenstein de grau e com coeficientes em K. Aqui vivem a
normalização de polinômios de entrada, os automorfismos, a filtração de
ramificação, traços, normas, compostos e os uniformizadores especiais usados
pelas construções.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple

from loguru import logger
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

from ..errors import (
    InvalidDegree,
    InvalidField,
    NotGalois,
    PrecisionExhausted,
    ReduciblePolynomial,
    TheoremViolation,
    UnsupportedPresentation,
    WildDegree,
)
from .finite_field import FFField, ff_embedding_root, find_irreducible
from .group_theory import FiniteGroup
from .lattice import charpoly, residue_det, residue_rank, solve
from .local_field import (
    BaseField,
    Coeffs,
    LocalElement,
    LocalField,
    make_prime_ring,
)
from .polynomial import (
    Polynomial,
    integral_roots,
    lf_hensel_root,
    newton_polygon,
    parse_polynomial,
    poly_from_prime_coeffs,
)

# Acima deste grau a conferência da diferente usa E'(π) em vez de g'(α).
CHARPOLY_DEGREE_LIMIT = 12


def _prime_scalar(base: LocalField, c: LocalElement) -> Any:
    """Coeficiente inteiro de K como escalar do anel primo."""
    if c.is_zero():
        return base.prime.zero
    if c.shift < 0:
        raise UnsupportedPresentation(f"Coeficiente não inteiro: {c}")
    return base.prime.shift_up(c.coeffs[0], c.shift)


def embed_base(target: LocalField, c: LocalElement) -> LocalElement:
    """Imagem de um elemento de K (corpo residual primo) em uma torre sobre K."""
    if c.is_zero():
        return target.zero(c.shift)
    return LocalElement(target, target.order.scalar(c.coeffs[0]), c.shift, c.rel)


class ExtensionTower(LocalField):
    """
    Torre K ⊆ K_u ⊆ L com K_u/K não ramificada de grau f e L/K_u de Eisenstein.

    O gerador monogênico α = π_L + ŵ (ŵ = y, ou 0 quando f = 1) é certificado
    por determinante residual unitário.
    """

    def __init__(
        self,
        base: BaseField,
        residue_modulus: Sequence[int],
        eisenstein: Sequence[LocalElement],
        unram_lift: Optional[Sequence[Any]] = None,
        substitutions: Sequence[str] = (),
        presentation: str = "",
    ):
        if base.f != 1:
            raise InvalidField("Torres exigem corpo base com corpo residual primo")
        prime = make_prime_ring(base.kind, base.p, base.precision)
        residue_field = FFField(base.p, len(residue_modulus) - 1, residue_modulus)
        unram = list(unram_lift) if unram_lift is not None else [prime.from_int(c) for c in residue_modulus]
        eis = [_prime_scalar(base, c) for c in eisenstein]
        super().__init__(base.kind, base.p, base.precision, prime, residue_field, unram, eis)
        self.base = base
        self.unram_degree = self.f
        self.residue_modulus = tuple(residue_field.modulus)
        self.eisenstein = list(eisenstein)
        self.total_degree = self.degree
        self.substitutions = list(substitutions)
        self.presentation = presentation
        self.input_root: Optional[LocalElement] = None
        self._check_eisenstein()
        self.monogenic = self.certify_monogenic()
        if not self.monogenic:
            raise TheoremViolation("{α^i} não é O_K-base de O_L")

    def _check_eisenstein(self) -> None:
        prime = self.prime
        coeffs = self.order.eisenstein
        if not prime.is_zero(prime.sub(coeffs[-1], prime.one)):
            raise UnsupportedPresentation("Polinômio de Eisenstein não mônico")
        if prime.valuation(coeffs[0]) != 1:
            raise UnsupportedPresentation("Termo constante sem valuação 1")
        if any(prime.valuation(c) < 1 for c in coeffs[:-1]):
            raise UnsupportedPresentation("Coeficiente de Eisenstein fora de 𝔓_K")

    def __repr__(self) -> str:
        return f"ExtensionTower({self.describe()})"

    @property
    def alpha(self) -> LocalElement:
        """Gerador monogênico de O_L sobre O_K."""
        if self.f == 1:
            return self.uniformizer()
        return self.uniformizer() + self.residue_generator()

    def alpha_powers(self) -> List[LocalElement]:
        powers = [self.one()]
        alpha = self.alpha
        for _ in range(self.degree - 1):
            powers.append(powers[-1] * alpha)
        return powers

    def certify_monogenic(self) -> bool:
        """Verifica que {α^i} é O_K-base de O_L (determinante residual ≠ 0)."""
        rows = [
            [self.prime.residue(self.prime.shift_up(c, x.shift)) for c in x.coeffs]
            for x in self.alpha_powers()
        ]
        return residue_det(rows, self.p) != 0

    def multiplication_matrix(self, x: LocalElement) -> List[List[LocalElement]]:
        """Matriz de y ↦ x·y na base padrão (colunas = imagens da base)."""
        columns = [self.coordinates(x * b) for b in self.basis()]
        return [[columns[j][i] for j in range(self.degree)] for i in range(self.degree)]

    def alpha_minimal_polynomial(self) -> Polynomial:
        """Polinômio mínimo de α sobre K (polinômio característico, Berkowitz)."""
        coords = self.coordinate_field
        matrix = self.multiplication_matrix(self.alpha)
        return Polynomial(coords, charpoly(matrix, coords))

    def eisenstein_key(self) -> Tuple[Any, ...]:
        return (self.kind, self.p, self.precision, self.order.eisenstein)

    def eisenstein_polynomial(self) -> Polynomial:
        return poly_from_prime_coeffs(self, self.order.eisenstein)

    def unramified_polynomial(self) -> Polynomial:
        return poly_from_prime_coeffs(self, self.order.unram_modulus)

    def local_different(self) -> int:
        """v_L(E'(π_L)); as camadas não ramificadas não contribuem."""
        if self.e == 1:
            return 0
        return self.eisenstein_polynomial().derivative()(self.uniformizer()).valuation()


# Construção


def _residual_ints(poly: Polynomial) -> List[int]:
    return [c.residue().coeffs[0] for c in poly.coeffs]


def _trivial_modulus() -> Tuple[int, int]:
    return (0, 1)


def ext_create(base: BaseField, poly: Polynomial | str) -> ExtensionTower:
    """
    Constrói a torre definida por um polinômio irredutível sobre K.

    O polinômio é normalizado por inversão x = 1/y, escala x = π_K^k·y,
    potência y = x^u/π_K^k (raízes de valuação a/m, mdc(a, m) = 1) e
    translação pela raiz residual até virar Eisenstein ou ter redução
    irredutível (caso não ramificado). As substituições ficam registradas.

    Raises:
        ReduciblePolynomial: polígono de Newton com vários segmentos ou
            redução com fatores coprimos
        UnsupportedPresentation: irredutível sem modelo integral suportado
    """
    if base.f != 1:
        raise InvalidField("Torres exigem corpo base com corpo residual primo")
    text = poly if isinstance(poly, str) else ""
    if isinstance(poly, str):
        poly = parse_polynomial(base, poly)
    if poly.degree < 1:
        raise InvalidDegree("Polinômio de grau menor que 1")
    work = poly.monic()
    steps: List[Tuple[str, Any]] = []
    pi_k = base.uniformizer()
    for _ in range(4 * poly.degree + 8):
        if work.degree == 1:
            tower = ExtensionTower(base, _trivial_modulus(), [-pi_k, base.one()])
            root = embed_base(tower, -work.coeffs[0])
            return _finish(tower, poly, steps, root, text)
        if work.coeffs[0].is_zero():
            raise ReduciblePolynomial("Raiz nula: x divide o polinômio")
        segments = newton_polygon(work)
        if len(segments) > 1:
            raise ReduciblePolynomial(f"Polígono de Newton com {len(segments)} segmentos")
        root_valuation = -segments[0][2]
        m = work.degree
        if root_valuation < 0:
            work = work.reverse().monic()
            steps.append(("reverse", None))
            continue
        if root_valuation >= 1:
            k = int(root_valuation)
            work = work.scale_variable(pi_k**k).monic()
            steps.append(("scale", k))
            continue
        if root_valuation > 0:
            if root_valuation != Fraction(1, m):
                if root_valuation.denominator != m:
                    raise UnsupportedPresentation(
                        f"Raízes de valuação {root_valuation}: modelo de Eisenstein não alcançado"
                    )
                work, step = _power_substitution(base, work, root_valuation.numerator)
                steps.append(step)
                continue
            tower = ExtensionTower(base, _trivial_modulus(), work.coeffs)
            return _finish(tower, poly, steps, tower.uniformizer(), text)
        residual = _residual_ints(work)
        _, factors = gf_factor([int(c) for c in reversed(residual)], base.p, ZZ)
        if len(factors) > 1:
            raise ReduciblePolynomial("Redução residual com fatores coprimos")
        factor, multiplicity = factors[0]
        if multiplicity == 1:
            unram = [_prime_scalar(base, c) for c in work.coeffs]
            tower = ExtensionTower(
                base, residual, [-pi_k, base.one()], unram_lift=unram
            )
            return _finish(tower, poly, steps, tower.residue_generator(), text)
        if len(factor) != 2:
            raise UnsupportedPresentation(
                "Redução é potência de irredutível de grau > 1: use unramified_degree + eisenstein"
            )
        root = int(-factor[1] * pow(int(factor[0]), -1, base.p)) % base.p
        work = work.taylor_shift(base.from_int(root))
        steps.append(("shift", root))
    raise UnsupportedPresentation("A normalização do polinômio não convergiu")


def _mul_by_x(vector: List[LocalElement], poly: Polynomial) -> List[LocalElement]:
    """x·v em K[x]/(poly), poly mônico, v nas coordenadas 1, x, ..., x^{m-1}."""
    top = vector[-1]
    shifted = [poly.field.zero()] + vector[:-1]
    return [c - top * a for c, a in zip(shifted, poly.coeffs[:-1])]


def _power_substitution(
    base: BaseField, work: Polynomial, a: int
) -> Tuple[Polynomial, Tuple[str, Any]]:
    """
    Raízes de valuação a/m com mdc(a, m) = 1: y = x^u/π_K^k com u·a = 1 + k·m.

    y tem valuação 1/m; seu polinômio mínimo é o característico da
    multiplicação por y em K[x]/(work). A raiz x volta como Σ c_j·y^j.
    """
    m = work.degree
    u = pow(a, -1, m)
    k = (u * a - 1) // m
    power = [base.one()] + [base.zero() for _ in range(m - 1)]
    for _ in range(u):
        power = _mul_by_x(power, work)
    scale = base.pi_power(-k)
    y = [c * scale for c in power]

    columns = []
    column = y
    for _ in range(m):
        columns.append(column)
        column = _mul_by_x(column, work)
    # coluna i = y·x^i
    rows = [[columns[j][i] for j in range(m)] for i in range(m)]
    minimal = Polynomial(base, charpoly(rows, base))

    powers = [[base.one()] + [base.zero() for _ in range(m - 1)]]
    for _ in range(m - 1):
        powers.append([sum((r * c for r, c in zip(row, powers[-1])), base.zero()) for row in rows])
    system = [[powers[j][i] for j in range(m)] for i in range(m)]
    target = [base.zero() for _ in range(m)]
    target[1] = base.one()
    coefficients = solve(system, target, base)
    logger.debug(f"Substituição y = x^{u}/π_K^{k} para raízes de valuação {a}/{m}")
    return minimal.monic(), ("power", (u, k, coefficients))


def _evaluate(tower: ExtensionTower, coefficients: Sequence[LocalElement], z: LocalElement) -> LocalElement:
    """Σ c_j·z^j com c_j ∈ K."""
    total = tower.zero()
    for c in reversed(coefficients):
        total = total * z + embed_base(tower, c)
    return total


def _finish(
    tower: ExtensionTower,
    original: Polynomial,
    steps: Sequence[Tuple[str, Any]],
    root: LocalElement,
    text: str,
) -> ExtensionTower:
    """Reconstrói a raiz do polinômio original e registra as substituições."""
    descriptions = []
    for kind, value in reversed(steps):
        if kind == "shift":
            root = root + tower.from_int(value)
        elif kind == "scale":
            root = root.scale_pi_k(value)
        elif kind == "power":
            root = _evaluate(tower, value[2], root)
        else:
            root = root.inverse()
    for kind, value in steps:
        if kind == "shift":
            descriptions.append(f"x -> x + {value}")
        elif kind == "scale":
            descriptions.append(f"x -> pi_K^{value}*x")
        elif kind == "power":
            descriptions.append(f"x^{value[0]}/pi_K^{value[1]} -> x")
        else:
            descriptions.append("x -> 1/x")
    tower.substitutions = descriptions
    tower.presentation = text
    tower.input_root = root
    image = original.map_coefficients(tower, lambda c: embed_base(tower, c))(root)
    if not image.is_zero():
        raise TheoremViolation(
            f"Raiz reconstruída não anula o polinômio de entrada: v_L = {image.valuation()}"
        )
    logger.info(
        f"Torre construída: e={tower.e}, f={tower.f}, substituições={descriptions or 'nenhuma'}"
    )
    return tower


def ext_from_layers(base: BaseField, unramified_degree: int, eisenstein: Polynomial | str) -> ExtensionTower:
    """Torre dada diretamente por grau não ramificado e polinômio de Eisenstein sobre K."""
    if unramified_degree < 1:
        raise InvalidDegree("Grau não ramificado deve ser positivo")
    text = eisenstein if isinstance(eisenstein, str) else ""
    if isinstance(eisenstein, str):
        eisenstein = parse_polynomial(base, eisenstein)
    eisenstein = eisenstein.monic()
    tower = ExtensionTower(
        base,
        find_irreducible(base.p, unramified_degree),
        eisenstein.coeffs,
        presentation=text,
    )
    tower.input_root = tower.uniformizer()
    logger.info(f"Torre em camadas: e={tower.e}, f={tower.f}")
    return tower


def ext_unramified(base: BaseField, d: int) -> ExtensionTower:
    """A extensão não ramificada de grau d (módulo residual canônico)."""
    if d < 1:
        raise InvalidDegree("Grau deve ser positivo")
    tower = ExtensionTower(base, find_irreducible(base.p, d), [-base.uniformizer(), base.one()])
    tower.input_root = tower.residue_generator()
    return tower


def ext_compositum(L: ExtensionTower, Kprime: ExtensionTower) -> ExtensionTower:
    """
    L' = L·K' com K'/K não ramificada: corpo residual de grau lcm(f_L, d) e o
    mesmo polinômio de Eisenstein de L.
    """
    if Kprime.e != 1:
        raise InvalidDegree("K' deve ser não ramificada")
    f_new = L.f * Kprime.f // gcd(L.f, Kprime.f)
    if f_new == L.f:
        return L
    tower = ExtensionTower(L.base, find_irreducible(L.p, f_new), L.eisenstein)
    tower.input_root = tower.uniformizer()
    logger.info(f"Composto construído: grau {tower.degree} (e={tower.e}, f={tower.f})")
    return tower


def ext_working_precision(L: ExtensionTower, n: int, margin: int = 16) -> int:
    """
    Dígitos π_K-ádicos para N_L = 2·v_L(disc) + e·(|n| + 2) + margem.

    v_L(disc) = e·f·v_L(E'(π_L)), exata a partir dos coeficientes de Eisenstein.
    """
    disc = L.e * L.f * L.local_different()
    target = 2 * disc + L.e * (abs(n) + 2) + margin
    return ceil(target / L.e)


# Aplicações lineares dadas por imagens da base


def _absolute(x: LocalElement) -> Tuple[Coeffs, int]:
    """Coordenadas inteiras (shift absorvido) e precisão absoluta em dígitos."""
    if x.shift < 0:
        raise PrecisionExhausted(f"Imagem não inteira: {x}")
    return x.field.order.shift_up(x.coeffs, x.shift), x.shift + x.rel


class BasisMap:
    """Aplicação O_K-linear determinada pelas imagens da base padrão."""

    def __init__(self, source: LocalField, target: LocalField, images: Sequence[LocalElement]):
        self.source = source
        self.target = target
        absolute = [_absolute(x) for x in images]
        self.images = tuple(coeffs for coeffs, _ in absolute)
        self.image_rel = min(rel for _, rel in absolute)

    def apply(self, x: LocalElement) -> LocalElement:
        if x.is_zero():
            return self.target.zero(x.shift)
        coeffs = self.target.prime.linear_combination(x.coeffs, self.images)
        return LocalElement(self.target, coeffs, x.shift, min(x.rel, self.image_rel))

    __call__ = apply


def _basis_images(field: LocalField, image_y: LocalElement, image_pi: LocalElement, f_source: int, e_source: int) -> List[LocalElement]:
    y_powers = [field.one()]
    for _ in range(f_source - 1):
        y_powers.append(y_powers[-1] * image_y)
    out = []
    pi_power = field.one()
    for _ in range(e_source):
        out.extend(pi_power * yp for yp in y_powers)
        pi_power = pi_power * image_pi
    return out


class Automorphism(BasisMap):
    """σ = (k, ρ): y ↦ raiz de ĝ com resíduo ȳ^{p^k}, π_L ↦ ρ."""

    def __init__(
        self,
        tower: ExtensionTower,
        frobenius_power: int,
        residue_path: Tuple[int, ...],
        image_y: LocalElement,
        image_pi: LocalElement,
    ):
        self.tower = tower
        self.frobenius_power = frobenius_power
        self.residue_path = residue_path
        self.image_y = image_y
        self.image_pi = image_pi
        self.index = -1
        images = _basis_images(tower, image_y, image_pi, tower.f, tower.e)
        super().__init__(tower, tower, images)

    @property
    def key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.frobenius_power, self.residue_path)

    @property
    def image_alpha(self) -> LocalElement:
        return self.apply(self.tower.alpha)

    def __repr__(self) -> str:
        return f"Automorphism(#{self.index}, k={self.frobenius_power}, path={self.residue_path})"


def _closest(candidates: Sequence[LocalElement], value: LocalElement) -> int:
    """Índice do candidato mais próximo; exige separação estrita."""
    scores = []
    for idx, candidate in enumerate(candidates):
        diff = candidate - value
        scores.append((diff.abs_precision if diff.is_zero() else diff.valuation(), idx))
    scores.sort(reverse=True)
    if len(scores) > 1 and scores[0][0] == scores[1][0]:
        raise PrecisionExhausted("Raízes não separadas na precisão de trabalho")
    return scores[0][1]


def ext_automorphisms(L: ExtensionTower) -> List[Automorphism]:
    """
    Enumera Gal(L/K): potências de Frobenius × raízes de Eisenstein em L.

    Returns:
        Lista na ordem canônica (potência de Frobenius, caminho residual)

    Raises:
        NotGalois: o polinômio de Eisenstein não tem e raízes em L
    """
    y_images: List[LocalElement] = []
    if L.f == 1:
        y_images.append(L.residue_generator())
    else:
        g_hat = L.unramified_polynomial()
        ybar = L.residue_field.gen
        for k in range(L.f):
            target = ybar ** (L.p**k)
            y_images.append(lf_hensel_root(g_hat, L.lift_residue(target)))
    if L.e == 1:
        pi_roots = [(L.uniformizer(), ())]
    else:
        pi_roots = integral_roots(L.eisenstein_polynomial())
    if len(pi_roots) != L.e:
        raise NotGalois(
            f"Polinômio de Eisenstein com {len(pi_roots)} de {L.e} raízes em L"
        )
    auts = [
        Automorphism(L, k, path, y_images[k], rho)
        for k in range(L.f)
        for rho, path in pi_roots
    ]
    auts.sort(key=lambda a: a.key)
    for idx, aut in enumerate(auts):
        aut.index = idx
    logger.info(f"{len(auts)} automorfismos encontrados (grau {L.degree})")
    return auts


def identity_index(L: ExtensionTower, auts: Sequence[Automorphism]) -> int:
    candidates = [a for a in auts if a.frobenius_power == 0]
    return candidates[_closest([a.image_pi for a in candidates], L.uniformizer())].index


def ext_group(L: ExtensionTower, auts: Sequence[Automorphism]) -> FiniteGroup:
    """Tábua de composição: table[a][b] = índice de σ_a∘σ_b."""
    roots = [a.image_pi for a in auts if a.frobenius_power == 0]
    root_paths = [a.residue_path for a in auts if a.frobenius_power == 0]
    by_key = {a.key: a.index for a in auts}
    table = []
    for a in auts:
        row = []
        for b in auts:
            k = (a.frobenius_power + b.frobenius_power) % L.f
            rho = a.apply(b.image_pi)
            path = root_paths[_closest(roots, rho)]
            row.append(by_key[(k, path)])
        table.append(row)
    group = FiniteGroup(table, identity_index(L, auts))
    if not group.check_axioms():
        raise TheoremViolation("Tábua de composição dos automorfismos não define um grupo")
    return group


# Ramificação


@dataclass
class RamificationData:
    """Filtração inferior G_{-1} ⊇ G_0 ⊇ G_1 ⊇ ... até o grupo trivial."""

    groups: List[List[int]]
    lower_numbers: Dict[int, Optional[int]]
    e: int
    f: int
    wild_order: int
    weakly_ramified: bool
    different_valuation: int
    different_check: int
    different_check_method: str

    def group(self, i: int) -> List[int]:
        """G_i para i ≥ -1 (trivial além da filtração calculada)."""
        position = i + 1
        if position < len(self.groups):
            return self.groups[position]
        return self.groups[-1]

    @property
    def inertia(self) -> List[int]:
        return self.group(0)

    @property
    def wild_inertia(self) -> List[int]:
        return self.group(1)

    @property
    def orders(self) -> List[int]:
        return [len(g) for g in self.groups]


def ext_ramification(L: ExtensionTower, auts: Sequence[Automorphism]) -> RamificationData:
    """
    i_G(σ) = v_L(σ(α) - α) e G_i = {σ : i_G(σ) ≥ i + 1}.

    A diferente pela fórmula de Hilbert é conferida com v_L(g'(α)) (ou
    v_L(E'(π_L)) acima de CHARPOLY_DEGREE_LIMIT).
    """
    alpha = L.alpha
    identity = identity_index(L, auts)
    lower: Dict[int, Optional[int]] = {}
    for aut in auts:
        if aut.index == identity:
            lower[aut.index] = None
            continue
        diff = aut.apply(alpha) - alpha
        if diff.is_zero():
            raise PrecisionExhausted(f"σ(α) - α sem dígito certificado para {aut}")
        lower[aut.index] = diff.valuation()
    groups = [[a.index for a in auts]]
    level = 0
    while len(groups[-1]) > 1:
        members = [idx for idx, v in lower.items() if v is None or v >= level + 1]
        groups.append(sorted(members))
        level += 1
    hilbert = sum(len(g) - 1 for g in groups[1:])
    if L.degree <= CHARPOLY_DEGREE_LIMIT:
        g = L.alpha_minimal_polynomial()
        derivative = g.map_coefficients(L, lambda c: embed_base(L, c)).derivative()
        check, method = derivative(alpha).valuation(), "g'(alpha)"
    else:
        check, method = L.local_different(), "E'(pi)"
    if check != hilbert:
        raise TheoremViolation(
            f"Fórmula de Hilbert {hilbert} difere de v_L({method}) = {check}"
        )
    inertia = groups[1] if len(groups) > 1 else groups[0]
    wild = groups[2] if len(groups) > 2 else [identity]
    second = groups[3] if len(groups) > 3 else [identity]
    data = RamificationData(
        groups=groups,
        lower_numbers=lower,
        e=len(inertia),
        f=len(auts) // len(inertia),
        wild_order=len(wild),
        weakly_ramified=len(second) == 1,
        different_valuation=hilbert,
        different_check=check,
        different_check_method=method,
    )
    logger.info(
        f"Filtração |G_i| = {data.orders}, diferente {hilbert}, "
        f"fracamente ramificada: {data.weakly_ramified}"
    )
    return data


# Traços, normas e subcorpos fixos


def _members(auts: Sequence[Automorphism], subgroup: Optional[Sequence[int]]) -> List[Automorphism]:
    if subgroup is None:
        return list(auts)
    wanted = set(subgroup)
    return [a for a in auts if a.index in wanted]


def ext_trace(x: LocalElement, auts: Sequence[Automorphism], subgroup: Optional[Sequence[int]] = None) -> LocalElement:
    """Σ_{σ∈H} σ(x)."""
    members = _members(auts, subgroup)
    total = members[0].apply(x)
    for aut in members[1:]:
        total = total + aut.apply(x)
    return total


def ext_norm(x: LocalElement, auts: Sequence[Automorphism], subgroup: Optional[Sequence[int]] = None) -> LocalElement:
    """Π_{σ∈H} σ(x)."""
    members = _members(auts, subgroup)
    total = members[0].apply(x)
    for aut in members[1:]:
        total = total * aut.apply(x)
    return total


def is_fixed(x: LocalElement, auts: Sequence[Automorphism], subgroup: Optional[Sequence[int]] = None) -> bool:
    return all((a.apply(x) - x).is_zero() for a in _members(auts, subgroup))


@dataclass
class FixedUniformizer:
    """Uniformizador de L^H com a receita usada para obtê-lo."""

    element: LocalElement
    method: str
    exponent: int = 0
    residue_power: int = 0


def ext_fixed_field_uniformizer(
    L: ExtensionTower,
    auts: Sequence[Automorphism],
    subgroup: Sequence[int],
    ramification: RamificationData,
) -> FixedUniformizer:
    """
    Uniformizador de L^H: norma de π_L quando H ⊆ G_0, senão varredura de
    Tr_H(π_L^j·y^i) com j a partir de e_H - d_H até atingir v_L = e_H.
    """
    inertia = set(ramification.inertia)
    e_h = len([s for s in subgroup if s in inertia])
    if set(subgroup) <= inertia:
        element = ext_norm(L.uniformizer(), auts, subgroup)
        return FixedUniformizer(element, "norm")
    local_different = sum(
        ramification.lower_numbers[s] or 0 for s in subgroup if s in inertia
    )
    start = e_h - local_different
    y = L.residue_generator() if L.f > 1 else L.one()
    for j in range(start, start + L.e + 1):
        pi_power = L.pi_power(j)
        for i in range(L.f):
            candidate = ext_trace(pi_power * y**i, auts, subgroup)
            if not candidate.is_zero() and candidate.valuation() == e_h:
                logger.debug(f"Uniformizador de L^H: Tr_H(pi^{j}*w^{i})")
                return FixedUniformizer(candidate, "trace", j, i)
    raise PrecisionExhausted("Nenhum traço atingiu a valuação de um uniformizador de L^H")


def teichmuller_lift(field: LocalField, residue: int) -> LocalElement:
    """Raiz (p-1)-ésima da unidade com resíduo dado (levantamento de Teichmüller)."""
    if residue % field.p == 0:
        return field.zero()
    g = Polynomial(field, [-field.one()] + [field.zero()] * (field.p - 2) + [field.one()])
    return lf_hensel_root(g, field.from_int(residue))


def ext_tame_kummer_uniformizer(
    L: ExtensionTower,
    uniformizer: LocalElement,
    c: int,
    pi_k: Optional[LocalElement] = None,
) -> LocalElement:
    """
    π_S = π·w com π_S^c = u_0·π_K para uma unidade u_0 de O_K.

    Args:
        L: Torre que contém o subcorpo S
        uniformizer: Qualquer uniformizador π de S (como elemento de L)
        c: Grau [S:K], primo com p
        pi_k: Uniformizador de K (padrão: o canônico)

    Raises:
        WildDegree: p divide c
    """
    if c % L.p == 0:
        raise WildDegree(f"Grau {c} divisível por p = {L.p}")
    if c == 1:
        return pi_k if pi_k is not None else L.base_uniformizer()
    pi_k = pi_k if pi_k is not None else L.base_uniformizer()
    u = uniformizer**c / pi_k
    residue = u.residue()
    if any(residue.coeffs[1:]):
        raise InvalidDegree("S/K não é totalmente ramificada: resíduo fora de F_p")
    coords = L.coordinate_field
    u0 = embed_base(L, teichmuller_lift(coords, residue.coeffs[0]))
    z = u0 / u
    equation = Polynomial(L, [-z] + [L.zero()] * (c - 1) + [L.one()])
    w = lf_hensel_root(equation, L.one())
    result = uniformizer * w
    logger.debug(f"Uniformizador de Kummer de grau {c} obtido")
    return result


def ext_trace_profile(
    L: ExtensionTower, auts: Sequence[Automorphism], lo: int, hi: int
) -> Dict[int, int]:
    """i ↦ v_K(Tr_G(𝔓_L^i)) calculado numa base de 𝔓_L^i."""
    basis = L.basis()
    profile: Dict[int, int] = {}
    for i in range(lo, hi + 1):
        scale = L.pi_power(i)
        values = []
        for b in basis:
            trace = ext_trace(scale * b, auts)
            if not trace.is_zero():
                values.append(trace.valuation())
        if not values:
            raise PrecisionExhausted(f"Traços de 𝔓_L^{i} indistinguíveis de zero")
        profile[i] = min(values) // L.e
    return profile


# Mergulho L → L'


class TowerEmbedding(BasisMap):
    """Inclusão L ⊆ L' entre torres com a mesma camada de Eisenstein."""

    def __init__(self, source: ExtensionTower, target: ExtensionTower):
        if target.f % source.f or source.eisenstein_key() != target.eisenstein_key():
            raise InvalidDegree("Torres incompatíveis para mergulho")
        if source.f == 1:
            image_y = target.zero()
        else:
            residue_root = ff_embedding_root(source.residue_field, target.residue_field)
            g_hat = poly_from_prime_coeffs(target, source.order.unram_modulus)
            image_y = lf_hensel_root(g_hat, target.lift_residue(residue_root))
        self.image_y = image_y
        images = _basis_images(target, image_y, target.uniformizer(), source.f, source.e)
        super().__init__(source, target, images)
        self._rows = self._pivot_rows()

    def _pivot_rows(self) -> List[int]:
        """f linhas da camada não ramificada com menor residual invertível."""
        source, target = self.source, self.target
        y_blocks = [self.images[i][: target.f] for i in range(source.f)]
        chosen: List[int] = []
        for r in range(target.f):
            trial = chosen + [r]
            rows = [[target.prime.residue(y_blocks[i][row]) for i in range(source.f)] for row in trial]
            if residue_rank(rows, target.p) == len(trial):
                chosen = trial
            if len(chosen) == source.f:
                return chosen
        raise TheoremViolation("Potências de y sem posto completo em L'")

    def restrict(self, z: LocalElement) -> LocalElement:
        """
        Coordenadas em L de um elemento de L' que pertence a L.

        Raises:
            TheoremViolation: z não pertence à imagem de L
        """
        source, target = self.source, self.target
        coords = target.coordinates(z)
        base = target.coordinate_field
        y_coords = [target.coordinates(target.element(self.images[i])) for i in range(source.f)]
        matrix = [[y_coords[i][row] for i in range(source.f)] for row in self._rows]
        result: List[LocalElement] = []
        for j in range(source.e):
            rhs = [coords[j * target.f + row] for row in self._rows]
            result.extend(solve(matrix, rhs, base))
        x = source.from_coordinates(result)
        if not (self.apply(x) - z).is_zero():
            raise TheoremViolation("Elemento de L' fora de L")
        return x


def subgroup_fixing(Lp: ExtensionTower, auts: Sequence[Automorphism], L: ExtensionTower) -> List[int]:
    """Gal(L'/L): automorfismos com ρ = π_L e potência de Frobenius múltipla de f_L."""
    candidates = [a for a in auts if a.frobenius_power % L.f == 0]
    identity_path = auts[identity_index(Lp, auts)].residue_path
    return [a.index for a in candidates if a.residue_path == identity_path]
