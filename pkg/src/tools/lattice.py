"""
Álgebra linear sobre O_K para reticulados de posto completo.

As matrizes são listas de linhas de ``LocalElement`` de um mesmo corpo K. Toda
eliminação escolhe o pivô de menor valuação, de modo que os fatores usados são
inteiros e o O_K-span das linhas é preservado.
"""

from typing import List, Sequence

from loguru import logger
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from ..errors import DimensionMismatch, SingularBasis
from .local_field import LocalElement, LocalField

Matrix = List[List[LocalElement]]


def _copy(rows: Sequence[Sequence[LocalElement]]) -> Matrix:
    return [list(row) for row in rows]


def _pivot(rows: Matrix, candidates: Sequence[int], columns: Sequence[int]):  # type: ignore[no-untyped-def]
    """Posição (linha, coluna) da entrada não nula de menor valuação."""
    best = None
    for r in candidates:
        for c in columns:
            entry = rows[r][c]
            if entry.is_zero():
                continue
            v = entry.valuation()
            if best is None or v < best[0]:
                best = (v, r, c)
    return best


def det_valuation(rows: Sequence[Sequence[LocalElement]]) -> int:
    """
    v_K(det) por eliminação com pivotamento total.

    Raises:
        SingularBasis: alguma etapa fica sem entrada certificadamente não nula
    """
    matrix = _copy(rows)
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise DimensionMismatch("Matriz não quadrada")
    free_rows = list(range(size))
    free_cols = list(range(size))
    total = 0
    for _ in range(size):
        found = _pivot(matrix, free_rows, free_cols)
        if found is None:
            raise SingularBasis("Determinante nulo na precisão de trabalho")
        v, r, c = found
        total += v
        free_rows.remove(r)
        free_cols.remove(c)
        inverse = matrix[r][c].inverse()
        for other in free_rows:
            factor = matrix[other][c] * inverse
            if factor.is_zero():
                continue
            matrix[other] = [a - factor * b for a, b in zip(matrix[other], matrix[r])]
    return total


def residue_det(rows: Sequence[Sequence[int]], p: int) -> int:
    """Determinante em F_p via ``DomainMatrix``."""
    domain = GF(p)
    matrix = DomainMatrix([[domain(v) for v in row] for row in rows], (len(rows), len(rows[0])), domain)
    return int(domain.to_int(matrix.det())) % p


def residue_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    if not rows:
        return 0
    domain = GF(p)
    matrix = DomainMatrix([[domain(v) for v in row] for row in rows], (len(rows), len(rows[0])), domain)
    return int(matrix.rank())


def row_basis(rows: Sequence[Sequence[LocalElement]], width: int) -> Matrix:
    """
    Base escalonada do O_K-span de um conjunto de vetores (posto completo).

    Raises:
        SingularBasis: o span não tem posto ``width``
    """
    matrix = _copy(rows)
    remaining = [r for r in range(len(matrix)) if not all(e.is_zero() for e in matrix[r])]
    basis: Matrix = []
    for column in range(width):
        found = _pivot(matrix, remaining, [column])
        if found is None:
            raise SingularBasis(f"Span sem posto completo (coluna {column})")
        _, r, _ = found
        remaining.remove(r)
        pivot_row = matrix[r]
        inverse = pivot_row[column].inverse()
        for other in remaining:
            factor = matrix[other][column] * inverse
            if factor.is_zero():
                continue
            matrix[other] = [a - factor * b for a, b in zip(matrix[other], pivot_row)]
        basis.append(pivot_row)
    logger.debug(f"Base escalonada com {len(basis)} vetores a partir de {len(rows)}")
    return basis


def inverse(rows: Sequence[Sequence[LocalElement]], field: LocalField) -> Matrix:
    """Inversa por Gauss-Jordan com pivô de menor valuação na coluna."""
    size = len(rows)
    matrix = [
        list(row) + [field.one() if i == j else field.zero() for j in range(size)]
        for i, row in enumerate(rows)
    ]
    for column in range(size):
        found = _pivot(matrix, list(range(column, size)), [column])
        if found is None:
            raise SingularBasis("Matriz singular na precisão de trabalho")
        _, r, _ = found
        matrix[column], matrix[r] = matrix[r], matrix[column]
        scale = matrix[column][column].inverse()
        matrix[column] = [scale * entry for entry in matrix[column]]
        for other in range(size):
            if other == column:
                continue
            factor = matrix[other][column]
            if factor.is_zero():
                continue
            matrix[other] = [a - factor * b for a, b in zip(matrix[other], matrix[column])]
    return [row[size:] for row in matrix]


def solve(rows: Sequence[Sequence[LocalElement]], rhs: Sequence[LocalElement], field: LocalField) -> List[LocalElement]:
    """Resolve A·x = b para A quadrada invertível."""
    inv = inverse(rows, field)
    return [_dot(row, rhs, field) for row in inv]


def _dot(left: Sequence[LocalElement], right: Sequence[LocalElement], field: LocalField) -> LocalElement:
    acc = field.zero()
    for a, b in zip(left, right):
        acc = acc + a * b
    return acc


def charpoly(rows: Sequence[Sequence[LocalElement]], field: LocalField) -> List[LocalElement]:
    """
    Polinômio característico det(x·I - A) pelo algoritmo de Berkowitz.

    Sem divisões; devolve coeficientes do grau mais baixo para o mais alto.
    """
    size = len(rows)
    poly: List[LocalElement] = [field.one()]
    for k in range(size):
        a = rows[k][k]
        row = rows[k][:k]
        column = [rows[i][k] for i in range(k)]
        toeplitz = [field.one(), -a]
        vector = column
        for _ in range(k):
            toeplitz.append(-_dot(row, vector, field))
            vector = [_dot(rows[i][:k], vector, field) for i in range(k)]
        poly = [
            sum((toeplitz[i - j] * poly[j] for j in range(min(i, k) + 1) if i - j < len(toeplitz)), field.zero())
            for i in range(k + 2)
        ]
    return list(reversed(poly))
