"""Hierarquia de exceções do weakram."""

from typing import ClassVar


class WeakramError(Exception):
    """Classe base para todos os erros do sistema."""

    exit_code: ClassVar[int] = 1


class HypothesisUnmet(WeakramError):
    """A matemática diz "não": hipóteses da construção não satisfeitas."""

    exit_code: ClassVar[int] = 2


# Aritmética


class DivisionByZero(WeakramError, ZeroDivisionError):
    """Divisão por elemento nulo (ou indistinguível de zero na precisão)."""


class FieldMismatch(WeakramError, TypeError):
    """Operação entre elementos de corpos diferentes."""


class InvalidDegree(WeakramError, ValueError):
    """Grau incompatível com o corpo (ex.: grau base que não divide f)."""


class InvalidField(WeakramError, ValueError):
    """Parâmetros de corpo inválidos (ex.: característica não prima)."""


class UnknownOperation(WeakramError, ValueError):
    """Operação aritmética fora de add | sub | mul | div."""


class PrecisionExhausted(WeakramError):
    """A precisão de trabalho não certifica nenhum dígito do resultado."""

    exit_code: ClassVar[int] = 4


class HenselFailure(WeakramError):
    """Hipótese de Hensel v(g(x0)) > 2·v(g'(x0)) não satisfeita."""


# Extensões


class ReduciblePolynomial(HypothesisUnmet):
    """Polinômio de definição redutível sobre o corpo base."""


class UnsupportedPresentation(HypothesisUnmet):
    """Polinômio irredutível sem modelo integral Eisenstein/não ramificado."""


class NotGalois(HypothesisUnmet):
    """A extensão não é de Galois (faltam raízes em L)."""


class WildDegree(HypothesisUnmet):
    """Grau divisível por p onde se exige ramificação mansa."""


class NotWeaklyRamified(HypothesisUnmet):
    """G_2 não é trivial."""


class NotWildlyRamified(HypothesisUnmet):
    """G_1 trivial onde se exige ramificação selvagem."""


class NotTotallyRamified(HypothesisUnmet):
    """G_0 diferente de G."""


class BadExponent(HypothesisUnmet):
    """Expoente n fora da classe exigida (n ≡ 1 mod |G_1|)."""


# Grupos


class NotNormalSylow(WeakramError):
    """Elementos de ordem potência de p não formam subgrupo."""


class NoComplement(WeakramError):
    """Nenhum complemento encontrado (hipótese de Schur-Zassenhaus violada)."""


class NotDoublySplit(HypothesisUnmet):
    """Alguma decomposição semidireta da estrutura duplamente cindida falhou."""


# Módulos sobre o anel de grupo


class NotInIdeal(HypothesisUnmet):
    """Elemento fora do ideal 𝔓_L^n."""


class DimensionMismatch(WeakramError, ValueError):
    """Dimensão do módulo diferente da ordem do grupo."""


class SingularBasis(WeakramError, ValueError):
    """Base com determinante nulo na precisão de trabalho."""


class TheoremViolation(WeakramError):
    """Um teorema verificado falhou: indica erro de implementação."""


# Entrada


class ParseError(WeakramError, ValueError):
    """Arquivo de tarefa ou expressão malformada."""

    exit_code: ClassVar[int] = 3
