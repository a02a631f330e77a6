"""Configurações compartilhadas para testes."""

import os
from dataclasses import dataclass
from typing import List

import pytest

from src.config import get_settings
from src.models.schemas import JobSpec
from src.tools.extension import (
    Automorphism,
    ExtensionTower,
    RamificationData,
    ext_automorphisms,
    ext_create,
    ext_group,
    ext_ramification,
    ext_unramified,
)
from src.tools.group_theory import FiniteGroup
from src.tools.local_field import BaseField

# Polinômios dos exemplos de referência.
FLAGSHIP = "x^6 + 6*x^2 + 6"
CYCLOTOMIC = "x^3 - 3*x + 1"
ARTIN_SCHREIER = "x^2 - x - t^-1"


@dataclass
class GaloisExample:
    """Torre com seus automorfismos, tábua de grupo e filtração."""

    tower: ExtensionTower
    auts: List[Automorphism]
    group: FiniteGroup
    ramification: RamificationData


def galois_example(tower: ExtensionTower) -> GaloisExample:
    auts = ext_automorphisms(tower)
    return GaloisExample(tower, auts, ext_group(tower, auts), ext_ramification(tower, auts))


@pytest.fixture(scope="session")
def q3() -> BaseField:
    """Q_3 com 30 dígitos."""
    return BaseField("padic", 3, 1, 30)


@pytest.fixture(scope="session")
def q5() -> BaseField:
    return BaseField("padic", 5, 1, 30)


@pytest.fixture(scope="session")
def f2t() -> BaseField:
    """F_2((t)) com 30 dígitos."""
    return BaseField("laurent", 2, 1, 30)


@pytest.fixture(scope="session")
def flagship(q3) -> GaloisExample:
    """Q_3[x]/(x^6 + 6x^2 + 6): S_3, total, selvagem e fracamente ramificada."""
    return galois_example(ext_create(q3, FLAGSHIP))


@pytest.fixture(scope="session")
def cyclotomic(q3) -> GaloisExample:
    """Subcorpo cúbico de Q_3(ζ_9)."""
    return galois_example(ext_create(q3, CYCLOTOMIC))


@pytest.fixture(scope="session")
def artin_schreier(f2t) -> GaloisExample:
    """x^2 - x = t^{-1} sobre F_2((t))."""
    return galois_example(ext_create(f2t, ARTIN_SCHREIER))


@pytest.fixture(scope="session")
def tame_quadratic(q5) -> GaloisExample:
    return galois_example(ext_create(q5, "x^2 - 5"))


@pytest.fixture(scope="session")
def tame_quartic(q5) -> GaloisExample:
    """Q_5(5^{1/4}), cíclica de grau 4 (i ∈ Q_5)."""
    return galois_example(ext_create(q5, "x^4 - 5"))


@pytest.fixture(scope="session")
def unramified_quadratic(q3) -> GaloisExample:
    return galois_example(ext_unramified(q3, 2))


@pytest.fixture
def flagship_spec() -> JobSpec:
    """Job de análise do exemplo principal."""
    return JobSpec(kind="padic", p=3, polynomial=FLAGSHIP, command="analyze")


@pytest.fixture
def cyclotomic_spec() -> JobSpec:
    return JobSpec(kind="padic", p=3, polynomial=CYCLOTOMIC, command="construct", n=1)


@pytest.fixture(scope="session", autouse=True)
def setup_test_environment(tmp_path_factory):
    """Configuração do ambiente de teste."""
    logs = tmp_path_factory.mktemp("logs")
    os.environ["WEAKRAM_ENVIRONMENT"] = "test"
    os.environ["WEAKRAM_LOG_LEVEL"] = "DEBUG"
    os.environ["WEAKRAM_LOG_FILE"] = str(logs / "weakram.log")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
