"""Testes da interface de linha de comando."""

import json
import shutil
from pathlib import Path

import pytest

from src.main import build_parser, main

JOBS = Path(__file__).resolve().parent.parent / "data" / "jobs"

CYCLOTOMIC_JOB = """
[base]
kind = padic
p = 3

[extension]
polynomial = x^3 - 3*x + 1

[task]
n = {n}
{extra}
"""


@pytest.fixture
def job(tmp_path):
    """Grava um job do subcorpo cúbico de Q_3(ζ_9) e devolve o caminho."""

    def write(n: int = 1, extra: str = "", name: str = "cyclotomic.job") -> Path:
        path = tmp_path / name
        path.write_text(CYCLOTOMIC_JOB.format(n=n, extra=extra), encoding="utf-8")
        return path

    return write


class TestParser:
    def test_requires_source(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["construct"])

    def test_exclusive_sources(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["construct", "--spec", "a.job", "--batch", "jobs"])

    def test_unknown_command(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["factor", "--spec", "a.job"])


class TestSingleJob:
    """Testes de execução de um único job."""

    def test_analyze_to_stdout(self, job, capsys):
        assert main(["analyze", "--spec", str(job())]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["verdict"] == "analyzed"
        assert payload["extension"]["filtration_orders"] == [3, 3, 3, 1]
        assert payload["group"]["identification"] == "C_3"

    def test_construct_to_file(self, job, tmp_path):
        out = tmp_path / "out" / "cert.json"
        assert main(["construct", "--spec", str(job(n=4)), "--out", str(out)]) == 0
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert payload["schema"] == 1
        assert payload["path"] == "tot_weak_p"
        assert payload["freeness"]["n"] == 4
        assert payload["verdict"] == "free"

    def test_overrides(self, job, tmp_path):
        """Testa que --precision e --seed prevalecem sobre o arquivo."""
        out = tmp_path / "cert.json"
        code = main(["construct", "--spec", str(job()), "--precision", "30", "--seed", "3", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert (payload["precision"], payload["seed"]) == (30, 3)

    def test_verify_constructed_element(self, job, tmp_path):
        """Testa que o elemento impresso por construct passa em verify."""
        out = tmp_path / "construct.json"
        assert main(["construct", "--spec", str(job()), "--out", str(out)]) == 0
        element = json.loads(out.read_text(encoding="utf-8"))["construction"]["element"]

        candidate = job(extra=f"element = {element}", name="verify.job")
        assert main(["verify", "--spec", str(candidate), "--out", str(tmp_path / "verify.json")]) == 0

    def test_not_free_exit_code(self, job, tmp_path):
        candidate = job(extra="element = pi^2")
        assert main(["verify", "--spec", str(candidate), "--out", str(tmp_path / "v.json")]) == 2

    def test_hypothesis_exit_code(self, job):
        """Testa n = 2 em extensão cíclica de grau 3 (BadExponent)."""
        assert main(["construct", "--spec", str(job(n=2))]) == 2

    def test_parse_exit_codes(self, job, tmp_path):
        bad = tmp_path / "bad.job"
        bad.write_text("[base]\nkind = padic\n", encoding="utf-8")
        assert main(["analyze", "--spec", str(bad)]) == 3
        assert main(["verify", "--spec", str(job())]) == 3
        assert main(["analyze", "--spec", str(job()), "--precision", "2"]) == 3

    def test_residue_degree_exit_code(self, tmp_path):
        """Testa que f > 1 é recusado na leitura (saída 3)."""
        path = tmp_path / "unramified_base.job"
        path.write_text("[base]\nkind = padic\np = 3\nf = 2\n[extension]\npolynomial = x^2 - 3\n", encoding="utf-8")
        assert main(["analyze", "--spec", str(path)]) == 3

    def test_non_galois_exit_code(self, tmp_path):
        path = tmp_path / "radical.job"
        path.write_text("[base]\nkind = padic\np = 3\n[extension]\npolynomial = x^3 - 3\n", encoding="utf-8")
        assert main(["analyze", "--spec", str(path)]) == 2


class TestBatch:
    """Testes do modo lote."""

    def test_batch_directory(self, tmp_path):
        jobs = tmp_path / "jobs"
        jobs.mkdir()
        for name in ("cyclotomic_construct.job", "cyclotomic_verify.job"):
            shutil.copy(JOBS / name, jobs / name)
        out = tmp_path / "results"

        assert main(["construct", "--batch", str(jobs), "--out", str(out)]) == 2
        assert sorted(p.name for p in out.glob("*.json")) == [
            "cyclotomic_construct.json",
            "cyclotomic_verify.json",
        ]
        verdict = json.loads((out / "cyclotomic_verify.json").read_text(encoding="utf-8"))["verdict"]
        assert verdict == "not_free"
