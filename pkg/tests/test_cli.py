import json

import pytest

from archow.cli import main
from archow.cubical import FormalCycle, totaro_curve
from archow.field import Fe
from archow.parsing import ParseError, parse_cycle, parse_coordinate


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    doc = json.loads(captured.out) if captured.out.strip() else None
    return code, doc, captured.err


class TestCycleGrammar:
    def test_totaro_literal(self):
        fc = parse_cycle("(z; 1 - (2+3*i)*(z)^-1; 1 - z)")
        assert fc == FormalCycle.of(totaro_curve(Fe(2, 3)))

    def test_point_literal(self):
        fc = parse_cycle("(2+3*i; -1-3*i)")
        [g] = list(fc.terms)
        assert g.coords == (Fe(2, 3), Fe(-1, -3))

    def test_multiplicity_and_sums(self):
        fc = parse_cycle("(z; 1 - i*(z)^-1; 1 - z) * 4 - (z; (z-i)^4*(z-1)^-4; 1-z)")
        from archow.cubical import z_generator

        assert fc == z_generator(Fe(0, 1))

    def test_roundtrip_printed_forms(self):
        fc = parse_cycle("(z; 1 - (2+3*i)*(z)^-1; 1 - z)")
        [g] = list(fc.terms)
        again = parse_cycle("(" + "; ".join(str(c) for c in g.coords) + ")")
        assert again == fc

    def test_diagonal_coordinate(self):
        c = parse_coordinate("1 - z2*(z1)^-1")
        from archow.cubical import DIAG, Rat

        assert isinstance(c, Rat)
        kinds = sorted(k for k, _, _ in c.factors)
        assert kinds == [DIAG, 1]

    def test_parse_errors_have_position(self):
        with pytest.raises(ParseError):
            parse_cycle("(z; 1 -")
        with pytest.raises(ParseError):
            parse_cycle("(z; q; 1)")
        with pytest.raises(ParseError):
            parse_coordinate("z^2 + 1")  # irreducible over Q(i)? no: (z-i)(z+i)
        # the above factors; a genuinely unfactorable one:
        with pytest.raises(ParseError):
            parse_coordinate("z^2 + z + 3")

    def test_quadratic_splits(self):
        c = parse_coordinate("z^2 + 1")
        from archow.cubical import Rat

        assert isinstance(c, Rat)
        roots = sorted(str(a) for _, a, _ in c.factors)
        assert roots == ["-i", "i"]


class TestCommands:
    def test_boundary_worked_example(self, capsys):
        code, doc, _ = run_cli(
            capsys, "boundary", "--cycle", "(z; 1 - (2+3*i)*(z)^-1; 1 - z)"
        )
        assert code == 0
        assert doc["result"]["exact"] is True
        assert doc["result"]["boundary"] == [
            {"generator": "(2 + 3*i, -1 - 3*i)", "multiplicity": 1}
        ]

    def test_verify_lemma19_paper_curve(self, capsys):
        code, doc, _ = run_cli(
            capsys,
            "verify", "lemma19",
            "--curve", "(z; (z-i)^4*(z-1)^-4)",
            "--tol", "1e-7",
        )
        assert code == 0
        assert doc["result"]["passed"] is True
        assert doc["result"]["total"] <= 1e-6

    def test_ranks_row(self, capsys):
        code, doc, _ = run_cli(capsys, "ranks", "--p", "2", "--n", "3")
        assert code == 0
        assert doc["result"]["chow_rank"] == 1

    def test_polylog_digits(self, capsys):
        code, doc, _ = run_cli(capsys, "polylog", "--func", "l2", "--z", "i")
        assert code == 0
        assert doc["result"]["value"].startswith("0.91596559417721901")
        assert doc["result"]["claimed_digits"] >= 20

    def test_pair_11(self, capsys):
        code, doc, _ = run_cli(
            capsys, "pair", "--p", "1", "--q", "1",
            "--alpha", "2+3*i", "--beta", "1-(2+3*i)",
        )
        assert code == 0
        assert doc["result"]["N"] == 1
        assert doc["result"]["certificate"]["certificate_verified"] is True

    def test_regulator_totaro(self, capsys):
        code, doc, _ = run_cli(
            capsys, "regulator", "--cycle", "(z; 1 - i*(z)^-1; 1 - z)"
        )
        assert code == 0
        assert doc["result"]["provenance"] == "closed-form"
        # -(1/2pi) Catalan, imaginary part
        assert "0.1457" in doc["result"]["class"]["embeddings"]["sigma"]

    def test_usage_error_exit_1(self, capsys):
        code, doc, err = run_cli(capsys, "boundary", "--cycle", "(z; 1 -")
        assert code == 1

    def test_math_error_exit_2(self, capsys):
        # decomposition rank deficit: tiny prime set cannot span the class
        code, doc, err = run_cli(
            capsys, "decompose", "--alpha", "2+3*i", "--beta", "1-2*i",
            "--primes", "2+i", "--height", "3",
        )
        assert code == 2

    def test_unknown_command(self, capsys):
        code, _, _ = run_cli(capsys, "frobnicate")
        assert code == 1


class TestDeterminism:
    def test_byte_identical_reports(self, capsys):
        args = ("verify", "lemma19", "--curve", "(z; (z-2)*(z-1)^-1)", "--tol", "1e-6")
        code1, _, _ = run_cli(capsys, *args)
        out1 = None
        code1 = main(list(args))
        out1 = capsys.readouterr().out
        code2 = main(list(args))
        out2 = capsys.readouterr().out
        assert code1 == code2 == 0
        assert out1 == out2

    def test_json_out_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code = main(["ranks", "--p", "1", "--n", "1", "--json-out", str(path)])
        capsys.readouterr()
        assert code == 0
        doc = json.loads(path.read_text())
        assert doc["result"]["chow"] == "F^x tensor Q"
