"""Tests for the ringcyclic command line."""

import json
import logging

import pytest

import cli
from algebra.ring_r import RingSpec
from codes import rcode
from codes.descriptor import read_descriptor
from codes.rcode import RingPolynomial
from utils.common import LIMIT_ENV_VAR

EXAMPLE = "ring=R(3; 2)\nn=2\ng1=x+1\ng2=x+2\ng3=1\n"
FULL = "ring=R(3; 2)\nn=2\ng1=1\ng2=1\ng3=1\n"


@pytest.fixture(autouse=True)
def clean_logging(monkeypatch):
    monkeypatch.delenv(LIMIT_ENV_VAR, raising=False)
    level = logging.getLogger().level
    yield
    root = logging.getLogger()
    for handler in cli._installed_handlers:
        root.removeHandler(handler)
        handler.close()
    cli._installed_handlers.clear()
    root.setLevel(level)


@pytest.fixture
def example(tmp_path):
    path = tmp_path / "example.txt"
    path.write_text(EXAMPLE)
    return str(path)


def run(capsys, *argv):
    code = cli.main([*argv, "--minimize-stdout-logs"])
    return code, capsys.readouterr().out


class TestAlgebraCommands:
    """factor and idempotents."""

    def test_factor(self, capsys):
        """One factor per line in canonical order."""
        code, out = run(capsys, "factor", "--p", "3", "--n", "4")
        assert code == 0
        assert out == "x+1\nx+2\nx^2+1\n"

    def test_factor_json(self, capsys):
        """--json mirrors the text output."""
        code, out = run(capsys, "factor", "--p", "2", "--n", "7", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["command"] == "factor"
        assert data["data"]["factors"] == ["x+1", "x^3+x^2+1", "x^3+x+1"]
        assert data["passed"] is True

    @pytest.mark.parametrize(
        "argv",
        [
            ("factor", "--p", "3", "--n", "3"),
            ("factor", "--p", "4", "--n", "3"),
            ("idempotents", "--p", "3", "--r", "3"),
        ],
    )
    def test_input_errors(self, capsys, argv):
        """Invalid parameters exit with 2 and print nothing on stdout."""
        code, out = run(capsys, *argv)
        assert code == 2
        assert out == ""

    def test_idempotents(self, capsys):
        """The three idempotents of R(3; 2) and their Peirce checks."""
        code, out = run(capsys, "idempotents", "--p", "3", "--r", "2")
        assert code == 0
        lines = out.splitlines()
        assert lines[:3] == ["e1 = 2*v+2*v^2", "e2 = v+2*v^2", "e3 = 1+2*v^2"]
        assert "e1^2 = e1 PASS" in lines
        assert "e1*e2 = 0 PASS" in lines
        assert lines[-1] == "sum = 1 PASS"

    def test_bad_limit(self):
        """Unparseable limits are argparse errors."""
        with pytest.raises(SystemExit) as info:
            cli.main(["factor", "--p", "3", "--n", "4", "--limit", "lots"])
        assert info.value.code == 2


class TestCodeCommands:
    """Commands that read a descriptor."""

    def test_build(self, capsys, example):
        """The code, its components and its size."""
        code, out = run(capsys, "build", example)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "RCode{ring=R(3; 2), n=2, g1=x+1, g2=x+2, g3=1}"
        assert lines[1] == "C1 = CyclicCode{field=GF(3), n=2, g=x+1}"
        assert lines[-1] == "|C| = 81"

    def test_build_verify(self, capsys, example):
        """--verify appends one passing line per check."""
        code, out = run(capsys, "build", example, "--verify")
        assert code == 0
        assert "THEOREM CYCLIC p=3,k=1,r=2,n=2 PASS" in out.splitlines()
        assert "THEOREM R-DUAL p=3,k=1,r=2,n=2 PASS" in out.splitlines()

    def test_missing_descriptor(self, capsys, tmp_path):
        """Unreadable descriptors are input errors."""
        code, _ = run(capsys, "build", str(tmp_path / "missing.txt"))
        assert code == 2

    def test_undecodable_descriptor(self, capsys, tmp_path):
        """A descriptor that is not UTF-8 exits with 2."""
        path = tmp_path / "binary.txt"
        path.write_bytes(b"ring=R(3; 2)\nn=2\ng1=x+1\xff\ng2=x+2\ng3=1\n")
        code, out = run(capsys, "build", str(path))
        assert code == 2
        assert out == ""

    def test_descriptor_code_is_not_run(self, capsys, tmp_path):
        """Python in a generator is an input error and nothing is executed."""
        marker = tmp_path / "created"
        path = tmp_path / "payload.txt"
        path.write_text(f"ring=R(3; 2)\nn=2\ng1=__import__('os').system('touch {marker}')\ng2=x+2\ng3=1\n")
        code, out = run(capsys, "single-gen", str(path))
        assert code == 2
        assert out == ""
        assert not marker.exists()

    def test_dual(self, capsys, example):
        """The dual descriptor is printed canonically."""
        code, out = run(capsys, "dual", example)
        assert code == 0
        assert out == "ring=R(3; 2)\nn=2\ng1=x+2\ng2=x+1\ng3=x^2+2\n"

    def test_dual_of_full_code(self, capsys, tmp_path):
        """The full code has the zero code as dual, written to --output too."""
        path = tmp_path / "full.txt"
        path.write_text(FULL)
        target = tmp_path / "dual.txt"
        code, out = run(capsys, "dual", str(path), "--output", str(target))
        assert code == 0
        expected = "ring=R(3; 2)\nn=2\ng1=x^2+2\ng2=x^2+2\ng3=x^2+2\n"
        assert out == expected
        assert target.read_text() == expected

    def test_gray_image(self, capsys, example):
        """phi(C) is the product of the components."""
        code, out = run(capsys, "gray", example)
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("phi(C) = CyclicCode{field=GF(3), n=2, g=x+1} (x) ")
        assert lines[1:] == ["length = 6", "|phi(C)| = 81"]

    def test_gray_codeword(self, capsys, example):
        """The zero codeword maps to the zero vector of length 3n."""
        code, out = run(capsys, "gray", example, "--codeword", "0 0")
        assert code == 0
        assert out == "0 0 0 0 0 0\n"
        code, out = run(capsys, "gray", example, "--codeword", "1+2*v^2 0")
        assert out == "0 0 0 0 1 0\n"

    def test_gray_codeword_length(self, capsys, example):
        """A codeword of the wrong length is an input error."""
        code, _ = run(capsys, "gray", example, "--codeword", "0 0 0")
        assert code == 2

    def test_idempotent(self, capsys, example):
        """Generating idempotent, components and dual idempotent."""
        code, out = run(capsys, "idempotent", example)
        assert code == 0
        assert out.splitlines() == [
            "e = 2*v*x+1+v^2",
            "f1 = 2*x+2",
            "f2 = x+2",
            "f3 = 1",
            "dual e = v*x+2*v^2",
        ]

    def test_single_gen(self, capsys, example):
        """Single generator over R."""
        code, out = run(capsys, "single-gen", example)
        assert code == 0
        assert out == "g = v^2*x+1+v+2*v^2\n"

    def test_printed_polynomials_parse_back(self, capsys, example):
        """single-gen and idempotent output reads back to the computed polynomials."""
        ring = RingSpec.create(3, 1, 2)
        code = read_descriptor(example)
        _, out = run(capsys, "single-gen", example)
        assert RingPolynomial.parse(ring, out.strip().split(" = ", 1)[1]) == rcode.single_generator(code)
        _, out = run(capsys, "idempotent", example)
        lines = dict(line.split(" = ", 1) for line in out.splitlines())
        assert RingPolynomial.parse(ring, lines["e"]) == rcode.idempotent_over_r(code)
        assert RingPolynomial.parse(ring, lines["dual e"]) == rcode.dual_idempotent(code)

    @pytest.mark.parametrize("command", ["dual", "gray", "idempotent", "single-gen"])
    def test_verify_flag(self, capsys, example, command):
        """--verify appends the passing check lines to every descriptor command."""
        code, out = run(capsys, command, example, "--verify", "--seed", "5")
        assert code == 0
        lines = out.splitlines()
        assert "THEOREM PRESENTATIONS p=3,k=1,r=2,n=2 PASS" in lines
        assert "THEOREM DUAL-IDEMPOTENT p=3,k=1,r=2,n=2 PASS" in lines
        assert not [line for line in lines if " FAIL" in line]

    def test_verify_flag_json(self, capsys, example):
        """The check results are mirrored in JSON."""
        code, out = run(capsys, "single-gen", example, "--verify", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["data"]["generator"] == "v^2*x+1+v+2*v^2"
        assert data["data"]["checks"]

    def test_min_distance(self, capsys, example):
        """Component, ring and Gray distances."""
        code, out = run(capsys, "min-distance", example)
        assert code == 0
        assert out.splitlines() == [
            "d(C1) = 2",
            "d(C2) = 2",
            "d(C3) = 1",
            "d_R(C) = 1",
            "d_H(phi(C)) = 1",
        ]

    def test_min_distance_zero_code(self, capsys, tmp_path):
        """The zero code has infinite distance, null in JSON."""
        path = tmp_path / "zero.txt"
        path.write_text("ring=R(3; 2)\nn=2\ng1=x^2-1\ng2=x^2-1\ng3=x^2-1\n")
        code, out = run(capsys, "min-distance", str(path), "--json")
        assert code == 0
        assert json.loads(out)["data"]["weights"]["d_R(C)"] is None

    def test_limit_exceeded(self, capsys, example):
        """A ceiling below |C| exits with 3."""
        code, out = run(capsys, "min-distance", example, "--limit", "10")
        assert code == 3
        assert out == ""


class TestSearchAndVerify:
    """selfdual-search and verify."""

    def test_selfdual_search(self, capsys):
        """x - 1 is self-reciprocal, so no self-dual code exists and only the header prints."""
        code, out = run(capsys, "selfdual-search", "--p", "3", "--r", "2", "--n-max", "2")
        assert code == 0
        assert out == "n g1 g2 g3\n"

    def test_empty_grid(self, capsys):
        """An empty grid passes with no output."""
        code, out = run(capsys, "verify", "--grid", "")
        assert code == 0
        assert out == ""

    def test_bad_grid(self, capsys):
        """A malformed grid is an input error."""
        code, _ = run(capsys, "verify", "--grid", "p=4;k=1;r=2;n=1")
        assert code == 2

    def test_small_grid(self, capsys, tmp_path):
        """Every line passes and the JSON report is written."""
        report = tmp_path / "report.jsonl"
        code, out = run(
            capsys, "verify", "--grid", "p=3;k=1;r=2;n=1,2", "--max-triples", "8", "--report", str(report)
        )
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 2 * 16
        assert all(line.endswith(" PASS") for line in lines)
        data = json.loads(report.read_text())
        assert data["grid"] == "p=3;k=1;r=2;n=1,2"
        assert len(data["results"]) == 32

    def test_negative_control(self, capsys):
        """The injected dual fault makes verify fail with a counterexample."""
        code, out = run(
            capsys, "verify", "--grid", "p=5;k=1;r=2;n=4", "--inject-fault", "dual-check-polynomial"
        )
        assert code == 1
        failing = [line for line in out.splitlines() if " FAIL" in line]
        assert failing
        assert failing[0].startswith("THEOREM CYCLIC-DUAL p=5,k=1,r=2,n=4 FAIL ")

    def test_unknown_fault(self, capsys):
        """Unknown fault names are input errors."""
        code, _ = run(capsys, "verify", "--grid", "", "--inject-fault", "nothing")
        assert code == 2

    def test_logs_path(self, capsys, tmp_path):
        """--logs-path replaces any previous log file."""
        log_file = tmp_path / "run.log"
        log_file.write_text("old contents\n")
        code, _ = run(capsys, "factor", "--p", "3", "--n", "2", "--logs-path", str(log_file))
        assert code == 0
        cli._installed_handlers[0].flush()
        assert "old contents" not in log_file.read_text()
