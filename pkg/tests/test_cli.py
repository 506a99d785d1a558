from typing import Any

import pytest
from click.testing import CliRunner

from hexcat import Report
from hexcat.cli import hexcat


def invoke(*args: str):
    return CliRunner().invoke(hexcat, list(args))


@pytest.mark.parametrize(
    "path",
    [
        "tests/instances/chain.cat",
        "tests/instances/diamond.md",
        "tests/instances/broken.cat",
        "tests/instances/interval.gpd",
    ],
)
def test_validate(snapshot: Any, path: str):
    result = invoke("validate", path)
    report = Report.parse(result.output)
    assert snapshot("report.txt") == report
    assert result.exit_code == (0 if report.passed else 1)


@pytest.mark.parametrize(
    "path",
    [
        "tests/instances/chain.cat",
        "tests/instances/point.path",
        "tests/instances/unmarked.path",
    ],
)
def test_check_path_axioms(snapshot: Any, path: str):
    result = invoke("check-path-axioms", path)
    report = Report.parse(result.output)
    assert snapshot("report.txt") == report
    assert result.exit_code == (0 if report.passed else 1)


def test_rendering_is_stable():
    first = invoke("check-path-axioms", "tests/instances/chain.cat").output
    second = invoke("check-path-axioms", "tests/instances/chain.cat").output
    assert first == second
    assert Report.parse(first).render() == first


@pytest.mark.parametrize("source", ["terminal", "chain", "diamond"])
def test_builtin_axioms(source: str):
    result = invoke("check-path-axioms", source)
    assert result.exit_code == 0
    assert result.output.endswith("result: PASS\n")


def test_invalid_declaration():
    result = invoke("validate", "tests/instances/unknown_keyword.cat")
    assert result.exit_code == 1
    assert result.output == "Error: Unknown keyword 'arrow'. (line 3)\n"


def test_bound_exceeded():
    result = invoke("--bound", "1", "check-path-axioms", "finite-sets")
    assert result.exit_code == 1
    assert result.output.startswith("Error: Enumerating")


def test_hocat():
    result = invoke("hocat", "tests/instances/chain.cat")
    assert result.exit_code == 0
    report = Report.parse(result.output)
    assert report.sections[0].counts == {"objects": 3, "morphisms": 6, "classes": 6}


def test_hocat_requires_axioms():
    result = invoke("hocat", "tests/instances/unmarked.path")
    assert result.exit_code == 1
    assert result.output == "Error: The explicit instance fails axioms 5, 6, 7.\n"


def test_hex_build():
    result = invoke("hex", "build", "chain")
    assert result.exit_code == 0
    report = Report.parse(result.output)
    assert report.sections[0].counts["objects"] == 3
    relations = next(section for section in report.sections if section.title == "Relations")
    assert len(relations.checks) == 3
    assert relations.passed


@pytest.mark.parametrize("source", ["chain", "diamond"])
def test_hex_compare_oracle(source: str):
    result = invoke("hex", "compare-oracle", source)
    assert result.exit_code == 0
    assert "PASS essentially surjective" in result.output


def test_hex_compare_oracle_groupoids():
    result = invoke("hex", "compare-oracle", "finite-groupoids")
    assert result.exit_code == 1
    assert result.output == "Error: The oracle only covers instances with trivial structure.\n"


def test_hex_check_exact():
    result = invoke("hex", "check-exact", "tests/instances/diamond.md")
    assert result.exit_code == 0
    assert "PASS quotients are effective" in result.output


def test_hex_check_exact_finite_sets():
    result = invoke("hex", "check-exact", "finite-sets")
    assert result.exit_code == 0
    assert "PASS quotients are effective" in result.output


def test_hex_compare_oracle_exponentials():
    result = invoke("hex", "compare-oracle", "finite-sets")
    assert result.exit_code == 0
    assert "PASS classical exponentials agree" in result.output


def test_structure_check():
    result = invoke("structure", "check", "terminal", "--sums", "--extensive")
    assert result.exit_code == 0
    report = Report.parse(result.output)
    assert [section.title for section in report.sections] == ["Sums", "Extensivity"]


def test_structure_check_stability():
    result = invoke("structure", "check", "chain", "--stability")
    assert result.exit_code == 0
    assert "PASS lambda rho of" in result.output


def test_gpd_demo():
    result = invoke("gpd", "demo")
    assert result.exit_code == 0
    assert "PASS swap cover is unstable" in result.output
    report = Report.parse(result.output)
    classification = next(s for s in report.sections if s.title == "Classification")
    assert len(classification.checks) == 3
    assert classification.passed


def test_version():
    result = invoke("--version")
    assert result.exit_code == 0
    assert result.output.startswith("hexcat v")
