import json
from pathlib import Path
from typing import Any

import pytest
from typer.testing import CliRunner

from snark_psi.cli import app
from snark_psi.constructions import PathRole, default_superposition_path
from snark_psi.graph import petersen
from snark_psi.graph6 import decode, encode

from .oracles import k4

runner = CliRunner()


@pytest.fixture
def petersen_file(tmp_path: Path) -> Path:
    path = tmp_path / "petersen.g6"
    path.write_text(encode(petersen()) + "\n")
    return path


@pytest.fixture
def k4_file(tmp_path: Path) -> Path:
    path = tmp_path / "k4.g6"
    path.write_text(encode(k4()) + "\n")
    return path


def _json(stdout: str) -> Any:
    return json.loads(stdout)


def test_psi(petersen_file: Path) -> None:
    result = runner.invoke(app, ["psi", str(petersen_file), "--edge", "0,1"])
    assert result.exit_code == 0, result.output
    assert result.stdout.strip() == "1"


def test_census(petersen_file: Path) -> None:
    result = runner.invoke(app, ["census", str(petersen_file), "--edge", "0,1"])
    assert result.exit_code == 0, result.output
    document = _json(result.stdout)
    assert document["schema_version"] == 1
    assert document["colorings_of_G_e"] == "18"
    assert document["decompositions_of_G_e"] == "3"
    assert document["psi"] == "1"

    result = runner.invoke(app, ["census", str(petersen_file)])
    assert _json(result.stdout)["colorings"] == "0"


def test_validate(petersen_file: Path, k4_file: Path) -> None:
    result = runner.invoke(app, ["validate", str(petersen_file)])
    assert result.exit_code == 0, result.output
    document = _json(result.stdout)
    assert document["is_snark"] is True
    assert document["cyclic_connectivity"] == {"4": "PASS", "5": "PASS"}
    assert document["subsets_examined"] == str(15 + 105 + 455 + 1365)

    result = runner.invoke(app, ["validate", str(k4_file), "--max-k", "4"])
    assert result.exit_code == 1
    assert _json(result.stdout)["is_snark"] is False


@pytest.mark.parametrize("edge", ["0,2", "a,b", "0,1,2", "0"])
def test_bad_edge(petersen_file: Path, edge: str) -> None:
    result = runner.invoke(app, ["psi", str(petersen_file), "--edge", edge])
    assert result.exit_code == 2
    assert "Error" in result.output


def test_malformed_graph6(tmp_path: Path) -> None:
    path = tmp_path / "broken.g6"
    path.write_text("C~~~\n")
    result = runner.invoke(app, ["census", str(path)])
    assert result.exit_code == 2
    assert "Error" in result.output


def test_missing_file(tmp_path: Path) -> None:
    result = runner.invoke(app, ["census", str(tmp_path / "missing.g6")])
    assert result.exit_code == 2


def test_construct_dot(petersen_file: Path, tmp_path: Path) -> None:
    out = tmp_path / "dot.g6"
    args = ["construct", "dot", "--g1", str(petersen_file), "--e1", "0,1"]
    args += ["--g2", str(petersen_file), "--e2", "0,1", "--out", str(out)]
    result = runner.invoke(app, args)
    assert result.exit_code == 0, result.output
    document = _json(result.stdout)
    assert document["vertices"] == 18
    assert document["edges"] == 27
    assert set(document["new_edges"]) >= {"omega", "d1", "D2"}
    assert decode(out.read_text()).vertex_count == 18
    assert out.read_text().strip() == document["graph6"]


def test_construct_dot_rejects_bad_order(petersen_file: Path) -> None:
    args = ["construct", "dot", "--g1", str(petersen_file), "--e1", "0,1"]
    args += ["--g2", str(petersen_file), "--e2", "0,1", "--u-order", "0,2,1,4,3,7"]
    result = runner.invoke(app, args)
    assert result.exit_code == 2


def test_construct_superpose(petersen_file: Path) -> None:
    g = petersen()
    path = default_superposition_path(g, g.edge(0), PathRole.TRACKED).path
    args = ["construct", "superpose", "--g0", str(petersen_file)]
    args += ["--path", ",".join(map(str, path))]
    result = runner.invoke(app, args)
    assert result.exit_code == 0, result.output
    document = _json(result.stdout)
    assert document["vertices"] == 26
    assert document["new_edges"]["E"] == document["new_edges"]["v3_c"]


def test_construct_superpose_over_budget(petersen_file: Path) -> None:
    g = petersen()
    path = default_superposition_path(g, g.edge(0), PathRole.TRACKED).path
    args = ["construct", "superpose", "--g0", str(petersen_file)]
    args += ["--path", ",".join(map(str, path)), "--budget", "1"]
    result = runner.invoke(app, args)
    assert result.exit_code == 2
    assert "budget" in result.output


def test_synthesize_one(tmp_path: Path) -> None:
    out = tmp_path / "one.g6"
    result = runner.invoke(app, ["synthesize", "--target", "1", "--verify", "--out", str(out)])
    assert result.exit_code == 0, result.output
    document = _json(result.stdout)
    assert document["verification"] == "VERIFIED"
    assert document["trace"]["predicted_psi"] == "1"
    assert document["vertices"] == 10
    assert out.read_text().strip() == encode(petersen())


def test_synthesize_rejects_mode(tmp_path: Path) -> None:
    result = runner.invoke(app, ["synthesize", "--target", "6", "--mode", "5cc"])
    assert result.exit_code == 2
    result = runner.invoke(app, ["synthesize", "--target", "11"])
    assert result.exit_code == 2


def test_synthesize_over_budget() -> None:
    result = runner.invoke(app, ["synthesize", "--target", "7", "--budget", "1"])
    assert result.exit_code == 2
    assert result.stdout == ""

    result = runner.invoke(app, ["synthesize", "--target", "7", "--budget", "0"])
    assert result.exit_code == 2


def test_synthesize_is_deterministic() -> None:
    args = ["synthesize", "--target", "7"]
    first = runner.invoke(app, args)
    second = runner.invoke(app, args)
    assert first.exit_code == 0, first.output
    assert first.stdout == second.stdout
    assert _json(first.stdout)["verification"] == "UNVERIFIED"


def test_check_theorems() -> None:
    result = runner.invoke(app, ["check-theorems", "--suite", "petersen-base"])
    assert result.exit_code == 0, result.output
    assert "PASS" in result.output
    document = _json(result.stdout)
    assert document["passed"] is True
    assert [check["name"] for check in document["checks"]] == ["petersen-base"]


def test_check_theorems_unknown_suite() -> None:
    result = runner.invoke(app, ["check-theorems", "--suite", "bogus"])
    assert result.exit_code == 2


def test_unknown_command() -> None:
    result = runner.invoke(app, ["frobnicate"])
    assert result.exit_code == 2


def test_no_arguments_prints_help() -> None:
    result = runner.invoke(app, [])
    assert "Usage" in result.output
