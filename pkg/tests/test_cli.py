import json

import pytest

from projstruct.cli import main, parse_complex
from projstruct.errors import InputError
from projstruct.moebius import MoebiusElement
from projstruct.surface_rep import SurfaceRepresentation, to_json

from _support import dihedral_rep, torus_rep


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    c = MoebiusElement(1, 1, 0, 1)
    return {
        "dihedral": write("dihedral.json", to_json(dihedral_rep())),
        "torus": write("torus.json", to_json(torus_rep())),
        "broken": write("broken.json", to_json(SurfaceRepresentation.build(0, [], [c, c]))),
        "state": write("state.json", {"genus": 0, "points": [
            {"label": "p", "chart": {"kind": "Power", "exponent": [2.5, 0]}},
            {"label": "b", "cone": {"num": 6, "den": 1}},
        ]}),
        "twins": write("twins.json", {"source": "b", "endpoints": [None, None],
                                      "angles": [{"num": 4, "den": 1}, {"num": 2, "den": 1}],
                                      "splitLabels": ["b1", "b2"], "mergedLabel": "q"}),
        "garbage": write("garbage.json", {"genus": "x"}),
        "dir": str(tmp_path),
    }


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if code == 0 and "--output" not in argv else out)


def test_validate(capsys, files):
    code, rep = run(capsys, "validate", files["torus"])
    assert code == 0
    assert rep["results"]["relationSign"] == -1
    assert [g["kind"] for g in rep["results"]["generators"]] == ["NonParabolic", "NonParabolic"]


def test_validate_relation_violated_exit_two(capsys, files):
    assert main(["validate", files["broken"]]) == 2


def test_parse_errors_exit_one(capsys, files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["validate", str(bad)]) == 1
    assert main(["validate", files["garbage"]]) == 1
    assert main(["validate", str(tmp_path / "missing.json")]) == 1
    assert main(["nosuchcommand"]) == 1
    assert main(["degree", "--alpha", "1,x"]) == 1


def test_invariants_reports(capsys, files):
    _, rep = run(capsys, "invariants", files["dihedral"])
    r = rep["results"]
    assert (r["k0"], r["w2Parity"], r["branchingParity"], r["theoremCase"], r["dLowerBound"]) == (3, "Even", "Odd", 1, 1)
    _, rep = run(capsys, "invariants", files["torus"])
    r = rep["results"]
    assert (r["k0"], r["w2Parity"], r["branchingParity"], r["theoremCase"]) == (0, "Odd", "Odd", 2)


def test_chart_command(capsys, files):
    _, rep = run(capsys, "chart", files["dihedral"], "--cusp", "1", "--section", "0,0,1,2")
    r = rep["results"]
    assert r["chart"]["kind"] == "Power" and r["chart"]["exponent"] == [1.5, 0.0]
    assert r["tangency"] == 2 and r["flipsToTransversal"] == 2
    assert r["decomposition"]["branchingOrder"] == 1


def test_chart_invariant_section_exit_two(capsys, files):
    assert main(["chart", files["dihedral"], "--cusp", "1", "--section", "0"]) == 2
    assert main(["chart", files["dihedral"], "--cusp", "9", "--section", "1"]) == 1


def test_degree_command(capsys, files, tmp_path):
    csv_path = tmp_path / "strip.csv"
    _, rep = run(capsys, "degree", "--alpha", "1.5,0", "--emit-csv", str(csv_path))
    assert rep["results"]["degree"] == 2 and rep["results"]["oracleAgrees"]
    assert csv_path.read_text().startswith("j,u,v")
    _, rep = run(capsys, "degree", "--parabolic", "3")
    assert rep["results"]["degree"] == 3
    _, rep = run(capsys, "degree", "--alpha", "0,2")
    assert rep["results"]["degree"] == "AnnulusCase" and rep["warnings"]
    assert main(["degree", "--alpha=-1,0"]) == 2


def test_schwarzian_command(capsys):
    _, rep = run(capsys, "schwarzian", "--alphas", "1/2", "1/2", "1/2", "--verify-monodromy", "--steps", "20000")
    r = rep["results"]
    assert r["coefficients"]["c0"] == [0.375, 0.0]
    assert r["relationCheck"] is False
    assert r["monodromy"]["discrepancy"] and rep["warnings"]


def test_surgery_move_and_inverse(capsys, files, tmp_path):
    out = tmp_path / "new.json"
    _, rep = run(capsys, "surgery", files["state"], "--move", files["twins"], "--out", str(out))
    r = rep["results"]
    assert r["before"] == r["after"]
    written = json.loads(out.read_text())
    assert {p["label"] for p in written["points"]} == {"p", "b2", "q"}
    _, rep = run(capsys, "surgery", files["state"], "--inverse", "p", "--new-label", "s")
    r = rep["results"]
    assert r["before"]["eSigma"] == r["after"]["eSigma"] == 4
    assert r["actionPair"]["alpha"] == pytest.approx([1.5, 0.0])


def test_surgery_math_errors(capsys, files):
    assert main(["surgery", files["state"], "--inverse", "b"]) == 1
    assert main(["surgery", files["state"]]) == 1


def test_reports_are_byte_identical(capsys, files):
    main(["invariants", files["dihedral"]])
    first = capsys.readouterr().out
    main(["invariants", files["dihedral"]])
    assert capsys.readouterr().out == first


def test_text_output(capsys, files):
    code = main(["invariants", files["dihedral"], "--output", "text"])
    out = capsys.readouterr().out
    assert code == 0 and "results.k0: 3" in out


def test_parse_complex_forms():
    assert parse_complex("1/3") == pytest.approx(1 / 3)
    assert parse_complex("0.5+0.2i") == 0.5 + 0.2j
    assert parse_complex("2j") == 2j
    with pytest.raises(InputError):
        parse_complex("abc")
