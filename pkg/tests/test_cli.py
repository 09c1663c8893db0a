import json
import subprocess
import sys

import jsonschema
import pytest

from tandeg import Poly, Theorem1Params, esteves_homma, from_affine, make_field, theorem1
from tandeg.cli import main
from tandeg.errors import MalformedInput
from tandeg.serialize import curve_to_dict, dumps, load_schema, read_file, write_file


def run(*argv):
    return main([str(a) for a in argv])


def strip_times(report):
    for c in report["checks"]:
        c.pop("elapsed_ms")
    return report


def test_construct_theorem1(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert run("construct", "theorem1", "--p", 3, "--q", 3, "--n", 1, "-o", out) == 0
    assert "degree 10" in capsys.readouterr().out
    data = json.loads(out.read_text())
    assert data["degree"] == 10 and data["N"] == 4
    assert data["affine_coeffs"][2] == [[0], [0], [1], [2]]
    jsonschema.validate(data, load_schema("curve.schema.json"))


def test_construct_round_trip_is_exact(tmp_path):
    for argv, c in [
        (("theorem1", "--p", 3, "--q", 3, "--n", 2), theorem1(Theorem1Params(3, 3, 2))),
        (("esteves-homma", "--p", 5), esteves_homma(5)),
    ]:
        out = tmp_path / "c.json"
        assert run("construct", *argv, "-o", out) == 0
        back = read_file(str(out))
        assert back.affine == c.affine and back.meta == c.meta
        assert out.read_text() == dumps(curve_to_dict(c), indent=None)


def test_construct_hypothesis_violation(tmp_path, capsys):
    assert run("construct", "theorem1", "--p", 5, "--q", 5, "--n", 1, "-o", tmp_path / "x.json") == 2
    err = capsys.readouterr().err
    assert "HypothesisViolation" in err and "does not divide" in err
    assert not (tmp_path / "x.json").exists()
    assert run("construct", "esteves-homma", "--p", 2, "-o", tmp_path / "y.json") == 2


def test_verify_theorem1_passes(tmp_path, capsys):
    c = tmp_path / "c.json"
    run("construct", "theorem1", "--p", 3, "--q", 3, "--n", 1, "-o", c)
    rep = tmp_path / "r.json"
    assert run("verify", "-i", c, "-o", rep) == 0
    report = json.loads(rep.read_text())
    jsonschema.validate(report, load_schema("report.schema.json"))
    checks = {k["name"]: k for k in report["checks"]}
    assert checks["tangency_symbolic"]["value"]["generic_count"] == 1
    assert report["verdict"] == "pass"
    assert all(k["seed"] is not None for k in report["checks"] if k["leg"] == "sampled")
    assert "verdict: pass" in capsys.readouterr().out


def test_verify_negative_control_exit_1(tmp_path):
    c = tmp_path / "cubic.json"
    write_file(str(c), curve_to_dict(from_affine([Poly.monomial(make_field(5), e) for e in range(4)])), indent=None)
    assert run("verify", "-i", c, "--checks", "nonclassical", "-o", tmp_path / "r.json") == 1
    report = json.loads((tmp_path / "r.json").read_text())
    assert report["verdict"] == "fail"
    assert [k["name"] for k in report["checks"]] == ["nonclassical[0]"]


def test_verify_is_deterministic(tmp_path):
    c = tmp_path / "c.json"
    run("construct", "esteves-homma", "--p", 5, "-o", c)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("verify", "-i", c, "--seed", 11, "--ext-deg", 3, "-o", a) == 0
    assert run("verify", "-i", c, "--seed", 11, "--ext-deg", 3, "-o", b) == 0
    ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
    assert strip_times(ra) == strip_times(rb)


def test_verify_malformed_inputs(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("verify", "-i", bad) == 3
    assert run("verify", "-i", tmp_path / "missing.json") == 3
    c = tmp_path / "c.json"
    run("construct", "theorem1", "--p", 3, "--q", 3, "--n", 1, "-o", c)
    data = json.loads(c.read_text())
    data["degree"] = 11
    c.write_text(json.dumps(data))
    assert run("verify", "-i", c) == 3
    data["degree"] = 10
    data["affine_coeffs"][1] = [[0, 1]]
    c.write_text(json.dumps(data))
    with pytest.raises(MalformedInput):
        read_file(str(c))
    del data["N"]
    c.write_text(json.dumps(data))
    assert run("verify", "-i", c) == 3


def test_verify_unknown_check(tmp_path):
    c = tmp_path / "c.json"
    run("construct", "theorem1", "--p", 3, "--q", 3, "--n", 1, "-o", c)
    assert run("verify", "-i", c, "--checks", "bogus") == 3


def test_as_main_construct_and_verify(tmp_path):
    c = tmp_path / "as.json"
    assert run("construct", "as-main", "--p", 3, "--q", 3, "--g", "0,0,1", "--alpha", 1, "--N", 3, "-o", c) == 0
    rep = tmp_path / "r.json"
    assert run("verify", "-i", c, "-o", rep) == 0
    report = json.loads(rep.read_text())
    names = {k["name"] for k in report["checks"]}
    assert {"condition_a", "condition_b", "condition_c", "condition_d"} <= names
    assert report["verdict"] == "pass"


def test_as_main_bad_parameters(tmp_path):
    base = ("construct", "as-main", "--p", 3, "--q", 3, "--g", "0,0,1")
    assert run(*base, "--alpha", 0, "--N", 3, "-o", tmp_path / "a.json") == 2
    assert run(*base, "--alpha", 1, "--N", 2, "-o", tmp_path / "a.json") == 2
    assert run("construct", "as-main", "--p", 3, "--q", 5, "--g", "0,0,1", "--alpha", 1, "--N", 3) == 2


def test_console_entry_point(tmp_path):
    out = tmp_path / "c.json"
    proc = subprocess.run([sys.executable, "-m", "tandeg.cli", "construct", "esteves-homma", "--p", "7", "-o",
                           str(out)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(out.read_text())["N"] == 3
