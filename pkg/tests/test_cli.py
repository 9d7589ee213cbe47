import json
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curveproj.cli import main, run
from curveproj.cli.parse import CurveSpec, parse_curve_spec, parse_expression, parse_points
from curveproj.errors import ArityError, NonRationalExponent, ParseError

from conftest import X51, Z51, rf_from_sympy

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "report.schema.json").read_text())

Z_TEXT = "curve spatial_rational s\n z1 = s^3\n z2 = s^2\n z3 = s\n"
FILES = {
    "Z.curve": Z_TEXT,
    "X2.curve": "curve planar_rational t\n x = t^3/(t+1)\n y = t^2/(t+1)\nlabel = gamma2\n",
    "X4.curve": "curve planar_rational t\n x = t\n y = t^5\n",
    "Z53.curve": "curve spatial_rational s\nz1 = s^2 + s\nz2 = s^3 - 3*s^2\nz3 = s^4\n",
    "Y1.curve": "curve planar_rational t\nx = t^4 + t\ny = t^2\n",
    "Y2.curve": "curve planar_rational t\nx = t^3 - t\ny = t^3 + t^2\n",
    "circle.curve": "curve planar_implicit\n F = x^2 + y^2 - 1\n",
    "bad.curve": "curve planar_rational t\n x = t^(1/2)\n y = t\n",
    "P3.pts": "points 3d\n1 2 3\n0 1 0\n2 2 1\n5 1 0\n",
    "P2.pts": "points 2d\n1 1\n2 0\n0 3\n1 5\n",
}


@pytest.fixture
def files(tmp_path):
    for name, text in FILES.items():
        (tmp_path / name).write_text(text)
    return lambda name: str(tmp_path / name)


def _json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return code, data


def test_parse_examples():
    Z = parse_curve_spec(Z_TEXT).to_curve()
    assert Z.z == Z51.z
    X = parse_curve_spec(FILES["X2.curve"]).to_curve()
    assert (X.x, X.y) == (X51["X2"].x, X51["X2"].y) and X.label == "gamma2"
    C = parse_curve_spec(FILES["circle.curve"]).to_curve()
    assert C.degree() == 2


def test_expression_grammar():
    assert parse_expression("3/4*t^2 - (t+1)/(t-2)", ("t",)) == rf_from_sympy("3*t**2/4 - (t+1)/(t-2)")
    assert parse_expression("-t^-2", ("t",)) == rf_from_sympy("-1/t**2")
    with pytest.raises(NonRationalExponent):
        parse_expression("t^(1/2)", ("t",))
    with pytest.raises(ParseError) as exc:
        parse_expression("t + u", ("t",))
    assert exc.value.column == 5
    with pytest.raises(ParseError):
        parse_expression("t +* 2", ("t",))
    with pytest.raises(ParseError):
        parse_expression("0.5*t", ("t",))


def test_arity_errors():
    with pytest.raises(ArityError):
        parse_curve_spec("curve planar_rational t\n x = t\n")
    with pytest.raises(ArityError):
        parse_curve_spec("curve planar_rational t\n x = t\n y = t\n z3 = t\n")
    with pytest.raises(ParseError):
        parse_curve_spec("curve helix t\n x = t\n")


def test_error_line_numbers():
    with pytest.raises(NonRationalExponent) as exc:
        parse_curve_spec(FILES["bad.curve"])
    assert exc.value.line == 2


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=4), st.integers(1, 4))
@settings(max_examples=30, deadline=None)
def test_spec_round_trip(cs, d):
    expr = " + ".join(f"({c})*t^{i}" for i, c in enumerate(cs))
    spec = CurveSpec("planar_rational", "t", (("x", expr), ("y", f"t^{d}/(t^2+1)")), "c")
    again = parse_curve_spec(str(spec))
    assert again == spec
    assert str(again) == str(spec)


def test_points_parse():
    P = parse_points(FILES["P3.pts"])
    assert len(P) == 4
    with pytest.raises(ArityError):
        parse_points("points 2d\n1 2 3\n")


def test_signature_command(files, capsys):
    code, data = _json(capsys, ["signature", "--group", "projective", files("X2.curve")])
    assert code == 0 and data["result"]["signature"] == "Point(250047/12800, 0)"


def test_project_central_no(files, capsys):
    assert main(["project-central", files("Z.curve"), files("X4.curve")]) == 1
    assert "verdict: No" in capsys.readouterr().out


def test_project_parallel_witness(files, capsys):
    code, data = _json(capsys, ["project-parallel", files("Z53.curve"), files("Y1.curve"), "--trace"])
    assert code == 0 and data["verdict"] == "Yes"
    params = [w["params"] for w in data["result"]["witnesses"] if w["family"] == "ParallelA"]
    assert {"a1": "0", "a2": "1/2"} in params
    assert data["trace"]


def test_equivalent_and_classify(files, capsys):
    code, data = _json(capsys, ["equivalent", "--group", "affine", files("Y1.curve"), files("Y2.curve")])
    assert code == 1 and data["verdict"] == "NotEquivalent"
    code, data = _json(capsys, ["classify", files("circle.curve")])
    assert code == 0 and data["result"]["class"] == "Conic"


def test_verify_command(files, capsys):
    code, data = _json(capsys, ["verify", files("Z.curve"), files("X2.curve"), "--matrix", "1 0 0 0; 0 1 0 0; 0 0 1 1"])
    assert code == 0 and data["verdict"] == "Yes" and data["result"]["kind"] == "central"


def test_points_commands(files, capsys):
    code, data = _json(capsys, ["project-points-central", files("P3.pts"), files("P2.pts")])
    assert code == 0 and len(data["result"]["matrix"]) == 3


def test_error_exit_codes(files, capsys):
    code, data = _json(capsys, ["signature", files("bad.curve")])
    assert code == 3 and data["error"]["type"] == "NonRationalExponent" and data["error"]["line"] == 2
    code, data = _json(capsys, ["signature", files("missing.curve")])
    assert code == 3 and data["error"]["type"] == "FileNotFoundError"
    assert main(["no-such-command"]) == 3
    capsys.readouterr()


def test_json_is_deterministic(files):
    argv = ["project-central", files("Z.curve"), files("X2.curve"), "--trace"]
    a, b = run(argv), run(argv)
    assert a.to_json(timing=False) == b.to_json(timing=False)
    assert '"timing"' not in a.to_json(timing=False)


def test_config_file(files, tmp_path, capsys):
    cfg = tmp_path / "caps.cfg"
    cfg.write_text("degree_cap = 30  # larger\nsamples = 12\n")
    code, _ = _json(capsys, ["signature", files("X2.curve"), "--config", str(cfg)])
    assert code == 0
    cfg.write_text("nonsense = 1\n")
    code, data = _json(capsys, ["signature", files("X2.curve"), "--config", str(cfg)])
    assert code == 3


def test_console_script(files):
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "curveproj.cli.main", "signature", files("X4.curve")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "Point(1029/128, 0)" in proc.stdout
