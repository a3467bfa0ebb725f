"""Command-line interface: parsing, subcommands, JSON determinism."""

import json

import pytest

from parshin.cli import main, parse_form
from parshin.errors import ArityError, ParseError
from parshin.laurent import LaurentPoly


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- parse_form -------------------------------------------------------------------

def test_parse_form_n1():
    f0, fs = parse_form("t1^-1 ; t1")
    assert f0 == LaurentPoly.monomial(1, (-1,))
    assert fs == [LaurentPoly.variable(1, 1)]


def test_parse_form_n2():
    f0, fs = parse_form("t1^-2*t2^-3 ; t1*t2 ; t1*t2^2")
    assert f0.n == 2 and len(fs) == 2


def test_parse_form_errors():
    with pytest.raises(ParseError) as err:
        parse_form("t1^^2 ; t1")
    assert err.value.offset == 3
    with pytest.raises(ArityError):
        parse_form("t1^-1")
    with pytest.raises(ArityError):
        parse_form("t1 ; t1 ; t1")  # three polys but only t1 mentioned


def test_parse_form_offset_in_later_segment():
    with pytest.raises(ParseError) as err:
        parse_form("t1^-1 ; t1^^3")
    assert err.value.offset == len("t1^-1 ;") + 4


# -- subcommands --------------------------------------------------------------------

def test_residue_command_json(capsys):
    code, out, _ = run_cli(capsys, "residue", "--form", "t1^-1 ; t1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["residue"] == "1" and doc["oracle"] == "1" and doc["agrees"] is True


def test_residue_command_text(capsys):
    code, out, _ = run_cli(capsys, "residue", "--form", "3/7*t1^-1 ; t1")
    assert code == 0
    assert "residue  = 3/7" in out


def test_residue_command_cuts(capsys):
    code, out, _ = run_cli(capsys, "residue", "--form", "t1^-2*t2^-3 ; t1*t2 ; t1*t2^2",
                           "--cuts=-2,3", "--json")
    assert code == 0
    assert json.loads(out)["residue"] == "1"


def test_residue_parse_error_json(capsys):
    code, out, _ = run_cli(capsys, "residue", "--form", "t1^^2", "--json")
    assert code == 1
    doc = json.loads(out)
    assert doc["error"]["type"] == "ParseError"
    assert "offset 3" in doc["error"]["message"]


def test_residue_error_text_goes_to_stderr(capsys):
    code, out, err = run_cli(capsys, "residue", "--form", "t1^^2")
    assert code == 1 and out == "" and "offset 3" in err


def test_json_determinism(capsys):
    args = ("residue", "--form", "2*t1^-1 + t1 ; t1 + t1^2", "--json")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_cocycle_command(tmp_path, capsys):
    from parshin.liealg import sl2, to_json_dict

    algebra_path = tmp_path / "sl2.json"
    algebra_path.write_text(json.dumps(to_json_dict(sl2())))
    chain_path = tmp_path / "chain.json"
    chain_path.write_text(json.dumps({
        "n": 1,
        "algebra": str(algebra_path),
        "terms": [{"coeff": "1",
                   "factors": [{"Y": "E", "exp": [2]}, {"Y": "F", "exp": [-2]}]}],
    }))
    code, out, _ = run_cli(capsys, "cocycle", "--input", str(chain_path),
                           "--flavor", "multiloop", "--json")
    assert code == 0
    assert json.loads(out)["value"] == "8"


def test_cocycle_scalar_and_vectorfield(tmp_path, capsys):
    chain_path = tmp_path / "scalar.json"
    chain_path.write_text(json.dumps({
        "n": 1, "algebra": "scalar",
        "terms": [{"factors": [{"exp": [-3]}, {"exp": [3]}]}],
    }))
    code, out, _ = run_cli(capsys, "cocycle", "--input", str(chain_path),
                           "--flavor", "scalar", "--json")
    assert code == 0 and json.loads(out)["value"] == "-3"

    vf_path = tmp_path / "vf.json"
    vf_path.write_text(json.dumps({
        "n": 1, "algebra": "scalar",
        "terms": [{"factors": [{"s": [3], "i": 1}, {"s": [-1], "i": 1}]}],
    }))
    code, out, _ = run_cli(capsys, "cocycle", "--input", str(vf_path),
                           "--flavor", "vectorfield", "--json")
    assert code == 0 and json.loads(out)["value"] == "-1"


def test_virasoro_command(capsys):
    code, out, _ = run_cli(capsys, "virasoro", "--max-m", "3", "--json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert rows == [{"m": 1, "phi": "0"}, {"m": 2, "phi": "-1"}, {"m": 3, "phi": "-4"}]


def test_verify_command(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "rho", "--trials", "50", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True and doc["checks"] > 0


def test_verify_fixtures(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "fixtures")
    assert code == 0
    assert "passed  = True" in out


def test_verify_cube_small(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "cube", "--n", "2",
                           "--seed", "42", "--trials", "3", "--json")
    assert code == 0
    assert json.loads(out)["passed"] is True
