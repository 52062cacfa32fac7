import io
import json

import pytest

from superlinks.cli import format_polynomial, run_command
from superlinks.exponent_ring import ExponentForm, LaurentElement, ParamSymbol


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_format_polynomial_examples():
    a1 = ParamSymbol.make(1)
    assert format_polynomial(LaurentElement.zero()) == "0"
    assert format_polynomial(LaurentElement.monomial(1) - LaurentElement.monomial(-1)) == "q^(1) - q^(-1)"
    assert format_polynomial(LaurentElement.monomial(ExponentForm.linear(a1))) == "q^(a1)"


def test_format_polynomial_json():
    x = LaurentElement.monomial(ExponentForm.const(2), 3) - 1
    data = json.loads(format_polynomial(x, "json"))
    assert data[0]["coefficient"] == "3" and data[0]["exponent"]["constant"] == "2"
    assert data[1]["coefficient"] == "-1"
    with pytest.raises(ValueError):
        format_polynomial(x, "xml")


def test_typical():
    assert run("typical", "--family", "sl", "--m", "2", "--n", "1", "--c", "0") == (0, "atypical a ∈ {0, -1}\n", "")
    assert run("typical", "--c", "0", "--a", "-1")[0] == 2
    assert run("typical", "--c", "0", "--a", "1/2")[:2] == (0, "typical: a = 1/2\n")


def test_dhat():
    code, out, _ = run("dhat", "--family", "sl", "--m", "2", "--n", "1", "--c", "0")
    assert code == 0
    assert out.splitlines() == ["M0 = 1", "M1 = (q^(1 + a1) - q^(-1 - a1))*(q^(a1) - q^(-a1))"]
    code, out, _ = run("dhat", "--c", "0", "--json")
    assert code == 0 and len(json.loads(out)["m1_factors"]) == 2


def test_pairings():
    assert run("hopf", "--c", "0", "--c2", "0") == (0, "q^(-1 - 2*a1 - 2*a2 - 4*a1*a2)\n", "")
    code, out, _ = run("sprime", "--family", "osp", "--m", "2", "--n", "1", "--c", "1", "--c2", "0", "--route", "weyl")
    assert code == 0 and out.strip() == run("sprime", "--family", "osp", "--c", "1", "--c2", "0")[1].strip()


def test_roots():
    code, out, _ = run("roots", "--family", "osp", "--n", "2")
    assert code == 0 and json.loads(out)["algebra"] == "osp(2|4)"


def test_invariant_from_file(tmp_path):
    path = tmp_path / "hopf.json"
    path.write_text(json.dumps({
        "strands": 2, "word": "s1 s1",
        "colors": {"1": {"family": "sl", "m": 2, "n": 1, "c": [0], "param": "a"},
                   "2": {"family": "sl", "m": 2, "n": 1, "c": [0], "param": "b"}}}))
    code, out, _ = run("invariant", "--file", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["normalized"] == "q^(-1 - 2*a - 2*b)"
    assert data["ring_check"] == {"ok": True, "failures": []}
    assert data["linking"] == [["0", "1"], ["1", "0"]]


def test_invariant_from_bindings():
    code, out, _ = run("invariant", "--braid", "s1 s1 s1", "--color", "1:(sl,2,1,0,a)")
    assert code == 0 and json.loads(out)["m1"] is not None


@pytest.mark.parametrize("argv, code", [
    (["bogus"], 1),
    (["dhat", "--m", "x"], 1),
    (["dhat", "--m", "2", "--n", "2"], 1),
    (["dhat", "--family", "osp", "--n", "1", "--c", "-1"], 1),
    (["invariant", "--braid", "s1 s1", "--color", "1:(sl,2,1,0,a)"], 1),
    (["invariant", "--braid", "s1", "--color", "1:(sl,2,1,0,-1)"], 2),
    (["invariant", "--braid", "s1", "--color", "1:(osp,2,1,0,a)"], 1),
    (["invariant"], 1),
    (["invariant", "--file", "/nonexistent/link.json"], 1),
    (["dhat", "--c", "0", "--a", "0"], 2),
])
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_selfcheck_subset():
    code, out, _ = run("selfcheck", "--only", "2", "--only", "9")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("[PASS]  2") and lines[1].startswith("[PASS]  9")
    assert lines[-1] == "2/2 criteria passed"
