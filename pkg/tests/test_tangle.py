import json
from fractions import Fraction

import pytest

from superlinks.characters import TypicalLabel, dhat, normalized_hopf
from superlinks.exponent_ring import (
    ExponentForm,
    LaurentElement,
    LaurentFraction,
    check_polynomial_ring,
    format_element,
)
from superlinks.root_data import AlgebraSpec, build_root_data
from superlinks.tangle import (
    BraidSyntaxError,
    ColorMismatch,
    IndexOutOfRange,
    ModuleCache,
    NoTypicalColor,
    closure_components,
    evaluate_bracket,
    f_prime,
    link_from_json,
    load_link,
    normalize_invariant,
    parse_braid,
    parse_color_binding,
    parse_word,
)

from conftest import A, B

RD = build_root_data(AlgebraSpec("SL", 2, 1))
CACHE = ModuleCache()


def lab(c, a):
    return TypicalLabel(RD, (c,), a)


# --- parsing ------------------------------------------------------------------------

def test_parse_word():
    assert parse_word("s1 s2^-1 s1^3") == ((1, 1), (2, -1), (1, 1), (1, 1), (1, 1))
    assert parse_word(["s1", "s1^-2"]) == ((1, 1), (1, -1), (1, -1))
    assert parse_word("") == ()


@pytest.mark.parametrize("bad", ["x1", "s1^", "s1^a", "s-1"])
def test_parse_word_errors(bad):
    with pytest.raises(BraidSyntaxError):
        parse_word(bad)


def test_generator_index_starts_at_one():
    with pytest.raises(IndexOutOfRange):
        parse_word("s0")


def test_strand_bounds_and_colors():
    with pytest.raises(IndexOutOfRange):
        parse_braid("s2", {1: lab(0, A)}, strands=2)
    with pytest.raises(ColorMismatch):
        parse_braid("s1 s1", {1: lab(0, A)})
    with pytest.raises(ColorMismatch):
        parse_braid("s1 s1", {1: lab(0, A), 2: TypicalLabel(build_root_data(AlgebraSpec("SL", 3, 1)), (0, 0), B)})


def test_color_bindings():
    symbols = {}
    k, label = parse_color_binding("2:(sl,2,1,3,x)", symbols)
    assert k == 2 and label.c == (3,) and label.a == symbols["x"]
    k, label = parse_color_binding("1:(osp,2,1,0,5/2)", symbols)
    assert label.a == Fraction(5, 2) and label.rd.spec == AlgebraSpec("OSP", 2, 1)
    with pytest.raises(NoTypicalColor):
        parse_color_binding("1:(sl,2,1,0,-1)", symbols)
    with pytest.raises(BraidSyntaxError):
        parse_color_binding("1:(sl,2)", symbols)


def test_link_files(tmp_path):
    data = {"strands": 2, "word": "s1 s1",
            "colors": {"1": {"family": "sl", "m": 2, "n": 1, "c": [0], "param": "a"},
                       "2": {"family": "sl", "m": 2, "n": 1, "c": [0], "param": "b"}}}
    path = tmp_path / "hopf.json"
    path.write_text(json.dumps(data))
    b = load_link(str(path))
    assert b.strands == 2 and len(b.colors) == 2
    with pytest.raises(BraidSyntaxError):
        link_from_json({"word": "s1"})


# --- linking data ----------------------------------------------------------------------

def test_linking_numbers():
    comps, lk = closure_components(parse_braid("s1 s1", {1: lab(0, A), 2: lab(0, B)}))
    assert comps == [(0,), (1,)]
    assert (lk[1, 2], lk[2, 1], lk[1, 1], lk[2, 2]) == (1, 1, 0, 0)
    comps, lk = closure_components(parse_braid("s1 s1 s1", {1: lab(0, A)}))
    assert comps == [(0, 1)] and lk[1, 1] == 3
    comps, lk = closure_components(parse_braid("s1 s1 s2^-1", {1: lab(0, A), 2: lab(0, B)}, 3))
    assert comps == [(0,), (1, 2)]
    assert (lk[1, 2], lk[2, 2]) == (1, -1)
    _, lk = closure_components(parse_braid("s1^-1 s1", {1: lab(0, A), 2: lab(0, B)}))
    assert all(lk[i, j] == 0 for i in (1, 2) for j in (1, 2))


# --- invariants ---------------------------------------------------------------------------

def test_hopf_link_matches_characters():
    colors = {1: lab(0, A), 2: lab(0, B)}
    r = normalize_invariant(parse_braid("s1 s1", colors), cache=CACHE)
    # the linking correction is 2 <lam, mu> = -4ab
    assert r.correction == ExponentForm([((A, B), -4)])
    assert r.framed_value == normalized_hopf(colors[2], colors[1])
    assert format_element(r.normalized) == "q^(-1 - 2*a - 2*b)"
    assert r.ring_report.ok


def test_unknot_and_curl():
    # a cut-open unknot is the identity, so F' = d
    one = evaluate_bracket(parse_braid("", {1: lab(1, A)}, strands=1), cache=CACHE)
    assert one == LaurentElement.one()
    r = normalize_invariant(parse_braid("s1", {1: lab(1, A)}), cache=CACHE)
    assert LaurentFraction.coerce(r.normalized) == dhat(lab(1, A)).fraction


def test_trefoil_clears_by_m1():
    r = normalize_invariant(parse_braid("s1 s1 s1", {1: lab(0, A)}), cache=CACHE)
    assert r.m1 == dhat(lab(0, A)).m1
    assert r.checked is not None and check_polynomial_ring(r.checked, [A]).ok
    assert LaurentFraction.coerce(r.normalized) == LaurentFraction(r.checked, r.m1)


def test_mirror_hopf_link():
    colors = {1: lab(0, A), 2: lab(0, B)}
    r = normalize_invariant(parse_braid("s1^-1 s1^-1", colors), cache=CACHE)
    assert r.linking[1, 2] == -1 and r.ring_report.ok


def test_color_swap_symmetry():
    x = normalize_invariant(parse_braid("s1 s1 s1 s1", {1: lab(0, A), 2: lab(1, B)}), cache=CACHE)
    y = normalize_invariant(parse_braid("s1 s1 s1 s1", {1: lab(1, B), 2: lab(0, A)}), cache=CACHE)
    assert x.normalized == y.normalized


def test_cut_choice_on_three_components():
    colors = {1: lab(0, A), 2: lab(0, B), 3: lab(1, A)}
    b = parse_braid("s1 s1 s2 s2", colors)
    values = [LaurentFraction.coerce(f_prime(b, k, CACHE)) for k in (1, 2, 3)]
    assert values[0] == values[1] == values[2]


def test_numeric_colors_skip_ring_check():
    colors = {1: lab(0, Fraction(1, 2)), 2: lab(0, Fraction(3))}
    r = normalize_invariant(parse_braid("s1 s1", colors), cache=CACHE)
    assert r.ring_report is None
    sym = normalize_invariant(parse_braid("s1 s1", {1: lab(0, A), 2: lab(0, B)}), cache=CACHE)
    assert sym.normalized.substitute({A: Fraction(1, 2), B: Fraction(3)}) == r.normalized
