import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superlinks.characters import (
    AtypicalLabel,
    TypicalLabel,
    dhat,
    formal_character,
    normalized_hopf,
    phi_char,
    sprime,
    twist_exponent,
)
from superlinks.exponent_ring import (
    ExponentForm,
    LaurentElement,
    LaurentFraction,
    eval_at,
    format_element,
    qnum,
)
from superlinks.root_data import AlgebraSpec, Weight, atypical_values, build_root_data, pair

from conftest import A, B

SMALL = [AlgebraSpec("SL", 2, 1), AlgebraSpec("SL", 3, 1), AlgebraSpec("SL", 1, 2),
         AlgebraSpec("SL", 3, 2), AlgebraSpec("OSP", 2, 1), AlgebraSpec("OSP", 2, 2)]
label_entries = st.lists(st.integers(0, 2), min_size=4, max_size=4)


def label(spec, entries, a, odd=False):
    rd = build_root_data(spec)
    return TypicalLabel(rd, tuple(entries[: rd.rank - 1]), a, odd)


# --- fake quantum dimension -----------------------------------------------------------

def test_dhat_sl21_c0_frozen():
    # <lam+rho, e1-d1> = a + 1 and <lam+rho, e2-d1> = a, computed by hand
    d = dhat(label(AlgebraSpec("SL", 2, 1), [0], A))
    assert d.m0 == LaurentElement.one()
    assert [format_element(f) for f in d.m1_factors] == ["q^(1 + a) - q^(-1 - a)", "q^(a) - q^(-a)"]


@pytest.mark.parametrize("c", [0, 1, 2, 5])
def test_dhat_sl21_m0_is_quantum_integer(c):
    d = dhat(label(AlgebraSpec("SL", 2, 1), [c], A))
    assert LaurentFraction(d.m0) == LaurentFraction(qnum(c + 1), qnum(1))


@pytest.mark.parametrize("spec", SMALL, ids=str)
@given(entries=label_entries, a=st.integers(7, 30))
def test_m1_pole_order(spec, entries, a):
    # one factor per odd positive root, each vanishing at q = 1
    lab = label(spec, entries, A)
    d = dhat(lab)
    assert len(d.m1_factors) == len(lab.rd.odd_roots)
    for f in d.m1_factors:
        assert eval_at(f, {A: Fraction(a)}, 1) == 0
        assert eval_at(f, {A: Fraction(a)}, 2) != 0
    assert not d.m0.symbols()


def test_dhat_odd_parity():
    spec = AlgebraSpec("SL", 3, 1)
    even, odd = dhat(label(spec, [1, 0], A)), dhat(label(spec, [1, 0], A, odd=True))
    assert odd.m0 == -even.m0 and odd.m1 == even.m1


def test_twist_exponent_frozen():
    assert twist_exponent(label(AlgebraSpec("SL", 2, 1), [0], A)) == ExponentForm([((A,), -2), ((A, A), -2)])


def test_atypical_label_rejected():
    with pytest.raises(AtypicalLabel):
        label(AlgebraSpec("SL", 2, 1), [0], -1)
    with pytest.raises(AtypicalLabel):
        label(AlgebraSpec("OSP", 2, 1), [1], atypical_values(build_root_data(AlgebraSpec("OSP", 2, 1)), (1,))[0])


# --- characters ------------------------------------------------------------------------

def _weyl_dimension(rd, lam):
    out = Fraction(1)
    for alpha in rd.even_roots:
        out *= pair(rd, lam + rd.rho0, alpha.weight).constant / pair(rd, rd.rho0, alpha.weight).constant
    return out


@pytest.mark.parametrize("spec", SMALL, ids=str)
@given(entries=label_entries)
def test_character_dimension(spec, entries):
    lab = label(spec, entries, Fraction(37, 3))
    ch = formal_character(lab)
    assert ch.dimension() == 2 ** len(lab.rd.odd_roots) * _weyl_dimension(lab.rd, lab.weight)
    sch = formal_character(lab, "super")
    assert sum(abs(v) for v in sch.weights().values()) == ch.dimension()
    assert sum(sch.weights().values()) == 0


@pytest.mark.parametrize("spec", SMALL, ids=str)
@given(entries=label_entries)
def test_superdimension_vanishes(spec, entries):
    lab = label(spec, entries, A)
    for route in ("factored", "weyl", "formal"):
        assert phi_char(lab, lab.rd.rho, "super", route).is_zero()
    assert not phi_char(lab, lab.rd.rho, "ordinary").is_zero()


@pytest.mark.parametrize("spec", SMALL[:5], ids=str)
@given(e1=label_entries, e2=label_entries)
def test_sprime_routes_agree(spec, e1, e2):
    lam, mu = label(spec, e1, A), label(spec, e2, B)
    x = sprime(lam, mu)
    assert x == sprime(lam, mu, "weyl") == sprime(lam, mu, "formal")


@pytest.mark.parametrize("spec", SMALL[:5], ids=str)
@given(e1=label_entries, e2=label_entries)
def test_hopf_symmetry(spec, e1, e2):
    lam, mu = label(spec, e1, A), label(spec, e2, B)
    assert normalized_hopf(lam, mu) == normalized_hopf(mu, lam)


@pytest.mark.parametrize("spec", SMALL[:5], ids=str)
def test_hopf_is_dhat_times_sprime(spec):
    rd = build_root_data(spec)
    k = rd.rank - 1
    for combo in itertools.islice(itertools.product(range(2), repeat=2 * k), 0, None, 3):
        lam = label(spec, combo[:k], A)
        mu = label(spec, combo[k:], B, odd=True)
        d = dhat(mu)
        assert LaurentFraction(normalized_hopf(lam, mu)) == LaurentFraction(d.m0 * sprime(lam, mu), d.m1)


def test_sl21_hopf_frozen():
    lam, mu = label(AlgebraSpec("SL", 2, 1), [0], A), label(AlgebraSpec("SL", 2, 1), [0], B)
    assert format_element(normalized_hopf(lam, mu)) == "q^(-1 - 2*a - 2*b - 4*a*b)"


@given(c=st.integers(0, 4), v=st.builds(Fraction, st.integers(-40, 40), st.integers(1, 6)))
def test_sprime_vanishes_exactly_at_atypical(c, v):
    rd = build_root_data(AlgebraSpec("SL", 2, 1))
    s = sprime(TypicalLabel(rd, (1,), A), TypicalLabel(rd, (c,), B))
    assert s.substitute({B: v}).is_zero() == (v in atypical_values(rd, (c,)))


def test_numeric_beta_factorization_sl32():
    rd = build_root_data(AlgebraSpec("SL", 3, 2))
    lam = TypicalLabel(rd, (1, 0, 2), A)
    beta = Weight((Fraction(1, 3), Fraction(-2), Fraction(5, 7), Fraction(3, 2), Fraction(-1, 5)))
    assert phi_char(lam, beta, "super", "factored") == phi_char(lam, beta, "super", "weyl")
