from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superlinks.exponent_ring import ExponentForm
from superlinks.root_data import (
    AlgebraSpec,
    InvalidSpec,
    NegativeLabel,
    Weight,
    atypical_values,
    build_root_data,
    is_typical,
    pair,
    root_data_to_json,
    to_root_coords,
    weight_from_label,
    weyl_elements,
)

from conftest import A

SL_SPECS = [AlgebraSpec("SL", m, n) for m, n in ((2, 1), (3, 1), (1, 2), (3, 2), (2, 3), (4, 1))]
OSP_SPECS = [AlgebraSpec("OSP", 2, n) for n in (1, 2, 3)]
ALL_SPECS = SL_SPECS + OSP_SPECS

labels = st.lists(st.integers(0, 4), min_size=6, max_size=6)
params = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 4))


def c_of(rd, entries):
    return tuple(entries[: rd.rank - 1])


def eps(rd, i):
    return Weight.basis(rd.spec.dim, i - 1)


def delta(rd, j):
    return Weight.basis(rd.spec.dim, rd.spec.dim - rd.spec.n + j - 1)


# --- basic shape -------------------------------------------------------------------

@pytest.mark.parametrize("spec", ALL_SPECS, ids=str)
def test_root_counts(spec):
    rd = build_root_data(spec)
    m, n = spec.m, spec.n
    if spec.family == "SL":
        assert len(rd.even_roots) == m * (m - 1) // 2 + n * (n - 1) // 2
        assert len(rd.odd_roots) == m * n
        assert rd.rank == m + n - 1
        assert rd.odd_index == m
    else:
        assert len(rd.even_roots) == n * n
        assert len(rd.odd_roots) == 2 * n
        assert rd.rank == n + 1
        assert rd.odd_index == 1


def test_sl21_frozen():
    rd = build_root_data(AlgebraSpec("SL", 2, 1))
    assert rd.cartan == ((2, -1), (-1, 0))
    assert rd.rho.numeric() == (0, -1, 1)
    assert [w.numeric() for w in rd.fundamental_weights] == [(1, 0, 0), (1, 1, 0)]


def test_osp_cartan():
    # n = 2: the generic rules a_12 = 1, a_{n,n+1} = -2 apply directly
    rd = build_root_data(AlgebraSpec("OSP", 2, 2))
    assert rd.cartan == ((0, 1, 0), (-1, 2, -2), (0, -1, 2))
    assert rd.d == (1, -1, -2)
    # n = 1: the "a_12 = 1" and "a_{n,n+1} = -2" rules collide; the form decides
    rd = build_root_data(AlgebraSpec("OSP", 2, 1))
    assert rd.cartan == ((0, 2), (-1, 2))
    assert rd.d == (1, -2)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=str)
def test_cartan_from_coroots(spec):
    rd = build_root_data(spec)
    r = rd.rank
    for i in range(r):
        for j in range(r):
            assert rd.coroot_value(i, rd.simple_roots[j].weight) == rd.cartan[i][j]
            assert rd.d[i] * rd.cartan[i][j] == rd.d[j] * rd.cartan[j][i]


@pytest.mark.parametrize("spec", SL_SPECS, ids=str)
def test_sl_fundamental_weights_are_dual(spec):
    rd = build_root_data(spec)
    for i in range(rd.rank):
        for j, w in enumerate(rd.fundamental_weights):
            assert rd.coroot_value(i, w) == (1 if i == j else 0)


def test_osp_fundamental_weights_on_first_coroot():
    # w_{k+1} = eps + delta_1 + ... + delta_k evaluates to 2 on h_1; the rest is dual
    rd = build_root_data(AlgebraSpec("OSP", 2, 2))
    assert [rd.coroot_value(0, w) for w in rd.fundamental_weights] == [1, 2, 2]
    for i in (1, 2):
        assert [rd.coroot_value(i, w) for w in rd.fundamental_weights] == [int(i == j) for j in range(3)]


@pytest.mark.parametrize("spec", ALL_SPECS, ids=str)
def test_rho_on_simple_roots(spec):
    # <rho, alpha_i> = <alpha_i, alpha_i> / 2 for every simple root
    rd = build_root_data(spec)
    for alpha in rd.simple_roots:
        assert pair(rd, rd.rho, alpha.weight) * 2 == pair(rd, alpha.weight, alpha.weight)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=str)
def test_roots_in_root_lattice(spec):
    rd = build_root_data(spec)
    for alpha in rd.positive_roots:
        coords = to_root_coords(rd, alpha.weight)
        assert all(c.denominator == 1 and c >= 0 for c in coords)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=str)
def test_weyl_group_order(spec):
    rd = build_root_data(spec)
    if spec.family == "SL":
        expected = factorial(spec.m) * factorial(spec.n)
    else:
        expected = 2 ** spec.n * factorial(spec.n)
    assert len(weyl_elements(rd)) == expected


@pytest.mark.parametrize("spec", ALL_SPECS, ids=str)
@given(x=st.lists(st.integers(-5, 5), min_size=7, max_size=7), y=st.lists(st.integers(-5, 5), min_size=7, max_size=7))
def test_pairing_is_weyl_invariant(spec, x, y):
    rd = build_root_data(spec)
    dim = spec.dim
    u, v = Weight(tuple(x[:dim])), Weight(tuple(y[:dim]))
    for w in weyl_elements(rd):
        assert pair(rd, w.apply(u), w.apply(v)) == pair(rd, u, v)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=str)
def test_weyl_group_permutes_even_roots(spec):
    rd = build_root_data(spec)
    roots = {a.weight.numeric() for a in rd.even_roots} | {(-a.weight).numeric() for a in rd.even_roots}
    for w in weyl_elements(rd):
        assert {w.apply(Weight(r)).numeric() for r in roots} == roots


# --- closed forms for pairings with w + rho ---------------------------------------

@pytest.mark.parametrize("spec", SL_SPECS, ids=str)
@given(entries=labels, a=params)
def test_sl_closed_forms(spec, entries, a):
    rd = build_root_data(spec)
    m, n = spec.m, spec.n
    c = c_of(rd, entries)
    cc = (None,) + c   # 1-based
    w = weight_from_label(rd, c, a)
    rho0 = Fraction(1, 2) * (sum(i * (m - i) * cc[i] for i in range(1, m))
                             - sum(i * (n - i) * cc[m + n - 1 - i] for i in range(1, n)))
    rho1 = Fraction(1, 2) * (sum(n * i * cc[i] for i in range(1, m)) + m * n * a
                             - sum(m * i * cc[m + n - 1 - i] for i in range(1, n)))
    two_rho = (sum(i * (m - n - i) * cc[i] for i in range(1, m)) - m * n * a
               + sum(i * (m - n + i) * cc[m + n - 1 - i] for i in range(1, n)))
    assert pair(rd, w, rd.rho0) == rho0
    assert pair(rd, w, rd.rho1) == rho1
    assert pair(rd, w, rd.rho * 2) == two_rho
    lr = w + rd.rho
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            expected = sum(cc[k] for k in range(i, m)) + a - sum(cc[k] for k in range(m, m + j - 1)) + (m + 1 - i - j)
            assert pair(rd, eps(rd, i) - delta(rd, j), lr) == expected
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            assert pair(rd, eps(rd, i) - eps(rd, j), lr) == j - i + sum(cc[k] for k in range(i, j))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            expected = i - j - sum(cc[k] for k in range(m - 1 + i, m - 1 + j))
            assert pair(rd, delta(rd, i) - delta(rd, j), lr) == expected


@pytest.mark.parametrize("spec", OSP_SPECS, ids=str)
@given(entries=labels, a=params)
def test_osp_closed_forms(spec, entries, a):
    rd = build_root_data(spec)
    n = spec.n
    c = c_of(rd, entries)
    cc = (None,) + c
    w = weight_from_label(rd, c, a)
    assert pair(rd, w, rd.rho1) == n * (a + sum(c))
    lr = w + rd.rho
    e = eps(rd, 1)
    for i in range(1, n + 1):
        tail = sum(cc[k] for k in range(i, n + 1))
        d = delta(rd, i)
        assert pair(rd, e - d, lr) == a + sum(c) + tail - n + (n + 1 - i)
        assert pair(rd, e + d, lr) == a + sum(c) - tail - n - (n + 1 - i)
        for j in range(i + 1, n + 1):
            assert pair(rd, d - delta(rd, j), lr) == i - j - sum(cc[k] for k in range(i, j))


def test_osp22_odd_pairing_example():
    rd = build_root_data(AlgebraSpec("OSP", 2, 1))
    lr = weight_from_label(rd, (3,), A) + rd.rho
    e, d = eps(rd, 1), delta(rd, 1)
    assert pair(rd, e - d, lr) == ExponentForm.linear(A, 1, 6)


# --- typicality --------------------------------------------------------------------------

@pytest.mark.parametrize("spec", ALL_SPECS, ids=str)
@given(entries=labels)
def test_atypical_values_are_roots_of_odd_pairings(spec, entries):
    rd = build_root_data(spec)
    c = c_of(rd, entries)
    values = atypical_values(rd, c)
    assert values == sorted(set(values))
    for v in values:
        lr = weight_from_label(rd, c, v) + rd.rho
        assert any(pair(rd, lr, alpha.weight) == 0 for alpha in rd.odd_roots)
        assert not is_typical(rd, c, v)
    assert len(values) <= len(rd.odd_roots)


def test_sl21_atypical_frozen():
    rd = build_root_data(AlgebraSpec("SL", 2, 1))
    assert atypical_values(rd, (0,)) == [-1, 0]
    assert atypical_values(rd, (2,)) == [-3, 0]
    assert is_typical(rd, (0,), Fraction(1, 2))
    assert is_typical(rd, (0,), A)


# --- validation ------------------------------------------------------------------------

@pytest.mark.parametrize("args", [("SL", 2, 2), ("SL", 0, 1), ("OSP", 3, 1), ("GL", 2, 1), ("OSP", 2, 0)])
def test_invalid_specs(args):
    with pytest.raises(InvalidSpec):
        AlgebraSpec(*args)


def test_label_validation():
    rd = build_root_data(AlgebraSpec("SL", 3, 1))
    with pytest.raises(NegativeLabel):
        weight_from_label(rd, (1, -1), A)
    with pytest.raises(ValueError):
        weight_from_label(rd, (1,), A)


def test_json_dump():
    data = root_data_to_json(build_root_data(AlgebraSpec("OSP", 2, 1)))
    assert data["algebra"] == "osp(2|2)"
    assert {r["name"]: r["odd"] for r in data["positive_roots"]} == {"2d1": False, "e-d1": True, "e+d1": True}
    assert data["rho"] == ["-1", "1"]
