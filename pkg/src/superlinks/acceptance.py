"""The acceptance suite: thirteen exact checks shared by ``selfcheck`` and pytest.

Every check returns a :class:`CriterionResult`; nothing here prints.  Random
draws use fixed seeds so reruns are bit-identical.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .characters import (
    TypicalLabel,
    dhat,
    normalized_hopf,
    phi_char,
    sprime,
    twist_exponent,
)
from .exponent_ring import (
    ExponentForm,
    LaurentElement,
    LaurentFraction,
    ParamSymbol,
    check_polynomial_ring,
)
from .root_data import AlgebraSpec, Weight, atypical_values, build_root_data
from .tangle import (
    ModuleCache,
    evaluate_bracket,
    f_prime,
    normalize_invariant,
    parse_braid,
)
from .uq_engine import build_module, build_rmatrix, check_intertwining, check_yang_baxter, verify_module

A = ParamSymbol.make(1, "a")
B = ParamSymbol.make(2, "b")
C = ParamSymbol.make(3, "c")

SL21 = AlgebraSpec("SL", 2, 1)
SMALL_ALGEBRAS = (
    AlgebraSpec("SL", 2, 1),
    AlgebraSpec("SL", 3, 1),
    AlgebraSpec("SL", 3, 2),
    AlgebraSpec("OSP", 2, 1),
    AlgebraSpec("OSP", 2, 2),
)


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.number:2d} {self.title}: {self.detail}"


def _rng(number: int) -> random.Random:
    return random.Random(1000 + number)


def _rand_rational(rng: random.Random, span: int = 9, den: int = 5) -> Fraction:
    return Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))


def _label_entries(rd) -> int:
    return rd.rank - 1


def _label(spec: AlgebraSpec, c, a) -> TypicalLabel:
    return TypicalLabel(build_root_data(spec), tuple(c), a)


# --- 1 -------------------------------------------------------------------------

def vanishing_superdimension() -> CriterionResult:
    checked = 0
    for spec in SMALL_ALGEBRAS:
        rd = build_root_data(spec)
        for c in itertools.product((0, 1, 2), repeat=_label_entries(rd)):
            lam = TypicalLabel(rd, c, A)
            x = phi_char(lam, rd.rho, "super")
            if x:
                return CriterionResult(1, "vanishing superdimension", False, f"{spec} c={c}: {x}")
            checked += 1
    return CriterionResult(1, "vanishing superdimension", True, f"{checked} labels over 5 algebras")


# --- 2 -------------------------------------------------------------------------

def _brute_force_atypical_sl21(c1: int) -> set:
    """Roots of a -> <c1 w1 + a w2 + rho, eps_i - delta_1>, computed from scratch.

    Coordinates (eps1, eps2, delta1) with form diag(1, 1, -1); w1 = eps1,
    w2 = eps1 + eps2.  Odd roots are orthogonal to the supertrace, so no
    projection is needed.
    """
    form = (1, 1, -1)
    even_pos = [(1, -1, 0)]
    odd_pos = [(1, 0, -1), (0, 1, -1)]
    half = Fraction(1, 2)
    rho0 = [half * sum(r[k] for r in even_pos) for k in range(3)]
    rho1 = [half * sum(r[k] for r in odd_pos) for k in range(3)]
    rho = [x - y for x, y in zip(rho0, rho1)]

    def value(a, alpha):
        lam = [c1 + a, a, 0]
        return sum(form[k] * (lam[k] + rho[k]) * alpha[k] for k in range(3))

    out = set()
    for alpha in odd_pos:
        f0, f1 = value(Fraction(0), alpha), value(Fraction(1), alpha)
        slope = f1 - f0
        if slope:
            out.add(-f0 / slope)
    return out


def typicality_sets() -> CriterionResult:
    rd = build_root_data(SL21)
    for c1 in (0, 1, 2, 5):
        got = set(atypical_values(rd, (c1,)))
        oracle = _brute_force_atypical_sl21(c1)
        expected = {Fraction(0), Fraction(-1 - c1)}
        if not got == oracle == expected:
            return CriterionResult(2, "typicality sets", False, f"c1={c1}: got {got}, oracle {oracle}")
    return CriterionResult(2, "typicality sets", True, "c1 in {0,1,2,5}")


# --- 3 -------------------------------------------------------------------------

def symmetry() -> CriterionResult:
    rng = _rng(3)
    count = 0
    for spec in (AlgebraSpec("SL", 2, 1), AlgebraSpec("SL", 3, 1), AlgebraSpec("OSP", 2, 1)):
        rd = build_root_data(spec)
        k = _label_entries(rd)
        for _ in range(5):
            c1 = tuple(rng.randint(0, 3) for _ in range(k))
            c2 = tuple(rng.randint(0, 3) for _ in range(k))
            lam, mu = TypicalLabel(rd, c1, A), TypicalLabel(rd, c2, B)
            if normalized_hopf(lam, mu) != normalized_hopf(mu, lam):
                return CriterionResult(3, "symmetry", False, f"{spec} c={c1},{c2}")
            count += 1
    return CriterionResult(3, "symmetry", True, f"{count} symbolic pairs")


# --- 4 -------------------------------------------------------------------------

def atypicality_vanishing() -> CriterionResult:
    rng = _rng(4)
    rd = build_root_data(SL21)
    cases = 0
    for c_lam, c_mu in ((0, 0), (1, 2), (3, 1)):
        lam, mu = TypicalLabel(rd, (c_lam,), A), TypicalLabel(rd, (c_mu,), B)
        s = sprime(lam, mu)
        bad = atypical_values(rd, (c_mu,))
        for v in bad:
            if s.substitute({B: v}):
                return CriterionResult(4, "atypicality vanishing", False, f"S' nonzero at b={v}")
        drawn = 0
        while drawn < 10:
            v = _rand_rational(rng)
            if v in bad:
                continue
            drawn += 1
            if not s.substitute({B: v}):
                return CriterionResult(4, "atypicality vanishing", False, f"S' zero at typical b={v}")
        cases += 1
    return CriterionResult(4, "atypicality vanishing", True, f"{cases} label pairs, 10 typical draws each")


# --- 5 -------------------------------------------------------------------------

def factorization() -> CriterionResult:
    for spec in (AlgebraSpec("SL", 2, 1), AlgebraSpec("OSP", 2, 1)):
        rd = build_root_data(spec)
        for c1, c2 in ((0, 0), (1, 2), (2, 1)):
            lam = TypicalLabel(rd, (c1,), A)
            beta = TypicalLabel(rd, (c2,), B).weight + rd.rho
            for variant in ("super", "ordinary"):
                if phi_char(lam, beta, variant, "factored") != phi_char(lam, beta, variant, "weyl"):
                    return CriterionResult(5, "factorization", False, f"{spec} c={c1},{c2} {variant}")
    rng = _rng(5)
    rd = build_root_data(AlgebraSpec("SL", 3, 2))
    for _ in range(10):
        c = tuple(rng.randint(0, 2) for _ in range(_label_entries(rd)))
        lam = TypicalLabel(rd, c, A)
        beta = Weight(tuple(ExponentForm.const(_rand_rational(rng)) for _ in range(rd.spec.dim)))
        if phi_char(lam, beta, "super", "factored") != phi_char(lam, beta, "super", "weyl"):
            return CriterionResult(5, "factorization", False, f"sl(3|2) c={c} beta={beta}")
    return CriterionResult(5, "factorization", True, "symbolic on sl(2|1), osp(2|2); 10 numeric beta on sl(3|2)")


# --- 6 -------------------------------------------------------------------------

def module_validity() -> CriterionResult:
    rd = build_root_data(SL21)
    dims = []
    for c in (0, 1, 2):
        mod = build_module(TypicalLabel(rd, (c,), A), verify=False)
        fails = verify_module(mod)
        if fails:
            return CriterionResult(6, "module validity", False, f"c={c}: {fails[0]}")
        dims.append(mod.dim)
    return CriterionResult(6, "module validity", True, f"dimensions {dims}")


# --- 7 -------------------------------------------------------------------------

def rmatrix_validity() -> CriterionResult:
    rd = build_root_data(SL21)
    mods = [build_module(TypicalLabel(rd, (0,), s)) for s in (A, B, C)]
    if not check_yang_baxter(mods):
        return CriterionResult(7, "R-matrix validity", False, "symbolic YBE fails for c=0")
    fails = check_intertwining(build_rmatrix(mods[0], mods[1]))
    if fails:
        return CriterionResult(7, "R-matrix validity", False, f"symbolic: {fails[0]}")
    mods = [build_module(TypicalLabel(rd, (1,), s)) for s in (A, B, C)]
    rng = _rng(7)
    for _ in range(5):
        q = Fraction(rng.randint(2, 9), rng.randint(1, 7))
        if q == 1:
            q = Fraction(3, 2)
        values = {s: Fraction(rng.randint(2, 11), rng.randint(1, 5)) for s in (A, B, C)}
        point = (q, values)
        if not check_yang_baxter(mods, point=point):
            return CriterionResult(7, "R-matrix validity", False, f"YBE fails at {point}")
        fails = check_intertwining(build_rmatrix(mods[0], mods[1]), point=point)
        if fails:
            return CriterionResult(7, "R-matrix validity", False, f"{fails[0]} at {point}")
    return CriterionResult(7, "R-matrix validity", True, "symbolic for c=0, 5 rational points for c=1")


# --- 8 -------------------------------------------------------------------------

def twist() -> CriterionResult:
    rd = build_root_data(SL21)
    cache = ModuleCache()
    for c in (0, 1):
        lab = TypicalLabel(rd, (c,), A)
        for word, sign in (("s1", 1), ("s1^-1", -1)):
            got = evaluate_bracket(parse_braid(word, {1: lab}), cache=cache)
            want = LaurentElement.monomial(twist_exponent(lab) * sign)
            if got != want:
                return CriterionResult(8, "twist", False, f"c={c} {word}: {got}")
    return CriterionResult(8, "twist", True, "positive and negative curls, c in {0,1}")


# --- 9 -------------------------------------------------------------------------

def dual_path_hopf() -> CriterionResult:
    rd = build_root_data(SL21)
    lam, mu = TypicalLabel(rd, (0,), A), TypicalLabel(rd, (0,), B)
    engine = LaurentFraction.coerce(f_prime(parse_braid("s1 s1", {1: lam, 2: mu})))
    d = dhat(mu)
    oracle = LaurentFraction(d.m0 * sprime(lam, mu), d.m1)
    ok = engine == oracle
    return CriterionResult(9, "dual-path Hopf link", ok, "engine F' equals d(mu) S'(lam, mu)" if ok else str(engine))


# --- 10 ------------------------------------------------------------------------

def cut_independence() -> CriterionResult:
    rd = build_root_data(SL21)
    colors = {1: TypicalLabel(rd, (0,), A), 2: TypicalLabel(rd, (0,), B)}
    cache = ModuleCache()
    for word in ("s1 s1", "s1 s1 s1 s1"):
        b = parse_braid(word, colors)
        x, y = f_prime(b, 1, cache), f_prime(b, 2, cache)
        if LaurentFraction.coerce(x) != LaurentFraction.coerce(y):
            return CriterionResult(10, "cut independence", False, word)
    return CriterionResult(10, "cut independence", True, "s1 s1, s1 s1 s1 s1")


# --- 11 ------------------------------------------------------------------------

def markov_invariance() -> CriterionResult:
    rd = build_root_data(SL21)
    colors = {1: TypicalLabel(rd, (0,), A), 2: TypicalLabel(rd, (0,), B)}
    cache = ModuleCache()
    base = normalize_invariant(parse_braid("s1 s1", colors), cache=cache)
    variants = [
        ("s1^-1 s1 s1 s1", 2),   # conjugate
        ("s2^-1 s1 s1 s2 s2", 3),   # conjugate of a stabilization
        ("s1 s1 s2", 3),         # positive stabilization
        ("s1 s1 s2^-1", 3),      # negative stabilization
        ("s2 s1 s1", 3),
    ]
    for word, strands in variants:
        r = normalize_invariant(parse_braid(word, colors, strands), cache=cache)
        if r.normalized != base.normalized:
            return CriterionResult(11, "Markov invariance", False, f"normalized differs for {word}")
        shift = ExponentForm.const(0)
        for i in (1, 2):
            shift = shift + twist_exponent(colors[i]) * (r.linking[i, i] - base.linking[i, i])
        if r.framed_value != base.framed_value * LaurentElement.monomial(shift):
            return CriterionResult(11, "Markov invariance", False, f"framing shift wrong for {word}")
    return CriterionResult(11, "Markov invariance", True, f"{len(variants)} conjugates/stabilizations")


# --- 12 ------------------------------------------------------------------------

def laurent_membership() -> CriterionResult:
    rd = build_root_data(SL21)
    cache = ModuleCache()
    two = [
        ("s1 s1", (0, 0)),
        ("s1 s1 s1 s1", (0, 0)),
        ("s1^-1 s1^-1", (0, 0)),
        ("s1 s1", (1, 1)),
        ("s1 s1 s1 s1", (0, 1)),
        ("s1 s1 s1 s1 s1 s1", (0, 0)),
        ("s1 s2^-1 s1 s2^-1 s1", (0, 0)),
    ]
    for word, (c1, c2) in two:
        colors = {1: TypicalLabel(rd, (c1,), A), 2: TypicalLabel(rd, (c2,), B)}
        r = normalize_invariant(parse_braid(word, colors), cache=cache, strict=False)
        if len(r.components) != 2:
            return CriterionResult(12, "Laurent membership", False, f"{word} is not a 2-component link")
        if not isinstance(r.normalized, LaurentElement):
            return CriterionResult(12, "Laurent membership", False, f"{word}: not a Laurent element")
        report = check_polynomial_ring(r.normalized, (A, B))
        if not report.ok:
            return CriterionResult(12, "Laurent membership", False, f"{word}: {report.failures[0]}")
    for c in (0, 1):
        lab = TypicalLabel(rd, (c,), A)
        r = normalize_invariant(parse_braid("s1 s1 s1", {1: lab}), cache=cache, strict=False)
        cleared = LaurentFraction.coerce(r.normalized) * r.m1
        try:
            elem = cleared.to_element()
        except ArithmeticError:
            return CriterionResult(12, "Laurent membership", False, f"trefoil c={c}: M1*M does not clear")
        report = check_polynomial_ring(elem, (A,))
        if not report.ok:
            return CriterionResult(12, "Laurent membership", False, f"trefoil c={c}: {report.failures[0]}")
    return CriterionResult(12, "Laurent membership", True, f"{len(two)} two-component links, trefoil c in {{0,1}}")


# --- 13 ------------------------------------------------------------------------

def specialization_consistency() -> CriterionResult:
    rng = _rng(13)
    rd = build_root_data(SL21)
    cache = ModuleCache()
    word = "s1 s1 s1 s1"
    sym = normalize_invariant(parse_braid(word, {1: _label(SL21, (0,), A), 2: _label(SL21, (1,), B)}), cache=cache)
    knot = normalize_invariant(parse_braid("s1 s1 s1", {1: _label(SL21, (0,), A)}), cache=cache)
    drawn = 0
    while drawn < 10:
        x, y = _rand_rational(rng), _rand_rational(rng)
        if x in atypical_values(rd, (0,)) or y in atypical_values(rd, (1,)):
            continue
        drawn += 1
        colors = {1: TypicalLabel(rd, (0,), x), 2: TypicalLabel(rd, (1,), y)}
        num = normalize_invariant(parse_braid(word, colors), cache=cache)
        if LaurentFraction.coerce(sym.normalized).substitute({A: x, B: y}) != LaurentFraction.coerce(num.normalized):
            return CriterionResult(13, "specialization consistency", False, f"link at a={x}, b={y}")
        kn = normalize_invariant(parse_braid("s1 s1 s1", {1: TypicalLabel(rd, (0,), x)}), cache=cache)
        if LaurentFraction.coerce(knot.normalized).substitute({A: x}) != LaurentFraction.coerce(kn.normalized):
            return CriterionResult(13, "specialization consistency", False, f"trefoil at a={x}")
    return CriterionResult(13, "specialization consistency", True, "10 random draws, link and knot")


CRITERIA: Tuple[Callable[[], CriterionResult], ...] = (
    vanishing_superdimension,
    typicality_sets,
    symmetry,
    atypicality_vanishing,
    factorization,
    module_validity,
    rmatrix_validity,
    twist,
    dual_path_hopf,
    cut_independence,
    markov_invariance,
    laurent_membership,
    specialization_consistency,
)


def run_criterion(fn: Callable[[], CriterionResult], number: int) -> CriterionResult:
    """Run one check, turning an unexpected exception into a failure."""
    try:
        return fn()
    except Exception as exc:   # reported, not swallowed: the detail carries it
        return CriterionResult(number, fn.__name__.replace("_", " "), False, f"{type(exc).__name__}: {exc}")


def run_all(only: Optional[Sequence[int]] = None) -> List[CriterionResult]:
    out = []
    for number, fn in enumerate(CRITERIA, 1):
        if only and number not in only:
            continue
        out.append(run_criterion(fn, number))
    return out
