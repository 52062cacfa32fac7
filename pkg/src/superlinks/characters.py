"""Characters of typical modules and the quantities built from them.

``phi_beta`` sends a formal exponential ``e^gamma`` to ``q^{2<gamma, beta>}``.
Everything here is computed at the level of characters; the tensor engine in
:mod:`superlinks.uq_engine` recomputes several of these values independently.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Sequence, Tuple, Union

from .exponent_ring import (
    ExponentForm,
    LaurentElement,
    LaurentFraction,
    NotDivisible,
    ParamSymbol,
    exact_div,
    qnum,
)
from .root_data import (
    RootData,
    Weight,
    atypical_values,
    pair,
    to_root_coords,
    weight_from_label,
    weyl_elements,
)

__all__ = [
    "AtypicalLabel",
    "DegenerateEvaluation",
    "TypicalLabel",
    "PhiEvaluation",
    "FormalCharacter",
    "DHat",
    "formal_character",
    "even_character",
    "phi_char",
    "sprime",
    "normalized_hopf",
    "dhat",
    "twist_exponent",
]

SUPER = "super"
ORDINARY = "ordinary"


class AtypicalLabel(ValueError):
    """The label has a numeric parameter at which the module is atypical."""


class DegenerateEvaluation(ArithmeticError):
    """A Weyl denominator vanishes at the requested evaluation point."""


@dataclass(frozen=True)
class TypicalLabel:
    """Highest weight ``w_a^c``; ``odd`` selects the parity-shifted module."""

    rd: RootData
    c: Tuple[int, ...]
    a: Union[ParamSymbol, Fraction]
    odd: bool = False

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        weight_from_label(self.rd, self.c, 0)   # validates length and signs
        a = self.a
        if not isinstance(a, ParamSymbol):
            a = Fraction(a)
            object.__setattr__(self, "a", a)
            if a in set(atypical_values(self.rd, self.c)):
                raise AtypicalLabel(f"a = {a} is atypical for c = {list(self.c)}")

    @property
    def weight(self) -> Weight:
        return weight_from_label(self.rd, self.c, self.a)

    @property
    def symbolic(self) -> bool:
        return isinstance(self.a, ParamSymbol)

    @property
    def sign(self) -> int:
        return -1 if self.odd else 1

    def specialize(self, value) -> "TypicalLabel":
        if not self.symbolic:
            return self
        return TypicalLabel(self.rd, self.c, Fraction(value), self.odd)

    def __str__(self) -> str:
        p = "-" if self.odd else ""
        return f"V{p}(c={list(self.c)}, a={self.a})"


class PhiEvaluation:
    """The ring map ``e^gamma -> q^{2<gamma, beta>}``."""

    def __init__(self, rd: RootData, beta: Weight):
        self.rd = rd
        self.beta = beta

    def exponent(self, gamma: Weight) -> ExponentForm:
        return pair(self.rd, gamma, self.beta) * 2

    def monomial(self, gamma: Weight) -> LaurentElement:
        return LaurentElement.monomial(self.exponent(gamma))

    def half_difference(self, alpha: Weight, sign: int = -1) -> LaurentElement:
        """Image of ``e^{alpha/2} + sign * e^{-alpha/2}``."""
        e = pair(self.rd, alpha, self.beta)
        return LaurentElement([(e, 1), (-e, sign)])

    def one_plus(self, alpha: Weight, sign: int) -> LaurentElement:
        """Image of ``1 + sign * e^{-alpha}``."""
        return LaurentElement([(ExponentForm.const(0), 1), (-self.exponent(alpha), sign)])


# --- formal characters ------------------------------------------------------

def _root_symbols(rd: RootData) -> Tuple[ParamSymbol, ...]:
    # high indices keep these apart from user parameters
    return tuple(ParamSymbol(10_000 + i, f"y{i + 1}") for i in range(rd.rank))


def _y_monomial(rd: RootData, coords: Sequence[Fraction]) -> LaurentElement:
    """``e^{-sum k_i alpha_i}`` as a monomial in the formal variables ``y_i``."""
    ys = _root_symbols(rd)
    items = [((ys[i],), Fraction(k)) for i, k in enumerate(coords) if k]
    return LaurentElement.monomial(ExponentForm(items))


@dataclass(frozen=True)
class FormalCharacter:
    """``e^highest * P(y)`` with ``y_i = e^{-alpha_i}``."""

    rd: RootData
    highest: Weight
    poly: LaurentElement

    def weights(self) -> Counter:
        """Multiset of depth vectors ``k`` (weight ``highest - sum k_i alpha_i``)."""
        ys = _root_symbols(self.rd)
        out = Counter()
        for e, c in self.poly.items():
            k = tuple(int(e.coefficient((y,))) for y in ys)
            out[k] += int(c)
        return out

    def dimension(self) -> int:
        return int(sum(self.poly.terms.values()))

    def evaluate(self, phi: PhiEvaluation) -> LaurentElement:
        ys = _root_symbols(self.rd)
        images = [-phi.exponent(a.weight) for a in self.rd.simple_roots]
        out = LaurentElement.zero()
        base = phi.exponent(self.highest)
        for e, c in self.poly.items():
            exp = base
            for y, img in zip(ys, images):
                k = e.coefficient((y,))
                if k:
                    exp = exp + img * k
            out = out + LaurentElement.monomial(exp, c)
        return out


def even_character(rd: RootData, lam: Weight) -> FormalCharacter:
    """Character of the irreducible even-part module of highest weight ``lam``."""
    lr = lam + rd.rho0
    num = LaurentElement.zero()
    for w in weyl_elements(rd):
        diff = lr - w.apply(lr)
        num = num + _y_monomial(rd, to_root_coords(rd, diff)) * w.sign
    den = LaurentElement.one()
    for alpha in rd.even_roots:
        den = den * (LaurentElement.one() - _y_monomial(rd, to_root_coords(rd, alpha.weight)))
    try:
        poly = exact_div(num, den)
    except NotDivisible as exc:
        raise DegenerateEvaluation(f"highest weight {lam} is not dominant for the even part") from exc
    return FormalCharacter(rd, lam, poly)


def _odd_factor(rd: RootData, sign: int) -> LaurentElement:
    out = LaurentElement.one()
    for alpha in rd.odd_roots:
        out = out * (LaurentElement.one() + _y_monomial(rd, to_root_coords(rd, alpha.weight)) * sign)
    return out


def formal_character(label: TypicalLabel, variant: str = ORDINARY) -> FormalCharacter:
    """``chi_1 chi_0`` (ordinary) or ``chi'_1 chi_0`` (super) as a formal character."""
    rd = label.rd
    chi0 = even_character(rd, label.weight)
    if variant == ORDINARY:
        return FormalCharacter(rd, chi0.highest, chi0.poly * _odd_factor(rd, 1))
    if variant == SUPER:
        return FormalCharacter(rd, chi0.highest, chi0.poly * _odd_factor(rd, -1) * label.sign)
    raise ValueError(f"unknown variant {variant!r}")


# --- evaluations --------------------------------------------------------------

def _weyl_sum(rd: RootData, x: Weight, beta: Weight) -> LaurentElement:
    phi = PhiEvaluation(rd, beta)
    out = LaurentElement.zero()
    for w in weyl_elements(rd):
        out = out + phi.monomial(w.apply(x)) * w.sign
    return out


def _divide(num: LaurentElement, den: LaurentElement, what: str) -> LaurentElement:
    if den.is_zero():
        raise DegenerateEvaluation(f"{what} vanishes")
    try:
        return exact_div(num, den)
    except NotDivisible as exc:
        raise DegenerateEvaluation(f"{what} does not divide the Weyl sum") from exc


def phi_char(label: TypicalLabel, beta: Weight, variant: str = SUPER, route: str = "factored") -> LaurentElement:
    """``phi_beta`` of the (super)character of ``V(label)``.

    Routes:
      ``factored``: ``phi(chi_1 or chi'_1) * phi(chi_0)`` with ``chi_0`` from the
      even Weyl formula;
      ``weyl``: ``phi(L_1 or L'_1) * sum_w eps(w) phi(e^{w(lam+rho)}) / phi(L'_0)``;
      ``formal``: expand the formal character first, then apply ``phi``.
    A vanishing odd factor short-cuts to 0 (``chi_0`` is a polynomial).
    """
    if variant not in (SUPER, ORDINARY):
        raise ValueError(f"unknown variant {variant!r}")
    rd = label.rd
    phi = PhiEvaluation(rd, beta)
    sgn = -1 if variant == SUPER else 1
    lam = label.weight
    if route == "formal":
        return formal_character(label, variant).evaluate(phi)
    if route == "factored":
        odd = LaurentElement.one()
        for alpha in rd.odd_roots:
            odd = odd * phi.one_plus(alpha.weight, sgn)
        if odd.is_zero():
            return odd
        den = LaurentElement.one()
        for alpha in rd.even_roots:
            den = den * phi.half_difference(alpha.weight)
        chi0 = _divide(_weyl_sum(rd, lam + rd.rho0, beta), den, "even Weyl denominator")
        out = odd * chi0
    elif route == "weyl":
        odd = LaurentElement.one()
        for alpha in rd.odd_roots:
            odd = odd * phi.half_difference(alpha.weight, sgn)
        if odd.is_zero():
            return odd
        den = LaurentElement.one()
        for alpha in rd.even_roots:
            den = den * phi.half_difference(alpha.weight)
        out = odd * _divide(_weyl_sum(rd, lam + rd.rho, beta), den, "phi(L'_0)")
    else:
        raise ValueError(f"unknown route {route!r}")
    return out * label.sign if variant == SUPER else out


def sprime(lam: TypicalLabel, mu: TypicalLabel, route: str = "factored") -> LaurentElement:
    """``S'(lam, mu) = phi_{mu+rho}(sch V(lam))``."""
    return phi_char(lam, mu.weight + lam.rd.rho, SUPER, route)


def _phi_rho_L0(rd: RootData) -> LaurentElement:
    phi = PhiEvaluation(rd, rd.rho)
    out = LaurentElement.one()
    for alpha in rd.even_roots:
        out = out * phi.half_difference(alpha.weight)
    return out


def normalized_hopf(lam: TypicalLabel, mu: TypicalLabel) -> LaurentElement:
    """``sum_w eps(w) q^{2<w(lam+rho), mu+rho>} / phi_rho(L'_0)``, i.e. ``d(mu) S'(lam, mu)``."""
    rd = lam.rd
    num = _weyl_sum(rd, lam.weight + rd.rho, mu.weight + rd.rho)
    try:
        out = exact_div(num, _phi_rho_L0(rd))
    except NotDivisible as exc:
        raise DegenerateEvaluation("phi_rho(L'_0) does not divide the Weyl sum") from exc
    return out * (lam.sign * mu.sign)


@dataclass(frozen=True)
class DHat:
    """``d(lam) = M0 / M1``; ``M1`` is kept as its list of odd-root factors."""

    m0: LaurentElement
    m1_factors: Tuple[LaurentElement, ...]
    shifts: Dict[str, Fraction] = field(default_factory=dict)

    @property
    def m1(self) -> LaurentElement:
        out = LaurentElement.one()
        for f in self.m1_factors:
            out = out * f
        return out

    @property
    def fraction(self) -> LaurentFraction:
        return LaurentFraction(self.m0, self.m1)


def dhat(label: TypicalLabel) -> DHat:
    """Fake quantum dimension as the pair ``(M0, M1)``.

    ``M0 = prod_even [<lam+rho, alpha>] / [<rho, alpha>]`` (in ``q`` only) and
    ``M1 = prod_odd (q^{<lam+rho, alpha>} - q^{-<lam+rho, alpha>})``.
    """
    rd = label.rd
    lr = label.weight + rd.rho
    num = LaurentElement.one()
    den = LaurentElement.one()
    for alpha in rd.even_roots:
        num = num * qnum(pair(rd, lr, alpha.weight))
        den = den * qnum(pair(rd, rd.rho, alpha.weight))
    m0 = exact_div(num, den)
    factors = []
    shifts = {}
    for alpha in rd.odd_roots:
        e = pair(rd, lr, alpha.weight)
        if e.is_constant() and not e:
            raise AtypicalLabel(f"{label} is atypical along {alpha.name}")
        factors.append(qnum(e))
        shifts[alpha.name] = e.constant
    return DHat(m0 * label.sign, tuple(factors), shifts)


def twist_exponent(label: TypicalLabel) -> ExponentForm:
    """Exponent of the twist scalar ``q^{<lam, lam+2rho>}``."""
    lam = label.weight
    return pair(label.rd, lam, lam + label.rd.rho * 2)
