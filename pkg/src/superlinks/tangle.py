"""Colored braid closures: parsing, linking data, the bracket, F' and M.

A braid word is read left to right, bottom to top; ``s_i`` crosses the strands
at positions ``i`` and ``i+1`` positively.  The closure joins top position
``p`` to bottom position ``p``.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from . import matrices as mx
from .characters import AtypicalLabel, TypicalLabel, dhat, twist_exponent
from .exponent_ring import (
    ExponentForm,
    LaurentElement,
    LaurentFraction,
    NotDivisible,
    ParamSymbol,
    RingReport,
    check_polynomial_ring,
)
from .root_data import AlgebraSpec, build_root_data, pair
from .uq_engine import (
    DEFAULT,
    ModuleRep,
    braiding_matrix,
    build_module,
    build_rmatrix,
    inverse_braiding_matrix,
    pivot_weights,
)

__all__ = [
    "BraidSyntaxError",
    "IndexOutOfRange",
    "ColorMismatch",
    "NoTypicalColor",
    "NotScalar",
    "RingCheckFailure",
    "ColoredBraid",
    "LinkingData",
    "InvariantResult",
    "parse_word",
    "parse_braid",
    "parse_color_binding",
    "closure_components",
    "evaluate_bracket",
    "f_prime",
    "normalize_invariant",
    "load_link",
    "link_from_json",
    "ModuleCache",
]


class BraidSyntaxError(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


class ColorMismatch(ValueError):
    pass


class NoTypicalColor(ValueError):
    pass


class NotScalar(RuntimeError):
    pass


class RingCheckFailure(RuntimeError):
    pass


_GEN = re.compile(r"s(\d+)(?:\^(-?\d+))?$")

Generator = Tuple[int, int]  # (index i, sign +-1)


def parse_word(text: Union[str, Sequence[str]]) -> Tuple[Generator, ...]:
    """``"s1 s2^-1 s1^3"`` -> ``((1, 1), (2, -1), (1, 1), (1, 1), (1, 1))``."""
    tokens = text.split() if isinstance(text, str) else list(text)
    out: List[Generator] = []
    for tok in tokens:
        m = _GEN.match(tok.strip())
        if not m:
            raise BraidSyntaxError(f"bad generator {tok!r}; expected s<i> or s<i>^<k>")
        i = int(m.group(1))
        k = int(m.group(2)) if m.group(2) is not None else 1
        if i < 1:
            raise IndexOutOfRange(f"generator index must be >= 1 in {tok!r}")
        out.extend([(i, 1 if k > 0 else -1)] * abs(k))
    return tuple(out)


def _permutation(strands: int, word: Sequence[Generator]) -> List[int]:
    """``end[b]``: top position reached by the strand starting at bottom ``b`` (0-based)."""
    at = list(range(strands))  # at[p] = strand currently at position p
    for i, _ in word:
        at[i - 1], at[i] = at[i], at[i - 1]
    end = [0] * strands
    for p, b in enumerate(at):
        end[b] = p
    return end


def _cycles(strands: int, word: Sequence[Generator]) -> List[Tuple[int, ...]]:
    end = _permutation(strands, word)
    seen = [False] * strands
    out = []
    for b in range(strands):
        if seen[b]:
            continue
        cyc = []
        x = b
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = end[x]
        out.append(tuple(sorted(cyc)))
    return out


@dataclass(frozen=True)
class ColoredBraid:
    strands: int
    word: Tuple[Generator, ...]
    colors: Mapping[int, TypicalLabel]

    def __post_init__(self):
        if self.strands < 1:
            raise IndexOutOfRange("a braid needs at least one strand")
        for i, _ in self.word:
            if not 1 <= i < self.strands:
                raise IndexOutOfRange(f"s{i} is not a generator on {self.strands} strands")
        comps = self.components
        ids = set(range(1, len(comps) + 1))
        given = set(self.colors)
        if given != ids:
            raise ColorMismatch(f"closure has components {sorted(ids)}, colors given for {sorted(given)}")
        specs = {c.rd.spec for c in self.colors.values()}
        if len(specs) > 1:
            raise ColorMismatch("all colors must be modules over the same superalgebra")
        if not self.colors:
            raise NoTypicalColor("no colors")

    @property
    def components(self) -> List[Tuple[int, ...]]:
        """Cycles of bottom positions (0-based), numbered 1.. by their smallest position."""
        return _cycles(self.strands, self.word)

    def component_of(self, position: int) -> int:
        for k, comp in enumerate(self.components, 1):
            if position in comp:
                return k
        raise IndexOutOfRange(position)

    def position_colors(self) -> List[TypicalLabel]:
        return [self.colors[self.component_of(p)] for p in range(self.strands)]

    def word_text(self) -> str:
        return " ".join(f"s{i}" if s == 1 else f"s{i}^-1" for i, s in self.word)

    def with_word(self, strands: int, word: Sequence[Generator]) -> "ColoredBraid":
        """Same colors on a different presentation (component ids are recomputed)."""
        return ColoredBraid(strands, tuple(word), dict(self.colors))


def parse_braid(text: str, colors: Mapping[int, TypicalLabel], strands: Optional[int] = None) -> ColoredBraid:
    word = parse_word(text)
    if strands is None:
        strands = max((i for i, _ in word), default=0) + 1
    return ColoredBraid(strands, word, dict(colors))


@dataclass(frozen=True)
class LinkingData:
    lk: Tuple[Tuple[Fraction, ...], ...]

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.lk[i - 1][j - 1]

    @property
    def size(self) -> int:
        return len(self.lk)


def closure_components(b: ColoredBraid) -> Tuple[List[Tuple[int, ...]], LinkingData]:
    comps = b.components
    k = len(comps)
    comp_of = {}
    for idx, comp in enumerate(comps):
        for p in comp:
            comp_of[p] = idx
    lk = [[Fraction(0)] * k for _ in range(k)]
    at = list(range(b.strands))
    for i, s in b.word:
        x, y = comp_of[at[i - 1]], comp_of[at[i]]
        if x == y:
            lk[x][x] += s
        else:
            lk[x][y] += Fraction(s, 2)
            lk[y][x] += Fraction(s, 2)
        at[i - 1], at[i] = at[i], at[i - 1]
    return comps, LinkingData(tuple(tuple(r) for r in lk))


class ModuleCache:
    """Memo of modules and braiding matrices for one evaluation context."""

    def __init__(self, conv=DEFAULT):
        self.conv = conv
        self.modules: Dict[TypicalLabel, ModuleRep] = {}
        self.braid: Dict[tuple, dict] = {}

    def module(self, label: TypicalLabel) -> ModuleRep:
        mod = self.modules.get(label)
        if mod is None:
            mod = self.modules[label] = build_module(label)
        return mod

    def crossing(self, x: TypicalLabel, y: TypicalLabel, sign: int) -> dict:
        """Local map on ``V_x (x) V_y -> V_y (x) V_x`` for a crossing of the given sign."""
        key = (x, y, sign)
        op = self.braid.get(key)
        if op is None:
            vx, vy = self.module(x), self.module(y)
            if sign > 0:
                op = braiding_matrix(build_rmatrix(vx, vy, self.conv))
            else:
                op = inverse_braiding_matrix(vy, vx, self.conv)
            self.braid[key] = op
        return op


def _conjugate_to_front(b: ColoredBraid, cut_component: int) -> ColoredBraid:
    comps = b.components
    if not 1 <= cut_component <= len(comps):
        raise IndexOutOfRange(f"no component {cut_component}")
    p = min(comps[cut_component - 1])
    if p == 0:
        return b
    g = [(i, 1) for i in range(1, p + 1)]
    g_inv = [(i, -1) for i in range(p, 0, -1)]
    word = tuple(g) + b.word + tuple(g_inv)
    colors = {}
    new = _cycles(b.strands, word)
    # the strand entering position 1 reaches position p+1 before the old word
    start = list(range(b.strands))
    for i, _ in g:
        start[i - 1], start[i] = start[i], start[i - 1]
    for k, comp in enumerate(new, 1):
        old_pos = start.index(comp[0])
        colors[k] = b.colors[b.component_of(old_pos)]
    return ColoredBraid(b.strands, word, colors)


def _bracket_operator(b: ColoredBraid, cache: ModuleCache) -> Tuple[ModuleRep, dict]:
    labels = b.position_colors()
    mods = [cache.module(x) for x in labels]
    weights = [pivot_weights(m) for m in mods]
    ops = []
    cur = list(labels)
    for i, s in b.word:
        ops.append((i - 1, cache.crossing(cur[i - 1], cur[i], s)))
        cur[i - 1], cur[i] = cur[i], cur[i - 1]
    if cur != labels:
        raise ColorMismatch("closure joins strands of different colors")

    result = {}
    top = mods[0]
    rest_keys = list(itertools.product(*(m.keys() for m in mods[1:])))
    for w in top.keys():
        col = {}
        for rest in rest_keys:
            key = (w,) + rest
            vec = {key: LaurentElement.one()}
            for p, op in ops:
                out = {}
                for k, c in vec.items():
                    img = op.get((k[p], k[p + 1]))
                    if not img:
                        continue
                    for (x, y), v in img.items():
                        nk = k[:p] + (x, y) + k[p + 2:]
                        mx.add_into(out, {nk: v * c})
                vec = out
            weight = LaurentElement.one()
            for t, idx in enumerate(rest, 1):
                weight = weight * weights[t][idx]
            for k2, c in vec.items():
                if k2[1:] == rest:
                    mx.add_into(col, {k2[0]: c * weight})
        result[w] = col
    return top, result


def evaluate_bracket(b: ColoredBraid, cut_component: int = 1, cache: Optional[ModuleCache] = None) -> LaurentElement:
    """Scalar ``x`` with ``F(T) = x Id`` for the (1,1)-tangle cut open along a component."""
    cache = cache or ModuleCache()
    b = _conjugate_to_front(b, cut_component)
    top, op = _bracket_operator(b, cache)
    x = op.get(0, {}).get(0, LaurentElement.zero())
    for w in top.keys():
        col = op.get(w, {})
        for w2, c in col.items():
            if w2 == w:
                if c != x:
                    raise NotScalar(f"diagonal entry {w} differs from entry 0")
            elif c:
                raise NotScalar(f"off-diagonal entry ({w2}, {w}) is nonzero")
        if not col and x:
            raise NotScalar(f"diagonal entry {w} vanishes")
    return x


def f_prime(b: ColoredBraid, cut_component: int = 1,
            cache: Optional[ModuleCache] = None) -> Union[LaurentElement, LaurentFraction]:
    """``d(color) <T>``; a :class:`LaurentElement` when ``M1`` divides, else a fraction."""
    bracket = evaluate_bracket(b, cut_component, cache)
    d = dhat(b.colors[cut_component])
    return LaurentFraction(d.m0 * bracket, d.m1).reduce()


@dataclass
class InvariantResult:
    framed_value: Union[LaurentElement, LaurentFraction]
    correction: ExponentForm
    normalized: Union[LaurentElement, LaurentFraction]
    ring_report: Optional[RingReport]
    linking: LinkingData
    components: List[Tuple[int, ...]]
    cut_component: int = 1
    m1: Optional[LaurentElement] = None
    checked: Optional[LaurentElement] = None   # the element handed to the ring check


def correction_exponent(b: ColoredBraid, linking: LinkingData) -> ExponentForm:
    """``sum_i lk_ii <w_i, w_i + 2 rho> + sum_{i<j} 2 lk_ij <w_i, w_j>``."""
    out = ExponentForm.const(0)
    k = linking.size
    for i in range(1, k + 1):
        lab = b.colors[i]
        if linking[i, i]:
            out = out + twist_exponent(lab) * linking[i, i]
        for j in range(i + 1, k + 1):
            if linking[i, j]:
                out = out + pair(lab.rd, lab.weight, b.colors[j].weight) * (2 * linking[i, j])
    return out


def _shift(x, e: ExponentForm):
    if isinstance(x, LaurentFraction):
        return LaurentFraction(x.numerator.shift(e), x.denominator)
    return x.shift(e)


def normalize_invariant(b: ColoredBraid, cut_component: int = 1, cache: Optional[ModuleCache] = None,
                        strict: bool = True) -> InvariantResult:
    """Strip the linking-number monomial from ``F'`` and check Laurent membership.

    For a knot the check is applied to ``M1 * M``.  The check is skipped (report
    ``None``) when some color has a numeric parameter.
    """
    comps, linking = closure_components(b)
    framed = f_prime(b, cut_component, cache)
    corr = correction_exponent(b, linking)
    normalized = _shift(framed, -corr)
    symbolic = all(c.symbolic for c in b.colors.values())
    report = None
    m1 = None
    checked = None
    if len(comps) == 1:
        m1 = dhat(b.colors[1]).m1
        num = normalized * m1 if isinstance(normalized, LaurentFraction) else LaurentFraction(normalized * m1)
        try:
            checked = num.to_element()
        except NotDivisible:
            checked = None
    else:
        checked = normalized if isinstance(normalized, LaurentElement) else None
    if symbolic:
        allowed = {c.a for c in b.colors.values()}
        if checked is None:
            report = RingReport(False, ["value does not clear to a Laurent element"])
        else:
            report = check_polynomial_ring(checked, allowed)
        if strict and not report.ok:
            raise RingCheckFailure("; ".join(report.failures))
    return InvariantResult(framed, corr, normalized, report, linking, comps, cut_component, m1, checked)


# --- input files -----------------------------------------------------------------

def _parse_param(value, symbols: Dict[str, ParamSymbol]):
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    text = str(value).strip()
    if re.fullmatch(r"-?\d+(/\d+)?", text):
        return Fraction(text)
    if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", text) or text == "q":
        raise BraidSyntaxError(f"bad parameter name {text!r}")
    if text not in symbols:
        symbols[text] = ParamSymbol.make(len(symbols) + 1, text)
    return symbols[text]


def _make_label(family, m, n, c, param, symbols, odd=False) -> TypicalLabel:
    spec = AlgebraSpec(str(family), int(m), int(n))
    rd = build_root_data(spec)
    a = _parse_param(param, symbols)
    try:
        return TypicalLabel(rd, tuple(int(x) for x in c), a, bool(odd))
    except AtypicalLabel as exc:
        raise NoTypicalColor(str(exc)) from exc


def parse_color_binding(text: str, symbols: Dict[str, ParamSymbol]) -> Tuple[int, TypicalLabel]:
    """``"1:(sl,2,1,0,a)"``: component, family, m, n, label entries..., parameter."""
    m = re.fullmatch(r"\s*(\d+)\s*:\s*\(?([^()]*)\)?\s*", text)
    if not m:
        raise BraidSyntaxError(f"bad color binding {text!r}")
    fields = [f.strip() for f in m.group(2).split(",")]
    if len(fields) < 4:
        raise BraidSyntaxError(f"color binding needs family,m,n,c...,param: {text!r}")
    family, mm, nn, *c, param = fields
    return int(m.group(1)), _make_label(family, mm, nn, c, param, symbols)


def link_from_json(data: Mapping) -> ColoredBraid:
    symbols: Dict[str, ParamSymbol] = {}
    try:
        strands = int(data["strands"])
        word = parse_word(data["word"])
        raw = data["colors"]
    except KeyError as exc:
        raise BraidSyntaxError(f"link file is missing {exc}") from exc
    colors = {}
    for key in sorted(raw, key=lambda k: int(k)):
        spec = raw[key]
        colors[int(key)] = _make_label(spec["family"], spec["m"], spec["n"], spec.get("c", []),
                                       spec["param"], symbols, spec.get("odd", False))
    return ColoredBraid(strands, word, colors)


def load_link(path: str) -> ColoredBraid:
    with open(path) as fh:
        return link_from_json(json.load(fh))
