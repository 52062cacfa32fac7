"""Root data of the type I Lie superalgebras sl(m|n) (m != n) and osp(2|2n).

Weights are coordinate vectors in the basis (eps_1..eps_m, delta_1..delta_n)
for sl(m|n) and (eps, delta_1..delta_n) for osp(2|2n).  Coordinates are
:class:`ExponentForm` values so a weight may depend affinely on a parameter.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .exponent_ring import ExponentForm, ParamSymbol

__all__ = [
    "SL",
    "OSP",
    "AlgebraSpec",
    "Weight",
    "Root",
    "RootData",
    "WeylElement",
    "InvalidSpec",
    "NegativeLabel",
    "build_root_data",
    "weight_from_label",
    "pair",
    "atypical_values",
    "is_typical",
    "weyl_elements",
    "to_root_coords",
    "root_data_to_json",
]

SL = "SL"
OSP = "OSP"


class InvalidSpec(ValueError):
    pass


class NegativeLabel(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraSpec:
    family: str
    m: int
    n: int

    def __post_init__(self):
        fam = str(self.family).upper()
        object.__setattr__(self, "family", fam)
        if fam not in (SL, OSP):
            raise InvalidSpec(f"unknown family {self.family!r}")
        if self.m < 1 or self.n < 1:
            raise InvalidSpec("m and n must be positive")
        if fam == SL and self.m == self.n:
            raise InvalidSpec("sl(m|n) requires m != n")
        if fam == OSP and self.m != 2:
            raise InvalidSpec("osp(m|2n) is supported only for m = 2")

    @property
    def rank(self) -> int:
        return self.m + self.n - 1 if self.family == SL else self.n + 1

    @property
    def odd_index(self) -> int:
        """1-based index of the odd simple root."""
        return self.m if self.family == SL else 1

    @property
    def dim(self) -> int:
        """Number of coordinates of a weight."""
        return self.m + self.n if self.family == SL else self.n + 1

    def __str__(self) -> str:
        return f"{self.family.lower()}({self.m}|{self.n})" if self.family == SL else f"osp(2|{2 * self.n})"


def _form(x) -> ExponentForm:
    return ExponentForm.coerce(x)


@dataclass(frozen=True)
class Weight:
    coords: Tuple[ExponentForm, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_form(c) for c in self.coords))

    @classmethod
    def zero(cls, dim: int) -> "Weight":
        return cls((0,) * dim)

    @classmethod
    def basis(cls, dim: int, i: int) -> "Weight":
        return cls(tuple(1 if k == i else 0 for k in range(dim)))

    def __len__(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-x for x in self.coords))

    def __mul__(self, k) -> "Weight":
        k = _form(k)
        return Weight(tuple(x * k for x in self.coords))

    __rmul__ = __mul__

    def substitute(self, assignment) -> "Weight":
        return Weight(tuple(x.substitute(assignment) for x in self.coords))

    def is_numeric(self) -> bool:
        return all(x.is_constant() for x in self.coords)

    def symbols(self) -> frozenset:
        out = frozenset()
        for x in self.coords:
            out |= x.symbols
        return out

    def numeric(self) -> Tuple[Fraction, ...]:
        if not self.is_numeric():
            raise ValueError("weight depends on a parameter")
        return tuple(x.constant for x in self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.coords) + ")"


@dataclass(frozen=True)
class Root:
    weight: Weight
    odd: bool
    name: str

    @property
    def parity(self) -> int:
        return 1 if self.odd else 0


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: coordinate ``i`` is sent to ``perm[i]`` with sign ``signs[i]``."""

    perm: Tuple[int, ...]
    signs: Tuple[int, ...]
    sign: int

    def apply(self, x: Weight) -> Weight:
        out = [None] * len(self.perm)
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            out[j] = x.coords[i] if s == 1 else -x.coords[i]
        return Weight(tuple(out))

    def matrix(self) -> List[List[int]]:
        n = len(self.perm)
        mat = [[0] * n for _ in range(n)]
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            mat[j][i] = s
        return mat


@dataclass(frozen=True, eq=False)
class RootData:
    spec: AlgebraSpec
    metric: Tuple[int, ...]
    even_roots: Tuple[Root, ...]
    odd_roots: Tuple[Root, ...]
    simple_roots: Tuple[Root, ...]
    rho0: Weight
    rho1: Weight
    rho: Weight
    fundamental_weights: Tuple[Weight, ...]
    cartan: Tuple[Tuple[int, ...], ...]
    d: Tuple[int, ...]
    coroots: Tuple[Tuple[Fraction, ...], ...]
    supertrace: Optional[Weight]

    @property
    def positive_roots(self) -> Tuple[Root, ...]:
        return self.even_roots + self.odd_roots

    @property
    def rank(self) -> int:
        return self.spec.rank

    @property
    def dim(self) -> int:
        return self.spec.dim

    @property
    def odd_index(self) -> int:
        return self.spec.odd_index

    def __eq__(self, other) -> bool:
        return isinstance(other, RootData) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def zero(self) -> Weight:
        return Weight.zero(self.dim)

    def coroot_value(self, i: int, x: Weight) -> ExponentForm:
        """``x(h_i)`` for the 0-based simple index ``i``."""
        out = ExponentForm.const(0)
        for c, v in zip(self.coroots[i], x.coords):
            if c:
                out = out + v * c
        return out


def _eps(dim, i):
    return Weight.basis(dim, i)


def _sl_data(spec: AlgebraSpec) -> RootData:
    m, n = spec.m, spec.n
    dim = m + n
    e = lambda i: _eps(dim, i - 1)
    dl = lambda j: _eps(dim, m + j - 1)
    even = [Root(e(i) - e(j), False, f"e{i}-e{j}") for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    even += [Root(dl(i) - dl(j), False, f"d{i}-d{j}") for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    odd = [Root(e(i) - dl(j), True, f"e{i}-d{j}") for i in range(1, m + 1) for j in range(1, n + 1)]
    simple = [Root(e(i) - e(i + 1), False, f"e{i}-e{i+1}") for i in range(1, m)]
    simple.append(Root(e(m) - dl(1), True, f"e{m}-d1"))
    simple += [Root(dl(j) - dl(j + 1), False, f"d{j}-d{j+1}") for j in range(1, n)]

    two_rho0 = Weight(tuple([m + 1 - 2 * i for i in range(1, m + 1)] + [n + 1 - 2 * j for j in range(1, n + 1)]))
    two_rho1 = Weight(tuple([n] * m + [-m] * n))
    rho0, rho1 = two_rho0 * Fraction(1, 2), two_rho1 * Fraction(1, 2)

    fund = []
    for k in range(1, m):
        fund.append(Weight(tuple([1] * k + [0] * (dim - k))))
    fund.append(Weight(tuple([1] * m + [0] * n)))
    for k in range(1, n):
        fund.append(Weight(tuple([0] * (m + k) + [-1] * (n - k))))

    r = spec.rank
    coroots = []
    for i in range(1, r + 1):
        h = [0] * dim
        if i == m:
            h[m - 1], h[m] = 1, 1
        else:
            h[i - 1], h[i] = 1, -1
        coroots.append(tuple(Fraction(x) for x in h))
    d = tuple(1 if i <= m else -1 for i in range(1, r + 1))
    cartan = []
    for i in range(1, r + 1):
        row = []
        for j in range(1, r + 1):
            if i == j:
                v = 0 if i == m else 2
            elif j == i + 1:
                v = 1 if i == m else -1
            elif j == i - 1:
                v = -1
            else:
                v = 0
            row.append(v)
        cartan.append(tuple(row))
    metric = tuple([1] * m + [-1] * n)
    return RootData(spec, metric, tuple(even), tuple(odd), tuple(simple), rho0, rho1, rho0 - rho1,
                    tuple(fund), tuple(cartan), d, tuple(coroots), Weight(tuple([1] * m + [-1] * n)))


def _osp_data(spec: AlgebraSpec) -> RootData:
    n = spec.n
    dim = n + 1
    eps = _eps(dim, 0)
    dl = lambda i: _eps(dim, i)
    even = [Root(dl(i) - dl(j), False, f"d{i}-d{j}") for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    even += [Root(dl(i) + dl(j), False, f"d{i}+d{j}") for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    even += [Root(dl(i) * 2, False, f"2d{i}") for i in range(1, n + 1)]
    odd = [Root(eps - dl(i), True, f"e-d{i}") for i in range(1, n + 1)]
    odd += [Root(eps + dl(i), True, f"e+d{i}") for i in range(1, n + 1)]
    simple = [Root(eps - dl(1), True, "e-d1")]
    simple += [Root(dl(i) - dl(i + 1), False, f"d{i}-d{i+1}") for i in range(1, n)]
    simple.append(Root(dl(n) * 2, False, f"2d{n}"))

    rho0 = Weight(tuple([0] + [n + 1 - i for i in range(1, n + 1)]))
    rho1 = eps * n
    fund = [eps]
    for k in range(1, n + 1):
        fund.append(Weight(tuple([1] + [1 if i <= k else 0 for i in range(1, n + 1)])))

    metric = tuple([1] + [-1] * n)
    r = spec.rank
    d = tuple([1] + [-1] * (n - 1) + [-2])
    # h_i(x) = <x, alpha_i>/d_i, expressed as a vector in the dual coordinates.
    coroots = []
    for i in range(r):
        alpha = simple[i].weight.numeric()
        coroots.append(tuple(Fraction(metric[k]) * alpha[k] / d[i] for k in range(dim)))
    cartan = []
    for i in range(r):
        row = []
        for j in range(r):
            aj = simple[j].weight.numeric()
            v = sum(coroots[i][k] * aj[k] for k in range(dim))
            row.append(int(v))
        cartan.append(tuple(row))
    return RootData(spec, metric, tuple(even), tuple(odd), tuple(simple), rho0, rho1, rho0 - rho1,
                    tuple(fund), tuple(cartan), d, tuple(coroots), None)


_CACHE: Dict[AlgebraSpec, RootData] = {}


def build_root_data(spec: Union[AlgebraSpec, tuple]) -> RootData:
    """Roots, rho vectors, fundamental weights and Cartan data of ``spec``."""
    if not isinstance(spec, AlgebraSpec):
        spec = AlgebraSpec(*spec)
    rd = _CACHE.get(spec)
    if rd is None:
        rd = _sl_data(spec) if spec.family == SL else _osp_data(spec)
        _CACHE[spec] = rd
    return rd


def weight_from_label(rd: RootData, c: Sequence[int], a: Union[ParamSymbol, int, Fraction]) -> Weight:
    """``sum c_i w_i + a w_s``, the labels ``c`` filling every index except the odd one."""
    c = tuple(c)
    if len(c) != rd.rank - 1:
        raise ValueError(f"{rd.spec} expects {rd.rank - 1} label entries, got {len(c)}")
    if any(int(x) != x or x < 0 for x in c):
        raise NegativeLabel(f"labels must be non-negative integers, got {c}")
    s = rd.odd_index - 1
    coeffs = list(c[:s]) + [a] + list(c[s:])
    out = rd.zero()
    for k, w in zip(coeffs, rd.fundamental_weights):
        if isinstance(k, ParamSymbol):
            out = out + Weight(tuple(ExponentForm.linear(k) * x for x in w.coords))
        elif k:
            out = out + w * k
    return out


def pair(rd: RootData, x: Weight, y: Weight) -> ExponentForm:
    """Bilinear form; for sl(m|n) the first argument is projected onto str-perp."""
    out = ExponentForm.const(0)
    for g, u, v in zip(rd.metric, x.coords, y.coords):
        if u and v:
            out = out + (u * v) * g
    if rd.supertrace is not None:
        sx = ExponentForm.const(0)
        sy = ExponentForm.const(0)
        for u in x.coords:
            sx = sx + u
        for v in y.coords:
            sy = sy + v
        if sx and sy:
            out = out - (sx * sy) / (rd.spec.m - rd.spec.n)
    return out


def _odd_pairings(rd: RootData, c, sym: ParamSymbol) -> List[ExponentForm]:
    lam = weight_from_label(rd, c, sym)
    return [pair(rd, lam + rd.rho, alpha.weight) for alpha in rd.odd_roots]


def atypical_values(rd: RootData, c: Sequence[int]) -> List[Fraction]:
    """Sorted values of ``a`` for which the label ``(c, a)`` is atypical."""
    sym = ParamSymbol.make(1, "a")
    out = set()
    for form in _odd_pairings(rd, c, sym):
        coeff = form.coefficient((sym,))
        if not coeff or form.degree() > 1:
            raise ValueError("odd pairing is not affine in the parameter")
        out.add(-form.constant / coeff)
    return sorted(out)


def is_typical(rd: RootData, c: Sequence[int], a) -> bool:
    if isinstance(a, ParamSymbol):
        return True
    return Fraction(a) not in set(atypical_values(rd, c))


def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


_WEYL: Dict[AlgebraSpec, Tuple[WeylElement, ...]] = {}


def weyl_elements(rd: RootData) -> Tuple[WeylElement, ...]:
    """All elements of the Weyl group of the even part."""
    if rd.spec in _WEYL:
        return _WEYL[rd.spec]
    out = []
    if rd.spec.family == SL:
        m, n = rd.spec.m, rd.spec.n
        for s in itertools.permutations(range(m)):
            for t in itertools.permutations(range(n)):
                perm = tuple(s) + tuple(m + j for j in t)
                out.append(WeylElement(perm, (1,) * (m + n), _perm_sign(s) * _perm_sign(t)))
    else:
        n = rd.spec.n
        for s in itertools.permutations(range(n)):
            for signs in itertools.product((1, -1), repeat=n):
                perm = (0,) + tuple(1 + j for j in s)
                sgn = _perm_sign(s)
                for x in signs:
                    sgn *= x
                out.append(WeylElement(perm, (1,) + signs, sgn))
    _WEYL[rd.spec] = tuple(out)
    return _WEYL[rd.spec]


def to_root_coords(rd: RootData, x: Weight) -> Tuple[Fraction, ...]:
    """Coefficients of ``x`` in the simple roots (``x`` must lie in their span)."""
    vec = list(x.numeric())
    cols = [list(a.weight.numeric()) for a in rd.simple_roots]
    r, dim = len(cols), len(vec)
    # augmented rows: dim equations in r unknowns
    rows = [[cols[j][i] for j in range(r)] + [vec[i]] for i in range(dim)]
    piv_cols = []
    row = 0
    for col in range(r):
        p = next((i for i in range(row, dim) if rows[i][col]), None)
        if p is None:
            continue
        rows[row], rows[p] = rows[p], rows[row]
        pv = rows[row][col]
        rows[row] = [v / pv for v in rows[row]]
        for i in range(dim):
            if i != row and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[row])]
        piv_cols.append(col)
        row += 1
    if any(rows[i][r] for i in range(row, dim)):
        raise ValueError(f"{x} is not in the root span")
    out = [Fraction(0)] * r
    for i, col in enumerate(piv_cols):
        out[col] = rows[i][r]
    return tuple(out)


def root_data_to_json(rd: RootData) -> dict:
    def w(x: Weight):
        return [str(c) for c in x.coords]

    return {
        "algebra": str(rd.spec),
        "family": rd.spec.family.lower(),
        "m": rd.spec.m,
        "n": rd.spec.n,
        "rank": rd.rank,
        "odd_index": rd.odd_index,
        "positive_roots": [{"name": a.name, "coords": w(a.weight), "odd": a.odd} for a in rd.positive_roots],
        "simple_roots": [{"name": a.name, "coords": w(a.weight), "odd": a.odd} for a in rd.simple_roots],
        "rho0": w(rd.rho0),
        "rho1": w(rd.rho1),
        "rho": w(rd.rho),
        "fundamental_weights": [w(x) for x in rd.fundamental_weights],
        "cartan": [list(row) for row in rd.cartan],
        "d": list(rd.d),
    }
