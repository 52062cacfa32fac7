"""Generalized Laurent polynomials with symbolic exponents.

Elements are finite sums ``sum c_k q^{e_k}`` with rational coefficients, where
each exponent ``e_k`` is a rational combination of ``1``, formal parameters
``a_i`` and their pairwise products ``a_i a_j``.  Since ``q^{a}`` plays the
role of an extra Laurent variable, the ring contains the multivariable Laurent
polynomials ``Z[q^{±1}, q_1^{±1}, ...]`` with ``q_i = q^{a_i}``.

All values are immutable.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple, Union

__all__ = [
    "ParamSymbol",
    "ExponentForm",
    "LaurentElement",
    "LaurentFraction",
    "NotDivisible",
    "NonIntegralExponent",
    "RingReport",
    "exact_div",
    "eval_at",
    "eval_monomials",
    "substitute",
    "check_polynomial_ring",
    "format_element",
    "parse_element",
    "element_to_json",
    "qint",
    "qnum",
]

Rational = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_div` when the divisor does not divide."""


class NonIntegralExponent(ValueError):
    """Raised when an evaluation would need an irrational power of ``q``."""


class ParamSymbol(NamedTuple):
    """A formal parameter ``a_i``; ordered by index."""

    index: int
    name: str

    @classmethod
    def make(cls, index: int, name: Optional[str] = None) -> "ParamSymbol":
        if index < 1:
            raise ValueError("parameter index must be >= 1")
        return cls(index, name or f"a{index}")

    def __str__(self) -> str:
        return self.name


def _key_order(key: tuple) -> tuple:
    return (len(key), tuple(s.index for s in key))


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class ExponentForm:
    """Rational combination of ``1``, ``a_i`` and ``a_i a_j``.

    Stored as a sorted tuple of ``(key, coefficient)`` pairs, where ``key`` is
    ``()`` for the constant part, ``(a,)`` for a linear part and ``(a, b)``
    (with ``a <= b``) for a quadratic part.  Zero coefficients never appear.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, items: Iterable[Tuple[tuple, Fraction]] = ()):
        acc: Dict[tuple, Fraction] = {}
        for key, c in items:
            if len(key) > 2:
                raise ValueError("exponent degree > 2 is outside the exponent lattice")
            if len(key) == 2 and key[0].index > key[1].index:
                key = (key[1], key[0])
            acc[key] = acc.get(key, 0) + c
        self._items = tuple(sorted(((k, _frac(v)) for k, v in acc.items() if v), key=lambda kv: _key_order(kv[0])))
        self._hash = hash(self._items)

    @classmethod
    def _raw(cls, items: tuple) -> "ExponentForm":
        obj = cls.__new__(cls)
        obj._items = items
        obj._hash = hash(items)
        return obj

    # constructors
    @classmethod
    def const(cls, c: Rational) -> "ExponentForm":
        c = _frac(c)
        return cls._raw((((), c),) if c else ())

    @classmethod
    def linear(cls, sym: ParamSymbol, coeff: Rational = 1, const: Rational = 0) -> "ExponentForm":
        return cls([((), const), ((sym,), coeff)])

    @classmethod
    def coerce(cls, x) -> "ExponentForm":
        if isinstance(x, ExponentForm):
            return x
        if isinstance(x, ParamSymbol):
            return cls.linear(x)
        return cls.const(x)

    # accessors
    @property
    def items(self) -> tuple:
        return self._items

    @property
    def constant(self) -> Fraction:
        if self._items and self._items[0][0] == ():
            return self._items[0][1]
        return Fraction(0)

    @property
    def linear_part(self) -> Dict[ParamSymbol, Fraction]:
        return {k[0]: c for k, c in self._items if len(k) == 1}

    @property
    def quadratic_part(self) -> Dict[Tuple[ParamSymbol, ParamSymbol], Fraction]:
        return {k: c for k, c in self._items if len(k) == 2}

    @property
    def symbols(self) -> frozenset:
        return frozenset(s for k, _ in self._items for s in k)

    def degree(self) -> int:
        return max((len(k) for k, _ in self._items), default=0)

    def is_constant(self) -> bool:
        return all(k == () for k, _ in self._items)

    def coefficient(self, key: tuple) -> Fraction:
        for k, c in self._items:
            if k == key:
                return c
        return Fraction(0)

    # arithmetic
    def __add__(self, other) -> "ExponentForm":
        other = ExponentForm.coerce(other)
        if not other._items:
            return self
        if not self._items:
            return other
        return _add_forms(self, other)

    __radd__ = __add__

    def __neg__(self) -> "ExponentForm":
        return ExponentForm._raw(tuple((k, -c) for k, c in self._items))

    def __sub__(self, other) -> "ExponentForm":
        return self + (-ExponentForm.coerce(other))

    def __rsub__(self, other) -> "ExponentForm":
        return ExponentForm.coerce(other) - self

    def __mul__(self, other) -> "ExponentForm":
        if isinstance(other, (int, Fraction)):
            other = _frac(other)
            if not other:
                return ExponentForm._raw(())
            return ExponentForm._raw(tuple((k, c * other) for k, c in self._items))
        other = ExponentForm.coerce(other)
        if self.degree() + other.degree() > 2:
            raise ValueError("product leaves the exponent lattice span{1, a_i, a_i a_j}")
        return ExponentForm((k1 + k2, c1 * c2) for k1, c1 in self._items for k2, c2 in other._items)

    __rmul__ = __mul__

    def __truediv__(self, other: Rational) -> "ExponentForm":
        return self * (1 / _frac(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExponentForm.const(other)
        if not isinstance(other, ExponentForm):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._items)

    def sign(self) -> int:
        """Sign of the leading coordinate in the fixed term order."""
        return (self._items[0][1] > 0) - (self._items[0][1] < 0) if self._items else 0

    def __lt__(self, other: "ExponentForm") -> bool:
        return (other - self).sign() > 0

    def __gt__(self, other: "ExponentForm") -> bool:
        return (self - other).sign() > 0

    def __le__(self, other: "ExponentForm") -> bool:
        return not self > other

    def __ge__(self, other: "ExponentForm") -> bool:
        return not self < other

    def substitute(self, assignment: Mapping[ParamSymbol, Rational]) -> "ExponentForm":
        out: List[Tuple[tuple, Fraction]] = []
        for key, c in self._items:
            rest = []
            for s in key:
                if s in assignment:
                    c = c * _frac(assignment[s])
                else:
                    rest.append(s)
            out.append((tuple(rest), c))
        return ExponentForm(out)

    def __str__(self) -> str:
        return format_exponent(self)

    def __repr__(self) -> str:
        return f"ExponentForm({format_exponent(self)!r})"


@functools.lru_cache(maxsize=1 << 18)
def _add_forms(a: ExponentForm, b: ExponentForm) -> ExponentForm:
    acc = dict(a._items)
    for k, c in b._items:
        v = acc.get(k, 0) + c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    return ExponentForm._raw(tuple(sorted(acc.items(), key=lambda kv: _key_order(kv[0]))))


ZERO_FORM = ExponentForm.const(0)


class LaurentElement:
    """Finite sum ``sum c q^e`` with rational ``c`` and :class:`ExponentForm` ``e``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping, Iterable, None] = None):
        acc: Dict[ExponentForm, Fraction] = {}
        if terms is not None:
            pairs = terms.items() if isinstance(terms, Mapping) else terms
            for e, c in pairs:
                e = ExponentForm.coerce(e)
                v = acc.get(e, 0) + c
                if v:
                    acc[e] = _frac(v)
                else:
                    acc.pop(e, None)
        self._terms = acc
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[ExponentForm, Fraction]) -> "LaurentElement":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def zero(cls) -> "LaurentElement":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentElement":
        return cls._raw({ZERO_FORM: Fraction(1)})

    @classmethod
    def constant(cls, c: Rational) -> "LaurentElement":
        return cls._raw({ZERO_FORM: _frac(c)} if c else {})

    @classmethod
    def monomial(cls, exponent, coeff: Rational = 1) -> "LaurentElement":
        """The element ``coeff * q^exponent``."""
        if not coeff:
            return cls.zero()
        return cls._raw({ExponentForm.coerce(exponent): _frac(coeff)})

    @classmethod
    def coerce(cls, x) -> "LaurentElement":
        if isinstance(x, LaurentElement):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.constant(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentElement")

    # accessors
    @property
    def terms(self) -> Dict[ExponentForm, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[ExponentForm]:
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def symbols(self) -> frozenset:
        out = frozenset()
        for e in self._terms:
            out |= e.symbols
        return out

    def leading_term(self) -> Tuple[ExponentForm, Fraction]:
        if not self._terms:
            raise ValueError("zero has no leading term")
        it = iter(self._terms.items())
        best = next(it)
        for e, c in it:
            if e > best[0]:
                best = (e, c)
        return best

    def sorted_terms(self, descending: bool = True) -> List[Tuple[ExponentForm, Fraction]]:
        cmp = lambda x, y: (x[0] > y[0]) - (x[0] < y[0])
        return sorted(self._terms.items(), key=functools.cmp_to_key(cmp), reverse=descending)

    # arithmetic
    def __add__(self, other) -> "LaurentElement":
        if not isinstance(other, LaurentElement):
            try:
                other = LaurentElement.coerce(other)
            except TypeError:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            v = acc.get(e)
            if v is None:
                acc[e] = c
            else:
                v = v + c
                if v:
                    acc[e] = v
                else:
                    del acc[e]
        return LaurentElement._raw(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentElement":
        return LaurentElement._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentElement":
        if not isinstance(other, LaurentElement):
            other = LaurentElement.coerce(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentElement":
        return LaurentElement.coerce(other) - self

    def __mul__(self, other) -> "LaurentElement":
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentElement.zero()
            return LaurentElement._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentElement):
            return NotImplemented
        if not self._terms or not other._terms:
            return LaurentElement.zero()
        acc: Dict[ExponentForm, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                v = acc.get(e)
                acc[e] = c1 * c2 if v is None else v + c1 * c2
        return LaurentElement._raw({e: c for e, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentElement":
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            if not self.is_monomial():
                raise NotDivisible("negative power of a non-monomial")
            (e, c), = self._terms.items()
            return LaurentElement.monomial(e * n, Fraction(1) / c ** (-n))
        result = LaurentElement.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exponent) -> "LaurentElement":
        """Multiply by ``q^exponent``."""
        exponent = ExponentForm.coerce(exponent)
        if not exponent:
            return self
        return LaurentElement._raw({e + exponent: c for e, c in self._terms.items()})

    def __truediv__(self, other) -> "LaurentElement":
        return exact_div(self, LaurentElement.coerce(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentElement.constant(other)
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def substitute(self, assignment: Mapping[ParamSymbol, Rational]) -> "LaurentElement":
        return LaurentElement((e.substitute(assignment), c) for e, c in self._terms.items())

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"LaurentElement({format_element(self)!r})"


def qnum(exponent) -> LaurentElement:
    """``q^x - q^{-x}``."""
    e = ExponentForm.coerce(exponent)
    return LaurentElement([(e, 1), (-e, -1)])


def qint(n: int) -> LaurentElement:
    """Quantum integer ``[n] = (q^n - q^-n)/(q - q^-1)``."""
    if n == 0:
        return LaurentElement.zero()
    sign = 1 if n > 0 else -1
    n = abs(n)
    return LaurentElement((ExponentForm.const(n - 1 - 2 * k), sign) for k in range(n))


def _coordinate_bounds(x: LaurentElement) -> Dict[tuple, Tuple[Fraction, Fraction]]:
    keys = set()
    for e in x:
        keys.update(k for k, _ in e.items)
    bounds = {}
    for k in keys:
        vals = [e.coefficient(k) for e in x]
        bounds[k] = (min(vals), max(vals))
    return bounds


def exact_div(num: LaurentElement, den: LaurentElement) -> LaurentElement:
    """Return ``r`` with ``r * den == num``; raise :class:`NotDivisible` otherwise.

    Leading-term elimination in the lexicographic term order (constant
    coordinate, then linear coordinates by symbol index, then quadratic ones).
    Candidate quotient exponents are confined to the box allowed by the
    coordinate-wise extreme degrees, which guarantees termination.
    """
    num = LaurentElement.coerce(num)
    den = LaurentElement.coerce(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero element")
    if num.is_zero():
        return LaurentElement.zero()
    if den.is_monomial():
        (e, c), = den.items()
        return LaurentElement._raw({ex - e: v / c for ex, v in num.items()})

    nb = _coordinate_bounds(num)
    db = _coordinate_bounds(den)
    box = {}
    for k in set(nb) | set(db):
        nlo, nhi = nb.get(k, (Fraction(0), Fraction(0)))
        dlo, dhi = db.get(k, (Fraction(0), Fraction(0)))
        lo, hi = nlo - dlo, nhi - dhi
        if lo > hi:
            raise NotDivisible("degree bounds are inconsistent")
        box[k] = (lo, hi)

    lead_e, lead_c = den.leading_term()
    den_terms = list(den.items())
    rem = dict(num.items())
    quotient: Dict[ExponentForm, Fraction] = {}
    while rem:
        r_e, r_c = LaurentElement._raw(rem).leading_term()
        e = r_e - lead_e
        for k, c in e.items:
            if k not in box:
                raise NotDivisible("quotient exponent outside the admissible lattice")
        for k, (lo, hi) in box.items():
            v = e.coefficient(k)
            if v < lo or v > hi:
                raise NotDivisible(f"remainder does not vanish: {format_element(LaurentElement._raw(rem))}")
        c = r_c / lead_c
        quotient[e] = quotient.get(e, 0) + c
        for de, dc in den_terms:
            t = de + e
            v = rem.get(t, 0) - c * dc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return LaurentElement._raw({e: c for e, c in quotient.items() if c})


@dataclass(frozen=True, eq=False)
class LaurentFraction:
    """A formal quotient ``numerator / denominator`` of Laurent elements."""

    numerator: LaurentElement
    denominator: LaurentElement = field(default_factory=LaurentElement.one)

    def __post_init__(self):
        object.__setattr__(self, "numerator", LaurentElement.coerce(self.numerator))
        object.__setattr__(self, "denominator", LaurentElement.coerce(self.denominator))
        if self.denominator.is_zero():
            raise ZeroDivisionError("LaurentFraction with zero denominator")

    @classmethod
    def coerce(cls, x) -> "LaurentFraction":
        return x if isinstance(x, LaurentFraction) else cls(LaurentElement.coerce(x))

    def __add__(self, other) -> "LaurentFraction":
        other = LaurentFraction.coerce(other)
        if self.denominator == other.denominator:
            return LaurentFraction(self.numerator + other.numerator, self.denominator)
        return LaurentFraction(self.numerator * other.denominator + other.numerator * self.denominator,
                               self.denominator * other.denominator)

    __radd__ = __add__

    def __neg__(self) -> "LaurentFraction":
        return LaurentFraction(-self.numerator, self.denominator)

    def __sub__(self, other) -> "LaurentFraction":
        return self + (-LaurentFraction.coerce(other))

    def __mul__(self, other) -> "LaurentFraction":
        other = LaurentFraction.coerce(other)
        return LaurentFraction(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LaurentFraction":
        other = LaurentFraction.coerce(other)
        return LaurentFraction(self.numerator * other.denominator, self.denominator * other.numerator)

    def __eq__(self, other) -> bool:
        try:
            other = LaurentFraction.coerce(other)
        except TypeError:
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def reduce(self) -> Union[LaurentElement, "LaurentFraction"]:
        """The quotient as a :class:`LaurentElement` when it divides exactly."""
        try:
            return exact_div(self.numerator, self.denominator)
        except NotDivisible:
            return self

    def to_element(self) -> LaurentElement:
        return exact_div(self.numerator, self.denominator)

    def substitute(self, assignment) -> "LaurentFraction":
        return LaurentFraction(self.numerator.substitute(assignment), self.denominator.substitute(assignment))

    def __str__(self) -> str:
        return f"({format_element(self.numerator)}) / ({format_element(self.denominator)})"


# --- evaluation -----------------------------------------------------------

def _exact_root(x: Fraction, n: int) -> Fraction:
    if n == 1:
        return x
    if x < 0 and n % 2 == 0:
        raise NonIntegralExponent(f"no real {n}-th root of {x}")
    sign = -1 if x < 0 else 1
    num, den = abs(x.numerator), x.denominator
    rn, rd = _int_root(num, n), _int_root(den, n)
    if rn is None or rd is None:
        raise NonIntegralExponent(f"{x} is not an exact {n}-th power")
    return sign * Fraction(rn, rd)


def _int_root(v: int, n: int) -> Optional[int]:
    if v in (0, 1):
        return v
    r = round(v ** (1.0 / n)) if v.bit_length() < 1000 else None
    if r is None:
        lo, hi = 0, 1 << (v.bit_length() // n + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** n < v:
                lo = mid + 1
            else:
                hi = mid
        r = lo
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** n == v:
            return cand
    return None


def _rational_power(q: Fraction, e: Fraction) -> Fraction:
    if e.denominator == 1:
        return q ** e.numerator
    if q == 0:
        raise ZeroDivisionError("zero to a fractional power")
    return _exact_root(q, e.denominator) ** e.numerator


def eval_at(x, assignment: Mapping[ParamSymbol, Rational], q_value: Rational) -> Fraction:
    """Exact value of ``x`` at ``a_i = assignment[a_i]`` and ``q = q_value``.

    Non-integral exponents are accepted only when ``q_value`` is an exact power
    of the needed order; otherwise :class:`NonIntegralExponent` is raised.
    """
    if isinstance(x, LaurentFraction):
        return eval_at(x.numerator, assignment, q_value) / eval_at(x.denominator, assignment, q_value)
    q = _frac(q_value)
    total = Fraction(0)
    for e, c in LaurentElement.coerce(x).items():
        ev = e.substitute(assignment)
        if not ev.is_constant():
            missing = sorted(ev.symbols)
            raise KeyError(f"unassigned parameters: {', '.join(map(str, missing))}")
        total += c * _rational_power(q, ev.constant)
    return total


def eval_monomials(x, q_value: Rational, base_values: Mapping[ParamSymbol, Rational]) -> Fraction:
    """Evaluate with ``q^{a_i}`` replaced by ``base_values[a_i]`` (not by ``q_value**a_i``).

    Requires integral exponents and no quadratic part.
    """
    if isinstance(x, LaurentFraction):
        return (eval_monomials(x.numerator, q_value, base_values)
                / eval_monomials(x.denominator, q_value, base_values))
    q = _frac(q_value)
    total = Fraction(0)
    for e, c in LaurentElement.coerce(x).items():
        val = Fraction(c)
        for key, coef in e.items:
            if len(key) == 2:
                raise NonIntegralExponent("quadratic exponent cannot be evaluated on monomial values")
            if coef.denominator != 1:
                raise NonIntegralExponent(f"non-integral exponent {coef}")
            base = q if key == () else _frac(base_values[key[0]])
            val *= base ** coef.numerator
        total += val
    return total


def substitute(x, assignment: Mapping[ParamSymbol, Rational]):
    """Replace parameters by rational values inside every exponent."""
    return x.substitute(assignment)


# --- ring membership ------------------------------------------------------

@dataclass
class RingReport:
    """Outcome of :func:`check_polynomial_ring`."""

    ok: bool
    failures: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def check_polynomial_ring(x: LaurentElement, allowed: Iterable[ParamSymbol]) -> RingReport:
    """Test membership in ``Z[q^{±1}, q_i^{±1} : a_i in allowed]``."""
    allowed = set(allowed)
    failures: List[str] = []
    for e, c in LaurentElement.coerce(x).sorted_terms():
        where = f"term {format_element(LaurentElement.monomial(e, c))}"
        if c.denominator != 1:
            failures.append(f"{where}: non-integer coefficient")
        if e.quadratic_part:
            failures.append(f"{where}: quadratic exponent present")
        for key, coef in e.items:
            if len(key) < 2 and coef.denominator != 1:
                failures.append(f"{where}: non-integer exponent")
                break
        extra = set(e.linear_part) - allowed
        if extra:
            failures.append(f"{where}: parameter(s) {', '.join(sorted(map(str, extra)))} not allowed")
    return RingReport(not failures, failures)


# --- canonical strings ----------------------------------------------------

def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_key(key: tuple) -> str:
    if len(key) == 2 and key[0] == key[1]:
        return f"{key[0].name}^2"
    return "*".join(s.name for s in key)


def format_exponent(e: ExponentForm) -> str:
    parts = []
    for key, c in e.items:
        if key == ():
            body = _fmt_rat(abs(c))
        elif abs(c) == 1:
            body = _fmt_key(key)
        else:
            body = f"{_fmt_rat(abs(c))}*{_fmt_key(key)}"
        parts.append(("-" if c < 0 else "+", body))
    return _join(parts) if parts else "0"


def _join(parts) -> str:
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_element(x) -> str:
    """Canonical string: terms in descending term order, ``c*q^(e)``."""
    if isinstance(x, LaurentFraction):
        return str(x)
    x = LaurentElement.coerce(x)
    if x.is_zero():
        return "0"
    parts = []
    for e, c in x.sorted_terms():
        if not e:
            body = _fmt_rat(abs(c))
        else:
            mono = f"q^({format_exponent(e)})"
            body = mono if abs(c) == 1 else f"{_fmt_rat(abs(c))}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    return _join(parts)


def element_to_json(x: LaurentElement) -> list:
    """JSON term list; rationals are emitted as strings."""
    out = []
    for e, c in LaurentElement.coerce(x).sorted_terms():
        out.append({
            "coefficient": _fmt_rat(c),
            "exponent": {
                "constant": _fmt_rat(e.constant),
                "linear": {s.name: _fmt_rat(v) for s, v in e.linear_part.items()},
                "quadratic": {_fmt_key(k): _fmt_rat(v) for k, v in e.quadratic_part.items()},
            },
        })
    return out


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^\()|([-+*^()]))")


def _tokenize(text: str) -> List[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse near {text[pos:]!r}")
        out.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    return out


def parse_element(text: str, symbols: Mapping[str, ParamSymbol]) -> LaurentElement:
    """Inverse of :func:`format_element` (test support)."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected!r}, got {tok!r}")
        pos += 1
        return tok

    def signed_terms(parse_one, closing):
        terms = []
        sign = 1
        if peek() == "-":
            take()
            sign = -1
        while True:
            terms.append(parse_one(sign))
            if peek() in ("+", "-"):
                sign = 1 if take() == "+" else -1
            elif peek() == closing:
                return terms
            else:
                raise ValueError(f"unexpected token {peek()!r}")

    def exponent_term(sign):
        coef = Fraction(sign)
        tok = peek()
        if tok is not None and tok[0].isdigit():
            coef *= Fraction(take())
            if peek() != "*":
                return ((), coef)
            take("*")
        key = [symbols[take()]]
        if peek() == "^":
            take("^")
            if take() != "2":
                raise ValueError("only squares are allowed in exponents")
            key.append(key[0])
        elif peek() == "*":
            take("*")
            key.append(symbols[take()])
        return (tuple(key), coef)

    def element_term(sign):
        coef = Fraction(sign)
        tok = peek()
        if tok is not None and tok[0].isdigit():
            coef *= Fraction(take())
            if peek() != "*":
                return (ZERO_FORM, coef)
            take("*")
        if take() != "q":
            raise ValueError("expected q")
        take("^(")
        exp = ExponentForm(signed_terms(exponent_term, ")"))
        take(")")
        return (exp, coef)

    if toks == ["0"]:
        return LaurentElement.zero()
    toks.append("$")
    terms = signed_terms(element_term, "$")
    return LaurentElement(terms)
