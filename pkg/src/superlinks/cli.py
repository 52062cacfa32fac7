"""Command-line driver.

    superlinks roots     --family sl --m 2 --n 1
    superlinks typical   --family sl --m 2 --n 1 --c 0
    superlinks dhat      --family sl --m 2 --n 1 --c 0
    superlinks sprime    --family sl --m 2 --n 1 --c 0 --c2 1
    superlinks hopf      --family osp --m 2 --n 1 --c 1 --c2 0
    superlinks invariant --file hopf.json
    superlinks invariant --braid "s1 s1" --color "1:(sl,2,1,0,a)" --color "2:(sl,2,1,0,b)"
    superlinks selfcheck

Exit codes: 0 success, 1 usage or input error, 2 atypical color,
3 internal consistency failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, TextIO, Union

from . import acceptance
from .characters import AtypicalLabel, DegenerateEvaluation, TypicalLabel, dhat, normalized_hopf, sprime
from .exponent_ring import (
    LaurentElement,
    LaurentFraction,
    NotDivisible,
    ParamSymbol,
    element_to_json,
    format_element,
    format_exponent,
)
from .root_data import AlgebraSpec, InvalidSpec, NegativeLabel, atypical_values, build_root_data, root_data_to_json
from .tangle import (
    BraidSyntaxError,
    ColorMismatch,
    IndexOutOfRange,
    InvariantResult,
    NoTypicalColor,
    NotScalar,
    RingCheckFailure,
    load_link,
    normalize_invariant,
    parse_braid,
    parse_color_binding,
)
from .uq_engine import ConstructionFailure, NormalizationFailure, UnsupportedAlgebra

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_ATYPICAL = 2
EXIT_INTERNAL = 3

INPUT_ERRORS = (InvalidSpec, NegativeLabel, BraidSyntaxError, IndexOutOfRange, ColorMismatch,
                UnsupportedAlgebra, OSError, json.JSONDecodeError, KeyError, ValueError)
ATYPICAL_ERRORS = (AtypicalLabel, NoTypicalColor)
INTERNAL_ERRORS = (NotScalar, RingCheckFailure, DegenerateEvaluation, NotDivisible,
                   ConstructionFailure, NormalizationFailure)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; 2 is reserved for atypical colors here
    def error(self, message):
        raise UsageError(message)


def format_polynomial(x: Union[LaurentElement, LaurentFraction], style: str = "text") -> str:
    """Canonical text, or a JSON term list with exact rationals as strings."""
    if style == "text":
        return format_element(x)
    if style == "json":
        return json.dumps(_json_value(x))
    raise ValueError(f"unknown style {style!r}")


def _json_value(x):
    if isinstance(x, LaurentFraction):
        return {"numerator": element_to_json(x.numerator), "denominator": element_to_json(x.denominator)}
    return element_to_json(x)


# --- argument handling ---------------------------------------------------------

def _add_algebra(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", default="sl", choices=["sl", "osp", "SL", "OSP"])
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=1, help="n of sl(m|n); rank n of osp(2|2n)")


def _add_label(p: argparse.ArgumentParser, second: bool = False) -> None:
    p.add_argument("--c", default="", help="comma-separated label entries")
    p.add_argument("--a", default="a1", help="parameter: a number or a symbol name")
    p.add_argument("--odd", action="store_true", help="use the odd-parity module")
    if second:
        p.add_argument("--c2", default="", help="label entries of the second color")
        p.add_argument("--b", default="a2", help="parameter of the second color")
        p.add_argument("--odd2", action="store_true")


def _build_parser() -> _Parser:
    parser = _Parser(prog="superlinks", description="Renormalized link invariants from type-I Lie superalgebras.")
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("roots", help="root data as JSON")
    _add_algebra(p)

    p = sub.add_parser("typical", help="atypical parameter values of a label")
    _add_algebra(p)
    _add_label(p)

    for verb, text in (("dhat", "fake quantum dimension M0 / M1"),
                       ("sprime", "S'(lam, mu)"), ("hopf", "normalized Hopf pairing")):
        p = sub.add_parser(verb, help=text)
        _add_algebra(p)
        _add_label(p, second=verb != "dhat")
        p.add_argument("--json", action="store_true", help="emit the JSON term list")
        if verb == "sprime":
            p.add_argument("--route", default="factored", choices=["factored", "weyl", "formal"])

    p = sub.add_parser("invariant", help="invariant of a colored braid closure")
    p.add_argument("--file", help="JSON link file")
    p.add_argument("--braid", help='braid word such as "s1 s2^-1 s1"')
    p.add_argument("--strands", type=int)
    p.add_argument("--color", action="append", default=[], help='binding such as "1:(sl,2,1,0,a)"')
    p.add_argument("--cut", type=int, default=1, help="component to cut open")
    p.add_argument("--no-check", action="store_true", help="report a failed ring check instead of exiting 3")

    p = sub.add_parser("selfcheck", help="run the acceptance suite")
    p.add_argument("--only", type=int, action="append", help="criterion number (repeatable)")
    return parser


def _parse_entries(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"label entries must be integers: {text!r}") from None


def _parse_param(text: str, index: int, symbols: Dict[str, ParamSymbol]):
    try:
        return Fraction(text)
    except ValueError:
        pass
    if not text.isidentifier() or text == "q":
        raise UsageError(f"bad parameter {text!r}")
    if text not in symbols:
        symbols[text] = ParamSymbol.make(index, text)
    return symbols[text]


def _spec(args) -> AlgebraSpec:
    return AlgebraSpec(args.family.upper(), args.m, args.n)


def _label(args, second: bool = False, symbols=None) -> TypicalLabel:
    symbols = {} if symbols is None else symbols
    rd = build_root_data(_spec(args))
    if second:
        c, a, odd, index = args.c2, args.b, args.odd2, 2
    else:
        c, a, odd, index = args.c, args.a, args.odd, 1
    return TypicalLabel(rd, _parse_entries(c), _parse_param(a, index, symbols), odd)


def _fmt_value(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# --- verbs -----------------------------------------------------------------------

def _cmd_roots(args, out: TextIO) -> int:
    out.write(json.dumps(root_data_to_json(build_root_data(_spec(args))), indent=2) + "\n")
    return EXIT_OK


def _cmd_typical(args, out: TextIO) -> int:
    rd = build_root_data(_spec(args))
    c = _parse_entries(args.c)
    values = sorted(atypical_values(rd, c), reverse=True)
    try:
        a = Fraction(args.a)
    except ValueError:
        out.write("atypical a ∈ {" + ", ".join(_fmt_value(v) for v in values) + "}\n")
        return EXIT_OK
    if a in values:
        out.write(f"atypical: a = {_fmt_value(a)}\n")
        return EXIT_ATYPICAL
    out.write(f"typical: a = {_fmt_value(a)}\n")
    return EXIT_OK


def _cmd_dhat(args, out: TextIO) -> int:
    d = dhat(_label(args))
    if args.json:
        out.write(json.dumps({"m0": _json_value(d.m0), "m1": _json_value(d.m1),
                              "m1_factors": [_json_value(f) for f in d.m1_factors]}, indent=2) + "\n")
        return EXIT_OK
    m1 = "*".join(f"({format_element(f)})" for f in d.m1_factors) or "1"
    out.write(f"M0 = {format_element(d.m0)}\n")
    out.write(f"M1 = {m1}\n")
    return EXIT_OK


def _cmd_pairing(args, out: TextIO) -> int:
    symbols: Dict[str, ParamSymbol] = {}
    lam = _label(args, symbols=symbols)
    mu = _label(args, second=True, symbols=symbols)
    if args.verb == "sprime":
        x = sprime(lam, mu, args.route)
    else:
        x = normalized_hopf(lam, mu)
    out.write(format_polynomial(x, "json" if args.json else "text") + "\n")
    return EXIT_OK


def _result_json(r: InvariantResult) -> dict:
    k = r.linking.size
    return {
        "components": [list(c) for c in r.components],
        "cut_component": r.cut_component,
        "linking": [[_fmt_value(r.linking[i, j]) for j in range(1, k + 1)] for i in range(1, k + 1)],
        "correction": format_exponent(r.correction),
        "framed_value": format_element(r.framed_value),
        "normalized": format_element(r.normalized),
        "normalized_terms": _json_value(r.normalized),
        "m1": None if r.m1 is None else format_element(r.m1),
        "checked": None if r.checked is None else format_element(r.checked),
        "ring_check": None if r.ring_report is None else {
            "ok": r.ring_report.ok, "failures": list(r.ring_report.failures)},
    }


def _cmd_invariant(args, out: TextIO) -> int:
    if bool(args.file) == bool(args.braid):
        raise UsageError("give exactly one of --file or --braid")
    if args.file:
        b = load_link(args.file)
    else:
        symbols: Dict[str, ParamSymbol] = {}
        colors = dict(parse_color_binding(text, symbols) for text in args.color)
        b = parse_braid(args.braid, colors, args.strands)
    r = normalize_invariant(b, args.cut, strict=not args.no_check)
    out.write(json.dumps(_result_json(r), indent=2) + "\n")
    if r.ring_report is not None and not r.ring_report.ok:
        return EXIT_INTERNAL
    return EXIT_OK


def _cmd_selfcheck(args, out: TextIO) -> int:
    results = acceptance.run_all(args.only)
    for r in results:
        out.write(r.line() + "\n")
    failed = [r.number for r in results if not r.ok]
    out.write(f"{len(results) - len(failed)}/{len(results)} criteria passed\n")
    return EXIT_INTERNAL if failed else EXIT_OK


COMMANDS = {
    "roots": _cmd_roots,
    "typical": _cmd_typical,
    "dhat": _cmd_dhat,
    "sprime": _cmd_pairing,
    "hopf": _cmd_pairing,
    "invariant": _cmd_invariant,
    "selfcheck": _cmd_selfcheck,
}


def run_command(argv: List[str], out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _build_parser().parse_args(argv)
        return COMMANDS[args.verb](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_INPUT
    except ATYPICAL_ERRORS as exc:
        err.write(f"atypical color: {exc}\n")
        return EXIT_ATYPICAL
    except INTERNAL_ERRORS as exc:
        err.write(f"internal failure ({type(exc).__name__}): {exc}\n")
        return EXIT_INTERNAL
    except INPUT_ERRORS as exc:
        err.write(f"input error ({type(exc).__name__}): {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
