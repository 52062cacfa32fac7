"""Sparse linear maps with exact entries.

A map is a dict ``{input_key: {output_key: coefficient}}``: column-major, so
applying a map to a basis vector is a lookup.  Keys are ints for a single
module and tuples of ints for tensor products.  Entries may be any ring
elements supporting ``+``, ``*`` and truth testing.
"""
from __future__ import annotations

from typing import Callable, Dict, Hashable, Iterable, Mapping

LinearMap = Dict[Hashable, Dict[Hashable, object]]
Vector = Dict[Hashable, object]


def identity(keys: Iterable[Hashable], one) -> LinearMap:
    return {k: {k: one} for k in keys}


def diagonal(values: Mapping[Hashable, object]) -> LinearMap:
    return {k: {k: v} for k, v in values.items() if v}


def add_into(acc: Vector, vec: Mapping, scale=None) -> Vector:
    for k, v in vec.items():
        if scale is not None:
            v = v * scale
        old = acc.get(k)
        if old is None:
            if v:
                acc[k] = v
        else:
            new = old + v
            if new:
                acc[k] = new
            else:
                del acc[k]
    return acc


def apply(m: LinearMap, vec: Mapping) -> Vector:
    out: Vector = {}
    for k, c in vec.items():
        col = m.get(k)
        if col:
            add_into(out, col, c)
    return out


def compose(a: LinearMap, b: LinearMap) -> LinearMap:
    """``a o b`` (apply ``b`` first)."""
    out = {}
    for k, col in b.items():
        v = apply(a, col)
        if v:
            out[k] = v
    return out


def add(a: LinearMap, b: LinearMap, scale_b=None) -> LinearMap:
    out = {k: dict(v) for k, v in a.items()}
    for k, col in b.items():
        cur = out.setdefault(k, {})
        add_into(cur, col, scale_b)
        if not cur:
            del out[k]
    return out


def scale(a: LinearMap, c) -> LinearMap:
    out = {}
    for k, col in a.items():
        new = {j: v * c for j, v in col.items()}
        new = {j: v for j, v in new.items() if v}
        if new:
            out[k] = new
    return out


def map_entries(a: LinearMap, fn: Callable) -> LinearMap:
    out = {}
    for k, col in a.items():
        new = {}
        for j, v in col.items():
            w = fn(v)
            if w:
                new[j] = w
        if new:
            out[k] = new
    return out


def is_zero(a: LinearMap) -> bool:
    return not any(any(bool(v) for v in col.values()) for col in a.values())


def equal(a: LinearMap, b: LinearMap) -> bool:
    keys = set(a) | set(b)
    for k in keys:
        ca, cb = a.get(k, {}), b.get(k, {})
        for j in set(ca) | set(cb):
            x, y = ca.get(j), cb.get(j)
            if x is None:
                if y:
                    return False
            elif y is None:
                if x:
                    return False
            elif x != y:
                return False
    return True


def power(a: LinearMap, k: int, keys: Iterable[Hashable], one) -> LinearMap:
    out = identity(keys, one)
    for _ in range(k):
        out = compose(a, out)
    return out


def entry(a: LinearMap, row: Hashable, col: Hashable, zero=0):
    return a.get(col, {}).get(row, zero)
