"""Exact arithmetic in U(sl2) and the realization map r_n^σ -> U(sl2).

Elements are dicts {(i, j, k): Fraction} for the PBW monomials e^i f^j h^k,
with [e,f] = h, [h,e] = 2e, [h,f] = -2f.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .perm import Permutation, inverse

Monomial = tuple[int, int, int]
PBW = dict  # Monomial -> Fraction

ONE: PBW = {(0, 0, 0): Fraction(1)}
E: PBW = {(1, 0, 0): Fraction(1)}
F: PBW = {(0, 1, 0): Fraction(1)}
H: PBW = {(0, 0, 1): Fraction(1)}


def pbw(terms: Mapping[Monomial, object] | Iterable[tuple[Monomial, object]]) -> PBW:
    items = terms.items() if isinstance(terms, Mapping) else terms
    out: dict = {}
    for mono, c in items:
        c = Fraction(c)
        if c:
            out[mono] = out.get(mono, 0) + c
    return {k: v for k, v in sorted(out.items()) if v}


def add(*xs: PBW) -> PBW:
    out: dict = {}
    for x in xs:
        for k, v in x.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in sorted(out.items()) if v}


def scale(x: PBW, c) -> PBW:
    c = Fraction(c)
    return {k: v * c for k, v in x.items() if v * c}


def sub(x: PBW, y: PBW) -> PBW:
    return add(x, scale(y, -1))


def _shift_h(k: int, s: int) -> dict[int, int]:
    """(h + s)^k as {power: coefficient}."""
    return {p: comb(k, p) * s ** (k - p) for p in range(k + 1)}


@lru_cache(maxsize=None)
def _times_gen(mono: Monomial, g: str) -> tuple[tuple[Monomial, int], ...]:
    """e^i f^j h^k * g in PBW order, integer coefficients."""
    i, j, k = mono
    out: dict = {}

    def put(m, c):
        if c:
            out[m] = out.get(m, 0) + c

    if g == "h":
        put((i, j, k + 1), 1)
    elif g == "f":
        # h^k f = f (h-2)^k
        for p, c in _shift_h(k, -2).items():
            put((i, j + 1, p), c)
    elif g == "e":
        # h^k e = e (h+2)^k  and  f^j e = e f^j - j f^(j-1) (h - j + 1)
        hk = _shift_h(k, 2)
        for p, c in hk.items():
            put((i + 1, j, p), c)
        if j:
            for p, c in hk.items():
                put((i, j - 1, p + 1), -j * c)
                put((i, j - 1, p), -j * (1 - j) * c)
    else:
        raise ValueError(g)
    return tuple((m, c) for m, c in out.items() if c)


@lru_cache(maxsize=None)
def _mono_mul(a: Monomial, b: Monomial) -> tuple[tuple[Monomial, int], ...]:
    cur = {a: 1}
    word = "e" * b[0] + "f" * b[1] + "h" * b[2]
    for g in word:
        nxt: dict = {}
        for m, c in cur.items():
            for m2, c2 in _times_gen(m, g):
                nxt[m2] = nxt.get(m2, 0) + c * c2
        cur = {m: c for m, c in nxt.items() if c}
    return tuple(cur.items())


def pbw_mul(x: PBW, y: PBW) -> PBW:
    out: dict = {}
    for ma, ca in x.items():
        for mb, cb in y.items():
            for m, c in _mono_mul(ma, mb):
                out[m] = out.get(m, 0) + ca * cb * c
    return {k: Fraction(v) for k, v in sorted(out.items()) if v}


def word(letters: str) -> PBW:
    """Product of generators given as a string over 'efh'."""
    x = ONE
    for g in letters:
        x = pbw_mul(x, {"e": E, "f": F, "h": H}[g])
    return x


# r = e⊗f + (1/2)h⊗(1/2)h
_A = {1: ("e", Fraction(1)), 2: ("h", Fraction(1, 2))}
_B = {1: ("f", Fraction(1)), 2: ("h", Fraction(1, 2))}


@lru_cache(maxsize=None)
def _realize_basis(images: tuple[int, ...]) -> tuple[tuple[Monomial, Fraction], ...]:
    p = Permutation(images)
    n = p.degree
    inv = inverse(p).images
    total: dict = {}
    for idx in itertools.product((1, 2), repeat=n):
        letters = ""
        coeff = Fraction(1)
        for t in range(n):
            g, c = _A[idx[t]]
            letters += g
            coeff *= c
        for t in range(n - 1, -1, -1):
            g, c = _B[idx[inv[t]]]
            letters += g
            coeff *= c
        for m, c in word(letters).items():
            total[m] = total.get(m, 0) + coeff * c
    return tuple((m, c) for m, c in sorted(total.items()) if c)


def realize_basis(p: Permutation) -> PBW:
    return dict(_realize_basis(p.images))


def realize(x) -> PBW:
    """ρ on an AlgebraElement (or a mapping Permutation -> coefficient)."""
    terms = x.terms if hasattr(x, "terms") else x
    out: PBW = {}
    for p, c in terms.items():
        out = add(out, scale(realize_basis(p), c))
    return out


def to_string(x: PBW) -> str:
    if not x:
        return "0"
    parts = []
    for (i, j, k), c in x.items():
        mono = "".join(s if e == 1 else f"{s}^{e}" for s, e in (("e", i), ("f", j), ("h", k)) if e)
        parts.append(f"{c}{'*' + mono if mono else ''}")
    return " + ".join(parts)


def to_records(x: PBW) -> list[dict]:
    return [{"e": i, "f": j, "h": k, "coeff": str(c)} for (i, j, k), c in x.items()]
