"""The graded algebra ⊕_n Z[S_n] with the loom product.

``r_n^σ ∘ r_m^τ = Σ_L (-1)^{c2(L)} r_{n+m}^{γ̃(σ, L, τ)}`` over all n×m looms.
The loom enumeration for a given (n, m) is reduced once to a table keyed by
(left bundle sizes, top bundle sizes, γ) so that every (σ, τ) pair reuses it.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from . import loom as _loom
from . import mosaic as _mosaic
from .loom import Loom
from .perm import Permutation, all_perms, block_sum, identity

# (left_sizes, top_sizes, gamma images) -> (positive count, negative count)
LoomTable = dict


def _sort_key(p: Permutation):
    return (p.degree, p.images)


class AlgebraElement:
    """Finite Z-linear combination of basis elements r_n^σ, keyed by σ."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Permutation, int] | Iterable[tuple[Permutation, int]] = ()):
        acc: dict[Permutation, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for p, c in items:
            acc[p] += int(c)
        self.terms = {p: acc[p] for p in sorted(acc, key=_sort_key) if acc[p]}

    @classmethod
    def basis(cls, p: Permutation) -> "AlgebraElement":
        return cls({p: 1})

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return self.terms == other.terms
        if isinstance(other, Mapping):
            return self.terms == AlgebraElement(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale(-1)

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-1)

    def scale(self, c: int) -> "AlgebraElement":
        return AlgebraElement({p: c * v for p, v in self.terms.items()})

    def __rmul__(self, c: int) -> "AlgebraElement":
        return self.scale(c)

    def __matmul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)

    def coefficient(self, p: Permutation) -> int:
        return self.terms.get(p, 0)

    def degrees(self) -> set[int]:
        return {p.degree for p in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def to_records(self) -> list[dict]:
        return [{"degree": p.degree, "perm": p.one_line(), "coeff": str(c)} for p, c in self.terms.items()]

    @classmethod
    def from_records(cls, records: Iterable[dict]) -> "AlgebraElement":
        return cls((Permutation.from_one_line(r["perm"]), int(r["coeff"])) for r in records)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*r[{p}]" for p, c in self.terms.items())


def r(p: Permutation) -> AlgebraElement:
    return AlgebraElement.basis(p)


def r_id(n: int) -> AlgebraElement:
    return r(identity(n))


# -- loom tables -------------------------------------------------------------

def _table_chunk(args) -> dict:
    n, m, lo, hi = args
    out: dict = {}
    for idx, M in enumerate(_mosaic.iter_mosaics(n, m)):
        if idx < lo:
            continue
        if idx >= hi:
            break
        for L in _loom.refine(M):
            key = (L.left_sizes(), L.top_sizes(), _loom.gamma(L).images)
            pos, neg = out.get(key, (0, 0))
            if _loom.sign(L) > 0:
                pos += 1
            else:
                neg += 1
            out[key] = (pos, neg)
    return out


def build_loom_table(n: int, m: int, threads: int = 1) -> LoomTable:
    from .counting import mosaic_count

    total = mosaic_count(n, m)
    if threads <= 1 or total < 2000:
        chunks = [_table_chunk((n, m, 0, total))]
    else:
        step = -(-total // (4 * threads))
        jobs = [(n, m, lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=threads) as ex:
            chunks = list(ex.map(_table_chunk, jobs))
    merged: dict = {}
    for ch in chunks:
        for key, (p, q) in ch.items():
            a, b = merged.get(key, (0, 0))
            merged[key] = (a + p, b + q)
    return {k: merged[k] for k in sorted(merged)}


_TABLES: dict[tuple[int, int], LoomTable] = {}
_table_provider = None


def set_table_provider(fn) -> None:
    """Install a callable (n, m) -> LoomTable, e.g. a disk cache; None restores the default."""
    global _table_provider
    _table_provider = fn
    _TABLES.clear()
    _basis_product.cache_clear()


def loom_table(n: int, m: int) -> LoomTable:
    key = (n, m)
    if key not in _TABLES:
        _TABLES[key] = _table_provider(n, m) if _table_provider else build_loom_table(n, m)
    return _TABLES[key]


@lru_cache(maxsize=None)
def _basis_product(s: tuple[int, ...], t: tuple[int, ...]) -> tuple[tuple[Permutation, int], ...]:
    sigma, tau = Permutation(s), Permutation(t)
    acc: Counter = Counter()
    for (ls, ts, g), (pos, neg) in loom_table(sigma.degree, tau.degree).items():
        if pos != neg:
            acc[_loom.glue(sigma, ls, Permutation(g), ts, tau)] += pos - neg
    return tuple((p, acc[p]) for p in sorted(acc, key=_sort_key) if acc[p])


def basis_product(sigma: Permutation, tau: Permutation) -> AlgebraElement:
    return AlgebraElement(_basis_product(sigma.images, tau.images))


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    acc: dict[Permutation, int] = defaultdict(int)
    for p, a in x.terms.items():
        for q, b in y.terms.items():
            for z, c in _basis_product(p.images, q.images):
                acc[z] += a * b * c
    return AlgebraElement(acc)


def structure_constants(sigma: Permutation, tau: Permutation) -> dict[Permutation, tuple[int, int]]:
    """π -> (P, N): positive and negative looms with γ̃(σ, L, τ) = π."""
    acc: dict[Permutation, list[int]] = {}
    for (ls, ts, g), (pos, neg) in loom_table(sigma.degree, tau.degree).items():
        pi = _loom.glue(sigma, ls, Permutation(g), ts, tau)
        cur = acc.setdefault(pi, [0, 0])
        cur[0] += pos
        cur[1] += neg
    return {p: (v[0], v[1]) for p, v in sorted(acc.items(), key=lambda kv: _sort_key(kv[0]))}


def star(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    acc: dict[Permutation, int] = defaultdict(int)
    for p, a in x.terms.items():
        for q, b in y.terms.items():
            acc[block_sum(p, q)] += a * b
    return AlgebraElement(acc)


def commutator(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return multiply(x, y) - multiply(y, x)


# -- essential looms ---------------------------------------------------------

@dataclass
class SignClass:
    P: int
    N: int
    positive: list[Loom]
    negative: list[Loom]


def essential_classify(sigma: Permutation, tau: Permutation) -> dict[Permutation, SignClass]:
    """Γ^{σ,τ,π} split by sign, each list in canonical loom order."""
    out: dict[Permutation, SignClass] = {}
    for L in _loom.iter_looms(sigma.degree, tau.degree):
        pi = _loom.gamma_tilde(sigma, L, tau)
        cls = out.setdefault(pi, SignClass(0, 0, [], []))
        if _loom.sign(L) > 0:
            cls.positive.append(L)
            cls.P += 1
        else:
            cls.negative.append(L)
            cls.N += 1
    return {p: out[p] for p in sorted(out, key=_sort_key)}


def essential_set(sigma: Permutation, tau: Permutation) -> list[Loom]:
    """Drop the pairs (L_i, L_{P+N-i+1}), i <= min(P, N), from each class ordered positives first."""
    result = []
    for cls in essential_classify(sigma, tau).values():
        ordered = cls.positive + cls.negative
        total = cls.P + cls.N
        drop = set()
        for i in range(min(cls.P, cls.N)):
            drop.add(i)
            drop.add(total - 1 - i)
        result.extend(L for idx, L in enumerate(ordered) if idx not in drop)
    return result


def essential_sum(sigma: Permutation, tau: Permutation) -> AlgebraElement:
    return AlgebraElement((_loom.gamma_tilde(sigma, L, tau), _loom.sign(L)) for L in essential_set(sigma, tau))


def all_basis(n: int) -> list[AlgebraElement]:
    return [r(p) for p in all_perms(n)]
