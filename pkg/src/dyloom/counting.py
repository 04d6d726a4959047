"""Exact counts: Stirling numbers, mosaic counts F(n, m), loom counts H(n, m).

All functions return Python ints and memoize on their arguments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

MOSAIC_METHODS = ("recursion_row", "recursion_col", "closed_stirling", "closed_sum")
LOOM_METHODS = ("row", "col", "conjectured")


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind via S(n+1,k+1) = (k+1)S(n,k+1) + S(n,k)."""
    if n < 0 or k < 0:
        return 0
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0:
        return 0
    if k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def stirling_lemma_sides(n: int, k: int) -> tuple[int, int]:
    """Both sides of  k S(n+1,k) = sum_{l=k-1}^{n} (-1)^(n-l) C(n+1,l) S(l+1,k)."""
    lhs = k * stirling2(n + 1, k)
    rhs = 0
    for ell in range(max(k - 1, 0), n + 1):
        rhs += (-1) ** (n - ell) * comb(n + 1, ell) * stirling2(ell + 1, k)
    return lhs, rhs


# -- mosaics -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _F_row(n: int, m: int) -> int:
    if n == 0 or m == 0:
        return 1
    return sum(comb(m + 1, ell) * _F_row(n - 1, ell) for ell in range(m + 1))


@lru_cache(maxsize=None)
def _F_col(n: int, m: int) -> int:
    if n == 0 or m == 0:
        return 1
    return sum(comb(n + 1, k) * _F_col(k, m - 1) for k in range(n + 1))


def _F_stirling(n: int, m: int) -> int:
    return sum((-1) ** (n - k + 1) * factorial(k) * k ** m * stirling2(n + 1, k)
               for k in range(1, n + 2))


def _nonincreasing(start: int, length: int):
    if length == 0:
        yield ()
        return
    for k in range(start, -1, -1):
        for rest in _nonincreasing(k, length - 1):
            yield (k,) + rest


@lru_cache(maxsize=None)
def _F_sum(n: int, m: int) -> int:
    # sequences m = k_0 >= k_1 >= ... >= k_n >= 0; the trailing factor
    # C(k_n + 1, k_{n+1}) is read with k_{n+1} = 0 and contributes 1
    total = 0
    for tail in _nonincreasing(m, n):
        ks = (m,) + tail
        prod = 1
        for i in range(n):
            prod *= comb(ks[i] + 1, ks[i + 1])
        total += prod
    return total


def mosaic_count(n: int, m: int, method: str = "recursion_row") -> int:
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    if method == "recursion_row":
        return _F_row(n, m)
    if method == "recursion_col":
        return _F_col(n, m)
    if method == "closed_stirling":
        return _F_stirling(n, m)
    if method == "closed_sum":
        return _F_sum(n, m)
    raise ValueError(f"unknown method {method!r}")


# -- looms -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _H_row(n: int, m: int) -> int:
    if n == 0 or m == 0:
        return 1
    total = 2 * _H_row(n - 1, m) + (2 * n + 1) * _H_row(n, m - 1)
    for k in range(1, n):
        total += comb(n - 1, k) * 2 ** k * _H_row(n - k, m - 1)
    for k in range(1, n - 1):
        for ell in range(1, k + 1):
            total += comb(k, ell) * 2 ** (ell + 1) * _H_row(n - ell, m - 1)
    return total


@lru_cache(maxsize=None)
def _H_col(n: int, m: int) -> int:
    if n == 0 or m == 0:
        return 1
    total = 2 * _H_col(n, m - 1) + (2 * m + 1) * _H_col(n - 1, m)
    for k in range(1, m):
        total += comb(m - 1, k) * 2 ** k * _H_col(n - 1, m - k)
    for k in range(1, m - 1):
        for ell in range(1, k + 1):
            total += comb(k, ell) * 2 ** (ell + 1) * _H_col(n - 1, m - ell)
    return total


@lru_cache(maxsize=None)
def conjecture_T(m: int, k: int) -> int:
    if m == 0:
        return 1 if k == 0 else 0
    if k < 0 or k > m:
        return 0
    return (2 * k + 1) * conjecture_T(m - 1, k) + 2 * k * conjecture_T(m - 1, k - 1)


def loom_count_recursive(n: int, m: int, which: str = "row") -> int:
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    if which == "row":
        return _H_row(n, m)
    if which == "col":
        return _H_col(n, m)
    raise ValueError(f"unknown recursion {which!r}")


def loom_count_conjectured(n: int, m: int) -> int:
    return sum((-1) ** (m - k) * conjecture_T(m, k) * (2 * k + 1) ** n for k in range(m + 1))


def loom_count(n: int, m: int, method: str = "row") -> int:
    if method == "conjectured":
        return loom_count_conjectured(n, m)
    return loom_count_recursive(n, m, method)


@dataclass
class CountTable:
    kind: str  # "F", "H" or "H_conjectured"
    values: dict[tuple[int, int], int] = field(default_factory=dict)

    @classmethod
    def build(cls, kind: str, max_n: int, max_m: int) -> "CountTable":
        fn = {
            "F": lambda a, b: mosaic_count(a, b),
            "H": lambda a, b: loom_count_recursive(a, b),
            "H_conjectured": loom_count_conjectured,
        }[kind]
        vals = {(a, b): fn(a, b) for a in range(max_n + 1) for b in range(max_m + 1)}
        return cls(kind, vals)

    def is_symmetric(self) -> bool:
        return all(self.values.get((b, a), v) == v for (a, b), v in self.values.items())
