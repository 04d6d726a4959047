"""Desk-scale checks of the open conjectures about the loom product.

Each check returns a record ``{"conjecture", "status", "range", ...}`` with
status PASS (holds on the whole range), FAIL (counterexample listed) or
EVIDENCE (a finite computation that is consistent with the claim but cannot
settle it, e.g. a centralizer against finitely many degrees).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, lcm
from typing import Iterator

from . import loom as _loom
from .algebra import AlgebraElement, multiply, r, r_id, star
from .counting import loom_count_conjectured, loom_count_recursive
from .errors import BudgetExceeded
from .mosaic import alpha, beta, iter_mosaics
from .perm import (Permutation, all_perms, compose, contains_pattern, from_cycles,
                   identity, transposition)

DEFAULT_BUDGET = 200_000  # looms touched by one report


def pi_perm(n: int) -> Permutation:
    """Π_{i <= n/2} (i, n-i+1)."""
    return from_cycles(n, [(i, n - i + 1) for i in range(1, n // 2 + 1)])


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _fmt(p: Permutation) -> str:
    return str(p)


# -- dominant coefficient ----------------------------------------------------

def dominant_identity(max_n: int, max_m: int) -> dict:
    bad, rows = [], []
    for n in range(1, max_n + 1):
        for m in range(1, max_m + 1):
            x = multiply(r_id(n), r_id(m))
            c = x.coefficient(identity(n + m))
            top = max(abs(v) for v in x.terms.values())
            rows.append({"n": n, "m": m, "c_id": str(c), "max_abs": str(top)})
            if c != comb(n + m, n) or abs(c) < top:
                bad.append([n, m])
    return {"conjecture": "dominant_identity_coefficient", "status": _status(not bad),
            "range": f"1<=n<={max_n}, 1<=m<={max_m}", "values": rows, "counterexamples": bad}


# -- π_n identity and p_{n,m} ------------------------------------------------

def pi_identity_rhs(n: int) -> AlgebraElement:
    p1 = pi_perm(n + 1)
    out = r(p1).scale(-n) + star(r(pi_perm(n)), r_id(1))
    for i in range(1, n + 1):
        out = out + r(compose(p1, transposition(n + 1, i, i + 1)))
    return out


def pi_identity(max_n: int) -> dict:
    bad = [n for n in range(1, max_n + 1)
           if multiply(r_id(1), r(pi_perm(n))) != pi_identity_rhs(n)]
    return {"conjecture": "pi_identity", "status": _status(not bad),
            "range": f"1<=n<={max_n}", "counterexamples": bad}


def p_coefficient(n: int, m: int) -> tuple[int, int]:
    """(p_{n,m}, largest |coefficient|) of r_n^id ∘ r_m^{π_m}."""
    x = multiply(r_id(n), r(pi_perm(m)))
    return x.coefficient(pi_perm(n + m)), max(abs(v) for v in x.terms.values())


def p_recursion(max_n: int, max_m: int) -> list[dict]:
    p, top = {}, {}
    for n in range(1, max_n + 1):
        for m in range(1, max_m + 1):
            p[n, m], top[n, m] = p_coefficient(n, m)
    rng = f"1<=n<={max_n}, 1<=m<={max_m}"

    init_bad = [[n, m] for (n, m), v in p.items()
                if (n == 1 and v != -m) or (m == 1 and n > 1 and v != 0)]
    rec_bad = [[n, m] for (n, m), v in p.items() if n > 1 and m > 1
               and v != (-1) ** n * (abs(p[n - 1, m]) + abs(p[n, m - 1]))]
    dom_bad = [[n, m] for (n, m), v in p.items() if abs(v) < top[n, m]]
    dom_bad_m2 = [nm for nm in dom_bad if nm[1] > 1]
    values = [{"n": n, "m": m, "p": str(v), "max_abs": str(top[n, m])} for (n, m), v in p.items()]
    return [
        {"conjecture": "p_initial_conditions", "status": _status(not init_bad), "range": rng,
         "counterexamples": init_bad},
        {"conjecture": "p_recursion", "status": _status(not rec_bad), "range": rng,
         "counterexamples": rec_bad, "values": values},
        {"conjecture": "p_dominant", "status": _status(not dom_bad), "range": rng,
         "counterexamples": dom_bad, "holds_for_m_ge_2": not dom_bad_m2},
    ]


# -- cardinality -------------------------------------------------------------

def _double_sum(n: int, m: int) -> int:
    return sum((-1) ** (m - i) * comb(k, i) * (2 * i + 1) ** m * (2 * k + 1) ** n
               for k in range(m + 1) for i in range(k + 1))


def enumerated_loom_count(n: int, m: int, direct: bool) -> int:
    if direct:
        return sum(1 for _ in _loom.iter_looms(n, m))
    return sum(2 ** (alpha(M) + beta(M)) for M in iter_mosaics(n, m))


def cardinality(max_n: int, max_m: int, direct_limit: int = 6) -> dict:
    bad, rows = [], []
    for n in range(max_n + 1):
        for m in range(max_m + 1):
            enum = enumerated_loom_count(n, m, direct=n + m <= direct_limit)
            vals = {loom_count_conjectured(n, m), _double_sum(n, m),
                    loom_count_recursive(n, m, "row"), loom_count_recursive(n, m, "col")}
            rows.append({"n": n, "m": m, "H": str(enum)})
            if vals != {enum}:
                bad.append([n, m])
    return {"conjecture": "loom_cardinality", "status": _status(not bad),
            "range": f"0<=n<={max_n}, 0<=m<={max_m}", "values": rows, "counterexamples": bad}


# -- pattern avoidance -------------------------------------------------------

def gamma_image(n: int, m: int) -> set[Permutation]:
    return {_loom.gamma(L) for L in _loom.iter_looms(n, m)}


def avoidance(n: int, m: int) -> dict:
    N = n + m
    image = gamma_image(n, m)
    everything = all_perms(N)
    outside = [p for p in everything if p not in image]
    # every pattern of length <= N that no member contains; its minimal elements form S
    missing = [q for k in range(1, N + 1) for q in all_perms(k)
               if not any(contains_pattern(p, q) for p in image)]
    minimal = [q for q in missing
               if not any(o.degree < q.degree and contains_pattern(q, o) for o in missing)]
    return {
        "conjecture": "gamma_image_avoidance", "status": "EVIDENCE", "range": f"n={n}, m={m}",
        "image_size": len(image), "non_members": [_fmt(p) for p in outside],
        "shorter_patterns_suffice": all(q.degree < N for q in minimal),
        "minimal_patterns": [_fmt(p) for p in minimal],
    }


# -- center ------------------------------------------------------------------

def _nullspace(rows: list[list[int]], ncols: int) -> list[list[Fraction]]:
    mat = [[Fraction(v) for v in row] for row in rows if any(row)]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        lead = mat[rank][col]
        mat[rank] = [v / lead for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -mat[i][free]
        basis.append(v)
    return basis


def centralizer(d: int, against: list[Permutation]) -> list[AlgebraElement]:
    """Degree-d elements commuting with every r^τ, τ in ``against``."""
    sig = all_perms(d)
    coords: dict = {}
    cols = []
    for s in sig:
        col = {}
        for t in against:
            diff = multiply(r(s), r(t)) - multiply(r(t), r(s))
            for p, c in diff.terms.items():
                key = (t, p)
                coords.setdefault(key, len(coords))
                col[coords[key]] = c
        cols.append(col)
    rows = [[cols[j].get(i, 0) for j in range(len(sig))] for i in range(len(coords))]
    out = []
    for v in _nullspace(rows, len(sig)):
        den = lcm(*(x.denominator for x in v))
        out.append(AlgebraElement({s: int(x * den) for s, x in zip(sig, v)}))
    return out


def _proportional(x: AlgebraElement, y: AlgebraElement) -> bool:
    if set(x.terms) != set(y.terms):
        return False
    p = next(iter(x.terms))
    return all(x.terms[q] * y.terms[p] == y.terms[q] * x.terms[p] for q in x.terms)


def center(max_degree: int, max_total: int) -> dict:
    r1 = r_id(1)
    bad = [_fmt(t) for e in range(1, max_total) for t in all_perms(e)
           if multiply(r1, r(t)) != multiply(r(t), r1)]
    pieces = []
    power = r1
    for d in range(1, max_degree + 1):
        if d > 1:
            power = multiply(power, r1)
        against = [t for e in range(1, max_total - d + 1) for t in all_perms(e)]
        cz = centralizer(d, against)
        # a larger centralizer only means the tested degrees are too small to pin it down
        pieces.append({"degree": d, "tested_up_to_degree": max_total - d,
                       "centralizer_dim": len(cz),
                       "spanned_by_r1_power": len(cz) == 1 and _proportional(cz[0], power)})
    return {"conjecture": "center_generated_by_r1", "status": "FAIL" if bad else "EVIDENCE",
            "range": f"degree<={max_degree}, products of degree<={max_total}",
            "r1_noncommuting": bad, "pieces": pieces}


# -- driver ------------------------------------------------------------------

def _cost(max_n: int, max_m: int, direct_limit: int) -> int:
    total = 0
    for n in range(max_n + 1):
        for m in range(max_m + 1):
            if n + m <= direct_limit:
                total += loom_count_recursive(n, m)
    return total


def conjectures(max_n: int = 3, max_m: int = 3, budget: int = DEFAULT_BUDGET) -> Iterator[dict]:
    """Stream one record per conjecture check."""
    if max_n < 1 or max_m < 1:
        raise ValueError("max_n and max_m must be positive")
    total = max_n + max_m
    direct_limit = min(total, 6)
    cost = _cost(max_n, max_m, direct_limit) + loom_count_recursive(max_n, max_m)
    if cost > budget:
        raise BudgetExceeded(f"report would touch about {cost} looms (budget {budget})")
    yield dominant_identity(max_n, max_m)
    yield pi_identity(total - 1)
    yield from p_recursion(max_n, max_m)
    yield cardinality(max_n, max_m, direct_limit)
    for n in range(1, max_n + 1):
        for m in range(1, max_m + 1):
            if n + m <= direct_limit:
                yield avoidance(n, m)
    yield center(min(max_n, max_m), total)
