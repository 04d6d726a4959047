"""Drinfeld–Yetter looms: refinement of mosaics, validation, signs and the maps γ, γ̃.

Shape codes: X (LCross), MA/MB (bracket variants), DA/DB (cobracket
variants), H (LHor), V (LVer), . (Empty).  Each tile carries ``k`` extra
horizontal and ``l`` extra vertical pass-through strands.

Slots on an edge are numbered top to bottom (left/right edges) and left to
right (top/bottom edges).  Routing inside a tile:

  X      left i -> right i, bottom j -> top j
  MA     left strand -> top slot 1, bottom j -> top j+1   (uncrossed)
  MB     bottom j -> top j, left strand -> last top slot  (crosses the bundle)
  DA     left slot 1 -> top, left slots 2.. -> right      (uncrossed)
  DB     left slots ..-1 -> right, last left slot -> top  (crossed)
  H, V   straight through
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import mosaic as _mosaic
from .errors import DegreeMismatch, RoutingBreak
from .mosaic import Mosaic
from .perm import Permutation, block_sum, compose, identity, inflate

SHAPES = ("X", "MA", "MB", "DA", "DB", "H", "V", ".")
NAMES = {
    "X": "LCross", "MA": "LMuA", "MB": "LMuB", "DA": "DelA", "DB": "DelB",
    "H": "LHor", "V": "LVer", ".": "Empty",
}
_PROJECT = {"X": "X", "MA": "B", "MB": "B", "DA": "C", "DB": "C", "H": "H", "V": "V", ".": "."}


@dataclass(frozen=True, order=True)
class LoomTile:
    shape: str
    k: int = 0
    l: int = 0

    def ports(self) -> tuple[int, int, int, int]:
        """(top, bottom, left, right) string counts."""
        s, k, l = self.shape, self.k, self.l
        if s == "X":
            return (1 + l, 1 + l, 1 + k, 1 + k)
        if s in ("MA", "MB"):
            return (2 + l, 1 + l, 1, 0)
        if s in ("DA", "DB"):
            return (1, 0, 2 + k, 1 + k)
        if s == "H":
            return (0, 0, 1 + k, 1 + k)
        if s == "V":
            return (1 + l, 1 + l, 0, 0)
        return (0, 0, 0, 0)

    def well_formed(self) -> bool:
        if self.shape not in SHAPES or self.k < 0 or self.l < 0:
            return False
        if self.shape in ("MA", "MB", "V") and self.k:
            return False
        if self.shape in ("DA", "DB", "H") and self.l:
            return False
        if self.shape == "." and (self.k or self.l):
            return False
        return True

    def route(self, left: list, bottom: list) -> tuple[list, list]:
        """Send the strand labels on the left/bottom edges to (top, right)."""
        s = self.shape
        if s == "X":
            return list(bottom), list(left)
        if s == "MA":
            return [left[0]] + list(bottom), []
        if s == "MB":
            return list(bottom) + [left[0]], []
        if s == "DA":
            return [left[0]], list(left[1:])
        if s == "DB":
            return [left[-1]], list(left[:-1])
        if s == "H":
            return [], list(left)
        if s == "V":
            return list(bottom), []
        return [], []

    def to_dict(self) -> dict:
        return {"s": self.shape, "k": self.k, "l": self.l}


@dataclass(frozen=True)
class Loom:
    n: int
    m: int
    tiles: tuple[LoomTile, ...]

    def __post_init__(self):
        tiles = tuple(self.tiles)
        if len(tiles) != self.n * self.m:
            raise ValueError(f"{len(tiles)} tiles for a {self.n}x{self.m} grid")
        object.__setattr__(self, "tiles", tiles)

    def at(self, i: int, j: int) -> LoomTile:
        return self.tiles[i * self.m + j]

    def left_sizes(self) -> tuple[int, ...]:
        if self.m == 0:
            return (1,) * self.n
        return tuple(self.at(i, 0).ports()[2] for i in range(self.n))

    def top_sizes(self) -> tuple[int, ...]:
        if self.n == 0:
            return (1,) * self.m
        return tuple(self.at(0, j).ports()[0] for j in range(self.m))

    def bottom_sizes(self) -> tuple[int, ...]:
        if self.n == 0:
            return (1,) * self.m
        return tuple(self.at(self.n - 1, j).ports()[1] for j in range(self.m))

    def right_sizes(self) -> tuple[int, ...]:
        if self.m == 0:
            return (1,) * self.n
        return tuple(self.at(i, self.m - 1).ports()[3] for i in range(self.n))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "m": self.m, "tiles": [t.to_dict() for t in self.tiles]})

    @classmethod
    def from_json(cls, text: str | dict) -> "Loom":
        d = json.loads(text) if isinstance(text, str) else text
        return cls(d["n"], d["m"], tuple(LoomTile(t["s"], t.get("k", 0), t.get("l", 0)) for t in d["tiles"]))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[str | LoomTile]]) -> "Loom":
        """Rows of tiles given as LoomTile or strings like "X", "MA:l1", "DB:k2"."""
        def conv(x):
            if isinstance(x, LoomTile):
                return x
            shape, *rest = x.split(":")
            k = l = 0
            for part in rest:
                if part.startswith("k"):
                    k = int(part[1:])
                elif part.startswith("l"):
                    l = int(part[1:])
            return LoomTile(shape, k, l)
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        return cls(n, m, tuple(conv(x) for r in rows for x in r))

    def text_art(self) -> str:
        out = []
        for i in range(self.n):
            cells = []
            for j in range(self.m):
                t = self.at(i, j)
                extra = ""
                if t.k:
                    extra += f"k{t.k}"
                if t.l:
                    extra += f"l{t.l}"
                cells.append(f"{t.shape}{'/' + extra if extra else ''}")
            out.append(" ".join(f"{c:<7}" for c in cells).rstrip())
        return "\n".join(out)


def multiplicities(M: Mosaic) -> list[tuple[int, int]]:
    """(k, l) per cell: Cobrackets to the right in the row, Brackets below in the column."""
    n, m = M.n, M.m
    out = []
    for i in range(n):
        for j in range(m):
            k = sum(1 for t in range(j + 1, m) if M.at(i, t) == "C")
            l = sum(1 for s in range(i + 1, n) if M.at(s, j) == "B")
            out.append((k, l))
    return out


def _base_tile(code: str, k: int, l: int) -> LoomTile:
    if code == "X":
        return LoomTile("X", k, l)
    if code == "H":
        return LoomTile("H", k, 0)
    if code == "V":
        return LoomTile("V", 0, l)
    return LoomTile(".", 0, 0)


def refine(M: Mosaic) -> list[Loom]:
    """𝔏(M) in canonical order: variant bits A before B, Brackets first, row-major."""
    if M.n == 0 or M.m == 0:
        return [Loom(M.n, M.m, ())]
    mult = multiplicities(M)
    base: list[LoomTile | None] = []
    for pos, code in enumerate(M.tiles):
        k, l = mult[pos]
        base.append(None if code in "BC" else _base_tile(code, k, l))
    brackets = [p for p, c in enumerate(M.tiles) if c == "B"]
    cobrackets = [p for p, c in enumerate(M.tiles) if c == "C"]
    slots = brackets + cobrackets
    out = []
    for bits in itertools.product("AB", repeat=len(slots)):
        tiles = list(base)
        for p, v in zip(slots, bits):
            k, l = mult[p]
            if M.tiles[p] == "B":
                tiles[p] = LoomTile("M" + v, 0, l)
            else:
                tiles[p] = LoomTile("D" + v, k, 0)
        out.append(Loom(M.n, M.m, tuple(tiles)))
    return out


def iter_looms(n: int, m: int) -> Iterator[Loom]:
    for M in _mosaic.iter_mosaics(n, m):
        yield from refine(M)


def enumerate_looms(n: int, m: int) -> list[Loom]:
    return list(iter_looms(n, m))


def project(L: Loom) -> Mosaic:
    return Mosaic(L.n, L.m, tuple(_PROJECT[t.shape] for t in L.tiles))


def validate(L: Loom) -> bool:
    n, m = L.n, L.m
    if len(L.tiles) != n * m:
        return False
    if n == 0 or m == 0:
        return True
    for t in L.tiles:
        if not t.well_formed() or t.k > m - 1 or t.l > n - 1:
            return False
    P = [t.ports() for t in L.tiles]
    for i in range(n):
        for j in range(m):
            t, b, l, r = P[i * m + j]
            if i == 0 and t < 1:
                return False
            if j == 0 and l < 1:
                return False
            if j + 1 < m and r != P[i * m + j + 1][2]:
                return False
            if i + 1 < n and b != P[(i + 1) * m + j][0]:
                return False
    ins = sum(P[i * m][2] for i in range(n)) + sum(P[(n - 1) * m + j][1] for j in range(m))
    outs = sum(P[i * m + m - 1][3] for i in range(n)) + sum(P[j][0] for j in range(m))
    return ins == n + m and outs == n + m


def candidate_tiles(n: int, m: int) -> list[LoomTile]:
    """Every tile allowed in an n×m loom by the multiplicity bounds."""
    out = [LoomTile("X", k, l) for k in range(m) for l in range(n)]
    out += [LoomTile(s, 0, l) for s in ("MA", "MB") for l in range(n)]
    out += [LoomTile(s, k, 0) for s in ("DA", "DB") for k in range(m)]
    out += [LoomTile("H", k, 0) for k in range(m)]
    out += [LoomTile("V", 0, l) for l in range(n)]
    out.append(LoomTile("."))
    return out


def search_valid_looms(n: int, m: int) -> Iterator[Loom]:
    """Direct backtracking search over all tilings passing validate (checker only)."""
    if n == 0 or m == 0:
        yield Loom(n, m, ())
        return
    tiles = candidate_tiles(n, m)
    by_tl: dict[tuple[int, int], list[LoomTile]] = {}
    for t in tiles:
        p = t.ports()
        by_tl.setdefault((p[0], p[2]), []).append(t)
    total = n + m
    size = n * m
    cells: list[LoomTile | None] = [None] * size
    below = [0] * m

    def rec(pos: int, right: int, lam: int, omega: int):
        if pos == size:
            gam = sum(below)
            theta = sum(cells[i * m + m - 1].ports()[3] for i in range(n))
            if lam + gam == total and omega + theta == total:
                yield Loom(n, m, tuple(cells))
            return
        i, j = divmod(pos, m)
        if i == 0:
            tops = range(1, total + 1)
        else:
            tops = (below[j],)
        lefts = range(1, total + 1) if j == 0 else (right,)
        saved = below[j]
        for tv in tops:
            if i == 0 and omega + tv > total:
                break
            for lv in lefts:
                if j == 0 and lam + lv > total:
                    break
                for t in by_tl.get((tv, lv), ()):
                    p = t.ports()
                    cells[pos] = t
                    below[j] = p[1]
                    yield from rec(pos + 1, p[3], lam + (lv if j == 0 else 0),
                                   omega + (tv if i == 0 else 0))
        below[j] = saved
        cells[pos] = None

    yield from rec(0, 0, 0, 0)


def sign_counts(L: Loom) -> tuple[int, int]:
    shapes = [t.shape for t in L.tiles]
    mb = shapes.count("MB")
    return shapes.count("DA") + mb, shapes.count("DB") + mb


def sign(L: Loom) -> int:
    return -1 if sign_counts(L)[1] % 2 else 1


def gamma(L: Loom) -> Permutation:
    """Trace the strands: ingoing left (top→bottom) then bottom (left→right),
    outgoing top (left→right) then right (top→bottom)."""
    n, m = L.n, L.m
    if n == 0 or m == 0:
        return identity(n + m)
    lsz = L.left_sizes()
    bsz = L.bottom_sizes()
    lam = sum(lsz)
    starts = list(itertools.accumulate((0,) + lsz))
    # labels currently sitting on the bottom edge of each column
    col = []
    nxt = lam
    for j in range(m):
        col.append(list(range(nxt, nxt + bsz[j])))
        nxt += bsz[j]
    if nxt != n + m:
        raise RoutingBreak(f"ingoing strands total {nxt}, expected {n + m}")
    rights: list[list[int]] = [[] for _ in range(n)]
    for i in range(n - 1, -1, -1):
        cur = list(range(starts[i], starts[i + 1]))
        for j in range(m):
            t = L.at(i, j)
            tp, bp, lp, rp = t.ports()
            if len(cur) != lp or len(col[j]) != bp:
                raise RoutingBreak(f"port mismatch entering tile ({i + 1},{j + 1})")
            top, cur = t.route(cur, col[j])
            if len(top) != tp or len(cur) != rp:
                raise RoutingBreak(f"tile ({i + 1},{j + 1}) routed wrong counts")
            col[j] = top
        rights[i] = cur
    outs = [x for j in range(m) for x in col[j]] + [x for i in range(n) for x in rights[i]]
    if sorted(outs) != list(range(n + m)):
        raise RoutingBreak("outgoing strands do not form a permutation")
    images = [0] * (n + m)
    for pos, lab in enumerate(outs):
        images[lab] = pos
    return Permutation(tuple(images))


def glue(sigma: Permutation, left_sizes: Sequence[int], g: Permutation,
         top_sizes: Sequence[int], tau: Permutation) -> Permutation:
    """γ̃ from γ and the boundary bundle sizes (shared by gamma_tilde and the product)."""
    n, m = len(left_sizes), len(top_sizes)
    if sigma.degree != n or tau.degree != m:
        raise DegreeMismatch(f"expected degrees ({n},{m}), got ({sigma.degree},{tau.degree})")
    # outer block b of sigma lands on loom row sigma(b)
    sig_t = inflate(sigma, [left_sizes[x] for x in sigma.images])
    tau_t = inflate(tau, list(top_sizes))
    N = g.degree
    a = block_sum(sig_t, identity(N - sig_t.degree))
    c = block_sum(tau_t, identity(N - tau_t.degree))
    return compose(compose(a, g), c)


def gamma_tilde(sigma: Permutation, L: Loom, tau: Permutation) -> Permutation:
    if sigma.degree != L.n or tau.degree != L.m:
        raise DegreeMismatch(f"loom is {L.n}x{L.m}, got degrees ({sigma.degree},{tau.degree})")
    return glue(sigma, L.left_sizes(), gamma(L), L.top_sizes(), tau)
