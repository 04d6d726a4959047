"""Bumpless pipedreams with strings running from the left edge to the top edge,
and the stretch map from looms.

Tile codes: X Cross, r Turn1 (bottom-right elbow), j Turn2 (left-top elbow),
H Hor, V Ver, . Empty.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import RoutingBreak
from .loom import Loom
from .perm import Permutation

CODES = "XrjHV."
NAMES = {"X": "Cross", "r": "Turn1", "j": "Turn2", "H": "Hor", "V": "Ver", ".": "Empty"}
PORTS = {  # (top, bottom, left, right)
    "X": (1, 1, 1, 1),
    "r": (0, 1, 0, 1),
    "j": (1, 0, 1, 0),
    "H": (0, 0, 1, 1),
    "V": (1, 1, 0, 0),
    ".": (0, 0, 0, 0),
}
FIRST_ROW_EXCLUDED = frozenset("H.")
FIRST_COL_EXCLUDED = frozenset("V.")
LAST_ROW_EXCLUDED = frozenset("XrV")
LAST_COL_EXCLUDED = frozenset("XrH")

_FROM_SIDES = {
    frozenset("lrtb"): "X",
    frozenset("br"): "r",
    frozenset("lt"): "j",
    frozenset("lr"): "H",
    frozenset("tb"): "V",
    frozenset(): ".",
}


@dataclass(frozen=True)
class BPDGrid:
    n: int
    tiles: tuple[str, ...]

    def __post_init__(self):
        tiles = tuple(self.tiles)
        if len(tiles) != self.n * self.n:
            raise ValueError(f"{len(tiles)} tiles for a {self.n}x{self.n} grid")
        for c in tiles:
            if c not in PORTS:
                raise ValueError(f"unknown tile code {c!r}")
        object.__setattr__(self, "tiles", tiles)

    @classmethod
    def from_rows(cls, rows: Sequence[str]) -> "BPDGrid":
        return cls(len(rows), tuple("".join(rows)))

    def at(self, i: int, j: int) -> str:
        return self.tiles[i * self.n + j]

    def rows(self) -> list[str]:
        n = self.n
        return ["".join(self.tiles[i * n:(i + 1) * n]) for i in range(n)]

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "tiles": "".join(self.tiles)})

    @classmethod
    def from_json(cls, text: str | dict) -> "BPDGrid":
        d = json.loads(text) if isinstance(text, str) else text
        return cls(d["n"], tuple(d["tiles"]))


def _walk(B: BPDGrid):
    """Follow every string from the left edge.

    Returns (exit columns, crossings) where crossings[(i, j)] = (horizontal string, vertical string).
    """
    n = B.n
    exits = []
    cross_h: dict[tuple[int, int], int] = {}
    cross_v: dict[tuple[int, int], int] = {}
    for s in range(n):
        i, j, moving = s, 0, "right"  # entering cell (i, j) through its left port
        steps = 0
        while True:
            steps += 1
            if steps > 4 * n * n + 4:
                raise RoutingBreak("string does not terminate")
            if not (0 <= i < n and 0 <= j < n):
                if i < 0 and moving == "up":
                    exits.append(j)
                    break
                raise RoutingBreak(f"string {s + 1} leaves through the {'right' if j >= n else 'bottom'} edge")
            c = B.at(i, j)
            if moving == "right":
                if c == "X":
                    cross_h[(i, j)] = s
                    j += 1
                elif c == "H":
                    j += 1
                elif c == "j":
                    moving = "up"
                    i -= 1
                else:
                    raise RoutingBreak(f"string {s + 1} dead-ends at ({i + 1},{j + 1})")
            else:
                if c == "X":
                    cross_v[(i, j)] = s
                    i -= 1
                elif c == "V":
                    i -= 1
                elif c == "r":
                    moving = "right"
                    j += 1
                else:
                    raise RoutingBreak(f"string {s + 1} dead-ends at ({i + 1},{j + 1})")
    crossings = {}
    for cell in set(cross_h) | set(cross_v):
        if cell not in cross_h or cell not in cross_v:
            raise RoutingBreak(f"crossing at {cell} is not traversed by two strings")
        crossings[cell] = (cross_h[cell], cross_v[cell])
    return exits, crossings


def _ports_ok(B: BPDGrid) -> bool:
    n = B.n
    for i in range(n):
        for j in range(n):
            t, b, l, r = PORTS[B.at(i, j)]
            if j + 1 < n and r != PORTS[B.at(i, j + 1)][2]:
                return False
            if i + 1 < n and b != PORTS[B.at(i + 1, j)][0]:
                return False
    return True


def validate(B: BPDGrid) -> bool:
    n = B.n
    if len(B.tiles) != n * n:
        return False
    for j in range(n):
        if B.at(0, j) in FIRST_ROW_EXCLUDED or B.at(n - 1, j) in LAST_ROW_EXCLUDED:
            return False
    for i in range(n):
        if B.at(i, 0) in FIRST_COL_EXCLUDED or B.at(i, n - 1) in LAST_COL_EXCLUDED:
            return False
    if not _ports_ok(B):
        return False
    try:
        exits, crossings = _walk(B)
    except RoutingBreak:
        return False
    # n strings, one per top cell
    if sorted(exits) != list(range(n)):
        return False
    seen = set()
    for a, b in crossings.values():
        pair = (min(a, b), max(a, b))
        if a == b or pair in seen:
            return False
        seen.add(pair)
    return True


def trace(B: BPDGrid) -> Permutation:
    exits, _ = _walk(B)
    if sorted(exits) != list(range(B.n)):
        raise RoutingBreak("strings do not exit through distinct top cells")
    return Permutation(tuple(exits))


def from_loom(L: Loom) -> BPDGrid:
    """Stretch a loom to an (n+m)×(n+m) pipedream."""
    n, m = L.n, L.m
    N = n + m
    cells: dict[tuple[int, int], set] = {}

    def mark(i, j, sides):
        cells.setdefault((i, j), set()).update(sides)

    def hseg(row, c0, c1):
        for c in range(c0, c1):
            mark(row, c, "lr")

    def vseg(col, r0, r1):
        for rr in range(r0, r1):
            mark(rr, col, "tb")

    if n == 0 or m == 0:
        lam = n
        omega = m
        bottom_cols = list(range(m))
        right_rows = list(range(n))
    else:
        lsz, tsz = L.left_sizes(), L.top_sizes()
        rstart = [sum(lsz[:i]) for i in range(n + 1)]
        cstart = [sum(tsz[:j]) for j in range(m + 1)]
        lam, omega = rstart[n], cstart[m]

        # columns of vertical strands, filled top-down
        top_cols = [list(range(cstart[j], cstart[j + 1])) for j in range(m)]
        bot_cols: list[list[list[int]]] = [[None] * m for _ in range(n)]
        for i in range(n):
            for j in range(m):
                t = L.at(i, j)
                _, bp, lp, _ = t.ports()
                top, _ = t.route([("L", a) for a in range(lp)], [("B", b) for b in range(bp)])
                cols = [None] * bp
                for s, lab in enumerate(top):
                    if lab[0] == "B":
                        cols[lab[1]] = top_cols[j][s]
                bot_cols[i][j] = cols
            top_cols = bot_cols[i]

        # rows of horizontal strands, filled left to right, and the drawing
        right_rows = []
        for i in range(n):
            rows = list(range(rstart[i], rstart[i + 1]))
            for j in range(m):
                t = L.at(i, j)
                tcols = list(range(cstart[j], cstart[j + 1])) if i == 0 else bot_cols[i - 1][j]
                top, right = t.route([("L", a) for a in range(len(rows))],
                                     [("B", b) for b in range(len(bot_cols[i][j]))])
                for s, lab in enumerate(top):
                    col = tcols[s]
                    if lab[0] == "L":
                        row = rows[lab[1]]
                        hseg(row, cstart[j], col)
                        mark(row, col, "lt")
                        vseg(col, rstart[i], row)
                    else:
                        vseg(col, rstart[i], rstart[i + 1])
                new_rows = []
                for lab in right:
                    row = rows[lab[1]]
                    hseg(row, cstart[j], cstart[j + 1])
                    new_rows.append(row)
                rows = new_rows
            right_rows.extend(rows)
        bottom_cols = [c for j in range(m) for c in bot_cols[n - 1][j]]

    # one new row per bottom strand, leftmost strand first
    for k, col in enumerate(bottom_cols):
        row = lam + k
        hseg(row, 0, col)
        mark(row, col, "lt")
        vseg(col, lam, row)
    # one new column per right strand, topmost strand first
    for k, row in enumerate(right_rows):
        col = omega + k
        hseg(row, omega, col)
        mark(row, col, "lt")
        vseg(col, 0, row)

    tiles = []
    for i in range(N):
        for j in range(N):
            sides = frozenset(cells.get((i, j), ()))
            if sides not in _FROM_SIDES:
                raise RoutingBreak(f"cell ({i + 1},{j + 1}) receives incompatible segments {sorted(sides)}")
            tiles.append(_FROM_SIDES[sides])
    return BPDGrid(N, tuple(tiles))
