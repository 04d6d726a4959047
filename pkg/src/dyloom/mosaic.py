"""Drinfeld–Yetter mosaics: n×m tilings by six port-carrying tiles.

Tile codes (canonical order):  X Cross, B Bracket, C Cobracket,
H Horizontal, V Vertical, . Empty.  Ports are (top, bottom, left, right).
Strings enter on the left and bottom edges and leave on the top and right.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DegenerateGrid

CODES = "XBCHV."
NAMES = {
    "X": "Cross",
    "B": "Bracket",
    "C": "Cobracket",
    "H": "Horizontal",
    "V": "Vertical",
    ".": "Empty",
}
PORTS = {
    "X": (1, 1, 1, 1),
    "B": (1, 1, 1, 0),
    "C": (1, 0, 1, 1),
    "H": (0, 0, 1, 1),
    "V": (1, 1, 0, 0),
    ".": (0, 0, 0, 0),
}
_RANK = {c: i for i, c in enumerate(CODES)}

# choices at a cell given (top port, left port) demanded by the neighbours
_BY_TL: dict[tuple[int, int], tuple[str, ...]] = {}
for _c in CODES:
    _t, _b, _l, _r = PORTS[_c]
    _BY_TL.setdefault((_t, _l), ())
    _BY_TL[(_t, _l)] += (_c,)

# Forbidden adjacent pairs, transcribed as drawn.  "." stands for a cell left
# blank in the picture, which is the empty tile.
FORBIDDEN_HORIZONTAL = frozenset([
    ("X", "."), ("X", "V"), ("B", "C"), ("B", "H"), ("B", "X"), ("C", "V"),
    ("C", "."), ("H", "V"), ("H", "."), ("V", "X"), ("V", "B"), ("V", "C"),
    ("V", "H"), (".", "X"), (".", "B"), (".", "C"), (".", "H"), ("B", "B"),
])
FORBIDDEN_VERTICAL = frozenset([  # (upper, lower)
    ("X", "H"), ("X", "."), ("B", "H"), ("B", "."), ("C", "X"), ("C", "B"),
    ("C", "V"), ("V", "H"), ("V", "."), ("H", "X"), ("H", "B"), ("H", "C"),
    ("H", "V"), (".", "X"), (".", "B"), (".", "C"), (".", "V"), ("C", "C"),
])
FIRST_ROW_EXCLUDED = frozenset("H.")
FIRST_COL_EXCLUDED = frozenset("V.")


@dataclass(frozen=True)
class Mosaic:
    n: int
    m: int
    tiles: tuple[str, ...]  # row-major codes

    def __post_init__(self):
        tiles = tuple(self.tiles)
        if len(tiles) != self.n * self.m:
            raise ValueError(f"{len(tiles)} tiles for a {self.n}x{self.m} grid")
        for c in tiles:
            if c not in PORTS:
                raise ValueError(f"unknown tile code {c!r}")
        object.__setattr__(self, "tiles", tiles)

    @classmethod
    def from_rows(cls, rows: Sequence[str]) -> "Mosaic":
        rows = list(rows)
        n = len(rows)
        m = len(rows[0]) if rows else 0
        return cls(n, m, tuple("".join(rows)))

    def at(self, i: int, j: int) -> str:
        """Tile at 0-based (row, column)."""
        return self.tiles[i * self.m + j]

    def rows(self) -> list[str]:
        return ["".join(self.tiles[i * self.m:(i + 1) * self.m]) for i in range(self.n)]

    def sort_key(self) -> tuple[int, ...]:
        return tuple(_RANK[c] for c in self.tiles)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "m": self.m, "tiles": "".join(self.tiles)})

    @classmethod
    def from_json(cls, text: str | dict) -> "Mosaic":
        d = json.loads(text) if isinstance(text, str) else text
        return cls(d["n"], d["m"], tuple(d["tiles"]))

    def text_art(self) -> str:
        return "\n".join(self.rows())


def ports(code: str) -> tuple[int, int, int, int]:
    return PORTS[code]


def _validate_ports(n: int, m: int, tiles: Sequence[str]) -> bool:
    for i in range(n):
        for j in range(m):
            t, b, l, r = PORTS[tiles[i * m + j]]
            if i == 0 and t != 1:
                return False
            if j == 0 and l != 1:
                return False
            if j + 1 < m and r != PORTS[tiles[i * m + j + 1]][2]:
                return False
            if i + 1 < n and b != PORTS[tiles[(i + 1) * m + j]][0]:
                return False
    return True


def _validate_forbidden(n: int, m: int, tiles: Sequence[str]) -> bool:
    if n == 0 or m == 0:
        return True
    for j in range(m):
        if tiles[j] in FIRST_ROW_EXCLUDED:
            return False
    for i in range(n):
        if tiles[i * m] in FIRST_COL_EXCLUDED:
            return False
    for i in range(n):
        for j in range(m):
            c = tiles[i * m + j]
            if j + 1 < m and (c, tiles[i * m + j + 1]) in FORBIDDEN_HORIZONTAL:
                return False
            if i + 1 < n and (c, tiles[(i + 1) * m + j]) in FORBIDDEN_VERTICAL:
                return False
    return True


def validate(candidate: Mosaic | Sequence[str], checker: str = "ports",
             n: int | None = None, m: int | None = None) -> bool:
    """Check a candidate grid; ``checker`` is "ports" or "forbidden_list"."""
    if isinstance(candidate, Mosaic):
        n, m, tiles = candidate.n, candidate.m, candidate.tiles
    else:
        tiles = tuple(candidate)
        if n is None or m is None:
            raise ValueError("grid dimensions required for a raw tile sequence")
    if any(c not in PORTS for c in tiles) or len(tiles) != n * m:
        return False
    if checker == "ports":
        return _validate_ports(n, m, tiles)
    if checker == "forbidden_list":
        return _validate_forbidden(n, m, tiles)
    raise ValueError(f"unknown checker {checker!r}")


def iter_mosaics(n: int, m: int) -> Iterator[Mosaic]:
    """Generate 𝔐_{n,m} in canonical row-major order."""
    if n == 0 or m == 0:
        yield Mosaic(n, m, ())
        return
    size = n * m
    cells = [""] * size
    bottom = [1] * m  # bottom port of the cell above, row 0 sees the boundary (1)

    def rec(pos: int, right: int):
        if pos == size:
            yield Mosaic(n, m, tuple(cells))
            return
        i, j = divmod(pos, m)
        left = 1 if j == 0 else right
        top = bottom[j]
        saved = bottom[j]
        for c in _BY_TL[(top, left)]:
            p = PORTS[c]
            cells[pos] = c
            bottom[j] = p[1]
            yield from rec(pos + 1, p[3])
        bottom[j] = saved

    yield from rec(0, 1)


def enumerate_mosaics(n: int, m: int) -> list[Mosaic]:
    return list(iter_mosaics(n, m))


def count_by_enumeration(n: int, m: int) -> int:
    return sum(1 for _ in iter_mosaics(n, m))


def alpha(M: Mosaic) -> int:
    """Number of Cobracket tiles."""
    return M.tiles.count("C")


def beta(M: Mosaic) -> int:
    """Number of Bracket tiles."""
    return M.tiles.count("B")


def first_row_decompose(M: Mosaic) -> tuple[Mosaic, Mosaic]:
    if M.n == 0:
        raise DegenerateGrid("no first row in a 0-row mosaic")
    row = Mosaic(1, M.m, M.tiles[:M.m])
    keep = [j for j in range(M.m) if row.tiles[j] != "C"]
    rest_tiles = tuple(M.at(i, j) for i in range(1, M.n) for j in keep)
    return row, Mosaic(M.n - 1, len(keep), rest_tiles)


def first_row_recompose(row: Mosaic, rest: Mosaic) -> Mosaic:
    """Inverse of first_row_decompose; columns under a first-row Cobracket are forced."""
    m = row.m
    frozen = [j for j in range(m) if row.tiles[j] == "C"]
    if rest.m != m - len(frozen):
        raise ValueError("rest has the wrong number of columns")
    tiles = list(row.tiles)
    for i in range(rest.n):
        alive = True  # the row's horizontal string has not yet been absorbed
        src = iter(rest.tiles[i * rest.m:(i + 1) * rest.m])
        for j in range(m):
            if row.tiles[j] == "C":
                tiles.append("H" if alive else ".")
            else:
                c = next(src)
                tiles.append(c)
                if c == "B":
                    alive = False
    return Mosaic(rest.n + 1, m, tuple(tiles))
