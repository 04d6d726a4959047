"""Permutations of {1..n}.

Images are stored 0-indexed; everything that talks to the outside world
(one_line, JSON, cycle strings) is 1-indexed.  Composition is read left to
right: ``compose(p, q)`` is "first p, then q", i.e. ``i -> q(p(i))``.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegreeMismatch, InvalidCycle, SizeMismatch


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation: {[x + 1 for x in imgs]}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def from_one_line(cls, values: Iterable[int]) -> "Permutation":
        return cls(tuple(int(v) - 1 for v in values))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        """Image of the 1-based point i."""
        return self.images[i - 1] + 1

    def one_line(self) -> list[int]:
        return [x + 1 for x in self.images]

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def __repr__(self) -> str:
        return f"Permutation({self.one_line()})"

    def __str__(self) -> str:
        c = cycle_string(self)
        return c if c else f"id_{self.degree}"


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """p then q."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree}")
    qi = q.images
    return Permutation(tuple(qi[x] for x in p.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation(tuple(inv))


def block_sum(p: Permutation, q: Permutation) -> Permutation:
    n = p.degree
    return Permutation(p.images + tuple(n + x for x in q.images))


def inflate(p: Permutation, sizes: Sequence[int]) -> Permutation:
    """Replace strand i of p by a ribbon of sizes[i] parallel strands."""
    if len(sizes) != p.degree:
        raise SizeMismatch(f"{len(sizes)} sizes for a permutation of degree {p.degree}")
    if any(s < 0 for s in sizes):
        raise SizeMismatch("negative bundle size")
    inv = inverse(p).images
    # start of each bundle on the target side
    tstart = [0] * p.degree
    acc = 0
    for pos in range(p.degree):
        tstart[pos] = acc
        acc += sizes[inv[pos]]
    out = []
    for i, s in enumerate(sizes):
        t = tstart[p.images[i]]
        out.extend(range(t, t + s))
    return Permutation(tuple(out))


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Cycle decomposition, 1-based, fixed points omitted, each cycle led by its minimum."""
    seen = [False] * p.degree
    out = []
    for start in range(p.degree):
        if seen[start] or p.images[start] == start:
            seen[start] = True
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i + 1)
            i = p.images[i]
        out.append(tuple(cyc))
    return out


def cycle_string(p: Permutation) -> str:
    sep = "," if p.degree > 9 else ""
    return "".join("(" + sep.join(str(x) for x in c) + ")" for c in cycles(p))


def _parse_cycle_body(body: str) -> list[int]:
    body = body.strip()
    if not body:
        return []
    if "," in body or " " in body:
        parts = [t for t in re.split(r"[,\s]+", body) if t]
    else:
        parts = list(body)
    try:
        return [int(t) for t in parts]
    except ValueError:
        raise InvalidCycle(f"bad cycle entry in ({body})") from None


def from_cycles(n: int, cycs) -> Permutation:
    """Build a permutation of degree n from a cycle string like "(14)(253)" or a list of tuples."""
    if isinstance(cycs, str):
        text = cycs.strip()
        if re.sub(r"\([^()]*\)", "", text).strip():
            raise InvalidCycle(f"malformed cycle string {cycs!r}")
        cycs = [_parse_cycle_body(b) for b in re.findall(r"\(([^()]*)\)", text)]
    images = list(range(n))
    used = set()
    for c in cycs:
        for x in c:
            if not 1 <= x <= n:
                raise InvalidCycle(f"entry {x} out of range 1..{n}")
            if x in used:
                raise InvalidCycle(f"entry {x} repeated")
            used.add(x)
        for a, b in zip(c, tuple(c[1:]) + tuple(c[:1])):
            images[a - 1] = b - 1
    return Permutation(tuple(images))


def transposition(n: int, i: int, j: int) -> Permutation:
    return from_cycles(n, [(i, j)]) if i != j else identity(n)


def parse(text: str, n: int | None = None) -> Permutation:
    """Parse one-line notation ("[2,1,3]", "2,1,3", "213") or cycles ("(12)").

    Cycle strings need the degree n unless it can be taken as the largest entry.
    """
    text = text.strip()
    if text.startswith("("):
        if n is None:
            bodies = re.findall(r"\(([^()]*)\)", text)
            n = max((max(_parse_cycle_body(b), default=0) for b in bodies), default=0)
        return from_cycles(n, text)
    if text.lower().startswith("id"):
        deg = int(text.split("_")[-1]) if "_" in text else (n or 0)
        return identity(deg)
    if text.startswith("["):
        vals = json.loads(text)
    elif "," in text or " " in text:
        vals = [int(t) for t in re.split(r"[,\s]+", text) if t]
    elif text == "":
        vals = []
    else:
        vals = [int(ch) for ch in text]
    p = Permutation.from_one_line(vals)
    if n is not None and p.degree != n:
        raise DegreeMismatch(f"expected degree {n}, got {p.degree}")
    return p


def contains_pattern(p: Permutation, pat: Permutation) -> bool:
    k = pat.degree
    if k == 0:
        return True
    target = pat.images
    for idx in itertools.combinations(range(p.degree), k):
        vals = [p.images[i] for i in idx]
        order = sorted(range(k), key=vals.__getitem__)
        ranks = [0] * k
        for r, pos in enumerate(order):
            ranks[pos] = r
        if tuple(ranks) == target:
            return True
    return False


def all_perms(n: int) -> list[Permutation]:
    """S_n in lexicographic one-line order."""
    return [Permutation(t) for t in itertools.permutations(range(n))]
