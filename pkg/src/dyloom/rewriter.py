"""Brute-force normal ordering of r_n^σ ∘ r_m^τ by diagram rewriting.

A diagram is a sequence of events along the module line, each an action
``("A", w)`` or a coaction ``("C", w)`` on a wire ``w``, plus bracket nodes
(two inputs, one output) and cobracket nodes (one input, upper and lower
outputs).  A wire is consumed exactly once: by an action, a node input or an
external output slot.

Rules, applied in this order:

1. DY step on the leftmost adjacent pair (Act(x), Coact(y)):
     swap                                              (+)
     Coact(f), bracket(x, f) -> y, Act(x) removed       (+)
     cobracket(x) -> (y, z), Act(z) replaces the pair   (-)
2. Act(bracket(a, b))  ->  Act(b), Act(a)  (+)   and   Act(a), Act(b)  (-)
3. Coact(w) with w feeding cobracket(w) -> (u, z):
     Coact(z), Coact(u)  (+)   and   Coact(u), Coact(z)  (-)

In a normal diagram coaction t (in event order) and action s are joined by a
wire; the permutation sends t to N-1-s (0-based), so the last action is
output label 1.

There is no cocycle rule.  Should a bracket output ever reach a cobracket,
check_invariants raises CocycleRequired instead of guessing; for all basis
products of total degree <= 6 this never happens.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from typing import Iterable

from .errors import CocycleRequired, NonTermination
from .mosaic import Mosaic
from .perm import Permutation, inverse

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class MiddleDiagram:
    events: tuple[tuple[str, int], ...]
    mu: dict = field(default_factory=dict)      # output wire -> (first, second)
    delta: dict = field(default_factory=dict)   # input wire -> (upper, lower)
    external_in: tuple[int, ...] = ()
    external_out: tuple[int, ...] = ()
    sign: int = 1
    next_wire: int = 0

    def fresh(self) -> tuple["MiddleDiagram", int]:
        return replace(self, next_wire=self.next_wire + 1), self.next_wire

    def is_normal(self) -> bool:
        if self.mu or self.delta:
            return False
        kinds = [k for k, _ in self.events]
        return kinds == sorted(kinds, key=lambda k: k != "C")

    def canonical(self) -> tuple:
        """Isomorphism invariant: every consumed wire written as a tree over its sources."""
        producer: dict[int, tuple] = {}
        for i, w in enumerate(self.external_in):
            producer[w] = ("in", i)
        for pos, (kind, w) in enumerate(self.events):
            if kind == "C":
                producer[w] = ("coact", pos)
        for out, (a, b) in self.mu.items():
            producer[out] = ("mu", a, b)
        for src, (u, z) in self.delta.items():
            producer[u] = ("up", src)
            producer[z] = ("low", src)

        def expr(w):
            p = producer[w]
            if p[0] == "mu":
                return ("mu", expr(p[1]), expr(p[2]))
            if p[0] in ("up", "low"):
                return (p[0], expr(p[1]))
            return p

        evs = tuple(("C",) if k == "C" else ("A", expr(w)) for k, w in self.events)
        return evs, tuple(expr(w) for w in self.external_out)


def check_invariants(d: MiddleDiagram) -> None:
    used = [w for k, w in d.events if k == "A"]
    for a, b in d.mu.values():
        used += [a, b]
    used += list(d.delta.keys()) + list(d.external_out)
    if len(used) != len(set(used)):
        raise AssertionError("a wire is consumed twice")
    for src in d.delta:
        if src in d.mu:
            raise CocycleRequired("bracket output feeds a cobracket")


def product_diagram(sigma: Permutation, tau: Permutation) -> MiddleDiagram:
    """Events of r_n^σ followed by r_m^τ."""
    events: list[tuple[str, int]] = []
    w = 0
    for p in (sigma, tau):
        n = p.degree
        coacts = list(range(w, w + n))
        w += n
        inv = inverse(p).images
        events += [("C", c) for c in coacts]
        # action s takes the strand with output label n-1-s
        events += [("A", coacts[inv[n - 1 - s]]) for s in range(n)]
    return MiddleDiagram(tuple(events), next_wire=w)


def middle_diagram(n: int, m: int) -> MiddleDiagram:
    """π^(n) ∘ π*^(m) with external inputs and outputs."""
    ins = tuple(range(n))
    outs = tuple(range(n, n + m))
    events = tuple(("A", x) for x in ins) + tuple(("C", y) for y in outs)
    return MiddleDiagram(events, external_in=ins, external_out=outs, next_wire=n + m)


def _first_inversion(events) -> int:
    for i in range(len(events) - 1):
        if events[i][0] == "A" and events[i + 1][0] == "C":
            return i
    return -1


def dy_step(d: MiddleDiagram) -> list[MiddleDiagram] | None:
    i = _first_inversion(d.events)
    if i < 0:
        return None
    ev = d.events
    x, y = ev[i][1], ev[i + 1][1]
    head, tail = ev[:i], ev[i + 2:]
    swapped = replace(d, events=head + (("C", y), ("A", x)) + tail)
    d2, f = d.fresh()
    mu = dict(d.mu)
    mu[y] = (x, f)
    bracket = replace(d2, events=head + (("C", f),) + tail, mu=mu)
    d3, z = d.fresh()
    if x in d.mu:
        raise CocycleRequired("cobracket applied to a bracket output")
    delta = dict(d.delta)
    delta[x] = (y, z)
    cobracket = replace(d3, events=head + (("A", z),) + tail, delta=delta, sign=-d.sign)
    return [swapped, bracket, cobracket]


def mu_step(d: MiddleDiagram) -> list[MiddleDiagram] | None:
    for i, (kind, w) in enumerate(d.events):
        if kind == "A" and w in d.mu:
            a, b = d.mu[w]
            mu = dict(d.mu)
            del mu[w]
            head, tail = d.events[:i], d.events[i + 1:]
            return [
                replace(d, events=head + (("A", b), ("A", a)) + tail, mu=mu),
                replace(d, events=head + (("A", a), ("A", b)) + tail, mu=mu, sign=-d.sign),
            ]
    return None


def delta_step(d: MiddleDiagram) -> list[MiddleDiagram] | None:
    for i, (kind, w) in enumerate(d.events):
        if kind == "C" and w in d.delta:
            u, z = d.delta[w]
            delta = dict(d.delta)
            del delta[w]
            head, tail = d.events[:i], d.events[i + 1:]
            return [
                replace(d, events=head + (("C", z), ("C", u)) + tail, delta=delta),
                replace(d, events=head + (("C", u), ("C", z)) + tail, delta=delta, sign=-d.sign),
            ]
    return None


def normal_permutation(d: MiddleDiagram) -> Permutation:
    if not d.is_normal() or d.external_in or d.external_out:
        raise ValueError("diagram is not a closed normal diagram")
    coacts = [w for k, w in d.events if k == "C"]
    acts = [w for k, w in d.events if k == "A"]
    N = len(coacts)
    act_time = {w: s for s, w in enumerate(acts)}
    return Permutation(tuple(N - 1 - act_time[w] for w in coacts))


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise NonTermination(f"rewrite budget of {self.limit} steps exhausted")


def _exhaust(start: Iterable[MiddleDiagram], step, budget: _Budget) -> list[MiddleDiagram]:
    done = []
    stack = list(start)
    stack.reverse()
    while stack:
        d = stack.pop()
        budget.tick()
        nxt = step(d)
        if nxt is None:
            done.append(d)
        else:
            stack.extend(reversed(nxt))
    return done


def step1(d: MiddleDiagram, budget: int = DEFAULT_BUDGET) -> list[MiddleDiagram]:
    return _exhaust([d], dy_step, _Budget(budget))


def step1_terms(n: int, m: int, budget: int = DEFAULT_BUDGET) -> list[tuple[int, MiddleDiagram]]:
    return [(d.sign, d) for d in step1(middle_diagram(n, m), budget)]


def normalize_diagram(d: MiddleDiagram, budget: int = DEFAULT_BUDGET,
                      stats: dict | None = None) -> dict[Permutation, int]:
    b = _Budget(budget)
    terms = _exhaust([d], dy_step, b)
    after1 = len(terms)
    terms = _exhaust(terms, mu_step, b)
    after2 = len(terms)
    for t in terms:
        for src in t.delta:
            if src in t.mu:
                raise CocycleRequired("bracket output feeds a cobracket")
    terms = _exhaust(terms, delta_step, b)
    if stats is not None:
        stats.update(step1=after1, step2=after2, step3=len(terms), rewrites=b.used)
    out: dict[Permutation, int] = defaultdict(int)
    for t in terms:
        out[normal_permutation(t)] += t.sign
    return {p: c for p, c in sorted(out.items()) if c}


def normalize_product(sigma: Permutation, tau: Permutation, budget: int = DEFAULT_BUDGET,
                      stats: dict | None = None) -> dict[Permutation, int]:
    return normalize_diagram(product_diagram(sigma, tau), budget, stats)


def middle_from_mosaic(M: Mosaic) -> MiddleDiagram:
    """The step-1 diagram recorded by a mosaic (sign (-1)^alpha)."""
    n, m = M.n, M.m
    base = middle_diagram(n, m)
    wire = base.next_wire
    col_top: list[int | None] = list(base.external_out)   # wire emitted by column j's coaction
    mu: dict = {}
    delta: dict = {}
    row_wire: list[int | None] = [None] * n
    for i in range(n):
        # row i (top first) is the action with time n-1-i
        w: int | None = base.external_in[n - 1 - i]
        for j in range(m):
            c = M.at(i, j)
            if c == "B":
                f = wire
                wire += 1
                mu[col_top[j]] = (w, f)
                col_top[j] = f
                w = None
            elif c == "C":
                z = wire
                wire += 1
                delta[w] = (col_top[j], z)
                col_top[j] = None
                w = z
        row_wire[i] = w
    events = [("C", y) for y in col_top if y is not None]
    events += [("A", row_wire[i]) for i in range(n - 1, -1, -1) if row_wire[i] is not None]
    sign = -1 if M.tiles.count("C") % 2 else 1
    return MiddleDiagram(tuple(events), mu, delta, base.external_in, base.external_out,
                         sign, wire)
