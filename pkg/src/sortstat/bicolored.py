"""Bicolored (red/blue) matchings: refined crossing statistics, mix, the
recoloring sort toward an all-red base, and the two weighted-path bijections.

Colors are bits: red = 0, blue = 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .dyck import DyckPath, enumerate_weights
from .matchings import (
    Matching,
    SortTrace,
    TypeMismatch,
    _candidates,
    _follow_path,
    arc_relations,
    cycles,
    enumerate_matchings,
    nesting_right_counts,
    sort_step_count,
)

__all__ = [
    "RED",
    "BLUE",
    "BicoloredMatching",
    "RefinedCounts",
    "refined_counts",
    "mix",
    "mix_prime",
    "longr_set",
    "longr_prime_set",
    "varphi2",
    "varphi2_inv",
    "sort_bicolored",
    "sor_bicolored",
    "cyc01_sets",
    "cyc01_prime_sets",
    "phi2",
    "phi2_inv",
    "sor_prime",
    "enumerate_bicolored",
    "enumerate_bicolored_even",
    "all_red",
]

RED, BLUE = 0, 1


@dataclass(frozen=True)
class BicoloredMatching:
    base: Matching
    blue: frozenset[int]  # openers of the blue edges

    def __post_init__(self):
        bad = set(self.blue) - set(self.base.openers)
        if bad:
            raise ValueError(f"blue set {sorted(self.blue)} names non-openers {sorted(bad)}")

    @classmethod
    def from_colored_edges(cls, edges: Iterable[Sequence]) -> BicoloredMatching:
        pairs, blue = [], set()
        for o, c, col in edges:
            o, c = min(o, c), max(o, c)
            pairs.append((o, c))
            if col in (1, "b", "blue"):
                blue.add(o)
            elif col not in (0, "r", "red"):
                raise ValueError(f"unknown color {col!r}")
        return cls(Matching.from_edges(pairs), frozenset(blue))

    def __call__(self, v: int) -> int:
        return self.base(v)

    def col(self, v: int) -> int:
        """Color of the edge incident with vertex v."""
        return BLUE if min(v, self.base(v)) in self.blue else RED

    def __str__(self):
        return "{" + ", ".join(f"{o}·{c}{'b' if o in self.blue else 'r'}" for o, c in self.base.edges) + "}"

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def openers(self):
        return self.base.openers

    @property
    def closers(self):
        return self.base.closers

    @property
    def type(self) -> DyckPath:
        return self.base.type

    @property
    def b(self) -> int:
        return len(self.blue)

    @cached_property
    def colors(self) -> tuple[int, ...]:
        """Colors indexed by opener rank."""
        return tuple(BLUE if o in self.blue else RED for o in self.base.openers)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "edges": [[o, c, "b" if o in self.blue else "r"] for o, c in self.base.edges],
        }

    @classmethod
    def from_json(cls, obj) -> BicoloredMatching:
        if isinstance(obj, dict):
            obj = obj["edges"]
        return cls.from_colored_edges(obj)


def all_red(m: Matching) -> BicoloredMatching:
    return BicoloredMatching(m, frozenset())


@dataclass(frozen=True)
class RefinedCounts:
    cr_r: int
    cr_b: int
    ne_r: int
    ne_b: int
    al_r: int
    al_b: int
    b: int


def refined_counts(m: BicoloredMatching) -> RefinedCounts:
    """Crossings, nestings and alignments split by the color of the right arc."""
    c = dict(cr=[0, 0], ne=[0, 0], al=[0, 0])
    arcs = m.base.edges
    for x, (i, j) in enumerate(arcs):
        for k, l in arcs[x + 1:]:
            rel = "ne" if l < j else "cr" if k < j else "al"
            c[rel][m.col(k)] += 1
    return RefinedCounts(
        cr_r=c["cr"][0], cr_b=c["cr"][1],
        ne_r=c["ne"][0], ne_b=c["ne"][1],
        al_r=c["al"][0], al_b=c["al"][1],
        b=m.b,
    )


def mix_prime(m: BicoloredMatching) -> int:
    rc = refined_counts(m)
    return rc.ne_r + rc.ne_b + 2 * rc.cr_b + 2 * rc.al_b


def mix(m: BicoloredMatching) -> int:
    return mix_prime(m) + m.b


def longr_set(m: BicoloredMatching) -> frozenset[int]:
    """Opener ranks of red edges not nested within any other edge."""
    nest = nesting_right_counts(m.base)
    return frozenset(k for k, (cnt, col) in enumerate(zip(nest, m.colors), 1) if cnt == 0 and col == RED)


def longr_prime_set(m: BicoloredMatching) -> frozenset[int]:
    return longr_set(m) - {1}


def _check_compatible(path: DyckPath, w: Sequence[int], eps: Sequence[int]):
    h = path.heights
    if len(w) != path.n or len(eps) != path.n:
        raise ValueError("weight and color vectors must have length n")
    if any(not 1 <= wk <= hk for wk, hk in zip(w, h)):
        raise ValueError(f"weights {list(w)} incompatible with heights {list(h)}")
    if any(e not in (0, 1) for e in eps):
        raise ValueError(f"colors must be 0/1, got {list(eps)}")


def varphi2(path: DyckPath, w: Sequence[int], eps: Sequence[int]) -> BicoloredMatching:
    _check_compatible(path, w, eps)
    h = path.heights
    partner = [0] * (2 * path.n)
    free = set(path.closers)
    blue = set()
    for k in range(path.n - 1, -1, -1):
        o = path.openers[k]
        avail = sorted((c for c in free if c > o), reverse=True)
        pick = w[k] if eps[k] == RED else h[k] - w[k] + 1
        c = avail[pick - 1]
        free.remove(c)
        partner[o - 1] = c
        partner[c - 1] = o
        if eps[k] == BLUE:
            blue.add(o)
    return BicoloredMatching(Matching(tuple(partner)), frozenset(blue))


def varphi2_inv(m: BicoloredMatching) -> tuple[DyckPath, tuple[int, ...], tuple[int, ...]]:
    path = m.type
    w = []
    for nest, col, h in zip(nesting_right_counts(m.base), m.colors, path.heights):
        w.append(nest + 1 if col == RED else h - nest)
    return path, tuple(w), m.colors


def _check_base(m: BicoloredMatching, m0: BicoloredMatching):
    if m.base.openers != m0.base.openers or m.n != m0.n:
        raise TypeMismatch(f"{m} and {m0} have different types")
    if m0.blue:
        raise ValueError(f"base matching {m0} must be all red")


def sort_bicolored(m: BicoloredMatching, m0: BicoloredMatching) -> SortTrace:
    """Sort ``m`` toward the all-red ``m0`` with recoloring.

    ``sor_k`` holds the bicolored step contributions and ``colors`` the values
    col(o_k, M_k)."""
    _check_base(m, m0)
    n = m.n
    base0 = m0.base
    openers, closers = base0.openers, base0.closers
    partner = list(m.base.partner)
    blue = set(m.blue)
    trace = SortTrace(matchings=[], sor_k=[0] * n, colors=[0] * n)
    for k in range(n, 0, -1):
        trace.matchings.append(BicoloredMatching(Matching(tuple(partner)), frozenset(blue)))
        o = openers[k - 1]
        cur, tgt = partner[o - 1], base0(o)
        col = BLUE if o in blue else RED
        cnt = sort_step_count(o, cur, tgt, base0, closers)
        trace.sor_k[k - 1] = cnt if col == RED else 2 * k - 1 - cnt
        trace.colors[k - 1] = col
        if cur != tgt:
            other = partner[tgt - 1]
            partner[o - 1], partner[tgt - 1] = tgt, o
            partner[other - 1], partner[cur - 1] = cur, other
            if col == BLUE:
                blue ^= {other}
        blue.discard(o)
    trace.final = BicoloredMatching(Matching(tuple(partner)), frozenset(blue))
    return trace


def sor_bicolored(m: BicoloredMatching, m0: BicoloredMatching) -> int:
    return sort_bicolored(m, m0).total


def sor_prime(m: BicoloredMatching, m0: BicoloredMatching) -> int:
    t = sort_bicolored(m, m0)
    return sum(t.sor_k[k - 1] - t.colors[k - 1] for k in range(2, m.n + 1))


def cyc01_sets(m: BicoloredMatching, m0: BicoloredMatching) -> tuple[frozenset[int], frozenset[int]]:
    """Minimal-opener ranks of cycles with an even / odd number of blue edges."""
    _check_base(m, m0)
    rank = {o: k for k, o in enumerate(m.openers, 1)}
    even, odd = set(), set()
    for cyc_ in cycles(m.base, m0.base):
        # cycle lists alternate v, m(v), ...; each m-edge appears once
        parity = sum(m.col(v) for v in cyc_[::2]) % 2
        (odd if parity else even).add(rank[cyc_[0]])
    return frozenset(even), frozenset(odd)


def cyc01_prime_sets(m: BicoloredMatching, m0: BicoloredMatching) -> tuple[frozenset[int], frozenset[int]]:
    c0, c1 = cyc01_sets(m, m0)
    return c0 - {1}, c1 - {1}


def phi2(m0: BicoloredMatching, w: Sequence[int], eps: Sequence[int]) -> BicoloredMatching:
    if m0.blue:
        raise ValueError(f"base matching {m0} must be all red")
    base0 = m0.base
    path = base0.type
    _check_compatible(path, w, eps)
    h = path.heights
    upper = [0] * (2 * m0.n)
    blue = set()
    for k in range(m0.n, 0, -1):
        o = base0.openers[k - 1]
        pick = w[k - 1] if eps[k - 1] == RED else h[k - 1] - w[k - 1] + 1
        c = _candidates(o, base0, base0.closers)[pick - 1]
        c, used = _follow_path(c, upper, base0)
        color = (eps[k - 1] + sum(1 for u in used if u in blue)) % 2
        upper[o - 1] = c
        upper[c - 1] = o
        if color:
            blue.add(o)
    return BicoloredMatching(Matching(tuple(upper)), frozenset(blue))


def phi2_inv(m0: BicoloredMatching, m: BicoloredMatching) -> tuple[tuple[int, ...], tuple[int, ...]]:
    t = sort_bicolored(m, m0)
    h = m0.type.heights
    w = tuple(t.sor_k[k - 1] + 1 - t.colors[k - 1] * (2 * k - h[k - 1]) for k in range(1, m.n + 1))
    return w, tuple(t.colors)


def enumerate_bicolored(path: DyckPath) -> Iterator[BicoloredMatching]:
    """Every matching of the given type with every coloring, colorings in
    lexicographic order of the opener-rank color vector."""
    for m in enumerate_matchings(path):
        for eps in itertools.product((RED, BLUE), repeat=path.n):
            yield BicoloredMatching(m, frozenset(o for o, e in zip(m.openers, eps) if e))


def enumerate_bicolored_even(path: DyckPath) -> Iterator[BicoloredMatching]:
    for m in enumerate_bicolored(path):
        if m.b % 2 == 0:
            yield m
