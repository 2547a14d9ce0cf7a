"""Perfect matchings on [2n]: crossings, nestings, the edge-swap sort toward a
base matching, and the weighted-Dyck-path bijections.

A :class:`Matching` is a fixed-point-free involution stored as a tuple, so
``M(v)`` is the partner of vertex ``v``.  Openers and closers are indexed by
rank 1..n in increasing order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .dyck import DyckPath, enumerate_weights

__all__ = [
    "Matching",
    "ArcRelationCounts",
    "SortTrace",
    "type_of",
    "arc_relations",
    "long_set",
    "short_set",
    "left_set",
    "nesting_right_counts",
    "varphi1",
    "varphi1_inv",
    "nonnesting_matching",
    "sort_step_count",
    "sort_matching",
    "sor",
    "cycles",
    "cyc",
    "cyc_set",
    "phi1",
    "phi1_inv",
    "enumerate_matchings",
    "TypeMismatch",
]


class TypeMismatch(ValueError):
    """Two matchings that must share a type (Dyck path) do not."""


@dataclass(frozen=True)
class Matching:
    partner: tuple[int, ...]  # partner[v - 1] = M(v)

    def __post_init__(self):
        m = len(self.partner)
        if m % 2:
            raise ValueError("a perfect matching has an even number of vertices")
        for v, u in enumerate(self.partner, 1):
            if not 1 <= u <= m or u == v or self.partner[u - 1] != v:
                raise ValueError(f"partner array {self.partner} is not a fixed-point-free involution")

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]]) -> Matching:
        edges = [tuple(e) for e in edges]
        partner = [0] * (2 * len(edges))
        for a, b in edges:
            if not (1 <= a <= len(partner) and 1 <= b <= len(partner)):
                raise ValueError(f"edge {a}-{b} out of range")
            if partner[a - 1] or partner[b - 1]:
                raise ValueError(f"vertex reused in edges {edges}")
            partner[a - 1] = b
            partner[b - 1] = a
        return cls(tuple(partner))

    def __call__(self, v: int) -> int:
        return self.partner[v - 1]

    def __str__(self):
        return "{" + ", ".join(f"{a}·{b}" for a, b in self.edges) + "}"

    @property
    def n(self) -> int:
        return len(self.partner) // 2

    @cached_property
    def openers(self) -> tuple[int, ...]:
        return tuple(v for v, u in enumerate(self.partner, 1) if u > v)

    @cached_property
    def closers(self) -> tuple[int, ...]:
        return tuple(v for v, u in enumerate(self.partner, 1) if u < v)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Canonical external form: (opener, closer) pairs sorted by opener."""
        return tuple((o, self.partner[o - 1]) for o in self.openers)

    @cached_property
    def type(self) -> DyckPath:
        return DyckPath("".join("U" if u > v else "D" for v, u in enumerate(self.partner, 1)))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj) -> Matching:
        if isinstance(obj, dict):
            obj = obj["edges"]
        return cls.from_edges(obj)


@dataclass(frozen=True)
class ArcRelationCounts:
    cr: int
    ne: int
    al: int


@dataclass
class SortTrace:
    """Intermediate matchings M_n, ..., M_1 and the per-step counts.

    ``sor_k[k - 1]`` is the contribution of step k.  ``final`` is the result
    of processing step 1, which is the base matching.  For bicolored sorts
    ``colors[k - 1]`` holds col(o_k, M_k).
    """

    matchings: list  # index 0 is M_n
    sor_k: list[int]
    final: object = None
    colors: list[int] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.sor_k)


def type_of(m: Matching) -> DyckPath:
    return m.type


def _check_same_type(m: Matching, m0: Matching):
    if len(m.partner) != len(m0.partner) or m.openers != m0.openers:
        raise TypeMismatch(f"{m} and {m0} have different types")


def _arcs(m: Matching):
    return m.edges


def arc_relations(m: Matching) -> ArcRelationCounts:
    cr = ne = al = 0
    arcs = _arcs(m)
    for x, (i, j) in enumerate(arcs):
        for k, l in arcs[x + 1:]:
            # i < k by opener order
            if l < j:
                ne += 1
            elif k < j:
                cr += 1
            else:
                al += 1
    return ArcRelationCounts(cr=cr, ne=ne, al=al)


def nesting_right_counts(m: Matching) -> list[int]:
    """For each opener rank k, the number of nestings whose right arc is o_k's."""
    arcs = _arcs(m)
    out = []
    for x, (k, l) in enumerate(arcs):
        out.append(sum(1 for i, j in arcs[:x] if l < j))
    return out


def long_set(m: Matching) -> frozenset[int]:
    """Opener ranks whose arc is not the right (inner) arc of any nesting."""
    return frozenset(k for k, c in enumerate(nesting_right_counts(m), 1) if c == 0)


def left_set(m: Matching) -> frozenset[int]:
    """Opener ranks whose arc is not the right arc of any crossing."""
    arcs = _arcs(m)
    out = set()
    for x, (k, l) in enumerate(arcs, 1):
        if not any(k < j < l for i, j in arcs[: x - 1]):
            out.add(x)
    return frozenset(out)


def short_set(m: Matching) -> frozenset[int]:
    """Closer ranks whose arc has no arc nested below it."""
    arcs = _arcs(m)
    out = set()
    for rank, c in enumerate(m.closers, 1):
        o = m(c)
        if not any(o < i and j < c for i, j in arcs):
            out.add(rank)
    return frozenset(out)


def varphi1(path: DyckPath, w: Sequence[int]) -> Matching:
    """Connect openers right to left; o_k takes the w_k-th free closer > o_k,
    free closers listed in decreasing order."""
    h = path.heights
    if len(w) != path.n or any(not 1 <= wk <= hk for wk, hk in zip(w, h)):
        raise ValueError(f"weights {list(w)} incompatible with heights {list(h)}")
    partner = [0] * (2 * path.n)
    free = set(path.closers)
    for k in range(path.n - 1, -1, -1):
        o = path.openers[k]
        avail = sorted((c for c in free if c > o), reverse=True)
        c = avail[w[k] - 1]
        free.remove(c)
        partner[o - 1] = c
        partner[c - 1] = o
    return Matching(tuple(partner))


def varphi1_inv(m: Matching) -> tuple[DyckPath, tuple[int, ...]]:
    return m.type, tuple(c + 1 for c in nesting_right_counts(m))


def nonnesting_matching(path: DyckPath) -> Matching:
    return Matching.from_edges(zip(path.openers, path.closers))


def sort_step_count(o: int, current: int, target: int, m0: Matching, closers: Sequence[int]) -> int:
    """|{c > o : c in [current, target], M0(c) < o}| when current <= target,
    otherwise the same count over c outside the open interval (target, current)."""
    if current <= target:
        return sum(1 for c in closers if c > o and current <= c <= target and m0(c) < o)
    return sum(1 for c in closers if c > o and not (target < c < current) and m0(c) < o)


def sort_matching(m: Matching, m0: Matching) -> SortTrace:
    _check_same_type(m, m0)
    n = m.n
    partner = list(m.partner)
    openers = m0.openers
    closers = m0.closers
    trace = SortTrace(matchings=[], sor_k=[0] * n)
    for k in range(n, 0, -1):
        mk = Matching(tuple(partner))
        trace.matchings.append(mk)
        o = openers[k - 1]
        cur, tgt = partner[o - 1], m0(o)
        trace.sor_k[k - 1] = sort_step_count(o, cur, tgt, m0, closers)
        if cur != tgt:
            other = partner[tgt - 1]
            partner[o - 1], partner[tgt - 1] = tgt, o
            partner[other - 1], partner[cur - 1] = cur, other
    trace.final = Matching(tuple(partner))
    return trace


def sor(m: Matching, m0: Matching) -> int:
    return sort_matching(m, m0).total


def cycles(m: Matching, m0: Matching) -> list[list[int]]:
    """Alternating cycles of the graph with edges from both matchings.

    Each cycle is returned as its vertex list starting from its minimum, first
    following an edge of ``m``."""
    _check_same_type(m, m0)
    seen = [False] * (2 * m.n + 1)
    out = []
    for v in range(1, 2 * m.n + 1):
        if seen[v]:
            continue
        cyc_ = []
        u = v
        while True:
            cyc_.append(u)
            seen[u] = True
            x = m(u)
            cyc_.append(x)
            seen[x] = True
            u = m0(x)
            if u == v:
                break
        out.append(cyc_)
    return out


def cyc(m: Matching, m0: Matching) -> int:
    return len(cycles(m, m0))


def cyc_set(m: Matching, m0: Matching) -> frozenset[int]:
    """Opener ranks k such that o_k is the minimal vertex of its cycle."""
    rank = {o: k for k, o in enumerate(m.openers, 1)}
    return frozenset(rank[c[0]] for c in cycles(m, m0))


def _candidates(o: int, m0: Matching, closers: Sequence[int]) -> list[int]:
    """Closers c > o with M0(c) <= o, starting at M0(o) and going cyclically left."""
    cands = sorted((c for c in closers if c > o and m0(c) <= o), reverse=True)
    start = cands.index(m0(o))
    return cands[start:] + cands[:start]


def _follow_path(c: int, upper: list[int], m0: Matching) -> tuple[int, list[int]]:
    """Walk c, N(c), M0(N(c)), ... until a closer free in the partial matching.

    Returns the free closer and the openers of the upper arcs traversed."""
    visited = set()
    used = []
    while upper[c - 1]:
        if c in visited:
            raise RuntimeError("alternating path revisited a vertex")
        visited.add(c)
        o = upper[c - 1]
        used.append(o)
        c = m0(o)
    return c, used


def phi1(m0: Matching, w: Sequence[int]) -> Matching:
    """The base-dependent bijection from weight vectors onto matchings of the
    type of ``m0`` with sor(phi1(w), m0) = sum(w_k - 1)."""
    path = m0.type
    h = path.heights
    if len(w) != m0.n or any(not 1 <= wk <= hk for wk, hk in zip(w, h)):
        raise ValueError(f"weights {list(w)} incompatible with heights {list(h)}")
    upper = [0] * (2 * m0.n)
    for k in range(m0.n, 0, -1):
        o = m0.openers[k - 1]
        c = _candidates(o, m0, m0.closers)[w[k - 1] - 1]
        c, _ = _follow_path(c, upper, m0)
        upper[o - 1] = c
        upper[c - 1] = o
    return Matching(tuple(upper))


def phi1_inv(m0: Matching, m: Matching) -> tuple[int, ...]:
    return tuple(s + 1 for s in sort_matching(m, m0).sor_k)


def enumerate_matchings(path: DyckPath) -> Iterator[Matching]:
    for w in enumerate_weights(path):
        yield varphi1(path, w)
