"""Exhaustive verification harness.

Each registered check enumerates every object up to a size bound, computes
both sides of one identity or property and compares them exactly.  A check
is a generator of :class:`Instance` records; the runner counts them, stops at
the first mismatch and serializes that instance so it can be replayed from
the command line.
"""

from __future__ import annotations

import os
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from . import bicolored as bc
from . import kernels
from . import matchings as mt
from . import permutations as pm
from .dyck import (
    DyckPath,
    catalan,
    dyck_from_restriction,
    enumerate_dyck,
    enumerate_restrictions,
    enumerate_weights,
    fall_heights,
    height_sequence,
    restriction_from_dyck,
)
from .formulas import build_rhs, rook, lasthm
from .polynomials import Poly, const, distribution, var

__all__ = [
    "CATALOGUE",
    "CheckDef",
    "CheckSpec",
    "CheckResult",
    "Instance",
    "Report",
    "UnknownCheck",
    "run_check",
    "run_checks",
    "jsonify",
]

MAX_N_ENV = "SORTSTAT_MAX_N"


class UnknownCheck(KeyError):
    pass


@dataclass
class Instance:
    """One comparison.  ``count`` is the number of objects it enumerated."""

    n: int
    inputs: dict
    lhs: object
    rhs: object
    count: int = 1


@dataclass(frozen=True)
class CheckDef:
    id: str
    module: str
    statement: str
    default_max_n: int
    run: Callable[[int, str], Iterator[Instance]]
    base_quantified: bool = False


@dataclass(frozen=True)
class CheckSpec:
    id: str
    max_n: int | None = None
    bases: str = "all"

    def __post_init__(self):
        if self.max_n is not None and self.max_n < 1:
            raise ValueError("size bound must be at least 1")
        if self.bases not in ("all", "canonical"):
            raise ValueError(f"bases must be 'all' or 'canonical', not {self.bases!r}")


@dataclass
class CheckResult:
    id: str
    max_n: int
    bases: str
    status: str = "pass"
    instances: int = 0
    instances_by_n: dict = field(default_factory=dict)
    counterexample: dict | None = None
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "max_n": self.max_n,
            "bases": self.bases,
            "instances": self.instances,
            "instances_by_n": {str(k): v for k, v in sorted(self.instances_by_n.items())},
            "counterexample": self.counterexample,
        }


@dataclass
class Report:
    results: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def __getitem__(self, check_id: str) -> CheckResult:
        for r in self.results:
            if r.id == check_id:
                return r
        raise KeyError(check_id)

    def to_dict(self, timing: bool = False) -> dict:
        out = {"status": "pass" if self.passed else "fail", "checks": [r.to_dict() for r in self.results]}
        if timing:
            out["timing"] = {r.id: round(r.elapsed, 6) for r in self.results}
        return out


# --- serialization ----------------------------------------------------------------


def jsonify(x):
    """Plain JSON form of any value a check compares or takes as input."""
    if isinstance(x, Poly):
        return x.to_json()
    if isinstance(x, (mt.Matching, bc.BicoloredMatching, pm.SignedPermutation, pm.Transposition)):
        return x.to_json()
    if isinstance(x, DyckPath):
        return x.steps
    if isinstance(x, Counter):
        items = [[jsonify(k), c] for k, c in x.items()]
        return sorted(items, key=repr)
    if isinstance(x, (set, frozenset)):
        return sorted(jsonify(v) for v in x)
    if isinstance(x, dict):
        return {str(k): jsonify(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonify(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if hasattr(x, "item"):
        return x.item()
    raise TypeError(f"cannot serialize {type(x).__name__}")


# --- enumeration helpers ------------------------------------------------------------


def _paths(max_n: int, lo: int = 1) -> Iterator[tuple[int, DyckPath]]:
    for n in range(lo, max_n + 1):
        for d in enumerate_dyck(n):
            yield n, d


def _restrictions(max_n: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    for n in range(0, max_n + 1):
        for r in enumerate_restrictions(n):
            yield n, r


def _matching_bases(d: DyckPath, bases: str) -> Iterable[mt.Matching]:
    if bases == "canonical":
        return [mt.nonnesting_matching(d)]
    return mt.enumerate_matchings(d)


def _perm_bases(r: Sequence[int], bases: str) -> Iterable[pm.SignedPermutation]:
    if bases == "canonical":
        return [pm.identity(len(r))]
    return pm.enumerate_Sr(r)


def _brute_matchings(d: DyckPath) -> set[mt.Matching]:
    """Every matching of type d: each fall, left to right, takes any open rise."""
    out = set()
    steps = d.steps

    def rec(i: int, open_: list[int], partner: list[int]):
        if i == len(steps):
            out.add(mt.Matching(tuple(partner)))
            return
        if steps[i] == "U":
            rec(i + 1, open_ + [i + 1], partner)
            return
        for o in open_:
            partner[o - 1], partner[i] = i + 1, o
            rec(i + 1, [x for x in open_ if x != o], partner)
            partner[o - 1] = partner[i] = 0

    rec(0, [], [0] * len(steps))
    return out


def _rlminl_word(word: Sequence[int]) -> frozenset[int]:
    """Letters smaller than every letter to their right."""
    out, low = set(), None
    for x in reversed(word):
        if low is None or x < low:
            out.add(x)
        low = x if low is None else min(low, x)
    return frozenset(out)


# --- dyck-core ----------------------------------------------------------------------


def _dyck_heights(max_n, bases):
    for n, d in _paths(max_n, 0):
        yield Instance(n, {"path": d}, sorted(height_sequence(d)), sorted(fall_heights(d)))


def _dyck_restriction(max_n, bases):
    for n, r in _restrictions(max_n):
        d = dyck_from_restriction(r)
        yield Instance(n, {"r": r}, restriction_from_dyck(d), r)
        yield Instance(n, {"r": r}, fall_heights(d), tuple(rk - k + 1 for k, rk in enumerate(r, 1)), 0)


def _dyck_catalan(max_n, bases):
    for n in range(0, max_n + 1):
        paths = list(enumerate_dyck(n))
        ok = all(len(p.steps) == 2 * n for p in paths)
        yield Instance(n, {"n": n}, (len(paths), len(set(paths)), ok), (catalan(n), catalan(n), True), len(paths))


def _dyck_weights(max_n, bases):
    for n, d in _paths(max_n, 0):
        expect = 1
        for h in d.heights:
            expect *= h
        yield Instance(n, {"path": d}, sum(1 for _ in enumerate_weights(d)), expect)


# --- matchings ------------------------------------------------------------------


def _varphi1_bij(max_n, bases):
    for n, d in _paths(max_n):
        images = []
        for w in enumerate_weights(d):
            m = mt.varphi1(d, w)
            back = mt.varphi1_inv(m)
            yield Instance(n, {"path": d, "w": w}, back, (d, tuple(w)))
            images.append(m)
        yield Instance(n, {"path": d}, set(images), _brute_matchings(d), 0)
        yield Instance(n, {"path": d}, len(images), len(set(images)), 0)


def _phi1_bij(max_n, bases):
    for n, d in _paths(max_n):
        every = _brute_matchings(d)
        for m0 in _matching_bases(d, bases):
            images = []
            for w in enumerate_weights(d):
                m = mt.phi1(m0, w)
                yield Instance(n, {"M0": m0, "w": w}, mt.phi1_inv(m0, m), tuple(w))
                images.append(m)
            yield Instance(n, {"M0": m0}, (len(images), set(images)), (len(every), every), 0)


def _thm1(max_n, bases):
    for n, d in _paths(max_n):
        def prof(m):
            a = mt.arc_relations(m)
            return {"p": a.cr, "q": a.ne, "s": mt.left_set(m), "t": mt.long_set(m)}

        ms = list(mt.enumerate_matchings(d))
        yield Instance(n, {"path": d}, distribution(ms, prof), build_rhs("F-THM1", h=d.heights), len(ms))


def _prop1(max_n, bases):
    for n, d in _paths(max_n):
        for w in enumerate_weights(d):
            word = [k + 1 - wk for k, wk in enumerate(w, 1)]
            yield Instance(n, {"path": d, "w": w}, mt.short_set(mt.varphi1(d, w)), _rlminl_word(word))


def _thm2(max_n, bases):
    for n, d in _paths(max_n):
        nonnesting = mt.nonnesting_matching(d)
        for m0 in _matching_bases(d, bases):
            for w in enumerate_weights(d):
                m = mt.phi1(m0, w)
                lhs = [mt.sor(m, m0), mt.cyc_set(m, m0)]
                rhs = [sum(wk - 1 for wk in w), frozenset(k for k, wk in enumerate(w, 1) if wk == 1)]
                if m0 == nonnesting:
                    lhs.append(mt.short_set(m))
                    rhs.append(_rlminl_word([k + 1 - wk for k, wk in enumerate(w, 1)]))
                yield Instance(n, {"M0": m0, "w": w}, lhs, rhs)


def _eqhm(max_n, bases):
    for n, d in _paths(max_n):
        rhs = build_rhs("F-EQHM", h=d.heights)
        ms = list(mt.enumerate_matchings(d))
        for m0 in _matching_bases(d, bases):
            lhs = distribution(ms, lambda m: {"q": mt.sor(m, m0), "t": mt.cyc_set(m, m0)})
            yield Instance(n, {"M0": m0}, lhs, rhs, len(ms))


def _multiset(max_n, bases):
    for n, d in _paths(max_n):
        m0 = mt.nonnesting_matching(d)
        ms = list(mt.enumerate_matchings(d))
        lhs = Counter((mt.sor(m, m0), mt.cyc_set(m, m0), mt.short_set(m)) for m in ms)
        rhs = Counter((mt.arc_relations(m).ne, mt.long_set(m), mt.short_set(m)) for m in ms)
        yield Instance(n, {"path": d, "M0": m0}, lhs, rhs, len(ms))


def _sort_type(max_n, bases):
    for n, d in _paths(max_n):
        for m0 in _matching_bases(d, bases):
            for m in mt.enumerate_matchings(d):
                t = mt.sort_matching(m, m0)
                types = {x.type for x in t.matchings}
                yield Instance(n, {"M": m, "M0": m0}, (types, t.final), ({d}, m0))


# --- bicolored matchings ------------------------------------------------------------


def _red_bases(d: DyckPath, bases: str):
    return [bc.all_red(m0) for m0 in _matching_bases(d, bases)]


def _thmsigned(max_n, bases):
    for n, d in _paths(max_n):
        def prof(m):
            c = bc.refined_counts(m)
            return {"q1": c.ne_r, "q2": c.ne_b, "q3": c.cr_r, "q4": c.cr_b, "q5": c.al_r, "q6": c.al_b,
                    "p": c.b, "t": bc.longr_set(m)}

        ms = list(bc.enumerate_bicolored(d))
        yield Instance(n, {"path": d}, distribution(ms, prof), build_rhs("F-THMSIGNED", h=d.heights), len(ms))


def _corb(max_n, bases):
    for n, d in _paths(max_n):
        ms = list(bc.enumerate_bicolored(d))
        lhs = distribution(ms, lambda m: {"q": bc.mix(m), "t": bc.longr_set(m)})
        yield Instance(n, {"path": d}, lhs, build_rhs("F-CORB", h=d.heights), len(ms))


def _all_colored(d: DyckPath) -> set[bc.BicoloredMatching]:
    out = set()
    for m in _brute_matchings(d):
        for mask in range(1 << d.n):
            out.add(bc.BicoloredMatching(m, frozenset(o for i, o in enumerate(m.openers) if mask >> i & 1)))
    return out


def _weights_colors(d: DyckPath):
    for w in enumerate_weights(d):
        for mask in range(1 << d.n):
            yield w, tuple(mask >> i & 1 for i in range(d.n))


def _varphi2_bij(max_n, bases):
    for n, d in _paths(max_n):
        images = []
        for w, eps in _weights_colors(d):
            m = bc.varphi2(d, w, eps)
            yield Instance(n, {"path": d, "w": w, "eps": eps}, bc.varphi2_inv(m), (d, tuple(w), eps))
            images.append(m)
        yield Instance(n, {"path": d}, (len(images), set(images)), (len(images), _all_colored(d)), 0)


def _phi2(max_n, bases):
    for n, d in _paths(max_n):
        every = _all_colored(d)
        h = d.heights
        for m0 in _red_bases(d, bases):
            images = []
            for w, eps in _weights_colors(d):
                m = bc.phi2(m0, w, eps)
                images.append(m)
                t = bc.sort_bicolored(m, m0)
                lhs = (bc.sor_bicolored(m, m0), bc.cyc01_sets(m, m0), bc.phi2_inv(m0, m), t.final)
                rhs = (
                    sum(wk + e * (2 * k - hk) - 1 for k, (wk, e, hk) in enumerate(zip(w, eps, h), 1)),
                    (
                        frozenset(k for k, (wk, e) in enumerate(zip(w, eps), 1) if (wk, e) == (1, 0)),
                        frozenset(k for k, (wk, e, hk) in enumerate(zip(w, eps, h), 1) if (wk, e) == (hk, 1)),
                    ),
                    (tuple(w), eps),
                    m0,
                )
                yield Instance(n, {"M0": m0, "w": w, "eps": eps}, lhs, rhs)
            yield Instance(n, {"M0": m0}, (len(images), set(images)), (len(every), every), 0)


def _oddeven_m(max_n, bases):
    for n, d in _paths(max_n):
        rhs = build_rhs("F-ODDEVEN", h=d.heights)
        ms = list(bc.enumerate_bicolored(d))
        for m0 in _red_bases(d, bases):
            def prof(m):
                c0, c1 = bc.cyc01_sets(m, m0)
                return {"q": bc.sor_bicolored(m, m0), "t": c0, "s": c1}

            yield Instance(n, {"M0": m0}, distribution(ms, prof), rhs, len(ms))


def _sor_allred(max_n, bases):
    for n, d in _paths(max_n):
        for m0 in _matching_bases(d, bases):
            for m in mt.enumerate_matchings(d):
                yield Instance(n, {"M": m, "M0": m0}, bc.sor_bicolored(bc.all_red(m), bc.all_red(m0)), mt.sor(m, m0))


def _dmix_m(max_n, bases):
    for n, d in _paths(max_n):
        ms = list(bc.enumerate_bicolored_even(d))
        lhs = distribution(ms, lambda m: {"q": bc.mix_prime(m), "t": bc.longr_prime_set(m)})
        yield Instance(n, {"path": d}, lhs, build_rhs("F-DMIX", h=d.heights), len(ms))


def _dsor_m(max_n, bases):
    for n, d in _paths(max_n):
        rhs = build_rhs("F-DCYC", h=d.heights)
        ms = list(bc.enumerate_bicolored_even(d))
        for m0 in _red_bases(d, bases):
            def prof(m):
                c0, c1 = bc.cyc01_prime_sets(m, m0)
                return {"q": bc.sor_prime(m, m0), "t": c0, "s": c1}

            yield Instance(n, {"M0": m0}, distribution(ms, prof), rhs, len(ms))


# --- type A permutations ------------------------------------------------------------


def _transport_a(max_n, bases):
    for n, r in _restrictions(max_n):
        for s in pm.enumerate_Sr(r):
            m = pm.f_r(s, r)
            lhs = (mt.arc_relations(m).ne, mt.long_set(m), mt.short_set(m), pm.f_r_inv(m, r), m.type)
            rhs = (pm.inv(s), pm.rlminl_set(s), pm.lrmaxp_set(s), s, dyck_from_restriction(r))
            yield Instance(n, {"r": r, "sigma": s}, lhs, rhs)


def _sorr_transport(max_n, bases):
    for n, r in _restrictions(max_n):
        for s0 in _perm_bases(r, bases):
            m0 = pm.f_r(s0, r)
            for s in pm.enumerate_Sr(r):
                m = pm.f_r(s, r)
                lhs = (pm.sor_r(s, s0, r), pm.cyc_min_set(s * s0.inverse()))
                yield Instance(n, {"r": r, "sigma": s, "sigma0": s0}, lhs, (mt.sor(m, m0), mt.cyc_set(m, m0)))


def _rlmin_r(max_n, bases):
    for n, r in _restrictions(max_n):
        ss = list(pm.enumerate_Sr(r))
        plain = distribution(ss, lambda s: {"q": pm.inv(s), "t": len(pm.rlminl_set(s))})
        yield Instance(n, {"r": r}, plain, build_rhs("F-RLMIN-R", r=r), len(ss))
        indexed = distribution(ss, lambda s: {"q": pm.inv(s), "t": pm.rlminl_set(s)})
        yield Instance(n, {"r": r}, indexed, build_rhs("F-EQHM", r=r), 0)


def _sorr_id(max_n, bases):
    for n, r in _restrictions(max_n):
        e = pm.identity(n)
        for s in pm.enumerate_Sr(r):
            yield Instance(n, {"r": r, "sigma": s}, pm.sor_r(s, e, r), pm.sor(s))


def _permcor(max_n, bases):
    for n, r in _restrictions(max_n):
        rhs = build_rhs("F-EQHM", r=r)
        ss = list(pm.enumerate_Sr(r))
        for s0 in _perm_bases(r, bases):
            inv0 = s0.inverse()
            lhs = distribution(ss, lambda s: {"q": pm.sor_r(s, s0, r), "t": pm.cyc_min_set(s * inv0)})
            yield Instance(n, {"r": r, "sigma0": s0}, lhs, rhs, len(ss))
        plain = distribution(ss, lambda s: {"q": pm.sor(s), "t": pm.cyc_min_set(s)})
        yield Instance(n, {"r": r}, plain, rhs, 0)


def _triples(max_n, bases):
    for n, r in _restrictions(max_n):
        ss = list(pm.enumerate_Sr(r))
        lhs = Counter((pm.inv(s), pm.rlminl_set(s), pm.lrmaxp_set(s)) for s in ss)
        rhs = Counter((pm.sor(s), pm.cyc_min_set(s), pm.lrmaxp_set(s)) for s in ss)
        yield Instance(n, {"r": r}, lhs, rhs, len(ss))


def _lasthm(max_n, bases):
    t = var("t")
    for n, r in _restrictions(max_n):
        rhs = build_rhs("F-LASTHM", r=r)
        ss = list(pm.enumerate_Sr(r))
        for s0 in _perm_bases(r, bases):
            inv0 = s0.inverse()
            lhs = distribution(ss, lambda s: {"t": pm.cyc(s * inv0)})
            yield Instance(n, {"r": r, "sigma0": s0}, lhs, rhs, len(ss))
        if r == (n,) * n:
            rising = const(1)
            for k in range(n):
                rising = rising * (t + k)
            yield Instance(n, {"r": r}, rhs, rising, 0)
    # products σσ0⁻¹ may leave S_r
    r = (4, 4, 4, 6, 6, 6)
    s, s0 = pm.parse_perm("231546"), pm.parse_perm("143265")
    prod = s * s0.inverse()
    yield Instance(
        6,
        {"r": r, "sigma": s, "sigma0": s0},
        (pm.in_Sr(s, r), pm.in_Sr(s0, r), prod, pm.in_Sr(prod, r)),
        (True, True, pm.parse_perm("251364"), False),
        0,
    )


def _rook(max_n, bases):
    for n, r in _restrictions(max_n):
        yield Instance(n, {"r": r}, lasthm(r), rook(r))


def _sn(max_n, bases):
    k = kernels.backend()
    for n in range(1, max_n + 1):
        w = kernels.windows_A(n)
        lhs = kernels.joint_distribution({"q": k.sor(w), "t": k.cyc(w)})
        yield Instance(n, {"n": n}, lhs, build_rhs("F-SN", n=n), len(w))


def _bw(max_n, bases):
    k = kernels.backend()
    for n in range(1, max_n + 1):
        w = kernels.windows_A(n)
        rhs = build_rhs("F-BW", n=n)
        rl = k.rlminl_mask(w)
        yield Instance(n, {"n": n, "stats": "inv,Rlminl"}, kernels.joint_distribution({"q": k.inv(w)}, {"t": rl}), rhs, len(w))
        yield Instance(n, {"n": n, "stats": "maj,Rlminl"}, kernels.joint_distribution({"q": k.maj(w)}, {"t": rl}), rhs, 0)


def _sorfact(max_n, bases):
    for n in range(1, max_n + 1):
        for s in pm.enumerate_Sr((n,) * n):
            f = pm.sor_factorization(s)
            js = [tr.j for tr in f]
            yield Instance(
                n, {"sigma": s, "type": "A"},
                (pm.compose_transpositions(n, f), js == sorted(set(js)), sum(tr.j - tr.i for tr in f)),
                (s, True, pm.sor(s)),
            )
        if n > 4:
            continue
        for s in pm.enumerate_Br((n,) * n):
            f = pm.sor_B_factorization(s)
            js = [tr.j for tr in f]
            yield Instance(
                n, {"sigma": s, "type": "B"},
                (pm.compose_transpositions(n, f), js == sorted(set(js))),
                (s, True),
            )
            if pm.neg_count(s) % 2 == 0:
                f = pm.sor_D_factorization(s)
                js = [tr.j for tr in f]
                yield Instance(
                    n, {"sigma": s, "type": "D"},
                    (pm.compose_transpositions(n, f, type_d=True), js == sorted(set(js)), all(j > 1 for j in js)),
                    (s, True, True),
                    0,
                )


# --- type B -------------------------------------------------------------------------


def _transport_b(max_n, bases):
    for n, r in _restrictions(max_n):
        brs = list(pm.enumerate_Br(r))
        for s in brs:
            m = pm.g_r(s, r)
            lhs = (bc.mix(m), bc.longr_set(m), pm.g_r_inv(m, r))
            yield Instance(n, {"r": r, "sigma": s}, lhs, (pm.inv_B(s), pm.prlminl_set(s, "letters"), s))
        for s0 in _perm_bases(r, bases):
            m0 = pm.g_r(s0, r)
            inv0 = s0.inverse()
            for s in brs:
                m = pm.g_r(s, r)
                p = s * inv0
                lhs = (pm.sor_r_B(s, s0, r), (pm.cyc0_set(p), pm.cyc1_set(p)))
                yield Instance(n, {"r": r, "sigma": s, "sigma0": s0}, lhs, (bc.sor_bicolored(m, m0), bc.cyc01_sets(m, m0)), 0)


def _sorrb_id(max_n, bases):
    for n, r in _restrictions(max_n):
        e = pm.identity(n)
        for s in pm.enumerate_Br(r):
            yield Instance(n, {"r": r, "sigma": s}, pm.sor_r_B(s, e, r), pm.sor_B(s))


def _oddeven(max_n, bases):
    for n, r in _restrictions(max_n):
        rhs = build_rhs("F-ODDEVEN", r=r)
        brs = list(pm.enumerate_Br(r))
        for s0 in _perm_bases(r, bases):
            inv0 = s0.inverse()

            def prof(s):
                p = s * inv0
                return {"q": pm.sor_r_B(s, s0, r), "t": pm.cyc0_set(p), "s": pm.cyc1_set(p)}

            yield Instance(n, {"r": r, "sigma0": s0}, distribution(brs, prof), rhs, len(brs))


def _nmin_b(max_n, bases):
    for n, r in _restrictions(max_n):
        brs = list(pm.enumerate_Br(r))
        for s in brs:
            yield Instance(n, {"r": r, "sigma": s}, pm.nmin_B(s), n - len(pm.prlminl_set(s)))
        lhs = distribution(brs, lambda s: {"q": pm.inv_B(s), "t": pm.nmin_B(s)})
        yield Instance(n, {"r": r}, lhs, build_rhs("F-NMIN", r=r), 0)


def _sormix_b(max_n, bases):
    for n, r in _restrictions(max_n):
        brs = list(pm.enumerate_Br(r))
        lhs = distribution(brs, lambda s: {"q": pm.inv_B(s), "t": pm.nmin_B(s)})
        for s0 in _perm_bases(r, bases):
            inv0 = s0.inverse()
            rhs = distribution(brs, lambda s: {"q": pm.sor_r_B(s, s0, r), "t": pm.refl_length_B(s * inv0)})
            yield Instance(n, {"r": r, "sigma0": s0}, lhs, rhs, len(brs))


def _petb(max_n, bases):
    k = kernels.backend()
    for n in range(1, max_n + 1):
        w = kernels.windows_B(n)
        rhs = build_rhs("F-PETB", n=n)
        yield Instance(n, {"n": n, "stats": "invB,nminB"},
                       kernels.joint_distribution({"q": k.inv_B(w), "t": k.nmin_B(w)}), rhs, len(w))
        refl = n - kernels.popcount(k.cyc0_mask(w))
        yield Instance(n, {"n": n, "stats": "sorB,reflB"},
                       kernels.joint_distribution({"q": k.sor_B(w), "t": refl}), rhs, 0)


def _prlmin_b(max_n, bases):
    for n, r in _restrictions(max_n):
        brs = list(pm.enumerate_Br(r))
        lhs = distribution(brs, lambda s: {"q": pm.inv_B(s), "t": pm.prlminl_set(s)})
        yield Instance(n, {"r": r}, lhs, build_rhs("F-CORB", r=r), len(brs))


# --- type D -------------------------------------------------------------------------


def _petd(max_n, bases):
    k = kernels.backend()
    for n in range(1, max_n + 1):
        w = kernels.windows_D(n)
        rhs = build_rhs("F-PETD", n=n)
        yield Instance(n, {"n": n, "stats": "sorD"}, kernels.joint_distribution({"q": k.sor_D(w)}), rhs, len(w))
        yield Instance(n, {"n": n, "stats": "invD"}, kernels.joint_distribution({"q": k.inv_D(w)}), rhs, 0)


def _d_inv(max_n, bases):
    for n, r in _restrictions(max_n):
        drs = list(pm.enumerate_Dr(r))
        lhs = distribution(drs, lambda s: {"q": pm.inv_D(s), "t": pm.prlminl_prime_set(s)})
        yield Instance(n, {"r": r}, lhs, build_rhs("F-DMIX", r=r), len(drs))


def _d_sor(max_n, bases):
    for n, r in _restrictions(max_n):
        drs = list(pm.enumerate_Dr(r))
        full = build_rhs("F-DCYC", r=r)
        inv_side = distribution(drs, lambda s: {"q": pm.inv_D(s), "t": pm.prlminl_prime_set(s)})
        for s0 in _perm_bases(r, bases):
            inv0 = s0.inverse()

            def prof(s):
                c0, c1 = pm.cyc01_prime_sets(s * inv0)
                return {"q": pm.sor_r_D(s, s0, r), "t": c0, "s": c1}

            both = distribution(drs, prof)
            yield Instance(n, {"r": r, "sigma0": s0, "stat": "sor_r_D"}, both, full, len(drs))
            yield Instance(n, {"r": r, "sigma0": s0, "stat": "sor_r_D"}, _drop_s(both), inv_side, 0)
        # with the identity base the relative index is sor_D of σ itself
        def plain(s):
            c0, c1 = pm.cyc01_prime_sets(s)
            return {"q": pm.sor_D(s), "t": c0, "s": c1}

        yield Instance(n, {"r": r, "stat": "sor_D"}, distribution(drs, plain), full, 0)


def _drop_s(p: Poly) -> Poly:
    """Set every s_i to 1."""
    return p.substitute({v: 1 for v in p.variables if v.startswith("s")})


def _dfull(max_n, bases):
    k = kernels.backend()
    for n in range(1, max_n + 1):
        w = kernels.windows_D(n)
        rhs = build_rhs("F-DFULL", n=n)
        pr = k.prlminl_mask(w) & ~1
        yield Instance(n, {"n": n, "stats": "invD,Prlminl'"},
                       kernels.joint_distribution({"q": k.inv_D(w)}, {"t": pr}), rhs, len(w))
        c0 = k.cyc0_mask(w) & ~1
        yield Instance(n, {"n": n, "stats": "sorD,Cyc0'"},
                       kernels.joint_distribution({"q": k.sor_D(w)}, {"t": c0}), rhs, 0)


def _transport_d(max_n, bases):
    for n, r in _restrictions(max_n):
        drs = list(pm.enumerate_Dr(r))
        for s in drs:
            m = pm.g_r(s, r)
            yield Instance(n, {"r": r, "sigma": s}, (bc.mix_prime(m), bc.longr_prime_set(m)),
                           (pm.inv_D(s), pm.prlminl_prime_set(s)))
        for s0 in _perm_bases(r, bases):
            m0 = pm.g_r(s0, r)
            inv0 = s0.inverse()
            for s in drs:
                m = pm.g_r(s, r)
                lhs = (pm.sor_r_D(s, s0, r), pm.cyc01_prime_sets(s * inv0))
                yield Instance(n, {"r": r, "sigma": s, "sigma0": s0}, lhs,
                               (bc.sor_prime(m, m0), bc.cyc01_prime_sets(m, m0)), 0)


# --- polynomial specializations -------------------------------------------------------


def _specialize(max_n, bases):
    q, t = var("q"), var("t")
    for n in range(1, max_n + 1):
        h = tuple(range(1, n + 1))
        to_t = {f"t{i}": t for i in range(1, n + 1)}
        yield Instance(n, {"n": n, "pair": "SN,EQHM"}, build_rhs("F-SN", n=n), build_rhs("F-EQHM", h=h).substitute(to_t))
        yield Instance(n, {"n": n, "pair": "BW,EQHM"}, build_rhs("F-BW", n=n), build_rhs("F-EQHM", h=h))
        yield Instance(n, {"n": n, "pair": "PETB,NMIN"}, build_rhs("F-PETB", n=n), build_rhs("F-NMIN", h=h))
        yield Instance(n, {"n": n, "pair": "DFULL,DMIX"}, build_rhs("F-DFULL", n=n), build_rhs("F-DMIX", h=h))
    for n, d in _paths(min(max_n, 5)):
        sub = {"q1": q, "q2": q, "q4": q * q, "q6": q * q, "q3": 1, "q5": 1, "p": q}
        yield Instance(n, {"path": d, "pair": "THMSIGNED,CORB"},
                       build_rhs("F-THMSIGNED", h=d.heights).substitute(sub), build_rhs("F-CORB", h=d.heights))
        # p = q = 1 with all t, s set to 1 counts the matchings
        h = d.heights
        count = 1
        for x in h:
            count *= x
        ones = {v: 1 for v in build_rhs("F-THM1", h=h).variables}
        yield Instance(n, {"path": d, "pair": "THM1 at 1"}, build_rhs("F-THM1", h=h).evaluate(ones), count)


# --- worked examples ------------------------------------------------------------------


def _worked(max_n, bases):
    s = pm.parse_perm("6571342")
    yield Instance(7, {"sigma": s}, ([str(x) for x in pm.sor_factorization(s)], pm.sor(s)),
                   (["(2 3)", "(1 4)", "(2 5)", "(1 6)", "(3 7)"], 16))
    sb = pm.parse_perm("-5,1,3,-4,-2")
    yield Instance(5, {"sigma": sb}, ([x.to_json() for x in pm.sor_B_factorization(sb)], pm.sor_B(sb)),
                   ([[1, 2], [-4, 4], [-1, 5]], 13))
    nine = pm.parse_perm("-3,-9,-5,-7,1,-6,-4,8,2")
    yield Instance(9, {"sigma": nine}, (pm.cyc0_set(nine), pm.cyc1_set(nine)),
                   (frozenset({1, 4, 8}), frozenset({2, 6})))


# --- catalogue ------------------------------------------------------------------------

_CHECKS = [
    CheckDef("DYCK-HEIGHTS", "dyck-core", "rise heights and fall heights agree as multisets", 6, _dyck_heights),
    CheckDef("DYCK-RESTRICTION", "dyck-core", "r -> D(r) -> r round trip; k-th fall height is r_k - k + 1", 6, _dyck_restriction),
    CheckDef("DYCK-CATALAN", "dyck-core", "Catalan(n) distinct valid paths", 6, _dyck_catalan),
    CheckDef("DYCK-WEIGHTS", "dyck-core", "number of weight vectors is the product of heights", 6, _dyck_weights),
    CheckDef("VARPHI1-BIJ", "matchings", "varphi1 is a bijection onto matchings of type D", 5, _varphi1_bij),
    CheckDef("PHI1-BIJ", "matchings", "phi1 is a bijection for every base", 4, _phi1_bij, True),
    CheckDef("THM1", "matchings", "(cr, ne, Left, Long) distribution equals F-THM1", 5, _thm1),
    CheckDef("PROP1", "matchings", "Short(varphi1(D, w)) = Rlminl(2 - w_1, ..., n + 1 - w_n)", 5, _prop1),
    CheckDef("THM2", "matchings", "phi1: sor = sum(w_k - 1), Cyc = {k : w_k = 1}, Short law on the nonnesting base", 4, _thm2, True),
    CheckDef("EQHM", "matchings", "(sor, Cyc) distribution equals F-EQHM for every base", 4, _eqhm, True),
    CheckDef("MULTISET", "matchings", "{(sor, Cyc, Short)} = {(ne, Long, Short)} with nonnesting base", 5, _multiset),
    CheckDef("SORT-TYPE", "matchings", "sort intermediates keep the type and end at the base", 4, _sort_type, True),
    CheckDef("THMSIGNED", "bicolored-matchings", "refined 8-variable distribution equals F-THMSIGNED", 4, _thmsigned),
    CheckDef("CORB", "bicolored-matchings", "(mix, Longr) distribution equals F-CORB", 5, _corb),
    CheckDef("VARPHI2-BIJ", "bicolored-matchings", "varphi2 is a bijection onto bicolored matchings of type D", 4, _varphi2_bij),
    CheckDef("PHI2", "bicolored-matchings", "phi2 sor formula, Cyc0/Cyc1 law, inverse and bijectivity", 4, _phi2, True),
    CheckDef("ODDEVEN-M", "bicolored-matchings", "(sor, Cyc0, Cyc1) distribution equals F-ODDEVEN for every red base", 4, _oddeven_m, True),
    CheckDef("SOR-ALLRED", "bicolored-matchings", "bicolored sor of an all-red matching is the plain sor", 4, _sor_allred, True),
    CheckDef("DMIX-M", "bicolored-matchings", "even-blue (mix', Longr') distribution equals F-DMIX", 4, _dmix_m),
    CheckDef("DSOR-M", "bicolored-matchings", "even-blue (sor', Cyc0', Cyc1') distribution equals F-DCYC", 4, _dsor_m, True),
    CheckDef("TRANSPORT-A", "permutations", "f_r carries ne, Long, Short to inv, Rlminl, Lrmaxp", 5, _transport_a),
    CheckDef("SORR-TRANSPORT", "permutations", "sor_r and Cyc(σσ0⁻¹) agree with the matching side", 4, _sorr_transport, True),
    CheckDef("RLMIN-R", "permutations", "(inv, Rlminl) on S_r equals F-RLMIN-R and F-EQHM", 5, _rlmin_r),
    CheckDef("SORR-ID", "permutations", "sor_r(σ, id) = sor(σ)", 5, _sorr_id),
    CheckDef("PERMCOR", "permutations", "(sor_r, Cyc(σσ0⁻¹)) on S_r equals F-EQHM for every base", 4, _permcor, True),
    CheckDef("TRIPLES", "permutations", "(inv, Rlminl, Lrmaxp) and (sor, Cyc, Lrmaxp) equidistributed on S_r", 5, _triples),
    CheckDef("LASTHM", "permutations", "cyc(σσ0⁻¹) on S_r equals F-LASTHM for every base; closure witness", 4, _lasthm, True),
    CheckDef("ROOK", "polynomials", "F-LASTHM equals the rook expansion F-ROOK", 5, _rook),
    CheckDef("SN", "permutations", "(sor, cyc) on S_n equals F-SN", 6, _sn),
    CheckDef("BW", "permutations", "(inv, Rlminl) and (maj, Rlminl) on S_n equal F-BW", 6, _bw),
    CheckDef("SORFACT", "permutations", "selection-sort factorizations recompose (types A, B, D)", 5, _sorfact),
    CheckDef("TRANSPORT-B", "permutations", "g_r carries mix, Longr, sor and Cyc0/Cyc1 to inv_B, Prlminl, sor_r_B, signed cycles", 4, _transport_b, True),
    CheckDef("SORRB-ID", "permutations", "sor_r_B(σ, id) = sor_B(σ)", 4, _sorrb_id),
    CheckDef("ODDEVEN", "permutations", "(sor_r_B, Cyc0, Cyc1) on B_r equals F-ODDEVEN for every base", 4, _oddeven, True),
    CheckDef("NMIN-B", "permutations", "nmin_B = n - |Prlminl|; (inv_B, nmin_B) on B_r equals F-NMIN", 4, _nmin_b),
    CheckDef("SORMIX-B", "permutations", "(inv_B, nmin_B) and (sor_r_B, reflection length) equidistributed on B_r", 4, _sormix_b, True),
    CheckDef("PETB", "permutations", "(inv_B, nmin_B) and (sor_B, reflection length) on B_n equal F-PETB", 5, _petb),
    CheckDef("PRLMIN-B", "permutations", "(inv_B, Prlminl) on B_r equals F-CORB", 4, _prlmin_b),
    CheckDef("PETD", "permutations", "sor_D and inv_D on D_n equal F-PETD", 5, _petd),
    CheckDef("D-INV", "permutations", "(inv_D, Prlminl') on D_n(r) equals F-DMIX", 4, _d_inv),
    CheckDef("D-SOR", "permutations", "(sor_r_D, Cyc0', Cyc1') on D_n(r) equals F-DCYC for every base", 4, _d_sor, True),
    CheckDef("DFULL", "permutations", "(inv_D, Prlminl') and (sor_D, Cyc0') on D_n equal F-DFULL", 5, _dfull),
    CheckDef("TRANSPORT-D", "permutations", "g_r carries mix', Longr', sor', Cyc' to inv_D, Prlminl', sor_r_D, Cyc'", 4, _transport_d, True),
    CheckDef("SPECIALIZE", "polynomials", "product formulas specialize into one another", 6, _specialize),
    CheckDef("WORKED", "permutations", "worked examples: two sorting factorizations and a signed cycle split", 1, _worked),
]

CATALOGUE: dict[str, CheckDef] = {c.id: c for c in _CHECKS}


def _env_max_n() -> int | None:
    raw = os.environ.get(MAX_N_ENV, "").strip()
    if not raw:
        return None
    try:
        v = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_N_ENV} must be an integer, got {raw!r}") from None
    if v < 1:
        raise ValueError(f"{MAX_N_ENV} must be at least 1")
    return v


def run_check(spec: CheckSpec) -> CheckResult:
    try:
        check = CATALOGUE[spec.id]
    except KeyError:
        raise UnknownCheck(spec.id) from None
    max_n = spec.max_n or _env_max_n() or check.default_max_n
    res = CheckResult(spec.id, max_n, spec.bases)
    start = time.perf_counter()
    for inst in check.run(max_n, spec.bases):
        res.instances += inst.count
        res.instances_by_n[inst.n] = res.instances_by_n.get(inst.n, 0) + inst.count
        if inst.lhs != inst.rhs:
            res.status = "fail"
            res.counterexample = {
                "n": inst.n,
                "inputs": jsonify(inst.inputs),
                "lhs": jsonify(inst.lhs),
                "rhs": jsonify(inst.rhs),
            }
            break
    res.elapsed = time.perf_counter() - start
    return res


def run_checks(specs: Iterable[CheckSpec | str]) -> Report:
    """Run the given checks in order.  Unknown ids raise before anything runs."""
    specs = [CheckSpec(s) if isinstance(s, str) else s for s in specs]
    unknown = [s.id for s in specs if s.id not in CATALOGUE]
    if unknown:
        raise UnknownCheck(", ".join(unknown))
    return Report([run_check(s) for s in specs])
