"""Closed-form product polynomials the enumerations are compared against,
plus brute-force rook numbers of Ferrers boards.

Every builder takes keyword parameters: ``h`` (a height sequence), ``r`` (a
restriction sequence) or ``n``.  Use :func:`build_rhs` to dispatch by id.
"""

from __future__ import annotations

import itertools
from typing import Callable, Sequence

from .dyck import dyck_from_restriction, is_valid_restriction
from .polynomials import Poly, const, monomial, q_integer, q_sum, var

__all__ = ["FORMULAS", "build_rhs", "rook_counts", "falling_factorial_shifted"]

q = var("q")
t = var("t")


def _prod(factors) -> Poly:
    out = const(1)
    for f in factors:
        out = out * f
    return out


def _ti(i: int) -> Poly:
    return var(f"t{i}")


def _si(i: int) -> Poly:
    return var(f"s{i}")


def thm1(h: Sequence[int]) -> Poly:
    # w-th choice: h-w crossings, w-1 nestings; w=1 adds t_k (Long), w=h adds s_k (Left)
    factors = []
    for k, hk in enumerate(h, 1):
        f = const(0)
        for w in range(1, hk + 1):
            exps = {"p": hk - w, "q": w - 1}
            if w == 1:
                exps[f"t{k}"] = 1
            if w == hk:
                exps[f"s{k}"] = exps.get(f"s{k}", 0) + 1
            f = f + monomial(exps)
        factors.append(f)
    return _prod(factors)


def eqhm(h: Sequence[int]) -> Poly:
    return _prod(_ti(k) + q_sum(1, hk - 1) for k, hk in enumerate(h, 1))


def sn(n: int) -> Poly:
    return _prod(t + q_sum(1, k - 1) for k in range(1, n + 1))


def bw(n: int) -> Poly:
    return _prod(_ti(k) + q_sum(1, k - 1) for k in range(1, n + 1))


def thmsigned(h: Sequence[int]) -> Poly:
    factors = []
    for i, hi in enumerate(h, 1):
        f = const(0)
        for k in range(1, hi + 1):
            red = {"q1": k - 1, "q3": hi - k, "q5": i - hi}
            if k == 1:
                red[f"t{i}"] = 1
            blue = {"q2": hi - k, "q4": k - 1, "q6": i - hi, "p": 1}
            f = f + monomial(red) + monomial(blue)
        factors.append(f)
    return _prod(factors)


def corb(h: Sequence[int]) -> Poly:
    return _prod(
        _ti(k) + q * q_integer(hk - 1) + monomial({"q": 2 * k - hk}) * q_integer(hk)
        for k, hk in enumerate(h, 1)
    )


def oddeven(h: Sequence[int]) -> Poly:
    return _prod(
        _ti(k) + (q + monomial({"q": 2 * k - hk})) * q_integer(hk - 1) + _si(k) * monomial({"q": 2 * k - 1})
        for k, hk in enumerate(h, 1)
    )


def nmin(h: Sequence[int]) -> Poly:
    return _prod(
        1 + q * q_integer(hk - 1) * t + monomial({"q": 2 * k - hk}) * q_integer(hk) * t
        for k, hk in enumerate(h, 1)
    )


def petb(n: int) -> Poly:
    return _prod(1 + t * q_integer(2 * i) - t for i in range(1, n + 1))


def petd(n: int) -> Poly:
    if n < 1:
        return const(1)
    return q_integer(n) * _prod(q_integer(2 * i) for i in range(1, n))


def lasthm(r: Sequence[int]) -> Poly:
    return _prod(t + (rk - k) for k, rk in enumerate(r, 1))


def rook_counts(r: Sequence[int]) -> list[int]:
    """Number of placements of k non-attacking rooks, k = 0..n, on the Ferrers
    board whose i-th row has r_i cells, by exhaustive search."""
    n = len(r)
    counts = [0] * (n + 1)
    cells = [(i, j) for i in range(n) for j in range(r[i])]
    for k in range(n + 1):
        for combo in itertools.combinations(cells, k):
            rows = {c[0] for c in combo}
            cols = {c[1] for c in combo}
            if len(rows) == k and len(cols) == k:
                counts[k] += 1
    return counts


def falling_factorial_shifted(k: int) -> Poly:
    """(t - 1)(t - 2)...(t - k)."""
    return _prod(t - j for j in range(1, k + 1))


def rook(r: Sequence[int]) -> Poly:
    rc = rook_counts(r)
    n = len(r)
    return sum((rc[n - k] * falling_factorial_shifted(k) for k in range(n + 1)), const(0))


def dmix(h: Sequence[int]) -> Poly:
    return _prod(
        _ti(i) + q * q_integer(hi - 1) + monomial({"q": 2 * i - hi - 1}) * q_integer(hi)
        for i, hi in enumerate(h, 1)
        if i >= 2
    )


def dcyc(h: Sequence[int]) -> Poly:
    return _prod(
        _ti(i) + (q + monomial({"q": 2 * i - hi - 1})) * q_integer(hi - 1) + monomial({"q": 2 * i - 2}) * _si(i)
        for i, hi in enumerate(h, 1)
        if i >= 2
    )


def dfull(n: int) -> Poly:
    return _prod(_ti(i) + q * q_integer(i - 1) + monomial({"q": i - 1}) * q_integer(i) for i in range(2, n + 1))


def rlmin_r(r: Sequence[int]) -> Poly:
    return _prod(t + q_sum(1, rk - k) for k, rk in enumerate(r, 1))


# id -> (builder, parameter name)
FORMULAS: dict[str, tuple[Callable, str]] = {
    "F-THM1": (thm1, "h"),
    "F-EQHM": (eqhm, "h"),
    "F-SN": (sn, "n"),
    "F-BW": (bw, "n"),
    "F-THMSIGNED": (thmsigned, "h"),
    "F-CORB": (corb, "h"),
    "F-ODDEVEN": (oddeven, "h"),
    "F-NMIN": (nmin, "h"),
    "F-PETB": (petb, "n"),
    "F-PETD": (petd, "n"),
    "F-LASTHM": (lasthm, "r"),
    "F-ROOK": (rook, "r"),
    "F-DMIX": (dmix, "h"),
    "F-DCYC": (dcyc, "h"),
    "F-DFULL": (dfull, "n"),
    "F-RLMIN-R": (rlmin_r, "r"),
}


def build_rhs(formula_id: str, *, n: int | None = None, h: Sequence[int] | None = None,
              r: Sequence[int] | None = None) -> Poly:
    """Expand the named product formula.

    A formula taking a height sequence also accepts ``r`` (heights of D(r) are
    used); one taking ``n`` also accepts ``h`` or ``r`` (their length).
    """
    try:
        builder, kind = FORMULAS[formula_id]
    except KeyError:
        raise ValueError(f"unknown formula {formula_id!r}") from None
    if r is not None:
        r = tuple(r)
        if not is_valid_restriction(r):
            raise ValueError(f"invalid restriction sequence {list(r)}")
    if kind == "r":
        if r is None:
            if n is None:
                raise ValueError(f"{formula_id} needs r")
            r = (n,) * n
        return builder(r)
    if kind == "h":
        if h is None:
            if r is not None:
                h = dyck_from_restriction(r).heights
            elif n is not None:
                h = tuple(range(1, n + 1))
            else:
                raise ValueError(f"{formula_id} needs h")
        h = tuple(h)
        if h and (h[0] != 1 or any(b > a + 1 or b < 1 for a, b in zip(h, h[1:]))):
            raise ValueError(f"{list(h)} is not a height sequence")
        return builder(h)
    if n is None:
        n = len(h) if h is not None else len(r) if r is not None else None
    if n is None or n < 0:
        raise ValueError(f"{formula_id} needs n >= 0")
    return builder(n)
