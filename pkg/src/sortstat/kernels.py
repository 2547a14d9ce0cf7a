"""Batch statistics over whole families of (signed) permutations.

Windows are rows of an ``int64`` array of shape ``(N, n)``.  Two backends
compute identical results: numba-compiled loops, and vectorized numpy that
runs without a compiler.  Set ``SORTSTAT_NO_NUMBA=1`` to force the numpy
path; it is also used when numba cannot be imported.

Set-valued statistics come back as bitmasks: bit ``i - 1`` set means i is in
the set.
"""

from __future__ import annotations

import itertools
import os
from types import SimpleNamespace

import numpy as np

from .polynomials import Poly

__all__ = [
    "BACKEND",
    "backend",
    "STATS",
    "windows_A",
    "windows_B",
    "windows_D",
    "mask_to_set",
    "popcount",
    "joint_distribution",
    "warmup",
]

STATS = (
    "inv", "maj", "sor", "cyc", "rlminl_mask", "cycmin_mask",
    "neg", "inv_B", "nmin_B", "sor_B", "cyc0_mask", "cyc1_mask", "prlminl_mask",
    "inv_D", "sor_D",
)


# --- enumeration ------------------------------------------------------------------


def windows_A(n: int) -> np.ndarray:
    """All of S_n, lexicographic."""
    rows = list(itertools.permutations(range(1, n + 1)))
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)


def _sign_patterns(n: int, parity: int | None) -> np.ndarray:
    rows = list(itertools.product((1, -1), repeat=n))
    signs = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    if parity is not None:
        signs = signs[((signs < 0).sum(axis=1) % 2) == parity]
    return signs


def _signed(n: int, parity: int | None) -> np.ndarray:
    perms = windows_A(n)
    signs = _sign_patterns(n, parity)
    return (perms[:, None, :] * signs[None, :, :]).reshape(len(perms) * len(signs), n)


def windows_B(n: int) -> np.ndarray:
    """All of B_n: each permutation of S_n (lexicographic) with every sign pattern."""
    return _signed(n, None)


def windows_D(n: int) -> np.ndarray:
    return _signed(n, 0)


def mask_to_set(mask: int) -> frozenset[int]:
    mask = int(mask)
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def joint_distribution(exponents: dict[str, np.ndarray], masks: dict[str, np.ndarray] | None = None) -> Poly:
    """Sum of monomials prod(name^exponent) * prod_{i in mask} name_i over rows."""
    masks = masks or {}
    names = list(exponents) + list(masks)
    cols = [np.asarray(exponents[k], dtype=np.int64) for k in exponents]
    cols += [np.asarray(masks[k], dtype=np.int64) for k in masks]
    if not cols or len(cols[0]) == 0:
        return Poly()
    table, counts = np.unique(np.stack(cols, axis=1), axis=0, return_counts=True)
    terms = {}
    n_exp = len(exponents)
    for row, c in zip(table, counts):
        mono = []
        for name, v in zip(names[:n_exp], row[:n_exp]):
            mono.append((name, int(v)))
        for name, v in zip(names[n_exp:], row[n_exp:]):
            mono.extend((f"{name}{i}", 1) for i in mask_to_set(v))
        terms[tuple(mono)] = int(c)
    return Poly(terms)


# --- numpy backend ----------------------------------------------------------------


def _np_inv(w):
    n = w.shape[1]
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    return ((w[:, :, None] > w[:, None, :]) & upper).sum(axis=(1, 2)).astype(np.int64)


def _np_maj(w):
    n = w.shape[1]
    if n < 2:
        return np.zeros(len(w), dtype=np.int64)
    return ((w[:, :-1] > w[:, 1:]) * np.arange(1, n)).sum(axis=1).astype(np.int64)


def _np_sor(w):
    w = w.copy()
    N, n = w.shape
    rows = np.arange(N)
    cost = np.zeros(N, dtype=np.int64)
    for k in range(n, 0, -1):
        p = np.argmax(w == k, axis=1)
        cost += (k - 1) - p
        w[rows, p] = w[rows, k - 1]
        w[:, k - 1] = k
    return cost


def _np_cycle_min_flags(w):
    """flags[r, i] = True when i+1 is the minimal letter of its cycle."""
    N, n = w.shape
    rows = np.arange(N)[:, None]
    start = np.broadcast_to(np.arange(n), (N, n))
    cur = start.copy()
    low = start.copy()
    for _ in range(n):
        cur = w[rows, cur] - 1
        low = np.minimum(low, cur)
    return low == start


def _np_cyc(w):
    return _np_cycle_min_flags(w).sum(axis=1).astype(np.int64)


def _bits(flags):
    n = flags.shape[1]
    return (flags.astype(np.int64) << np.arange(n, dtype=np.int64)).sum(axis=1)


def _np_cycmin_mask(w):
    return _bits(_np_cycle_min_flags(w))


def _np_rlminl_mask(w):
    N, n = w.shape
    if n == 0:
        return np.zeros(N, dtype=np.int64)
    suf = np.minimum.accumulate(w[:, ::-1], axis=1)[:, ::-1]
    later = np.concatenate([suf[:, 1:], np.full((N, 1), n + 1)], axis=1)
    is_min = w < later
    letters = np.where(is_min, np.int64(1) << (w - 1), 0)
    return letters.sum(axis=1)


def _np_neg(w):
    return (w < 0).sum(axis=1).astype(np.int64)


def _np_inv_pairs_B(w):
    n = w.shape[1]
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    a = ((w[:, :, None] > w[:, None, :]) & upper).sum(axis=(1, 2))
    b = ((-w[:, :, None] > w[:, None, :]) & upper).sum(axis=(1, 2))
    return (a + b).astype(np.int64)


def _np_inv_B(w):
    return _np_inv_pairs_B(w) + _np_neg(w)


def _np_inv_D(w):
    return _np_inv_pairs_B(w)


def _suffix_abs_min(w):
    N, n = w.shape
    a = np.abs(w)
    suf = np.minimum.accumulate(a[:, ::-1], axis=1)[:, ::-1]
    return np.concatenate([suf[:, 1:], np.full((N, 1), n + 1)], axis=1)


def _np_nmin_B(w):
    return (w > _suffix_abs_min(w)).sum(axis=1).astype(np.int64) + _np_neg(w)


def _np_prlminl_mask(w):
    later = _suffix_abs_min(w)
    is_min = (w > 0) & (w < later)
    return np.where(is_min, np.int64(1) << (np.abs(w) - 1), 0).sum(axis=1)


def _np_signed_sort(w, type_d):
    w = w.copy()
    N, n = w.shape
    rows = np.arange(N)
    cost = np.zeros(N, dtype=np.int64)
    last = 2 if type_d else 1
    for k in range(n, last - 1, -1):
        p = np.argmax(np.abs(w) == k, axis=1)
        neg = w[rows, p] < 0
        pos1 = p + 1
        step = np.where(neg, k + pos1 - (2 if type_d else 1), k - pos1)
        cost += step
        if type_d:
            flip = neg & (pos1 == k)
            w[flip, 0] = -w[flip, 0]
        old = w[:, k - 1].copy()
        w[rows, p] = np.where(neg, -old, old)
        w[:, k - 1] = k
    return cost


def _np_sor_B(w):
    return _np_signed_sort(w, False)


def _np_sor_D(w):
    return _np_signed_sort(w, True)


def _np_signed_cycle_flags(w):
    """(balanced_min, unbalanced_min) flags per letter, vectorized over rows."""
    N, n = w.shape
    rows = np.arange(N)[:, None]
    start = np.broadcast_to(np.arange(1, n + 1), (N, n))
    cur = start.copy()
    low = start.copy()
    hit_neg = np.zeros((N, n), dtype=bool)
    for _ in range(2 * n):
        cur = np.sign(cur) * w[rows, np.abs(cur) - 1]
        low = np.minimum(low, np.abs(cur))
        hit_neg |= cur == -start
    is_min = low == start
    return is_min & ~hit_neg, is_min & hit_neg


def _np_cyc0_mask(w):
    return _bits(_np_signed_cycle_flags(w)[0])


def _np_cyc1_mask(w):
    return _bits(_np_signed_cycle_flags(w)[1])


_NUMPY = SimpleNamespace(
    name="numpy",
    inv=_np_inv, maj=_np_maj, sor=_np_sor, cyc=_np_cyc,
    rlminl_mask=_np_rlminl_mask, cycmin_mask=_np_cycmin_mask,
    neg=_np_neg, inv_B=_np_inv_B, nmin_B=_np_nmin_B, sor_B=_np_sor_B,
    cyc0_mask=_np_cyc0_mask, cyc1_mask=_np_cyc1_mask, prlminl_mask=_np_prlminl_mask,
    inv_D=_np_inv_D, sor_D=_np_sor_D,
)


# --- numba backend ----------------------------------------------------------------


def _build_numba():
    from numba import njit

    @njit(cache=True)
    def inv(w):
        N, n = w.shape
        out = np.zeros(N, dtype=np.int64)
        for r in range(N):
            c = 0
            for i in range(n):
                for j in range(i + 1, n):
                    if w[r, i] > w[r, j]:
                        c += 1
            out[r] = c
        return out

    @njit(cache=True)
    def maj(w):
        N, n = w.shape
        out = np.zeros(N, dtype=np.int64)
        for r in range(N):
            c = 0
            for i in range(1, n):
                if w[r, i - 1] > w[r, i]:
                    c += i
            out[r] = c
        return out

    @njit(cache=True)
    def sor(w):
        N, n = w.shape
        out = np.zeros(N, dtype=np.int64)
        for r in range(N):
            row = w[r].copy()
            c = 0
            for k in range(n, 0, -1):
                p = 0
                while row[p] != k:
                    p += 1
                if p != k - 1:
                    c += k - 1 - p
                    row[p] = row[k - 1]
                    row[k - 1] = k
            out[r] = c
        return out

    @njit(cache=True)
    def cycmin_mask(w):
        N, n = w.shape
        out = np.zeros(N, dtype=np.int64)
        for r in range(N):
            seen = np.zeros(n, dtype=np.bool_)
            m = 0
            for i in range(n):
                if not seen[i]:
                    # scanning i upward, the first unseen letter is its cycle's minimum
                    m |= 1 << i
                    j = i
                    while not seen[j]:
                        seen[j] = True
                        j = w[r, j] - 1
            out[r] = m
        return out

    @njit(cache=True)
    def rlminl_mask(w):
        N, n = w.shape
        out = np.zeros(N, dtype=np.int64)
        for r in range(N):
            low = n + 1
            m = 0
            for i in range(n - 1, -1, -1):
                if w[r, i] < low:
                    low = w[r, i]
                    m |= 1 << (w[r, i] - 1)
            out[r] = m
        return out

    @njit(cache=True)
    def neg(w):
        N, n = w.shape
        out = np.zeros(N, dtype=np.int64)
        for r in range(N):
            c = 0
            for i in range(n):
                if w[r, i] < 0:
                    c += 1
            out[r] = c
        return out

    @njit(cache=True)
    def inv_D(w):
        N, n = w.shape
        out = np.zeros(N, dtype=np.int64)
        for r in range(N):
            c = 0
            for i in range(n):
                for j in range(i + 1, n):
                    if w[r, i] > w[r, j]:
                        c += 1
                    if -w[r, i] > w[r, j]:
                        c += 1
            out[r] = c
        return out

    @njit(cache=True)
    def nmin_B(w):
        N, n = w.shape
        out = np.zeros(N, dtype=np.int64)
        for r in range(N):
            low = n + 1
            c = 0
            for i in range(n - 1, -1, -1):
                x = w[r, i]
                if x < 0 or x > low:
                    c += 1
                if abs(x) < low:
                    low = abs(x)
            out[r] = c
        return out

    @njit(cache=True)
    def prlminl_mask(w):
        N, n = w.shape
        out = np.zeros(N, dtype=np.int64)
        for r in range(N):
            low = n + 1
            m = 0
            for i in range(n - 1, -1, -1):
                x = w[r, i]
                if 0 < x < low:
                    m |= 1 << (x - 1)
                if abs(x) < low:
                    low = abs(x)
            out[r] = m
        return out

    @njit(cache=True)
    def _signed_sort_row(row, type_d):
        n = row.shape[0]
        c = 0
        last = 2 if type_d else 1
        for k in range(n, last - 1, -1):
            p = 0
            while abs(row[p]) != k:
                p += 1
            if row[p] == k and p == k - 1:
                continue
            if row[p] < 0:
                c += k + p + 1 - (2 if type_d else 1)
                if p == k - 1:
                    if type_d:
                        row[0] = -row[0]
                else:
                    row[p] = -row[k - 1]
            else:
                c += k - (p + 1)
                row[p] = row[k - 1]
            row[k - 1] = k
        return c

    @njit(cache=True)
    def sor_B(w):
        N = w.shape[0]
        out = np.zeros(N, dtype=np.int64)
        for r in range(N):
            out[r] = _signed_sort_row(w[r].copy(), False)
        return out

    @njit(cache=True)
    def sor_D(w):
        N = w.shape[0]
        out = np.zeros(N, dtype=np.int64)
        for r in range(N):
            out[r] = _signed_sort_row(w[r].copy(), True)
        return out

    @njit(cache=True)
    def _signed_cycle_masks_row(row):
        n = row.shape[0]
        seen = np.zeros(n, dtype=np.bool_)
        m0 = 0
        m1 = 0
        for a in range(1, n + 1):
            if seen[a - 1]:
                continue
            # a is the least unseen absolute value, hence its cycle's minimum
            unbalanced = False
            x = a
            while True:
                seen[abs(x) - 1] = True
                x = row[x - 1] if x > 0 else -row[-x - 1]
                if x == -a:
                    unbalanced = True
                if x == a:
                    break
            if unbalanced:
                m1 |= 1 << (a - 1)
            else:
                m0 |= 1 << (a - 1)
        return m0, m1

    @njit(cache=True)
    def cyc0_mask(w):
        N = w.shape[0]
        out = np.zeros(N, dtype=np.int64)
        for r in range(N):
            out[r] = _signed_cycle_masks_row(w[r])[0]
        return out

    @njit(cache=True)
    def cyc1_mask(w):
        N = w.shape[0]
        out = np.zeros(N, dtype=np.int64)
        for r in range(N):
            out[r] = _signed_cycle_masks_row(w[r])[1]
        return out

    def cyc(w):
        return popcount(cycmin_mask(w))

    def inv_B(w):
        return inv_D(w) + neg(w)

    return SimpleNamespace(
        name="numba",
        inv=inv, maj=maj, sor=sor, cyc=cyc,
        rlminl_mask=rlminl_mask, cycmin_mask=cycmin_mask,
        neg=neg, inv_B=inv_B, nmin_B=nmin_B, sor_B=sor_B,
        cyc0_mask=cyc0_mask, cyc1_mask=cyc1_mask, prlminl_mask=prlminl_mask,
        inv_D=inv_D, sor_D=sor_D,
    )


def popcount(a):
    a = np.asarray(a, dtype=np.int64)
    out = np.zeros(len(a), dtype=np.int64)
    while a.any():
        out += a & 1
        a = a >> 1
    return out


_NUMBA = None


def backend(name: str | None = None) -> SimpleNamespace:
    """Return the kernels for ``"numba"`` or ``"numpy"`` (default: active)."""
    global _NUMBA
    name = name or BACKEND
    if name == "numpy":
        return _NUMPY
    if name == "numba":
        if _NUMBA is None:
            _NUMBA = _build_numba()
        return _NUMBA
    raise ValueError(f"unknown backend {name!r}")


def warmup(name: str | None = None) -> float:
    """Run every kernel once on a tiny batch (forces JIT compilation); returns seconds."""
    import time

    start = time.perf_counter()
    k = backend(name)
    for stat in STATS:
        w = windows_D(2) if stat in ("inv_D", "sor_D") else windows_B(2) if stat not in (
            "inv", "maj", "sor", "cyc", "rlminl_mask", "cycmin_mask") else windows_A(2)
        getattr(k, stat)(w)
    return time.perf_counter() - start


def _select() -> str:
    if os.environ.get("SORTSTAT_NO_NUMBA", "").strip() not in ("", "0"):
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"


BACKEND = _select()
