"""Restricted permutations S_r, signed B_r and even-signed D_n(r), their
statistics, the selection sorts of types A/B/D, and the transports f_r, g_r
onto (bicolored) matchings of type D(r).

A permutation is stored as its window ``(σ(1), ..., σ(n))``; σ(-i) = -σ(i).
Set-valued statistics are tagged with their kind in the function name or
docstring: *letters* are values σ(i), *places* are positions i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .bicolored import BicoloredMatching
from .dyck import DyckPath, dyck_from_restriction, is_valid_restriction
from .matchings import Matching

__all__ = [
    "SignedPermutation",
    "Transposition",
    "SignedCycle",
    "parse_perm",
    "identity",
    "in_Sr",
    "in_Br",
    "enumerate_Sr",
    "enumerate_Br",
    "enumerate_Dr",
    "inv",
    "maj",
    "cycle_decomposition",
    "cyc",
    "cyc_min_set",
    "rlminl_set",
    "lrmaxp_set",
    "sor",
    "sor_factorization",
    "selection_sort_A",
    "sor_r",
    "f_r",
    "f_r_inv",
    "neg_count",
    "inv_B",
    "nmin_B",
    "prlminl_set",
    "signed_cycles",
    "cyc0_set",
    "cyc1_set",
    "refl_length_B",
    "sor_B",
    "sor_B_factorization",
    "sor_r_B",
    "sor_r_D",
    "g_r",
    "g_r_inv",
    "inv_D",
    "sor_D",
    "sor_D_factorization",
    "prlminl_prime_set",
    "cyc01_prime_sets",
    "compose_transpositions",
    "MembershipError",
]


class MembershipError(ValueError):
    """A permutation is outside the class an operation requires."""


@dataclass(frozen=True)
class SignedPermutation:
    window: tuple[int, ...]

    def __post_init__(self):
        n = len(self.window)
        if sorted(abs(x) for x in self.window) != list(range(1, n + 1)):
            raise ValueError(f"{list(self.window)} is not a signed permutation of 1..{n}")

    def __call__(self, i: int) -> int:
        if i > 0:
            return self.window[i - 1]
        if i < 0:
            return -self.window[-i - 1]
        raise ValueError("position 0 does not exist")

    def __len__(self):
        return len(self.window)

    @property
    def n(self) -> int:
        return len(self.window)

    @property
    def is_positive(self) -> bool:
        return all(x > 0 for x in self.window)

    def inverse(self) -> SignedPermutation:
        out = [0] * self.n
        for i, x in enumerate(self.window, 1):
            if x > 0:
                out[x - 1] = i
            else:
                out[-x - 1] = -i
        return SignedPermutation(tuple(out))

    def __mul__(self, other: SignedPermutation) -> SignedPermutation:
        """Composition (self ∘ other)(i) = self(other(i))."""
        if other.n != self.n:
            raise ValueError("size mismatch")
        return SignedPermutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def __str__(self):
        if self.is_positive and self.n < 10:
            return "".join(map(str, self.window))
        return ",".join(map(str, self.window))

    def to_json(self) -> list[int]:
        return list(self.window)


def parse_perm(text: str | Sequence[int]) -> SignedPermutation:
    """Accept ``"6571342"``, ``"-5,1,3,-4,-2"``, ``"[-5, 1]"`` or a sequence."""
    if not isinstance(text, str):
        return SignedPermutation(tuple(int(x) for x in text))
    s = text.strip().strip("[]()").strip()
    if not s:
        return SignedPermutation(())
    if "," in s or " " in s:
        return SignedPermutation(tuple(int(x) for x in s.replace(",", " ").split()))
    if "-" in s:
        return SignedPermutation((int(s),))
    return SignedPermutation(tuple(int(ch) for ch in s))


def identity(n: int) -> SignedPermutation:
    return SignedPermutation(tuple(range(1, n + 1)))


@dataclass(frozen=True)
class Transposition:
    """(i j) with i < j, j > 0.  A negative i swaps positions i and j together
    with -i and -j; i = -j negates position j.  The type-D element with
    i = -j negates positions 1 and j."""

    i: int
    j: int

    def __post_init__(self):
        if not (self.i < self.j and self.j > 0 and self.i != 0):
            raise ValueError(f"bad transposition ({self.i} {self.j})")

    def __str__(self):
        a = f"{-self.i}̄" if self.i < 0 else str(self.i)
        return f"({a} {self.j})"

    def to_json(self) -> list[int]:
        return [self.i, self.j]


def _set(window: list[int], pos: int, value: int):
    if pos > 0:
        window[pos - 1] = value
    else:
        window[-pos - 1] = -value


def _get(window: Sequence[int], pos: int) -> int:
    return window[pos - 1] if pos > 0 else -window[-pos - 1]


def _position_of(window: Sequence[int], value: int) -> int:
    """Signed position l with σ(l) = value."""
    for i, x in enumerate(window, 1):
        if x == value:
            return i
        if x == -value:
            return -i
    raise ValueError(f"{value} not in window")


def _swap_positions(window: list[int], a: int, b: int):
    """Right-multiply by the (signed) transposition of positions a, b."""
    if a == -b:
        window[abs(a) - 1] = -window[abs(a) - 1]
        return
    va, vb = _get(window, a), _get(window, b)
    _set(window, a, vb)
    _set(window, b, va)


def compose_transpositions(n: int, factors: Iterable[Transposition], type_d: bool = False) -> SignedPermutation:
    """The product of the factors, leftmost applied last: t_1 ∘ t_2 ∘ ... ∘ t_k."""
    # id ∘ t_1 ∘ ... ∘ t_k: each right factor permutes positions
    window = list(range(1, n + 1))
    for tr in factors:
        if type_d and tr.i == -tr.j:
            _swap_positions(window, -1, tr.j)
            _swap_positions(window, 1, tr.j)
        else:
            _swap_positions(window, tr.i, tr.j)
    return SignedPermutation(tuple(window))


# --- membership and enumeration -------------------------------------------------


def _check_r(r: Sequence[int]) -> tuple[int, ...]:
    r = tuple(r)
    if not is_valid_restriction(r):
        raise ValueError(f"invalid restriction sequence {list(r)}")
    return r


def in_Sr(sigma: SignedPermutation, r: Sequence[int]) -> bool:
    return len(r) == sigma.n and sigma.is_positive and all(x <= rk for x, rk in zip(sigma.window, r))


def in_Br(sigma: SignedPermutation, r: Sequence[int]) -> bool:
    return len(r) == sigma.n and all(abs(x) <= rk for x, rk in zip(sigma.window, r))


def enumerate_Sr(r: Sequence[int]) -> Iterator[SignedPermutation]:
    """Members of S_r in lexicographic order of the window."""
    r = _check_r(r)
    n = len(r)

    def rec(prefix: list[int], used: set[int]):
        k = len(prefix)
        if k == n:
            yield SignedPermutation(tuple(prefix))
            return
        for v in range(1, r[k] + 1):
            if v not in used:
                prefix.append(v)
                used.add(v)
                yield from rec(prefix, used)
                used.discard(v)
                prefix.pop()

    yield from rec([], set())


def _signings(sigma: SignedPermutation, parity: int | None):
    for signs in itertools.product((1, -1), repeat=sigma.n):
        if parity is not None and signs.count(-1) % 2 != parity:
            continue
        yield SignedPermutation(tuple(s * x for s, x in zip(signs, sigma.window)))


def enumerate_Br(r: Sequence[int]) -> Iterator[SignedPermutation]:
    for sigma in enumerate_Sr(r):
        yield from _signings(sigma, None)


def enumerate_Dr(r: Sequence[int]) -> Iterator[SignedPermutation]:
    for sigma in enumerate_Sr(r):
        yield from _signings(sigma, 0)


# --- type A statistics ------------------------------------------------------------


def _require_positive(sigma: SignedPermutation):
    if not sigma.is_positive:
        raise MembershipError(f"{sigma} has negative entries; type-A statistic undefined")


def inv(sigma: SignedPermutation) -> int:
    _require_positive(sigma)
    w = sigma.window
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def maj(sigma: SignedPermutation) -> int:
    _require_positive(sigma)
    w = sigma.window
    return sum(i for i in range(1, len(w)) if w[i - 1] > w[i])


def cycle_decomposition(sigma: SignedPermutation) -> list[tuple[int, ...]]:
    """Cycles of a positive permutation, each starting at its minimum."""
    _require_positive(sigma)
    seen = set()
    out = []
    for i in range(1, sigma.n + 1):
        if i in seen:
            continue
        c = [i]
        seen.add(i)
        j = sigma(i)
        while j != i:
            c.append(j)
            seen.add(j)
            j = sigma(j)
        out.append(tuple(c))
    return out


def cyc(sigma: SignedPermutation) -> int:
    return len(cycle_decomposition(sigma))


def cyc_min_set(sigma: SignedPermutation) -> frozenset[int]:
    """Minimal letters of the cycles."""
    return frozenset(c[0] for c in cycle_decomposition(sigma))


def rlminl_set(sigma: SignedPermutation) -> frozenset[int]:
    """Right-to-left minimum letters."""
    _require_positive(sigma)
    out, low = set(), None
    for x in reversed(sigma.window):
        if low is None or x < low:
            out.add(x)
            low = x
    return frozenset(out)


def lrmaxp_set(sigma: SignedPermutation) -> frozenset[int]:
    """Left-to-right maximum places."""
    _require_positive(sigma)
    out, high = set(), 0
    for i, x in enumerate(sigma.window, 1):
        if x > high:
            out.add(i)
            high = x
    return frozenset(out)


def selection_sort_A(sigma: SignedPermutation) -> list[Transposition]:
    """Swaps performed by Straight Selection Sort, in the order performed."""
    _require_positive(sigma)
    w = list(sigma.window)
    steps = []
    for k in range(sigma.n, 0, -1):
        l = w.index(k) + 1
        if l != k:
            w[l - 1], w[k - 1] = w[k - 1], w[l - 1]
            steps.append(Transposition(l, k))
    return steps


def sor_factorization(sigma: SignedPermutation) -> list[Transposition]:
    """σ = (i_1 j_1)...(i_k j_k) with j_1 < ... < j_k."""
    return selection_sort_A(sigma)[::-1]


def sor(sigma: SignedPermutation) -> int:
    return sum(tr.j - tr.i for tr in selection_sort_A(sigma))


def sor_r(sigma: SignedPermutation, sigma0: SignedPermutation, r: Sequence[int]) -> int:
    """Sorting index of σ relative to σ0 within S_r, summed from the a_k counts."""
    r = _check_r(r)
    for s in (sigma, sigma0):
        if not in_Sr(s, r):
            raise MembershipError(f"{s} not in S_{list(r)}")
    w = list(sigma.window)
    w0 = sigma0.window
    n = sigma.n
    total = 0
    for k in range(n, 0, -1):
        l = w.index(k) + 1
        m = w0.index(k) + 1
        if l < m:
            total += sum(1 for i in range(l, m + 1) if w0[i - 1] < k)
        elif l > m:
            total += sum(1 for i in range(1, n + 1) if r[i - 1] >= k and not m < i < l and w0[i - 1] < k)
        if l != m:
            # swap k with the value at position m
            w[l - 1], w[m - 1] = w[m - 1], w[l - 1]
    return total


def f_r(sigma: SignedPermutation, r: Sequence[int]) -> Matching:
    """Matching of type D(r) with edges o_{σ(k)}·c_k."""
    r = _check_r(r)
    if not in_Sr(sigma, r):
        raise MembershipError(f"{sigma} not in S_{list(r)}")
    path = dyck_from_restriction(r)
    return Matching.from_edges((path.openers[x - 1], path.closers[k]) for k, x in enumerate(sigma.window))


def _closer_to_opener_ranks(m: Matching) -> list[int]:
    rank = {o: k for k, o in enumerate(m.openers, 1)}
    return [rank[m(c)] for c in m.closers]


def f_r_inv(m: Matching, r: Sequence[int]) -> SignedPermutation:
    r = _check_r(r)
    if m.type != dyck_from_restriction(r):
        raise MembershipError(f"{m} is not of type D({list(r)})")
    return SignedPermutation(tuple(_closer_to_opener_ranks(m)))


# --- type B -----------------------------------------------------------------------


def neg_count(sigma: SignedPermutation) -> int:
    return sum(1 for x in sigma.window if x < 0)


def _inv_pairs_B(sigma: SignedPermutation) -> int:
    w = sigma.window
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j]) + sum(
        1 for i in range(n) for j in range(i + 1, n) if -w[i] > w[j]
    )


def inv_B(sigma: SignedPermutation) -> int:
    return _inv_pairs_B(sigma) + neg_count(sigma)


def nmin_B(sigma: SignedPermutation) -> int:
    w = sigma.window
    n = len(w)
    return sum(1 for i in range(n) if any(w[i] > abs(w[j]) for j in range(i + 1, n))) + neg_count(sigma)


def prlminl_set(sigma: SignedPermutation, kind: str = "letters") -> frozenset[int]:
    """Positive right-to-left minima: entries 0 < σ(k) < |σ(l)| for all l > k.

    ``kind="letters"`` returns the values σ(k), ``kind="places"`` the k."""
    if kind not in ("letters", "places"):
        raise ValueError(f"unknown kind {kind!r}")
    w = sigma.window
    out = set()
    low = None
    for k in range(len(w), 0, -1):
        x = w[k - 1]
        if x > 0 and (low is None or x < low):
            out.add(x if kind == "letters" else k)
        low = abs(x) if low is None else min(low, abs(x))
    return frozenset(out)


@dataclass(frozen=True)
class SignedCycle:
    entries: tuple[int, ...]  # starts at the entry of least absolute value, which is positive
    balanced: bool


def signed_cycles(sigma: SignedPermutation) -> list[SignedCycle]:
    """Balanced cycles (a_1 ... a_k), listed once per ± pair, and unbalanced
    cycles (a_1 ... a_k -a_1 ... -a_k)."""
    n = sigma.n
    seen = set()
    out = []
    for a in range(1, n + 1):
        if a in seen:
            continue
        orbit = [a]
        x = sigma(a)
        while x != a:
            orbit.append(x)
            x = sigma(x)
        balanced = -a not in orbit
        seen.update(orbit)
        seen.update(-x for x in orbit)
        out.append(SignedCycle(tuple(orbit), balanced))
    return out


def cyc0_set(sigma: SignedPermutation) -> frozenset[int]:
    return frozenset(min(abs(x) for x in c.entries) for c in signed_cycles(sigma) if c.balanced)


def cyc1_set(sigma: SignedPermutation) -> frozenset[int]:
    return frozenset(min(abs(x) for x in c.entries) for c in signed_cycles(sigma) if not c.balanced)


def refl_length_B(sigma: SignedPermutation) -> int:
    return sigma.n - len(cyc0_set(sigma))


def selection_sort_B(sigma: SignedPermutation) -> list[Transposition]:
    w = list(sigma.window)
    steps = []
    for k in range(sigma.n, 0, -1):
        l = _position_of(w, k)
        if l != k:
            _swap_positions(w, l, k)
            steps.append(Transposition(l, k))
    return steps


def sor_B_factorization(sigma: SignedPermutation) -> list[Transposition]:
    return selection_sort_B(sigma)[::-1]


def sor_B(sigma: SignedPermutation) -> int:
    return sum(tr.j - tr.i - (tr.i < 0) for tr in selection_sort_B(sigma))


def _sorted_steps_B(sigma, sigma0, r):
    """Per-step (l, b_k) for the sort of σ toward σ0 within B_r, k = n..1."""
    r = _check_r(r)
    for s in (sigma, sigma0):
        if not in_Br(s, r):
            raise MembershipError(f"{s} not in B_{list(r)}")
    if not sigma0.is_positive:
        raise MembershipError(f"base {sigma0} must have a positive window")
    w = list(sigma.window)
    w0 = sigma0.window
    n = sigma.n
    out = []
    for k in range(n, 0, -1):
        l = _position_of(w, k)
        m = w0.index(k) + 1
        a = abs(l)
        if a < m:
            cnt = sum(1 for i in range(a, m + 1) if w0[i - 1] < k)
        elif a > m:
            cnt = sum(1 for i in range(1, n + 1) if r[i - 1] >= k and not m < i < a and w0[i - 1] < k)
        else:
            cnt = 0
        out.append((k, l, cnt if l > 0 else 2 * k - 1 - cnt))
        if l != m:
            _swap_positions(w, l, m)
    return out


def sor_r_B(sigma: SignedPermutation, sigma0: SignedPermutation, r: Sequence[int]) -> int:
    """Sorting index of σ relative to a positive σ0 within B_r, summed from b_k.

    For a negative signed position l the interval bounds use |l|."""
    return sum(b for _, _, b in _sorted_steps_B(sigma, sigma0, r))


def sor_r_D(sigma: SignedPermutation, sigma0: SignedPermutation, r: Sequence[int]) -> int:
    """Type-D relative sorting index: b_k for k >= 2, less one when k sat at a
    negative position."""
    _require_even(sigma)
    return sum(b - (l < 0) for k, l, b in _sorted_steps_B(sigma, sigma0, r) if k >= 2)


def g_r(sigma: SignedPermutation, r: Sequence[int]) -> BicoloredMatching:
    """Edges o_{|σ(k)|}·c_k, blue exactly when σ(k) < 0."""
    r = _check_r(r)
    if not in_Br(sigma, r):
        raise MembershipError(f"{sigma} not in B_{list(r)}")
    path = dyck_from_restriction(r)
    edges = []
    for k, x in enumerate(sigma.window):
        edges.append((path.openers[abs(x) - 1], path.closers[k], 1 if x < 0 else 0))
    return BicoloredMatching.from_colored_edges(edges)


def g_r_inv(m: BicoloredMatching, r: Sequence[int]) -> SignedPermutation:
    r = _check_r(r)
    if m.type != dyck_from_restriction(r):
        raise MembershipError(f"{m} is not of type D({list(r)})")
    ranks = _closer_to_opener_ranks(m.base)
    return SignedPermutation(tuple(-x if m.col(c) else x for x, c in zip(ranks, m.closers)))


# --- type D -----------------------------------------------------------------------


def _require_even(sigma: SignedPermutation):
    if neg_count(sigma) % 2:
        raise MembershipError(f"{sigma} has an odd number of negative entries")


def inv_D(sigma: SignedPermutation) -> int:
    _require_even(sigma)
    return _inv_pairs_B(sigma)


def selection_sort_D(sigma: SignedPermutation) -> list[Transposition]:
    """Type-D selection sort for k = n..2.  When σ(k) = -k the step negates
    positions 1 and k together and is recorded as (-k k)."""
    _require_even(sigma)
    w = list(sigma.window)
    steps = []
    for k in range(sigma.n, 1, -1):
        l = _position_of(w, k)
        if l == k:
            continue
        if l == -k:
            w[0] = -w[0]
            w[k - 1] = -w[k - 1]
        else:
            _swap_positions(w, l, k)
        steps.append(Transposition(l, k))
    return steps


def sor_D_factorization(sigma: SignedPermutation) -> list[Transposition]:
    return selection_sort_D(sigma)[::-1]


def sor_D(sigma: SignedPermutation) -> int:
    return sum(tr.j - tr.i - 2 * (tr.i < 0) for tr in selection_sort_D(sigma))


def prlminl_prime_set(sigma: SignedPermutation) -> frozenset[int]:
    """Letters σ(k) with 1 < σ(k) < |σ(l)| for all l > k."""
    _require_even(sigma)
    return prlminl_set(sigma, "letters") - {1}


def cyc01_prime_sets(sigma: SignedPermutation) -> tuple[frozenset[int], frozenset[int]]:
    _require_even(sigma)
    return cyc0_set(sigma) - {1}, cyc1_set(sigma) - {1}
