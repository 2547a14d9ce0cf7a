"""Dyck paths, their height sequences and the restriction sequences r.

A path of semilength n is stored as a string over ``U`` (rise) and ``D``
(fall).  Positions, heights and sequence entries are 1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

__all__ = [
    "DyckPath",
    "height_sequence",
    "fall_heights",
    "dyck_from_restriction",
    "restriction_from_dyck",
    "enumerate_dyck",
    "enumerate_weights",
    "enumerate_restrictions",
    "is_valid_restriction",
    "catalan",
]


@dataclass(frozen=True)
class DyckPath:
    steps: str

    def __post_init__(self):
        level = 0
        for ch in self.steps:
            if ch == "U":
                level += 1
            elif ch == "D":
                level -= 1
            else:
                raise ValueError(f"bad step {ch!r} in {self.steps!r}")
            if level < 0:
                raise ValueError(f"path {self.steps!r} goes below the axis")
        if level != 0:
            raise ValueError(f"path {self.steps!r} does not return to the axis")

    def __str__(self):
        return self.steps

    @property
    def n(self) -> int:
        return len(self.steps) // 2

    @cached_property
    def openers(self) -> tuple[int, ...]:
        """Positions of the rises, increasing."""
        return tuple(i for i, ch in enumerate(self.steps, 1) if ch == "U")

    @cached_property
    def closers(self) -> tuple[int, ...]:
        """Positions of the falls, increasing."""
        return tuple(i for i, ch in enumerate(self.steps, 1) if ch == "D")

    @cached_property
    def heights(self) -> tuple[int, ...]:
        return height_sequence(self)


def height_sequence(path: DyckPath) -> tuple[int, ...]:
    """y-coordinates of the right ends of the rises, left to right."""
    out = []
    level = 0
    for ch in path.steps:
        if ch == "U":
            level += 1
            out.append(level)
        else:
            level -= 1
    return tuple(out)


def fall_heights(path: DyckPath) -> tuple[int, ...]:
    """y-coordinates of the upper ends of the falls, left to right."""
    out = []
    level = 0
    for ch in path.steps:
        if ch == "U":
            level += 1
        else:
            out.append(level)
            level -= 1
    return tuple(out)


def is_valid_restriction(r: Sequence[int]) -> bool:
    n = len(r)
    for k, rk in enumerate(r, 1):
        if not k <= rk <= n:
            return False
        if k > 1 and rk < r[k - 2]:
            return False
    return True


def _check_restriction(r: Sequence[int]) -> tuple[int, ...]:
    r = tuple(int(x) for x in r)
    if not is_valid_restriction(r):
        raise ValueError(f"invalid restriction sequence {list(r)}")
    return r


def dyck_from_restriction(r: Sequence[int]) -> DyckPath:
    """The path D(r) whose k-th fall is preceded by exactly r_k rises."""
    r = _check_restriction(r)
    steps = []
    rises = 0
    for rk in r:
        steps.append("U" * (rk - rises))
        rises = rk
        steps.append("D")
    return DyckPath("".join(steps))


def restriction_from_dyck(path: DyckPath) -> tuple[int, ...]:
    out = []
    rises = 0
    for ch in path.steps:
        if ch == "U":
            rises += 1
        else:
            out.append(rises)
    return tuple(out)


def enumerate_dyck(n: int) -> Iterator[DyckPath]:
    """All paths of semilength n, lexicographic with U < D."""
    if n < 0:
        raise ValueError("semilength must be nonnegative")

    def rec(prefix: str, ups: int, downs: int):
        if ups == downs == n:
            yield DyckPath(prefix)
            return
        if ups < n:
            yield from rec(prefix + "U", ups + 1, downs)
        if downs < ups:
            yield from rec(prefix + "D", ups, downs + 1)

    yield from rec("", 0, 0)


def enumerate_weights(path: DyckPath) -> Iterator[tuple[int, ...]]:
    """All w with 1 <= w_k <= h_k, in lexicographic order."""
    return itertools.product(*(range(1, h + 1) for h in path.heights))


def enumerate_restrictions(n: int) -> Iterator[tuple[int, ...]]:
    """All valid r of length n (nondecreasing, k <= r_k <= n), lexicographic."""

    def rec(prefix: tuple[int, ...]):
        k = len(prefix) + 1
        if k > n:
            yield prefix
            return
        lo = max(k, prefix[-1] if prefix else 1)
        for v in range(lo, n + 1):
            yield from rec(prefix + (v,))

    yield from rec(())


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)
