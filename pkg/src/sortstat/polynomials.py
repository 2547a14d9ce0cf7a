"""Exact sparse multivariate polynomials with integer coefficients.

Variables are named by strings: ``q``, ``p``, ``q1``..``q6``, ``t``, ``s`` and
the indexed families ``t1, t2, ...`` / ``s1, s2, ...``.  A monomial is a
tuple of ``(name, exponent)`` pairs in canonical variable order, so equality
of polynomials is equality of their term dictionaries.
"""

from __future__ import annotations

import json
import re
from collections import defaultdict
from typing import Callable, Iterable, Mapping

__all__ = [
    "Poly",
    "var",
    "const",
    "q_integer",
    "q_sum",
    "monomial",
    "distribution",
    "var_sort_key",
]

_VAR_RE = re.compile(r"^(q|p|t|s)(\d*)$")
_FAMILY_ORDER = {"q": 0, "p": 1, "t": 2, "s": 3}


def var_sort_key(name: str):
    m = _VAR_RE.match(name)
    if not m:
        raise ValueError(f"unknown variable {name!r}")
    fam, idx = m.groups()
    # bare symbols sort before their indexed family: q, p, q1..q6, t, s, t1.., s1..
    if fam in "qp":
        return (0, 0 if not idx else 1, _FAMILY_ORDER[fam], int(idx or 0))
    return (1, 0 if not idx else 1, _FAMILY_ORDER[fam], int(idx or 0))


def _norm_monomial(exps: Mapping[str, int] | Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    items = exps.items() if isinstance(exps, Mapping) else exps
    acc: dict[str, int] = defaultdict(int)
    for name, e in items:
        if e < 0:
            raise ValueError("negative exponents are not polynomial")
        if e:
            acc[name] += e
    return tuple(sorted(acc.items(), key=lambda kv: var_sort_key(kv[0])))


def _mul_monomials(a, b):
    if not a:
        return b
    if not b:
        return a
    return _norm_monomial(list(a) + list(b))


class Poly:
    """Immutable polynomial; ``terms`` maps monomials to nonzero ints."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            if c:
                key = _norm_monomial(mono)
                clean[key] = clean.get(key, 0) + int(c)
        clean = {m: c for m, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> Poly:
        p = cls.__new__(cls)
        p.terms = {m: c for m, c in terms.items() if c}
        p._hash = None
        return p

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mul_monomials(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def sorted_terms(self):
        def key(item):
            mono = item[0]
            return (sum(e for _, e in mono), [(var_sort_key(v), e) for v, e in mono])

        return sorted(self.terms.items(), key=key)

    @property
    def variables(self) -> set[str]:
        return {v for mono in self.terms for v, _ in mono}

    def evaluate(self, values: Mapping[str, int]) -> int:
        total = 0
        for mono, c in self.terms.items():
            term = c
            for v, e in mono:
                term *= values[v] ** e
            total += term
        return total

    def substitute(self, mapping: Mapping[str, Poly | int]) -> Poly:
        """Replace variables by polynomials; unmapped variables stay."""
        out = const(0)
        for mono, c in self.terms.items():
            term = const(c)
            for v, e in mono:
                term = term * (_coerce(mapping[v]) ** e if v in mapping else monomial({v: e}))
            out = out + term
        return out

    def to_json(self) -> list[dict]:
        return [{"vars": dict(mono), "coef": c} for mono, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> Poly:
        if isinstance(data, str):
            data = json.loads(data)
        return cls({_norm_monomial(t["vars"]): t["coef"] for t in data})


def _coerce(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, int):
        return const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def const(c: int) -> Poly:
    return Poly._raw({(): c})


def monomial(exps: Mapping[str, int], coef: int = 1) -> Poly:
    return Poly._raw({_norm_monomial(exps): coef})


def var(name: str) -> Poly:
    var_sort_key(name)
    return monomial({name: 1})


def q_sum(lo: int, hi: int, name: str = "q") -> Poly:
    """q^lo + ... + q^hi (zero when hi < lo)."""
    return Poly._raw({_norm_monomial({name: e}): 1 for e in range(lo, hi + 1)})


def q_integer(m: int, name: str = "q") -> Poly:
    """[m]_q = 1 + q + ... + q^(m-1); [0]_q = 0."""
    if m < 0:
        raise ValueError("q-integer of a negative number")
    return q_sum(0, m - 1, name)


def distribution(objects: Iterable, profile: Callable) -> Poly:
    """Sum over objects of the monomial given by ``profile(obj)``.

    ``profile`` returns a mapping; integer values are exponents, set values
    (frozenset/set) of indices i are expanded into the product of ``{name}{i}``.
    """
    acc: dict = defaultdict(int)
    for obj in objects:
        exps: dict[str, int] = {}
        for name, value in profile(obj).items():
            if isinstance(value, (set, frozenset)):
                for i in value:
                    key = f"{name}{i}"
                    exps[key] = exps.get(key, 0) + 1
            else:
                exps[name] = exps.get(name, 0) + value
        acc[_norm_monomial(exps)] += 1
    return Poly._raw(dict(acc))
