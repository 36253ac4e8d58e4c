"""Sparse polynomials over GF(2) in the variables w_2, ..., w_n.

A polynomial is a frozenset of monomials; coefficients are implicit, so
addition is symmetric difference and cancellation happens on insertion.
The variable w_k has graded degree k.
"""
from __future__ import annotations

import re
from typing import Iterable, Mapping

__all__ = [
    "Monomial",
    "Polynomial",
    "ONE",
    "w",
    "poly_add",
    "poly_mul",
    "substitute_zero",
    "graded_degree",
    "parse_poly",
    "format_poly",
]


class Monomial(tuple):
    """Product of powers of w-variables, stored as sorted ``(index, exponent)`` pairs.

    Zero exponents are never stored, so the empty tuple is the unit monomial.
    Monomials are context free; the index bound ``n`` lives on :class:`Polynomial`.
    """

    __slots__ = ()

    def __new__(cls, exponents: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(exponents, Monomial):
            return exponents
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        merged: dict[int, int] = {}
        for k, e in items:
            if e < 0:
                raise ValueError(f"negative exponent {e} on w{k}")
            if e:
                merged[k] = merged.get(k, 0) + e
        return super().__new__(cls, sorted(merged.items()))

    @classmethod
    def _raw(cls, pairs) -> "Monomial":
        # pairs already sorted, positive exponents, unique indices
        return tuple.__new__(cls, pairs)

    @property
    def degree(self) -> int:
        """Graded degree, sum of index times exponent."""
        return sum(k * e for k, e in self)

    @property
    def total(self) -> int:
        """Number of variable factors counted with multiplicity."""
        return sum(e for _, e in self)

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(k for k, _ in self)

    def exponent(self, k: int) -> int:
        for i, e in self:
            if i == k:
                return e
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        if not self:
            return other
        if not other:
            return self
        d = dict(self)
        for k, e in other:
            d[k] = d.get(k, 0) + e
        return Monomial._raw(sorted(d.items()))

    def __pow__(self, p: int) -> "Monomial":
        if p < 0:
            raise ValueError("negative power")
        if p == 0:
            return ONE
        return Monomial._raw(tuple((k, e * p) for k, e in self))

    def divides(self, other: "Monomial") -> bool:
        if len(self) > len(other):
            return False
        d = dict(other)
        return all(d.get(k, 0) >= e for k, e in self)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        d = dict(self)
        for k, e in other:
            left = d.get(k, 0) - e
            if left < 0:
                raise ValueError(f"{format_monomial(other)} does not divide {format_monomial(self)}")
            if left:
                d[k] = left
            else:
                del d[k]
        return Monomial._raw(sorted(d.items()))

    def lcm(self, other: "Monomial") -> "Monomial":
        d = dict(self)
        for k, e in other:
            if e > d.get(k, 0):
                d[k] = e
        return Monomial._raw(sorted(d.items()))

    def gcd(self, other: "Monomial") -> "Monomial":
        d = dict(other)
        return Monomial._raw(tuple((k, min(e, d[k])) for k, e in self if k in d))

    def coprime(self, other: "Monomial") -> bool:
        return self.variables.isdisjoint(other.variables)

    def __repr__(self) -> str:
        return f"Monomial({format_monomial(self)})"


ONE = Monomial()


def toggle(acc: set, item) -> None:
    """Add ``item`` to ``acc`` over GF(2): insert if absent, cancel if present."""
    if item in acc:
        acc.remove(item)
    else:
        acc.add(item)


def graded_degree(m: Monomial) -> int:
    return m.degree


def format_monomial(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(f"w{k}" if e == 1 else f"w{k}^{e}" for k, e in m)


def _revlex_key(m: Monomial) -> tuple:
    # Canonical display order: degrevlex with w2 > w3 > ... counted by factors.
    # Larger key means larger monomial.  Negating indices lets the sparse
    # pair list stand in for the dense exponent vector read from the right.
    return (m.total, tuple((-k, -e) for k, e in reversed(m)))


class Polynomial:
    """An immutable element of F2[w_2, ..., w_n]."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, terms: Iterable[Monomial], n: int, *, _checked: bool = False):
        if _checked:
            ts = terms if isinstance(terms, frozenset) else frozenset(terms)
        else:
            acc: set[Monomial] = set()
            for t in terms:
                t = Monomial(t)
                for k, _ in t:
                    if not 2 <= k <= n:
                        raise ValueError(f"variable w{k} outside w2..w{n}")
                toggle(acc, t)
            ts = frozenset(acc)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", ts)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls((), n, _checked=True)

    @classmethod
    def one(cls, n: int) -> "Polynomial":
        return cls(frozenset([ONE]), n, _checked=True)

    @classmethod
    def monomial(cls, m: Monomial | Mapping[int, int], n: int) -> "Polynomial":
        return cls([Monomial(m)], n)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.n, self.terms)))
        return self._hash

    def _check(self, other: "Polynomial") -> None:
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"context mismatch: n={self.n} vs n={other.n}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        return Polynomial(self.terms ^ other.terms, self.n, _checked=True)

    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return Polynomial(frozenset(t * other for t in self.terms), self.n, _checked=True)
        self._check(other)
        acc: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                toggle(acc, a * b)
        return Polynomial(frozenset(acc), self.n, _checked=True)

    def __pow__(self, p: int) -> "Polynomial":
        result = Polynomial.one(self.n)
        base = self
        while p:
            if p & 1:
                result = result * base
            base = base * base
            p >>= 1
        return result

    @property
    def variables(self) -> frozenset[int]:
        out: set[int] = set()
        for t in self.terms:
            out.update(k for k, _ in t)
        return frozenset(out)

    def degrees(self) -> set[int]:
        return {t.degree for t in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, key=_revlex_key, reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r}, n={self.n})"


def w(k: int, n: int, e: int = 1) -> Polynomial:
    """The polynomial w_k^e in context n."""
    return Polynomial([Monomial({k: e})], n)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def substitute_zero(p: Polynomial, kill: Iterable[int]) -> Polynomial:
    """Set every w_k with k in ``kill`` to zero."""
    kill = frozenset(kill)
    if not kill:
        return p
    return Polynomial(
        frozenset(t for t in p.terms if not any(k in kill for k, _ in t)),
        p.n,
        _checked=True,
    )


def truncate(terms: Iterable[Monomial], n: int) -> Polynomial:
    """Build a polynomial from raw terms, applying w_j = 0 for j > n and for j < 2."""
    return Polynomial(
        frozenset(t for t in terms if all(2 <= k <= n for k, _ in t)),
        n,
        _checked=True,
    )


_FACTOR = re.compile(r"w(\d+)(?:\^(\d+))?$")


def parse_poly(text: str, n: int) -> Polynomial:
    """Parse ``"w7*w10 + w4^2 + 1"`` style text into a polynomial in context ``n``."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    terms: list[Monomial] = []
    for raw in s.split("+"):
        term = raw.strip()
        if not term:
            raise ValueError(f"empty term in {text!r}")
        if term == "0":
            continue
        exps: dict[int, int] = {}
        for factor in term.split("*"):
            factor = factor.strip()
            if factor == "1":
                continue
            match = _FACTOR.match(factor)
            if match is None:
                raise ValueError(f"malformed factor {factor!r}")
            k = int(match.group(1))
            e = int(match.group(2)) if match.group(2) else 1
            if e < 1:
                raise ValueError(f"exponent must be positive in {factor!r}")
            if not 2 <= k <= n:
                raise ValueError(f"index {k} outside [2, {n}]")
            exps[k] = exps.get(k, 0) + e
        terms.append(Monomial(exps))
    return Polynomial(terms, n)


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    return " + ".join(format_monomial(t) for t in p.sorted_terms())
