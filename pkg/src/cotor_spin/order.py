"""Term orders on monomials in the w-variables.

Two kinds are supported:

``degrevlex``
    total degree first, ties broken reverse-lexicographically against an
    explicit ranking of the variables (greatest first).  The total degree
    counts factors by default; ``graded=True`` weights w_k by k instead.
``weightlex``
    the weight is the exponent sum over the first ``weight_block`` ranked
    variables; ties are broken lexicographically along the ranking.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .f2poly import Monomial, Polynomial
from .spinarith import SpinParams

DEGREVLEX = "degrevlex"
WEIGHTLEX = "weightlex"


@dataclass(frozen=True, eq=True)
class TermOrder:
    kind: str
    ranking: tuple[int, ...]
    weight_block: int = 0
    graded: bool = False
    _pos: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _keys: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in (DEGREVLEX, WEIGHTLEX):
            raise ValueError(f"unknown order kind {self.kind!r}")
        ranking = tuple(self.ranking)
        if len(set(ranking)) != len(ranking):
            raise ValueError("ranking repeats a variable")
        if not 0 <= self.weight_block <= len(ranking):
            raise ValueError("weight_block out of range")
        object.__setattr__(self, "ranking", ranking)
        object.__setattr__(self, "_pos", {k: i for i, k in enumerate(ranking)})
        object.__setattr__(self, "_keys", {})

    def __hash__(self):
        return hash((self.kind, self.ranking, self.weight_block, self.graded))

    def _dense(self, m: Monomial) -> list[int]:
        vec = [0] * len(self.ranking)
        pos = self._pos
        for k, e in m:
            i = pos.get(k)
            if i is None:
                raise ValueError(f"w{k} is not ranked by this order")
            vec[i] = e
        return vec

    def key(self, m: Monomial) -> tuple:
        """Sort key: ``a < b`` in this order iff ``key(a) < key(b)``."""
        cached = self._keys.get(m)
        if cached is not None:
            return cached
        vec = self._dense(m)
        if self.kind == DEGREVLEX:
            deg = m.degree if self.graded else m.total
            k = (deg, tuple(-e for e in reversed(vec)))
        else:
            k = (sum(vec[: self.weight_block]), tuple(vec))
        if len(self._keys) < 200_000:
            self._keys[m] = k
        return k

    def describe(self) -> str:
        rank = ">".join(f"w{k}" for k in self.ranking)
        if self.kind == DEGREVLEX:
            return f"degrevlex{'[graded]' if self.graded else ''}({rank})"
        return f"weightlex[block={self.weight_block}]({rank})"

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "ranking": list(self.ranking), "weight_block": self.weight_block}
        if self.graded:
            d["graded"] = True
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "TermOrder":
        return cls(d["kind"], tuple(d["ranking"]), d.get("weight_block", 0), d.get("graded", False))


def degrevlex(ranking, graded: bool = False) -> TermOrder:
    return TermOrder(DEGREVLEX, tuple(ranking), 0, graded)


def weightlex(ranking, weight_block: int) -> TermOrder:
    return TermOrder(WEIGHTLEX, tuple(ranking), weight_block)


def compare(a: Monomial, b: Monomial, order: TermOrder) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def leading_monomial(p: Polynomial, order: TermOrder) -> Monomial:
    if not p:
        raise ValueError("the zero polynomial has no leading monomial")
    return max(p.terms, key=order.key)


def build_order_for_n(params: SpinParams) -> TermOrder:
    """The order under which v_s, ..., v_{h'-1} have pairwise coprime leading monomials.

    For 10 <= n <= 16 this is degrevlex with w4 > w6 > w7 > ... (E ascending);
    for n >= 18 it is the weight order over the sigma enumeration of E with
    weight block s - t + epsilon.
    """
    n, s = params.n, params.s
    if params.d_empty:
        raise ValueError(f"no relations beyond v_{s - 1} for n={n} (n = 2^(s-1)+1)")
    if s == 4:
        return degrevlex(params.E)
    return weightlex(params.sigma, s - params.t + (params.epsilon or 0))
