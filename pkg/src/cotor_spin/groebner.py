"""Buchberger machinery over GF(2): S-polynomials, normal forms, completion, counting."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .f2poly import Monomial, Polynomial, toggle
from .order import TermOrder, leading_monomial
from .series import TruncatedSeries


class NotGroebnerError(ValueError):
    pass


@dataclass(frozen=True)
class BasisSet:
    gens: tuple[Polynomial, ...]
    order: TermOrder

    def __post_init__(self):
        gens = tuple(self.gens)
        if any(not g for g in gens):
            raise ValueError("basis elements must be nonzero")
        if len(set(gens)) != len(gens):
            raise ValueError("basis elements must be pairwise distinct")
        if len({g.n for g in gens}) > 1:
            raise ValueError("basis elements live in different contexts")
        object.__setattr__(self, "gens", gens)

    @classmethod
    def of(cls, gens: Iterable[Polynomial], order: TermOrder) -> "BasisSet":
        """Build a basis, silently dropping zeros and repeats."""
        seen: list[Polynomial] = []
        for g in gens:
            if g and g not in seen:
                seen.append(g)
        return cls(tuple(seen), order)

    def leading_monomials(self) -> list[Monomial]:
        return [leading_monomial(g, self.order) for g in self.gens]

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    if not f or not g:
        raise ValueError("S-polynomial of a zero polynomial")
    lf, lg = leading_monomial(f, order), leading_monomial(g, order)
    l = lf.lcm(lg)
    return f * (l / lf) + g * (l / lg)


def _normal_form(terms: Iterable[Monomial], gens: Sequence[Polynomial],
                 lts: Sequence[Monomial], order: TermOrder) -> set[Monomial]:
    key = order.key
    pending = set(terms)
    remainder: set[Monomial] = set()
    while pending:
        m = max(pending, key=key)
        for g, lt in zip(gens, lts):
            if lt.divides(m):
                q = m / lt
                for t in g.terms:
                    toggle(pending, t * q)
                break
        else:
            pending.remove(m)
            remainder.add(m)
    return remainder


def reduce(f: Polynomial, G: BasisSet) -> tuple[Polynomial, bool]:
    """Fully reduce ``f`` modulo ``G``.

    The returned normal form has no term divisible by any leading monomial of
    ``G``; the flag says whether it is zero.  When several divisors apply the
    lowest-indexed generator is used.
    """
    if not G.gens:
        return f, not f
    rem = _normal_form(f.terms, G.gens, G.leading_monomials(), G.order)
    nf = Polynomial(frozenset(rem), f.n, _checked=True)
    return nf, not rem


def is_groebner(G: BasisSet) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero modulo G."""
    lts = G.leading_monomials()
    for i, j in combinations(range(len(G.gens)), 2):
        s = s_polynomial(G.gens[i], G.gens[j], G.order)
        if _normal_form(s.terms, G.gens, lts, G.order):
            return False
    return True


def coprime_pairs_criterion(G: BasisSet) -> bool:
    """True when the leading monomials are pairwise coprime, which forces a Groebner basis."""
    lts = G.leading_monomials()
    return all(a.coprime(b) for a, b in combinations(lts, 2))


def is_regular_sequence_by_coprimality(G: BasisSet) -> bool:
    """Sufficient test for regularity; ``False`` means only that the test is silent."""
    return coprime_pairs_criterion(G)


def buchberger_completion(F: BasisSet) -> BasisSet:
    """Close ``F`` under S-polynomial remainders.

    Input generators are kept as given and in order; new elements are appended.
    Pairs with coprime leading monomials are skipped.
    """
    if not F.gens:
        raise ValueError("empty generating set")
    order = F.order
    gens = list(F.gens)
    lts = [leading_monomial(g, order) for g in gens]
    queue = deque(combinations(range(len(gens)), 2))
    while queue:
        i, j = queue.popleft()
        if lts[i].coprime(lts[j]):
            continue
        s = s_polynomial(gens[i], gens[j], order)
        rem = _normal_form(s.terms, gens, lts, order)
        if rem:
            r = Polynomial(frozenset(rem), gens[0].n, _checked=True)
            gens.append(r)
            lts.append(leading_monomial(r, order))
            queue.extend((k, len(gens) - 1) for k in range(len(gens) - 1))
    return BasisSet(tuple(gens), order)


def reduced_basis(G: BasisSet) -> BasisSet:
    """Minimal, fully interreduced form of a Groebner basis (unique for its ideal)."""
    order = G.order
    gens = sorted(G.gens, key=lambda g: order.key(leading_monomial(g, order)))
    minimal: list[Polynomial] = []
    for g in gens:
        lt = leading_monomial(g, order)
        if not any(leading_monomial(h, order).divides(lt) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        lt = leading_monomial(g, order)
        tail = [t for t in g.terms if t != lt]
        rem = _normal_form(tail, others, [leading_monomial(h, order) for h in others], order)
        rem.add(lt)
        out.append(Polynomial(frozenset(rem), g.n, _checked=True))
    return BasisSet(tuple(out), order)


def groebner_basis(gens: Iterable[Polynomial], order: TermOrder) -> BasisSet:
    return reduced_basis(buchberger_completion(BasisSet.of(gens, order)))


def ideal_membership(f: Polynomial, G: BasisSet, *, check: bool = True) -> bool:
    if check and not is_groebner(G):
        raise NotGroebnerError("membership test needs a Groebner basis")
    return reduce(f, G)[1]


def standard_monomials(lts: Sequence[Monomial], variables: Iterable[int], max_degree: int):
    """Yield every monomial of graded degree <= ``max_degree`` divisible by no element of ``lts``.

    Depth-first over the variables; a divisible monomial prunes its whole
    subtree since standard monomials are closed under division.
    """
    vs = sorted(set(variables))
    lts = list(lts)

    def divisible(exps: dict) -> bool:
        return any(all(exps.get(k, 0) >= e for k, e in lt) for lt in lts)

    def walk(i: int, budget: int, exps: dict):
        if i == len(vs):
            yield Monomial(exps)
            return
        k = vs[i]
        e = 0
        while e * k <= budget:
            if e:
                exps[k] = e
                if divisible(exps):
                    break
            yield from walk(i + 1, budget - e * k, exps)
            e += 1
        exps.pop(k, None)

    if divisible({}):
        return
    yield from walk(0, max_degree, {})


def standard_monomial_series(G: BasisSet, variables: Iterable[int], D: int, *,
                             check: bool = True) -> TruncatedSeries:
    """Count standard monomials by graded degree, through degree ``D``.

    ``variables`` are indices k with w_k of degree k.  Independent of any
    closed-form series: this is plain enumeration.
    """
    if check and not is_groebner(G):
        raise NotGroebnerError("standard monomials need a Groebner basis")
    coeffs = [0] * (D + 1)
    for m in standard_monomials(G.leading_monomials(), variables, D):
        coeffs[m.degree] += 1
    return TruncatedSeries(tuple(coeffs))
