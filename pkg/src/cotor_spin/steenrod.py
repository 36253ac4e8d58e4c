"""Steenrod squares on the cotorsion product F2[w_2, ..., w_n] and the relations v_k.

On a generator w_m = [x_{m-1}] the action is

    Sq^0 w_m = w_{2m-1},   Sq^1 w_m = w_m^2,   Sq^j w_m = 0 for j >= 2,

extended to products by the Cartan formula.  Arithmetic runs untruncated and
w_j = 0 for j > n is imposed once at the end of each call; the ideal of
variables above n is stable under every Sq^k so the order does not matter.
"""
from __future__ import annotations

from functools import lru_cache

from .f2poly import ONE, Monomial, Polynomial, format_poly, substitute_zero, toggle, truncate
from .groebner import BasisSet, coprime_pairs_criterion, is_groebner
from .order import build_order_for_n, leading_monomial
from .spinarith import SpinParams

_EMPTY: frozenset = frozenset()


def _block(m: int, e: int, a: int) -> Monomial | None:
    """Sq^a of w_m^e: the e-fold Cartan product gives C(e, a) w_m^(2a) w_{2m-1}^(e-a)."""
    if a > e or (a & ~e):  # Lucas: C(e, a) odd iff the bits of a sit inside e
        return None
    return Monomial(((m, 2 * a), (2 * m - 1, e - a)))


@lru_cache(maxsize=None)
def _sq_monomial(k: int, mono: Monomial) -> frozenset:
    """Untruncated Sq^k of a monomial: peel the first variable block, Cartan with the rest."""
    if not mono:
        return frozenset([ONE]) if k == 0 else _EMPTY
    if k > mono.total:
        return _EMPTY
    (m, e), rest = mono[0], Monomial._raw(mono[1:])
    acc: set[Monomial] = set()
    for a in range(min(k, e) + 1):
        head = _block(m, e, a)
        if head is None:
            continue
        for tail in _sq_monomial(k - a, rest):
            toggle(acc, head * tail)
    return frozenset(acc)


def sq_raw(k: int, terms) -> set[Monomial]:
    acc: set[Monomial] = set()
    for t in terms:
        for r in _sq_monomial(k, t):
            toggle(acc, r)
    return acc


def sq(k: int, p: Polynomial) -> Polynomial:
    """Sq^k on a cotorsion element, truncated to w_2..w_n."""
    if k < 0:
        raise ValueError("Sq^k needs k >= 0")
    return truncate(sq_raw(k, p.terms), p.n)


def sq_chain(p: Polynomial, k: int) -> Polynomial:
    """Sq^(2^(k-1)) ... Sq^2 Sq^1 applied to ``p``."""
    if k < 1:
        raise ValueError("sq_chain needs k >= 1")
    for j in range(k):
        p = sq(1 << j, p)
    return p


def project_to_R(p: Polynomial, params: SpinParams) -> Polynomial:
    """Image in R = F2[w_k : k in E], killing w_2 and every w_{2^j+1}."""
    return substitute_zero(p, params.killed)


def v_s_raw(params: SpinParams) -> Polynomial:
    """sum over i + j = 2^(s-1) of w_{2i+1} w_{2j}, with w_0 = w_1 = 0 and w_i = 0 past n."""
    n, half = params.n, 1 << (params.s - 1)
    terms = []
    for i in range(half + 1):
        a, b = 2 * i + 1, 2 * (half - i)
        if 2 <= a <= n and 2 <= b <= n:
            terms.append(Monomial({a: 1, b: 1}))
    return Polynomial(terms, n)


def v_generators(params: SpinParams, *, in_R: bool = True, count: int | None = None) -> list[Polynomial]:
    """The relations v_0, ..., v_{h'-1} (or the first ``count`` of them).

    v_0 = w_2 and v_k = (Sq^0)^k v_0 for k < s.  v_s is the bilinear sum and
    v_{s+k} = Sq^(2^(k-1)) v_{s+k-1}.  With ``in_R`` the relations from v_s on
    are reduced modulo v_0, ..., v_{s-1}, i.e. projected to R; this changes
    neither the ideal nor the regular-sequence property and matches the usual
    displays (v_4 = w7*w10 + w6*w11 + w4*w13 for n = 13).
    """
    n, s = params.n, params.s
    count = params.h_prime if count is None else count
    out: list[Polynomial] = []
    v = Polynomial([Monomial({2: 1})], n)
    for _ in range(min(count, s)):
        out.append(v)
        v = sq(0, v)
    if count <= s:
        return out
    v = v_s_raw(params)
    if in_R:
        v = project_to_R(v, params)
    out.append(v)
    for k in range(1, count - s):
        v = sq(1 << (k - 1), v)
        out.append(v)
    return out


def relations_in_R(params: SpinParams, upto: int | None = None) -> list[Polynomial]:
    """Images in R of v_s, ..., v_{upto-1} (default upto = h')."""
    upto = params.h_prime if upto is None else upto
    return v_generators(params, in_R=True, count=upto)[params.s:]


def verify_prop51(params: SpinParams) -> dict[str, bool]:
    """Vanishing of v_{2s-t+1} (and v_{2s-t} when epsilon = 0) in R; nonvanishing below h'."""
    if params.d_empty:
        raise ValueError(f"n={params.n}: D is empty, no relation v_s")
    s, t = params.s, params.t
    top = 2 * s - t + 1
    rel = relations_in_R(params, upto=top + 1)  # v_s .. v_top
    report = {f"v_{top} = 0 in R": not rel[top - s]}
    if params.epsilon == 0:
        report[f"v_{top - 1} = 0 in R"] = not rel[top - 1 - s]
    report[f"v_{s}..v_{params.h_prime - 1} nonzero in R"] = all(rel[: params.h_prime - s])
    return report


def expected_leading_monomials(params: SpinParams) -> list[Monomial]:
    """Leading monomials of v_s, ..., v_{h'-1} in R predicted from sigma, tau, m, m'."""
    s, t = params.s, params.t
    if s == 4:
        known = [Monomial({7: 1, 10: 1}), Monomial({11: 3}), Monomial({13: 5})]
        return known[: params.h_prime - s]
    out = [Monomial([(params.sigma[k], 1 << k), (params.tau[k], 1)]) for k in range(s - t)]
    if params.epsilon:
        # m = m' happens (n = 43, 57, ...); pairs merge where a dict would not
        out.append(Monomial([(params.m, 1 << (s - t)), (params.m_prime, 1)]))
    return out


def regular_sequence_certificate(params: SpinParams, relations: list[Polynomial] | None = None) -> dict:
    """Leading monomials of v_s..v_{h'-1} under the regular-sequence order, with the coprimality test."""
    order = build_order_for_n(params)
    rel = relations_in_R(params) if relations is None else relations
    lts = [leading_monomial(v, order) if v else None for v in rel]
    expected = expected_leading_monomials(params)
    nonzero = all(v for v in rel)
    coprime = nonzero and coprime_pairs_criterion(BasisSet(tuple(rel), order))
    return {
        "order": order,
        "relations": rel,
        "leading": lts,
        "expected": expected,
        "matches_expected": lts == expected,
        "coprime": coprime,
    }


def describe_relations(params: SpinParams) -> list[str]:
    return [f"v_{k} = {format_poly(v)}" for k, v in enumerate(v_generators(params))]


def relations_are_groebner(params: SpinParams) -> bool:
    order = build_order_for_n(params)
    return is_groebner(BasisSet(tuple(relations_in_R(params)), order))
