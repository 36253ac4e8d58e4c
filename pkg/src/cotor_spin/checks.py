"""Per-n verification bundle used by ``cotor-spin verify``."""
from __future__ import annotations

from .f2poly import Polynomial
from .order import build_order_for_n, leading_monomial
from .series import collapse_verdict, COLLAPSES, InsufficientTruncation, minimal_truncation
from .spinarith import FAIL, NA, PASS, check_invariants, spin_params, verify_section2
from .steenrod import regular_sequence_certificate, relations_in_R, verify_prop51


def _corrupt(rel: list[Polynomial], params) -> list[Polynomial]:
    # adding lt^2 to the first relation moves its leading monomial
    order = build_order_for_n(params)
    lt = leading_monomial(rel[0], order)
    return [rel[0] + Polynomial([lt * lt], params.n)] + rel[1:]


def check_n(n: int, inject_fault: bool = False) -> dict[str, str]:
    """Run every applicable check for one n; values are ``pass``, ``fail`` or ``n/a``."""
    p = spin_params(n)
    out: dict[str, str] = {}
    bad = check_invariants(p)
    out["parameter invariants"] = PASS if not bad else FAIL + ": " + ", ".join(bad)
    out.update(verify_section2(n))
    out["h' = h iff n <= 16"] = PASS if (p.h_prime == p.h) == (n <= 16) else FAIL

    if p.d_empty:
        out["vanishing in R"] = NA
        out["leading monomials"] = NA
        out["pairwise coprime leading monomials"] = NA
    else:
        rep = verify_prop51(p)
        out["vanishing in R"] = PASS if all(rep.values()) else FAIL
        rel = relations_in_R(p)
        if inject_fault:
            rel = _corrupt(rel, p)
        cert = regular_sequence_certificate(p, rel)
        out["leading monomials"] = PASS if cert["matches_expected"] else FAIL
        out["pairwise coprime leading monomials"] = PASS if cert["coprime"] else FAIL

    try:
        verdict = collapse_verdict(n, minimal_truncation(n))
        ok = (verdict == COLLAPSES) == (n <= 16)
        out["series verdict"] = PASS if ok else FAIL
    except (ArithmeticError, InsufficientTruncation) as exc:
        out["series verdict"] = f"{FAIL}: {exc}"
    return out


def failures(report: dict[str, str]) -> list[str]:
    return [k for k, v in report.items() if v.startswith(FAIL)]
