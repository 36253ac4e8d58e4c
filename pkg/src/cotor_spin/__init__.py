"""Exact GF(2) algebra for the cotorsion product of H*(Spin(n)) and its Poincare series."""
from .f2poly import Monomial, Polynomial, format_poly, parse_poly, w
from .groebner import BasisSet, buchberger_completion, ideal_membership, is_groebner, reduce
from .order import TermOrder, build_order_for_n, degrevlex, leading_monomial, weightlex
from .series import TruncatedSeries, collapse_verdict, poincare_cotor, poincare_quillen
from .spinarith import SpinParams, hurwitz_radon, spin_params
from .steenrod import project_to_R, sq, sq_chain, v_generators

__version__ = "0.1.0"

__all__ = [
    "BasisSet", "Monomial", "Polynomial", "SpinParams", "TermOrder", "TruncatedSeries",
    "buchberger_completion", "build_order_for_n", "collapse_verdict", "degrevlex",
    "format_poly", "hurwitz_radon", "ideal_membership", "is_groebner", "leading_monomial",
    "parse_poly", "poincare_cotor", "poincare_quillen", "project_to_R", "reduce",
    "spin_params", "sq", "sq_chain", "v_generators", "w", "weightlex",
]
