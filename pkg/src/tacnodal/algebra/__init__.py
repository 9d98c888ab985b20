"""Exact polynomial algebra and the tacnode criterion."""

from .poly import ExactPoly, parse_poly, poly
from .relations import (
    TriangularRelations,
    ZeroDivisorError,
    inverse_mod,
    poly_gcd,
    reduce_mod,
)
from .scalars import Gauss, format_scalar, parse_scalar
from .tacnode import TacnodeInvariants, Verdict, tacnode_check, tacnode_invariants

__all__ = [
    "ExactPoly", "Gauss", "TacnodeInvariants", "TriangularRelations", "Verdict",
    "ZeroDivisorError", "format_scalar", "inverse_mod", "parse_poly", "parse_scalar",
    "poly", "poly_gcd", "reduce_mod", "tacnode_check", "tacnode_invariants",
]
