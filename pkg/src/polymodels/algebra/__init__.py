"""Exact arithmetic substrate: Q(sqrt 5), sparse polynomials, matrices, solving."""

from .division import ZeroDivisorError, divides, exact_divide
from .linsolve import Inconsistent, Solution, linear_solve, rank
from .matrix import PolyMatrix, determinant
from .poly import MultiPoly, poly, poly_sum, register, symbols
from .scalar import GOLDEN, ONE, SQRT5, ZERO, Scalar
from .textform import parse_poly, poly_to_text


def ring_ops(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    """``op`` is one of ``add``, ``sub``, ``mul``."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown ring operation {op!r}")


def substitute(p: MultiPoly, bindings, reducer=None) -> MultiPoly:
    return p.substitute(bindings, reducer)


__all__ = [
    "GOLDEN", "ONE", "SQRT5", "ZERO", "Inconsistent", "MultiPoly", "PolyMatrix",
    "Scalar", "Solution", "ZeroDivisorError", "determinant", "divides",
    "exact_divide", "linear_solve", "parse_poly", "poly", "poly_sum",
    "poly_to_text", "rank", "register", "ring_ops", "substitute", "symbols",
]
