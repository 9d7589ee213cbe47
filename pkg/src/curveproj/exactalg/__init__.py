"""Exact arithmetic kernel: rationals, polynomials, rational functions, elimination."""

from .poly import Poly, Rat, format_poly, poly_arith, poly_derivative, poly_gcd, symbols
from .ratfunc import RationalFunction
from .resultant import resultant
from .solve import (
    Component,
    PolySystem,
    SolutionKind,
    Solutions,
    SystemSolution,
    solve_system,
)

__all__ = [
    "Component",
    "Poly",
    "PolySystem",
    "Rat",
    "RationalFunction",
    "SolutionKind",
    "Solutions",
    "SystemSolution",
    "format_poly",
    "poly_arith",
    "poly_derivative",
    "poly_gcd",
    "resultant",
    "solve_system",
    "symbols",
]
