"""Resultants with respect to a named variable."""

from __future__ import annotations

from ..errors import DegenerateInput
from .poly import Poly


def resultant(a: Poly, b: Poly, var: str) -> Poly:
    """res_var(a, b) as a polynomial in the remaining variables.

    Both inputs must have positive degree in ``var``.  When one of them is
    constant in ``var`` the classical convention res(a, c) = c^deg(a) would
    apply; we refuse instead, since in every caller that situation signals a
    degenerate elimination rather than a meaningful answer.
    """
    if a.is_zero() or b.is_zero():
        raise DegenerateInput("resultant of the zero polynomial")
    if a.degree(var) <= 0 or b.degree(var) <= 0:
        raise DegenerateInput(f"resultant: an argument is constant in {var}")
    a, b = Poly.unify(a, b)
    return Poly(a.raw.resultant(b.raw, var), a.gens).trim()


def discriminant(a: Poly, var: str) -> Poly:
    """Resultant of ``a`` and its derivative, up to the usual sign and lead factor."""
    return resultant(a, a.diff(var), var)
