from fractions import Fraction

import pytest
import sympy as sp

from curveproj import PlanarImplicitCurve, PlanarParametricCurve, Poly, RationalFunction, SpatialParametricCurve

RF = RationalFunction
t = RF.var("t")
s = RF.var("s")


def rf_from_sympy(expr, gens=("t",)) -> RationalFunction:
    """Exact conversion of a sympy rational expression, for use as an oracle."""
    num, den = sp.fraction(sp.together(sp.sympify(expr)))
    return RF(poly_from_sympy(num, gens), poly_from_sympy(den, gens))


def poly_from_sympy(expr, gens) -> Poly:
    syms = sp.symbols(gens)
    p = sp.Poly(sp.expand(expr), *syms)
    terms = {m: Fraction(int(c.p), int(c.q)) for m, c in p.terms()}
    return Poly.from_terms(terms, gens)


def to_sympy(f) -> sp.Expr:
    if isinstance(f, RationalFunction):
        return to_sympy(f.num) / to_sympy(f.den)
    out = sp.Integer(0)
    for exps, c in f.terms():
        term = sp.Rational(c.numerator, c.denominator)
        for g, e in zip(f.gens, exps):
            term *= sp.Symbol(g) ** e
        out += term
    return out


# the worked curves
Z51 = SpatialParametricCurve(s**3, s**2, s)
X51 = {
    "X1": PlanarParametricCurve(t**2, t),
    "X2": PlanarParametricCurve(t**3 / (t + 1), t**2 / (t + 1)),
    "X3": PlanarParametricCurve(t / (t**3 + 1), t**2 / (t**3 + 1)),
    "X4": PlanarParametricCurve(t, t**5),
}
Z52 = SpatialParametricCurve(s**4 + 1, s**2, s)
X52 = PlanarParametricCurve(t, t**4 + t**2)
Z53 = SpatialParametricCurve(s**2 + s, s**3 - 3 * s**2, s**4)
X53 = {
    "X1": PlanarParametricCurve(t**4 + t, t**2),
    "X2": PlanarParametricCurve(t**3 - t, t**3 + t**2),
    "X3": PlanarParametricCurve(t / (t**3 + 1), t**2 / (t**3 + 1)),
}

x_, y_ = Poly.var("x"), Poly.var("y")
CIRCLE = PlanarImplicitCurve(x_**2 + y_**2 - 1)


@pytest.fixture
def example51():
    return Z51, X51


@pytest.fixture
def example53():
    return Z53, X53


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
