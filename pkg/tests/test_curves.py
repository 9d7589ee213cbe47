from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from curveproj import PlanarImplicitCurve, PlanarParametricCurve, Poly, SpatialParametricCurve, implicitize
from curveproj.curves import is_coplanar_spatial, is_line_planar, is_proper, jets_implicit, jets_parametric
from curveproj.errors import DegenerateInput

from conftest import CIRCLE, RF, X51, Z51, rf_from_sympy, s, t, to_sympy

T = sp.Symbol("t")


def test_parabola_jets_by_implicit_differentiation():
    j = jets_parametric(PlanarParametricCurve(t**2, t), 2)
    # x = y^2 so dy/dx = 1/(2y), d2y/dx2 = -1/(4y^3) with y = t
    assert j[1] == rf_from_sympy(1 / (2 * T))
    assert j[2] == rf_from_sympy(-1 / (4 * T**3))


def test_circle_jets():
    j = jets_implicit(CIRCLE, 2)
    X, Y = sp.symbols("x y")
    assert j[1] == rf_from_sympy(-X / Y, ("x", "y"))
    assert j[2] == rf_from_sympy(-(X**2 + Y**2) / Y**3, ("x", "y"))


def test_jets_match_sympy_chain_rule():
    X2 = X51["X2"]
    j = jets_parametric(X2, 5)
    xs, ys = to_sympy(X2.x), to_sympy(X2.y)
    cur = ys
    for k in range(1, 6):
        cur = sp.cancel(sp.diff(cur, T) / sp.diff(xs, T))
        assert j[k] == rf_from_sympy(cur)


def test_implicit_and_parametric_jets_agree_at_a_point():
    X2 = X51["X2"]
    F = implicitize(X2)
    jp, ji = jets_parametric(X2, 4), jets_implicit(F, 4)
    px, py = X2.evaluate(1)
    for k in range(1, 5):
        assert jp[k].evaluate({"t": 1}) == ji[k].evaluate({"x": px, "y": py})


def test_implicitize_cubic():
    F = implicitize(X51["X3"])
    assert F.degree() == 3
    assert RF(F.F).compose({"x": X51["X3"].x, "y": X51["X3"].y}).is_zero()


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(1, 3))
@settings(max_examples=25, deadline=None)
def test_implicitization_vanishes(a, b, n):
    X = PlanarParametricCurve(t**n + a * t, (t**2 + b) / (t + 7))
    F = implicitize(X)
    assert RF(F.F).compose({"x": X.x, "y": X.y}).is_zero()
    # sympy's resultant contains the same irreducible curve
    x_, y_ = sp.symbols("x y")
    r = sp.resultant(x_ - T**n - a * T, y_ * (T + 7) - T**2 - b, T)
    assert sp.rem(sp.Poly(r, x_, y_, domain="QQ"), sp.Poly(to_sympy(F.F), x_, y_, domain="QQ")).is_zero


def test_coplanarity():
    assert not is_coplanar_spatial(Z51)
    assert is_coplanar_spatial(SpatialParametricCurve(s, s**2, s + s**2))
    assert is_line_planar(PlanarParametricCurve(2 * t + 1, 3 - t))
    assert not is_line_planar(X51["X1"])
    assert is_line_planar(PlanarImplicitCurve(Poly.var("x") - 2 * Poly.var("y")))


def test_properness():
    assert is_proper(X51["X2"])
    assert not is_proper(PlanarParametricCurve(t**2, t**4 + 1))


def test_constant_curve_rejected():
    with pytest.raises(DegenerateInput):
        PlanarParametricCurve(RF.const(1), RF.const(2))


def test_projective_action_on_parametric_and_implicit():
    h = [[1, 2, 0], [0, 1, 1], [1, 0, 3]]
    X = X51["X2"]
    img = X.apply_projective(h)
    F = implicitize(X).apply_projective(h)
    assert RF(F.F).compose({"x": img.x, "y": img.y}).is_zero()
    p = X.evaluate(Fraction(2))
    q = img.evaluate(Fraction(2))
    w = p[0] + 3
    assert q == ((p[0] + 2 * p[1]) / w, (p[1] + 1) / w)
