import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curveproj import PlanarParametricCurve, classify, numeric_chain, restrict, restrict_pair
from curveproj.errors import ExceptionalDenominator
from curveproj.invariants import K_A, CurveKind, K_P, delta1, delta2, discriminant_vanishes, jet_weight, restricted_discriminant

from conftest import CIRCLE, RF, X51, X52, X53, rf_from_sympy, t

GENERIC = [X52, X51["X3"], X53["X1"], X53["X2"]]


def _affine(X, m, shift):
    return PlanarParametricCurve(m[0][0] * X.x + m[0][1] * X.y + shift[0],
                                 m[1][0] * X.x + m[1][1] * X.y + shift[1], X.param)


def _rand_affine(rng):
    while True:
        m = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] != m[0][1] * m[1][0]:
            return m, [Fraction(rng.randint(-5, 5)) for _ in range(2)]


def _rand_projective(rng):
    while True:
        h = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        det = (h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
               + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]))
        if det != 0 and any(h[2][:2]):
            return h


def test_weights_of_building_blocks():
    assert jet_weight(delta1().factors[0][0]) is not None
    assert jet_weight(delta2().factors[0][0]) is not None


def test_x52_affine_pair():
    K, T = restrict_pair(X52, "affine")
    assert K == rf_from_sympy("100*t**2*(3-14*t**2)**2/(1-14*t**2)**3")
    assert T == rf_from_sympy("-5*(140*t**4-56*t**2+1)/(1-14*t**2)**2")


def test_constant_projective_pairs():
    assert restrict_pair(X51["X2"], "projective") == (RF.const(Fraction(250047, 12800)), RF.const(0))
    assert restrict_pair(X51["X4"], "projective") == (RF.const(Fraction(1029, 128)), RF.const(0))


def test_x3_projective_pair():
    K, T = restrict_pair(X51["X3"], "projective")
    assert K == rf_from_sympy("-(9261/50)*(t**7-t**4+t)**3/(t**3-1)**8")
    assert T == rf_from_sympy("-(21/10)*(t**3+1)**4/(t**3-1)**4")


def test_circle_affine_constants():
    K, T = restrict_pair(CIRCLE, "affine")
    assert K.is_zero() and T.is_zero()


def test_conic_projective_denominator():
    with pytest.raises(ExceptionalDenominator):
        restrict(K_P, CIRCLE)


def test_line_and_parabola_denominators():
    with pytest.raises(ExceptionalDenominator, match="y2"):
        restrict_pair(PlanarParametricCurve(t, 2 * t + 1), "affine")
    with pytest.raises(ExceptionalDenominator, match="delta1"):
        restrict(K_A, PlanarParametricCurve(t, t**2))


def test_family_member_matches_target_at_b1():
    # beta_1 is the quartic with its coordinates swapped, an affine map
    beta1 = PlanarParametricCurve(t**4 + 1 + t**2, t)
    assert restrict_pair(beta1, "affine") == restrict_pair(PlanarParametricCurve(t, t**4 + t**2 + 1), "affine")
    assert restrict_pair(beta1, "affine") == restrict_pair(X52, "affine")


def test_classification():
    assert classify(X51["X1"]).kind is CurveKind.PARABOLA
    assert classify(X51["X1"], "projective").exceptional
    assert not classify(X52, "affine").exceptional
    assert classify(CIRCLE).kind is CurveKind.CONIC
    assert not classify(CIRCLE, "affine").exceptional
    assert not restricted_discriminant(X52, "delta2").is_zero()


def test_delta2_vanishes_on_circle():
    assert discriminant_vanishes(CIRCLE, "delta2")
    assert not discriminant_vanishes(CIRCLE, "delta1")


@pytest.mark.parametrize("seed", range(5))
def test_affine_invariance(seed):
    rng = random.Random(seed)
    m, shift = _rand_affine(rng)
    for X in GENERIC:
        assert restrict_pair(_affine(X, m, shift), "affine") == restrict_pair(X, "affine")


@pytest.mark.parametrize("seed", range(5))
def test_projective_invariance(seed):
    rng = random.Random(100 + seed)
    h = _rand_projective(rng)
    for X in GENERIC:
        assert restrict_pair(X.apply_projective(h), "projective") == restrict_pair(X, "projective")


def _rel(a, b):
    return abs(a - b) / max(abs(b), mpmath.mpf(10) ** -40)


@pytest.mark.parametrize("X", GENERIC, ids=["quartic", "folium", "x53_1", "x53_2"])
def test_numeric_chain_agrees(X):
    K_A, T_A = restrict_pair(X, "affine")
    K_P_, T_P_ = restrict_pair(X, "projective")
    mpmath.mp.dps = 50
    checked = 0
    for t0 in [Fraction(k, 7) for k in range(1, 40)]:
        try:
            pt = numeric_chain(X, t0, dps=50)
            exact = [f.evaluate({"t": t0}) for f in (K_A, T_A, K_P_, T_P_)]
        except Exception:
            continue
        got = [pt.K_A, pt.T_A, pt.K_P, pt.T_P]
        for g, e in zip(got, exact):
            assert _rel(g, mpmath.mpf(e.numerator) / e.denominator) < mpmath.mpf(10) ** -6
        checked += 1
        if checked == 5:
            break
    assert checked == 5


def test_numeric_chain_spot_values():
    mpmath.mp.dps = 50
    K_A, _ = restrict_pair(X52, "affine")
    e = K_A.evaluate({"t": Fraction(1, 2)})
    assert _rel(numeric_chain(X52, Fraction(1, 2), projective=False).K_A, mpmath.mpf(e.numerator) / e.denominator) < 1e-6
    K_P_, _ = restrict_pair(X51["X3"], "projective")
    e = K_P_.evaluate({"t": Fraction(1, 3)})
    assert _rel(numeric_chain(X51["X3"], Fraction(1, 3)).K_P, mpmath.mpf(e.numerator) / e.denominator) < 1e-6


@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6).filter(bool))
@settings(max_examples=20, deadline=None)
def test_parabolas_have_vanishing_delta1(a, b, c):
    X = PlanarParametricCurve(t + a, c * t**2 + b * t + 1)
    assert discriminant_vanishes(X, "delta1")
    assert classify(X, "affine").exceptional


@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(1, 6))
@settings(max_examples=20, deadline=None)
def test_conics_have_vanishing_delta2(a, b, c):
    X = PlanarParametricCurve((t**2 + a) / (t**2 + c), (t + b) / (t**2 + c))
    if classify(X).kind is CurveKind.LINE:
        return
    assert discriminant_vanishes(X, "delta2")
