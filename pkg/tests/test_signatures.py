import random
from fractions import Fraction

import pytest

from curveproj import PlanarParametricCurve, Verdict, equivalent, implicitize, restrict_pair, signature
from curveproj.signatures import signature_map, signatures_equal

from conftest import CIRCLE, RF, X51, X52, X53, t
from test_invariants import GENERIC, _affine, _rand_affine, _rand_projective


def test_point_signature():
    S = signature(X51["X2"], "projective")
    assert S.kind == "Point"
    assert S.point == (Fraction(250047, 12800), Fraction(0))
    assert str(S) == "Point(250047/12800, 0)"


def test_curve_signature_vanishes_on_map():
    S = signature(X51["X3"], "projective")
    assert S.kind == "Curve"
    K, T = restrict_pair(X51["X3"], "projective")
    assert RF(S.poly).compose({"kappa": K, "tau": T}).is_zero()


def test_affine_signature_of_quartic():
    S = signature(X52, "affine")
    K, T = restrict_pair(X52, "affine")
    assert RF(S.poly).compose({"kappa": K, "tau": T}).is_zero()
    assert signature_map(X52, "affine").K == K


def test_implicit_input_gives_same_signature():
    X = X51["X3"]
    a, b = signature(X, "projective"), signature(implicitize(X), "projective")
    assert a == b
    # equal polynomials only certify equivalence over the complex numbers
    assert signatures_equal(a, b) is Verdict.COMPLEX_ONLY


def test_circle_affine_point():
    assert signature(CIRCLE, "affine").point == (0, 0)


@pytest.mark.parametrize("a,b", [("X1", "X2"), ("X1", "X3"), ("X2", "X3")])
def test_example_curves_pairwise_distinct(a, b):
    assert equivalent(X51[a], X51[b], "projective").verdict is Verdict.NOT_EQUIVALENT


def test_x53_pair_not_affinely_equivalent():
    assert equivalent(X53["X1"], X53["X2"], "affine").verdict is Verdict.NOT_EQUIVALENT


@pytest.mark.parametrize("seed", range(3))
def test_affine_images_equivalent(seed):
    rng = random.Random(seed)
    m, shift = _rand_affine(rng)
    for X in GENERIC:
        assert equivalent(X, _affine(X, m, shift), "affine").verdict is Verdict.EQUIVALENT


@pytest.mark.parametrize("seed", range(3))
def test_projective_images_equivalent(seed):
    h = _rand_projective(random.Random(50 + seed))
    for X in GENERIC:
        d = equivalent(X, X.apply_projective(h), "projective")
        assert d.verdict is Verdict.EQUIVALENT


@pytest.mark.parametrize("seed", range(5))
def test_signature_polynomials_invariant(seed):
    rng = random.Random(seed)
    m, shift = _rand_affine(rng)
    h = _rand_projective(rng)
    for X in GENERIC:
        assert signature(_affine(X, m, shift), "affine") == signature(X, "affine")
        assert signature(X.apply_projective(h), "projective") == signature(X, "projective")


def test_exceptional_cases():
    parabola = PlanarParametricCurve(t, 3 * t**2 - t)
    assert equivalent(parabola, X51["X1"], "affine").verdict is Verdict.EQUIVALENT
    assert equivalent(CIRCLE, X51["X1"], "projective").verdict is Verdict.EQUIVALENT
    assert equivalent(X51["X1"], X52, "affine").verdict is Verdict.NOT_EQUIVALENT
    line1, line2 = PlanarParametricCurve(t, 2 * t), PlanarParametricCurve(t + 1, RF.const(3))
    assert equivalent(line1, line2, "affine").verdict is Verdict.EQUIVALENT
    # an ellipse and a parabola are conics of different affine type
    assert equivalent(CIRCLE, X51["X1"], "affine").verdict is Verdict.NOT_EQUIVALENT


def test_reflexive_and_symmetric():
    for X in GENERIC[:2]:
        assert equivalent(X, X, "affine").equivalent
    a, b = X53["X2"], X51["X3"]
    assert equivalent(a, b, "projective").verdict == equivalent(b, a, "projective").verdict
