import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curveproj import PointList2D, PointList3D, ProjectionMatrix, decide_central_points, decide_parallel_points
from curveproj.errors import LengthMismatch
from curveproj.pointsets import project_points

rat = st.fractions(min_value=-9, max_value=9, max_denominator=5)


def _rand_points(rng, m=8):
    return PointList3D([[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)] for _ in range(m)])


def _rand_matrix(rng, parallel):
    while True:
        rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)] for _ in range(2 if parallel else 3)]
        if parallel:
            rows.append([0, 0, 0, 1])
        try:
            P = ProjectionMatrix(rows)
        except Exception:
            continue
        if (parallel and P.is_parallel) or (not parallel and P.is_central):
            return P


def _images(rng, parallel, m=8):
    while True:
        Z, P = _rand_points(rng, m), _rand_matrix(rng, parallel)
        try:
            return Z, P, project_points(P, Z)
        except Exception:
            continue


@pytest.mark.parametrize("seed", range(5))
def test_central_round_trip(seed):
    Z, P, X = _images(random.Random(seed), parallel=False)
    d = decide_central_points(Z, X)
    assert d.is_yes
    assert project_points(d.matrix, Z) == X


@pytest.mark.parametrize("seed", range(5))
def test_parallel_round_trip(seed):
    Z, P, X = _images(random.Random(seed), parallel=True)
    d = decide_parallel_points(Z, X)
    assert d.is_yes and d.matrix.is_parallel
    assert project_points(d.matrix, Z) == X


def test_standard_projection_of_eight_points():
    rng = random.Random(3)
    Z = PointList3D([(rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(8)])
    X = PointList2D([(Fraction(a, c), Fraction(b, c)) for a, b, c in Z.points])
    d = decide_central_points(Z, X)
    assert d.is_yes and project_points(d.matrix, Z) == X
    pts = list(X.points)
    pts[3] = (pts[3][0] + Fraction(1, 1000), pts[3][1])
    assert decide_central_points(Z, PointList2D(pts)).verdict.value == "No"


def test_orthographic_six_points():
    rng = random.Random(4)
    Z = _rand_points(rng, 6)
    X = PointList2D([(a, b) for a, b, _ in Z.points])
    assert decide_parallel_points(Z, X).is_yes


def test_central_images_are_not_parallel():
    Z, P, X = _images(random.Random(11), parallel=False)
    assert decide_parallel_points(Z, X).verdict.value == "No"


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        decide_central_points(PointList3D([(0, 0, 1)] * 3), PointList2D([(0, 0)] * 2))


def test_few_points_always_fit():
    Z = PointList3D([(1, 2, 3), (0, 1, 0), (2, 2, 1), (5, 1, 0)])
    X = PointList2D([(1, 1), (2, 0), (0, 3), (1, 5)])
    d = decide_central_points(Z, X)
    assert d.is_yes and project_points(d.matrix, Z) == X


@given(st.lists(st.tuples(rat, rat, rat), min_size=8, max_size=8, unique=True), st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_witness_always_reproduces_images(pts, seed):
    Z = PointList3D(pts)
    P = _rand_matrix(random.Random(seed), parallel=False)
    try:
        X = project_points(P, Z)
    except Exception:
        return
    d = decide_central_points(Z, X)
    if d.is_yes:
        assert project_points(d.matrix, Z) == X
    assert d.verdict.value in ("Yes", "Undetermined")
