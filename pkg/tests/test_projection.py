import random
from fractions import Fraction

import pytest

from curveproj import (PlanarParametricCurve, ProjectionMatrix, ProjectionVerdict, SpatialParametricCurve,
                       decide_central, decide_parallel, signature, verify_projection)
from curveproj.errors import DegenerateCandidate, DegreeCapExceeded, SingularA
from curveproj.projection import (FamilyKind, assemble_projection, candidate_checks, family,
                                  match_constant_signature, match_curve_signature, normal_form)
from curveproj.projection.family import NOT_APPLICABLE

from conftest import RF, X51, X52, X53, Z51, Z52, Z53, s, t


def _on_component(sols, point):
    return any(all(e.evaluate(point) == 0 for e in c.equations) for c in sols.components)


def test_central_family_formula():
    fam = family(Z51, "Central")
    c1, c2, c3 = RF.var("c1"), RF.var("c2"), RF.var("c3")
    assert fam.x == (s**3 + c1) / (s + c3)
    assert fam.y == (s**2 + c2) / (s + c3)
    assert fam.params == ("c1", "c2", "c3") and fam.group == "projective"


def test_parallel_b_family_formula():
    fam = family(Z52, FamilyKind.PARALLEL_B)
    assert fam.x == s**4 + 1 + RF.var("b") * s**2
    assert fam.y == s


def test_constant_signature_system_x2():
    sols = match_constant_signature(family(Z51, "Central"), signature(X51["X2"], "projective"))
    point = {"c1": 0, "c2": 0, "c3": 1}
    assert point in [x.as_dict() for x in sols.all_samples()] or _on_component(sols, point)


def test_constant_signature_system_x4_empty():
    sols = match_constant_signature(family(Z51, "Central"), signature(X51["X4"], "projective"))
    assert list(sols) == [] and not sols.components


def test_parallel_b_paths():
    fam = family(Z52, "ParallelB")
    target = signature(X52, "affine")
    assert match_constant_signature(fam, target) is NOT_APPLICABLE
    sols = match_curve_signature(fam, target)
    # rescaling s relates all members with b of one sign, so the identity holds for every b
    assert [c.dimension for c in sols.components] == [1]
    assert {"b": 1} in [x.as_dict() for x in sols.all_samples()]


def test_curve_signature_system_respects_cap():
    with pytest.raises(DegreeCapExceeded):
        match_curve_signature(family(Z51, "Central"), signature(X51["X3"], "projective"))


def test_parallel_a_systems():
    fam = family(Z53, "ParallelA")
    sols = match_curve_signature(fam, signature(X53["X1"], "affine"))
    assert {"a1": 0, "a2": Fraction(1, 2)} in [x.as_dict() for x in sols.exact()]
    sols3 = match_curve_signature(fam, signature(X53["X3"], "affine"))
    assert not [x for x in sols3 if x.is_real]


def test_candidate_checks_rejects_exceptional_member():
    with pytest.raises(DegenerateCandidate):
        candidate_checks(family(Z52, "ParallelPlain"), {})


def test_normal_form_and_assembly():
    assert normal_form("Central", {"c1": 0, "c2": 0, "c3": 0}) == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
    P = assemble_projection("Central", {"c1": 0, "c2": 0, "c3": 1})
    assert P.rows == ProjectionMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]]).rows
    with pytest.raises(SingularA):
        assemble_projection("Central", {"c1": 0, "c2": 0, "c3": 0}, [[1, 0, 0], [1, 0, 0], [0, 0, 1]])
    with pytest.raises(SingularA):
        assemble_projection("ParallelA", {"a1": 0, "a2": 0}, [[1, 0, 0], [0, 1, 0], [1, 0, 1]])


def test_matrix_factorizations():
    P = ProjectionMatrix([[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 1]])
    assert P.is_central and P.central_offset() == (1, 0, 0)
    Q = ProjectionMatrix([[1, 0, 2, 0], [0, 1, 3, 0], [0, 0, 0, 1]])
    assert Q.is_parallel and Q.parallel_family() == ("ParallelA", {"a1": 2, "a2": 3})
    R = ProjectionMatrix([[1, 4, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert R.parallel_family() == ("ParallelB", {"b": 4})


def test_verify_projection_examples():
    assert verify_projection(ProjectionMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]]), Z51, X51["X2"])
    assert verify_projection(ProjectionMatrix([[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 1]]), Z51, X51["X3"])
    assert not verify_projection(ProjectionMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]), Z51, X51["X4"])


@pytest.mark.parametrize("name,verdict", [("X1", "Yes"), ("X2", "Yes"), ("X3", "Yes"), ("X4", "No")])
def test_central_examples(name, verdict):
    d = decide_central(Z51, X51[name])
    assert d.verdict.value == verdict
    for w in d.witnesses:
        if w.matrix is not None:
            assert verify_projection(w.matrix, Z51, X51[name])


def test_central_line_target():
    assert decide_central(Z51, PlanarParametricCurve(t, 3 * t - 1)).verdict is ProjectionVerdict.NO


def test_central_line_target_from_planar_source():
    Z = SpatialParametricCurve(s, s**2, RF.const(2))
    d = decide_central(Z, PlanarParametricCurve(t, 2 * t + 5))
    # a plane curve projects onto a line from a center in its plane
    assert d.verdict is ProjectionVerdict.YES
    assert verify_projection(d.matrix, Z, PlanarParametricCurve(t, 2 * t + 5))


def test_parallel_quartic_cascade():
    d = decide_parallel(Z52, X52)
    assert d.is_yes
    assert {"b": 1} in d.params("ParallelB")
    assert any("ParallelPlain" in line and "Parabola" in line for line in d.trace)


@pytest.mark.parametrize("name,verdicts", [("X1", {"Yes"}), ("X2", {"Yes", "ComplexOnly"}), ("X3", {"No", "ComplexOnly"})])
def test_parallel_examples(name, verdicts):
    d = decide_parallel(Z53, X53[name])
    assert d.verdict.value in verdicts
    if name == "X1":
        assert {"a1": 0, "a2": Fraction(1, 2)} in d.params("ParallelA")
    if name == "X3":
        assert d.witnesses == []


def test_degree_bound():
    d = decide_parallel(Z51, PlanarParametricCurve(t, t**5))
    assert d.verdict is ProjectionVerdict.NO and d.complete


@pytest.mark.parametrize("seed", range(3))
def test_parallel_round_trip_small(seed):
    rng = random.Random(seed)
    while True:
        rows = [[Fraction(rng.randint(-3, 3)) for _ in range(4)] for _ in range(2)] + [[0, 0, 0, 1]]
        try:
            P = ProjectionMatrix(rows)
        except Exception:
            continue
        break
    x, y = P.apply(Z53)
    X = PlanarParametricCurve(x.compose({"s": RF.var("t")}), y.compose({"s": RF.var("t")}), "t")
    d = decide_parallel(Z53, X)
    assert d.is_yes
    fam, params = P.parallel_family()
    assert params in d.params(fam)
