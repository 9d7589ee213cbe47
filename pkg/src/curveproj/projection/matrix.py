"""3x4 projection matrices, normal forms and the image-containment oracle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..config import DEFAULT, Config
from ..curves import PlanarCurve, PlanarImplicitCurve, SpatialParametricCurve
from ..errors import DegenerateInput, ImageDegenerate, SingularA
from ..exactalg import Poly, RationalFunction
from ..exactalg import linalg

RF = RationalFunction


@dataclass(frozen=True)
class ProjectionMatrix:
    """Projective class of a rank-3 3x4 matrix, scaled so the first nonzero entry is 1."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __init__(self, rows: Sequence[Sequence]):
        m = [[Fraction(v) for v in r] for r in rows]
        if len(m) != 3 or any(len(r) != 4 for r in m):
            raise DegenerateInput("projection matrix must be 3x4")
        if linalg.rank(m) != 3:
            raise DegenerateInput("projection matrix must have rank 3")
        first = next(v for r in m for v in r if v != 0)
        object.__setattr__(self, "rows", tuple(tuple(v / first for v in r) for r in m))

    @property
    def left_block(self) -> list[list[Fraction]]:
        return [list(r[:3]) for r in self.rows]

    @property
    def is_central(self) -> bool:
        return linalg.det(self.left_block) != 0

    @property
    def is_parallel(self) -> bool:
        r = self.rows[2]
        return r[0] == r[1] == r[2] == 0 and r[3] != 0

    @property
    def kind(self) -> str:
        if self.is_central:
            return "central"
        if self.is_parallel:
            return "parallel"
        return "other"

    def center(self) -> tuple[Fraction, ...]:
        """Homogeneous kernel vector (z1, z2, z3, w)."""
        (v,) = linalg.nullspace([list(r) for r in self.rows], 4)
        last = next(x for x in reversed(v) if x != 0)
        return tuple(x / last for x in v)

    def central_offset(self) -> tuple[Fraction, Fraction, Fraction]:
        """c with P = B [I | c] for the left block B."""
        if not self.is_central:
            raise DegenerateInput("not a central projection")
        p4 = [[r[3]] for r in self.rows]
        c = linalg.matmul(linalg.inverse(self.left_block), p4)
        return tuple(x[0] for x in c)

    def parallel_family(self) -> tuple[str, dict]:
        """Reduced parallel family and parameters determined by the kernel of the top block."""
        if not self.is_parallel:
            raise DegenerateInput("not a parallel projection")
        top = [list(r[:3]) for r in self.rows[:2]]
        (v,) = linalg.nullspace(top, 3)
        if v[2] != 0:
            return "ParallelA", {"a1": -v[0] / v[2], "a2": -v[1] / v[2]}
        if v[1] != 0:
            return "ParallelB", {"b": -v[0] / v[1]}
        return "ParallelPlain", {}

    def apply(self, curve: SpatialParametricCurve) -> tuple[RationalFunction, RationalFunction]:
        zs = list(curve.z) + [RF.const(1)]
        h = [sum((r[j] * zs[j] for j in range(4) if r[j] != 0), RF.const(0)) for r in self.rows]
        if h[2].is_zero():
            raise ImageDegenerate("every image point lies at infinity")
        return h[0] / h[2], h[1] / h[2]

    def __str__(self):
        return "[" + "; ".join(" ".join(_fmt(v) for v in r) for r in self.rows) + "]"

    def to_lists(self) -> list[list[str]]:
        return [[_fmt(v) for v in r] for r in self.rows]


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def normal_form(kind: str, params: dict) -> list[list[Fraction]]:
    """Normalized matrix of a family member."""
    z, o = Fraction(0), Fraction(1)
    g = {k: Fraction(v) for k, v in params.items()}
    if kind == "Central":
        return [[o, z, z, g["c1"]], [z, o, z, g["c2"]], [z, z, o, g["c3"]]]
    if kind == "ParallelA":
        return [[o, z, g["a1"], z], [z, o, g["a2"], z], [z, z, z, o]]
    if kind == "ParallelB":
        return [[o, g["b"], z, z], [z, z, o, z], [z, z, z, o]]
    if kind == "ParallelPlain":
        return [[z, o, z, z], [z, z, o, z], [z, z, z, o]]
    raise ValueError(f"unknown family kind {kind!r}")


def assemble_projection(kind: str, params: dict, A: Sequence[Sequence] | None = None) -> ProjectionMatrix:
    """A times the normal-form matrix of the family member.

    ``A`` is 3x3; for parallel kinds it may also be given as an affine pair
    ``(M, shift)`` with M 2x2.
    """
    if A is None:
        A = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    elif len(A) == 2 and len(A[0]) == 2 and not isinstance(A[0][0], (int, Fraction)):
        M, shift = A
        A = [[M[0][0], M[0][1], shift[0]], [M[1][0], M[1][1], shift[1]], [0, 0, 1]]
    A = [[Fraction(v) for v in r] for r in A]
    if len(A) != 3 or any(len(r) != 3 for r in A):
        raise SingularA("A must be 3x3")
    if linalg.det(A) == 0:
        raise SingularA("A is singular")
    if kind != "Central" and A[2] != [0, 0, A[2][2]]:
        raise SingularA("parallel projections need an affine A")
    return ProjectionMatrix(linalg.matmul(A, normal_form(kind, params)))


def verify_projection(P: ProjectionMatrix, Z: SpatialParametricCurve, X: PlanarCurve,
                      config: Config = DEFAULT) -> bool:
    """Exact check that the image of Z under P is the curve X."""
    x, y = P.apply(Z)
    s = Z.param
    if x.diff(s).is_zero() and y.diff(s).is_zero():
        raise ImageDegenerate("the image of the curve is a point")
    F = X.F if isinstance(X, PlanarImplicitCurve) else X.implicit(config).F
    return RF(F).compose({"x": x, "y": y}).is_zero()
