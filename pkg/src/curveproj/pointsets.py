"""Projections between finite ordered lists of points, by exact linear algebra."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateInput, LengthMismatch
from .exactalg import Poly, linalg
from .projection.decide import ProjectionDecision, ProjectionVerdict, Witness
from .projection.matrix import ProjectionMatrix

# random integer combinations tried when searching for a nondegenerate matrix
_TRIES = 200
_RANGE = 1000


@dataclass(frozen=True)
class PointList3D:
    points: tuple[tuple[Fraction, Fraction, Fraction], ...]

    def __init__(self, points: Sequence[Sequence]):
        pts = tuple(tuple(Fraction(c) for c in p) for p in points)
        if not pts or any(len(p) != 3 for p in pts):
            raise DegenerateInput("expected a non-empty list of 3d points")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class PointList2D:
    points: tuple[tuple[Fraction, Fraction], ...]

    def __init__(self, points: Sequence[Sequence]):
        pts = tuple(tuple(Fraction(c) for c in p) for p in points)
        if not pts or any(len(p) != 2 for p in pts):
            raise DegenerateInput("expected a non-empty list of 2d points")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)


def project_points(P: ProjectionMatrix, Z: PointList3D) -> PointList2D:
    out = []
    for z in Z.points:
        h = [sum(r[j] * v for j, v in enumerate(list(z) + [1])) for r in P.rows]
        if h[2] == 0:
            raise DegenerateInput(f"point {z} has no finite image")
        out.append((h[0] / h[2], h[1] / h[2]))
    return PointList2D(out)


def _check(Z, X):
    if len(Z) != len(X):
        raise LengthMismatch(f"{len(Z)} spatial points versus {len(X)} planar points")


def _combination(base: list, basis: list[list], names: list[str]) -> list[Poly]:
    """Entries of base + sum lam_i basis_i as polynomials in the lam_i."""
    lams = [Poly.var(n) for n in names]
    out = []
    for j in range(len(base)):
        p = Poly.const(base[j])
        for lam, vec in zip(lams, basis):
            if vec[j] != 0:
                p = p + lam * vec[j]
        out.append(p)
    return out


def _det3(m: list[list[Poly]]) -> Poly:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _nonvanishing_point(g: Poly, names: list[str], seed: int) -> dict | None:
    """A small integer point where the nonzero polynomial g does not vanish."""
    if not names:
        return {} if g.constant_value() != 0 else None
    trials = [{n: Fraction(int(i == k)) for i, n in enumerate(names)} for k in range(len(names))]
    trials.append({n: Fraction(1) for n in names})
    rng = random.Random(seed)
    trials += [{n: Fraction(rng.randint(-_RANGE, _RANGE)) for n in names} for _ in range(_TRIES)]
    for pt in trials:
        if g.evaluate(pt) != 0:
            return pt
    return None


def _finish(entries: list[Poly], g: Poly, names: list[str], shape_rows: int, trace: list[str],
            seed: int) -> ProjectionDecision:
    if g.is_zero():
        trace.append("nondegeneracy condition vanishes on the whole solution space")
        return ProjectionDecision(ProjectionVerdict.NO, trace=trace)
    pt = _nonvanishing_point(g, names, seed)
    if pt is None:
        # g is a nonzero polynomial, so such points exist; we only failed to find one
        trace.append("no nondegenerate sample found")
        return ProjectionDecision(ProjectionVerdict.UNDETERMINED, trace=trace, complete=False)
    vals = [e.evaluate(pt) for e in entries]
    rows = [vals[4 * i:4 * i + 4] for i in range(shape_rows)]
    if shape_rows == 2:
        rows.append([Fraction(0)] * 3 + [Fraction(1)])
    P = ProjectionMatrix(rows)
    trace.append(f"witness {P}")
    return ProjectionDecision(ProjectionVerdict.YES, [Witness("Points", {}, "matrix", P)], matrix=P,
                              trace=trace)


def decide_central_points(Z: PointList3D, X: PointList2D, seed: int = 0) -> ProjectionDecision:
    """Is there a central projection taking each z to the corresponding x?"""
    _check(Z, X)
    eqs = []
    for z, (x, y) in zip(Z.points, X.points):
        zt = list(z) + [Fraction(1)]
        # cross product of P z~ with (x, y, 1): two independent components
        eqs.append([Fraction(0)] * 4 + [-v for v in zt] + [y * v for v in zt])
        eqs.append(list(zt) + [Fraction(0)] * 4 + [-x * v for v in zt])
    basis = linalg.nullspace(eqs, 12)
    trace = [f"{len(eqs)} equations, solution space of dimension {len(basis)}"]
    if not basis:
        trace.append("only the zero matrix fits")
        return ProjectionDecision(ProjectionVerdict.NO, trace=trace)
    names = [f"l{i}" for i in range(len(basis))]
    entries = _combination([Fraction(0)] * 12, basis, names)
    block = [[entries[4 * i + j] for j in range(3)] for i in range(3)]
    g = _det3(block)
    for z in Z.points:
        # every point needs a finite image
        g = g * sum((entries[8 + j] * v for j, v in enumerate(list(z) + [1])), Poly.const(0))
    return _finish(entries, g, names, 3, trace, seed)


def decide_parallel_points(Z: PointList3D, X: PointList2D, seed: int = 0) -> ProjectionDecision:
    """Is there a parallel projection taking each z to the corresponding x?"""
    _check(Z, X)
    rows, rhs = [], []
    for z, (x, y) in zip(Z.points, X.points):
        zt = list(z) + [Fraction(1)]
        rows.append(zt + [Fraction(0)] * 4)
        rhs.append(x)
        rows.append([Fraction(0)] * 4 + zt)
        rhs.append(y)
    sol = linalg.solve_affine(rows, rhs)
    trace = [f"{len(rows)} equations in 8 unknowns"]
    if sol is None:
        trace.append("linear system is inconsistent")
        return ProjectionDecision(ProjectionVerdict.NO, trace=trace)
    base, basis = sol
    trace.append(f"solution space of dimension {len(basis)}")
    names = [f"l{i}" for i in range(len(basis))]
    entries = _combination(base, basis, names)
    top = [[entries[4 * i + j] for j in range(3)] for i in range(2)]
    minors = [top[0][a] * top[1][b] - top[0][b] * top[1][a] for a, b in ((0, 1), (0, 2), (1, 2))]
    # rank 2 iff some minor is nonzero; a random combination of the minors detects it
    g = minors[0] + 3 * minors[1] + 7 * minors[2]
    if g.is_zero() and any(not m.is_zero() for m in minors):
        g = next(m for m in minors if not m.is_zero())
    return _finish(entries, g, names, 2, trace, seed)
