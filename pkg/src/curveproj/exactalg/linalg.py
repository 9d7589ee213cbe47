"""Exact dense linear algebra over Q (thin layer over FLINT's fmpq_mat)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import flint

from .poly import to_fmpq, to_rat

Matrix = list[list[Fraction]]


def to_mat(rows: Sequence[Sequence]) -> flint.fmpq_mat:
    rows = [list(r) for r in rows]
    if not rows:
        return flint.fmpq_mat(0, 0)
    return flint.fmpq_mat(len(rows), len(rows[0]), [to_fmpq(x) for r in rows for x in r])


def from_mat(m: flint.fmpq_mat) -> Matrix:
    return [[to_rat(m[i, j]) for j in range(m.ncols())] for i in range(m.nrows())]


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return to_mat(rows).rank()


def det(rows: Sequence[Sequence]) -> Fraction:
    return to_rat(to_mat(rows).det())


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of {v : M v = 0}, one basis vector per returned list."""
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    red, rk = to_mat(rows).rref()
    red = from_mat(red)
    n = len(red[0])
    pivots = []
    for i in range(rk):
        j = next(j for j in range(n) if red[i][j] != 0)
        pivots.append(j)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pj in enumerate(pivots):
            v[pj] = -red[i][f]
        basis.append(v)
    return basis


def solve_affine(rows: Sequence[Sequence], rhs: Sequence) -> tuple[list[Fraction], Matrix] | None:
    """Particular solution and nullspace basis of M v = rhs, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    n = len(rows[0])
    red, rk = to_mat(aug).rref()
    red = from_mat(red)
    pivots = []
    for i in range(rk):
        j = next(j for j in range(n + 1) if red[i][j] != 0)
        if j == n:
            return None
        pivots.append(j)
    x = [Fraction(0)] * n
    for i, pj in enumerate(pivots):
        x[pj] = red[i][n]
    return x, nullspace(rows)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


def inverse(rows: Sequence[Sequence]) -> Matrix:
    return from_mat(to_mat(rows).inv())
