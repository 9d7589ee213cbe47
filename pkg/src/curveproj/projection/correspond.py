"""Candidate projections from parameter correspondences.

If P maps Z onto X and both parametrizations are proper, then on homogeneous
parametrizations P Z(s) = lam(s) X(phi(s)) for a Moebius map phi and a binary
form lam of degree deg Z - deg X.  When 2 deg X > deg Z the restricted
projection is birational, so phi exists, and the unknowns are the three
Moebius coefficients in one of two affine charts.  Each rational solution
determines P exactly, which is then checked by substitution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from ..config import DEFAULT, Config
from ..curves import PlanarCurve, PlanarParametricCurve, SpatialParametricCurve, is_proper
from ..errors import CurveprojError, DegenerateInput, ImageDegenerate
from ..exactalg import Poly, PolySystem, linalg, solve_system
from ..exactalg.ratfunc import eval_poly_numeric
from ..exactalg.solve import SolutionKind, rational_roots
from .matrix import ProjectionMatrix, verify_projection

MOEBIUS = ("m1", "m2", "m3")

# t = (m1 s + m2)/(m3 s + 1)  or  t = (m1 s + m2)/s
CHARTS = ("affine", "infinite")

# extra points tried when a chart carries no equations at all
_FREE_SAMPLES = [(1, 0, 0), (1, 1, 0), (2, 0, 0), (1, 0, 1), (1, -1, 0), (2, 1, 0), (1, 0, -1),
                 (3, 1, 1), (1, 2, 3)]


@dataclass
class Candidate:
    matrix: ProjectionMatrix
    moebius: tuple
    chart: str


@dataclass
class NumericCandidate:
    """Projection from an irrational or nonreal Moebius solution, known to working precision."""

    rows: list
    moebius: tuple
    chart: str
    real: bool


@dataclass
class CorrespondenceResult:
    candidates: list[Candidate] = field(default_factory=list)
    numeric: list[NumericCandidate] = field(default_factory=list)
    complete: bool = True
    complex_solutions: bool = False
    real_irrational: bool = False
    notes: list[str] = field(default_factory=list)

    def incomplete(self, why: str):
        self.complete = False
        self.notes.append(why)


def _coeffs(p: Poly, var: str, n: int) -> list:
    cs = p.coefficients_in(var)
    return [cs.get(j, Poly.const(0)) for j in range(n)]


def _binary_coeffs(p: Poly, var: str, n: int) -> list[Fraction]:
    return [c.constant_value() for c in _coeffs(p, var, n)]


def _moebius_image(G: list[list[Fraction]], d: int, chart: str) -> list[list[Poly]]:
    """Coefficient vectors (in s) of X(phi(s)) with symbolic Moebius coefficients."""
    s = Poly.var("s")
    m1, m2, m3 = (Poly.var(n) for n in MOEBIUS)
    top = m1 * s + m2
    bot = m3 * s + 1 if chart == "affine" else s
    tp = [Poly.const(1)]
    bp = [Poly.const(1)]
    for _ in range(d):
        tp.append(tp[-1] * top)
        bp.append(bp[-1] * bot)
    out = []
    for row in G:
        acc = Poly.const(0)
        for j, g in enumerate(row):
            if g:
                acc = acc + g * tp[j] * bp[d - j]
        out.append(_coeffs(acc, "s", d + 1))
    return out


def _minors(rows: list[list[Poly]], size: int) -> list[Poly]:
    if size == 1:
        return [e for r in rows for e in r]
    ncols = len(rows[0])
    out = []
    for rs in itertools.combinations(range(len(rows)), size):
        for cs in itertools.combinations(range(ncols), size):
            out.append(_det([[rows[r][c] for c in cs] for r in rs]))
    return out


def _det(m: list[list[Poly]]) -> Poly:
    if len(m) == 1:
        return m[0][0]
    if len(m) == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = Poly.const(0)
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _shift(vec: list, by: int, n: int) -> list:
    """Coefficients of s^by * v, padded to length n."""
    zero = vec[0] * 0 if vec else 0
    out = [zero] * n
    for j, v in enumerate(vec):
        if j + by < n:
            out[j + by] = v
    return out


def _dot(v: list[Fraction], w: list) -> Poly:
    acc = Poly.const(0)
    for a, b in zip(v, w):
        if a:
            acc = acc + a * b
    return acc


def _lambda_choices(W: list[Fraction], e: int, k: int, result: CorrespondenceResult) -> list[list[Fraction]]:
    """Binary forms of degree k dividing the denominator form of Z (parallel case)."""
    wpoly = Poly.from_terms({(j,): c for j, c in enumerate(W) if c}, ("s",))
    deg = wpoly.degree("s")
    linear = []  # (root or None for infinity, multiplicity)
    if e - deg > 0:
        linear.append((None, e - deg))
    _unit, fs = wpoly.factor()
    for f, m in fs:
        if f.degree("s") == 1:
            linear.append((rational_roots(f, "s")[0], m))
        elif f.degree("s") <= k:
            result.incomplete("denominator of Z has an irrational point at infinity")
    pool = [r for r, m in linear for _ in range(m)]
    out = []
    for combo in sorted(set(itertools.combinations(range(len(pool)), k))):
        lam = [Fraction(1)]
        for idx in combo:
            r = pool[idx]
            # u, or s - r u, as coefficient vectors in s
            lin = [Fraction(1), Fraction(0)] if r is None else [-r, Fraction(1)]
            lam = [sum(lam[i] * lin[j] for i in range(len(lam)) for j in range(2) if i + j == n)
                   for n in range(len(lam) + 1)]
        if lam not in out:
            out.append(lam)
    return out


def _times(lam: list, vec: list, n: int) -> list:
    """Coefficients of lam(s) * vec(s) as a degree n-1 form."""
    out = [lam[0] * 0] * n
    for i, a in enumerate(lam):
        if a:
            for j, b in enumerate(vec):
                if b and i + j < n:
                    out[i + j] += a * b
    return out


def _times_poly(lam: list, vec: list, n: int) -> list:
    out = [Poly.const(0)] * n
    for i, a in enumerate(lam):
        if a:
            for j, b in enumerate(vec):
                if i + j < n:
                    out[i + j] = out[i + j] + a * b
    return out


def find_candidates(Z: SpatialParametricCurve, X: PlanarCurve, mode: str,
                    config: Config = DEFAULT) -> CorrespondenceResult:
    """Projections of ``mode`` ('central' or 'parallel') mapping Z onto X."""
    res = CorrespondenceResult()
    if not isinstance(X, PlanarParametricCurve):
        res.incomplete("target is not parametrized")
        return res
    Zh = Z.homogeneous()
    e = Z.degree()
    s = Z.param
    C = [_binary_coeffs(p, s, e + 1) for p in Zh]
    if linalg.rank(C) < 4:
        res.incomplete("spatial curve is planar")
        return res
    Xh = X.homogeneous()
    d = X.degree()
    G = [_binary_coeffs(p, X.param, d + 1) for p in Xh]
    proper = is_proper(X) and is_proper(Z)
    if not proper:
        res.incomplete("a parametrization is not proper")
    if d > e:
        res.notes.append("target degree exceeds source degree")
        return res
    if 2 * d <= e:
        res.incomplete("projection may be a multiple cover")
    k = e - d
    kernel = linalg.nullspace(C, e + 1)
    for chart in CHARTS:
        _run_chart(Z, X, C, G, kernel, e, d, k, mode, chart, res, config)
    return res


def _run_chart(Z, X, C, G, kernel, e, d, k, mode, chart, res: CorrespondenceResult, config: Config):
    image = _moebius_image(G, d, chart)
    if mode == "central":
        rows = []
        for i in range(3):
            for v in kernel:
                rows.append([_dot(v, _shift(image[i], m, e + 1)) for m in range(k + 1)])
        eqs = _minors(rows, k + 1) if len(rows) >= k + 1 else []
        _solve_chart(Z, X, C, G, eqs, e, d, k, mode, chart, None, rows, res, config)
    else:
        for lam in _lambda_choices(C[3], e, k, res):
            prod = [_times_poly(lam, image[i], e + 1) for i in range(3)]
            eqs = [_dot(v, prod[i]) for i in range(3) for v in kernel]
            # third image row must be a multiple of the denominator form of Z
            w = C[3]
            for a, b in itertools.combinations(range(e + 1), 2):
                eqs.append(prod[2][a] * w[b] - prod[2][b] * w[a])
            _solve_chart(Z, X, C, G, eqs, e, d, k, mode, chart, lam, None, res, config)


def _moebius_ok(m, chart) -> bool:
    m1, m2, m3 = m
    return (m1 - m2 * m3 != 0) if chart == "affine" else (m2 != 0)


def _solve_chart(Z, X, C, G, eqs, e, d, k, mode, chart, lam, rows, res, config):
    eqs = [q for q in eqs if not q.is_zero()]
    if any(q.is_constant() for q in eqs):
        return
    points = []
    used = [n for n in MOEBIUS if any(q.involves(n) for q in eqs)]
    free = [n for n in MOEBIUS if n not in used]
    if chart == "affine":
        points.append((Fraction(1), Fraction(0), Fraction(0)))
    if not used:
        points += [tuple(Fraction(v) for v in p) for p in _FREE_SAMPLES]
        component = True
    else:
        sols = solve_system(PolySystem(eqs, used), mode="numeric", cap=config.degree_cap,
                            samples=config.component_samples)
        component = False
        for sol in sols:
            if sol.is_exact:
                points.extend(_fill(sol.as_dict(), free))
                continue
            vals = dict(sol.as_dict())
            for n in free:
                vals[n] = mpmath.mpf(0)
            nc = _numeric_candidate(C, G, vals, e, d, k, mode, chart, lam, rows, sol.is_real)
            if nc is None:
                continue
            res.numeric.append(nc)
            if nc.real:
                res.real_irrational = True
            else:
                res.complex_solutions = True
        for comp in sols.components:
            good = [smp for smp in comp.samples
                    if _moebius_ok(tuple(smp.as_dict().get(n, Fraction(0)) for n in MOEBIUS), chart)]
            if comp.samples and not good:
                res.notes.append(f"{chart} chart: component of constant maps discarded")
                continue
            component = True
            for smp in good:
                points.extend(_fill(smp.as_dict(), free))
    found_here = False
    for m in points:
        if not _moebius_ok(m, chart):
            continue
        vals = dict(zip(MOEBIUS, m))
        if any(not q.subs(vals).is_zero() for q in eqs):
            continue
        cand = _candidate(Z, X, C, G, vals, e, d, k, mode, chart, lam, rows)
        if cand is not None:
            found_here = True
            if all(c.matrix != cand.matrix for c in res.candidates):
                res.candidates.append(cand)
    if component and not found_here:
        res.incomplete(f"{chart} chart: positive-dimensional solutions with no verified sample")


def _numeric_candidate(C, G, vals, e, d, k, mode, chart, lam, rows, real):
    """Projection matrix at a numeric Moebius solution, if it has the requested type."""
    m1, m2, m3 = (_mpq(v) if isinstance(v, Fraction) else v for v in (vals[n] for n in MOEBIUS))
    if abs(m1 - m2 * m3 if chart == "affine" else m2) < mpmath.mpf(10) ** (-20):
        return None
    image = [[_mp_eval(c, vals) for c in row] for row in _moebius_image(G, d, chart)]
    if lam is None:
        A = mpmath.matrix([[_mp_eval(r, vals) for r in row] for row in rows]) if rows else None
        if A is None or A.cols == 1:
            lm = [mpmath.mpf(1)] + [mpmath.mpf(0)] * k
        else:
            # kernel direction of A from its smallest singular vector
            _u, _s, V = mpmath.svd_c(A)
            lm = [mpmath.conj(V[V.rows - 1, j]) for j in range(V.cols)]
    else:
        lm = [mpmath.mpf(x.numerator) / x.denominator for x in lam]
    M = [_times(lm, image[i], e + 1) for i in range(3)]
    # p C = M_i solved through the 4x4 normal equations, then checked
    gram = linalg.inverse(linalg.matmul(C, [list(col) for col in zip(*C)]))
    R = linalg.matmul([list(col) for col in zip(*C)], gram)  # (e+1) x 4 right inverse of C
    P = []
    for i in range(3):
        p = [sum(M[i][r] * _mpq(R[r][j]) for r in range(e + 1)) for j in range(4)]
        back = [sum(p[j] * _mpq(C[j][c]) for j in range(4)) for c in range(e + 1)]
        scale = max(abs(v) for v in M[i]) + 1
        if max(abs(a - b) for a, b in zip(back, M[i])) > mpmath.mpf(10) ** (-25) * scale:
            return None
        P.append(p)
    scale = max(abs(v) for r in P for v in r)
    tol = mpmath.mpf(10) ** (-25) * scale
    block = mpmath.matrix([r[:3] for r in P])
    if mode == "central" and abs(mpmath.det(block)) < tol * scale * scale:
        return None
    if mode == "parallel" and (any(abs(v) > tol for v in P[2][:3]) or abs(P[2][3]) < tol):
        return None
    return NumericCandidate(P, (m1, m2, m3), chart, real)


def _mpq(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _mp_eval(p: Poly, vals: dict):
    if p.is_constant():
        c = p.constant_value()
        return mpmath.mpf(c.numerator) / c.denominator
    return eval_poly_numeric(p, vals)


def _fill(values: dict, free: list[str]) -> list[tuple]:
    out = []
    for combo in itertools.product([Fraction(0), Fraction(1), Fraction(-1), Fraction(2)], repeat=len(free)):
        full = dict(values)
        full.update(zip(free, combo))
        out.append(tuple(Fraction(full[n]) for n in MOEBIUS))
    return out


def _candidate(Z, X, C, G, vals, e, d, k, mode, chart, lam, rows):
    image = [[c.subs(vals).constant_value() for c in row] for row in _moebius_image(G, d, chart)]
    if lam is None:
        A = [[r.subs(vals).constant_value() for r in row] for row in rows] if rows else []
        if A:
            ker = linalg.nullspace(A, k + 1)
        else:
            ker = [[Fraction(1) if j == i else Fraction(0) for j in range(k + 1)] for i in range(k + 1)]
        lams = [list(v) for v in ker]
    else:
        lams = [lam]
    for lm in lams:
        M = [_times(lm, image[i], e + 1) for i in range(3)]
        P = []
        for i in range(3):
            sol = linalg.solve_affine([list(col) for col in zip(*C)], M[i])
            if sol is None:
                break
            P.append(sol[0])
        if len(P) < 3:
            continue
        try:
            pm = ProjectionMatrix(P)
        except DegenerateInput:
            continue
        if (mode == "central" and not pm.is_central) or (mode == "parallel" and not pm.is_parallel):
            continue
        try:
            if verify_projection(pm, Z, X):
                return Candidate(pm, tuple(vals[n] for n in MOEBIUS), chart)
        except (ImageDegenerate, CurveprojError):
            continue
    return None
