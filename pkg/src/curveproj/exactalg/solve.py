"""Small polynomial systems (at most three unknowns) by iterated resultants.

Elimination projects the solution set onto fewer unknowns, roots of the final
univariate eliminant are lifted back one variable at a time, and every
candidate is checked against the original system.  Rational solutions are
exact; the remaining isolated solutions are reported numerically in
``numeric`` mode together with a residual bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import flint
import mpmath

from ..errors import DegreeCapExceeded
from .linalg import solve_affine
from .poly import Poly, sort_symbols, to_rat
from .ratfunc import eval_poly_numeric
from .resultant import resultant

DEFAULT_CAP = 24
WORK_DPS = 50
# numeric solutions are carried at this precision throughout the package
mpmath.mp.dps = max(mpmath.mp.dps, WORK_DPS)

# slice values tried, in order, when sampling positive-dimensional components
SLICE_VALUES = [Fraction(v) for v in (0, 1, -1, 2, -2, 3, -3)] + [
    Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(5), Fraction(-5), Fraction(7)]


class SolutionKind(str, Enum):
    EXACT_RATIONAL = "ExactRational"
    NUMERIC_REAL = "NumericReal"
    NUMERIC_COMPLEX = "NumericComplex"


@dataclass(frozen=True)
class PolySystem:
    polynomials: tuple[Poly, ...]
    unknowns: tuple[str, ...]

    def __init__(self, polynomials: Iterable[Poly], unknowns: Sequence[str]):
        unknowns = tuple(unknowns)
        if len(unknowns) > 3:
            raise ValueError("at most three unknowns are supported")
        polys = []
        seen = set()
        for p in polynomials:
            p = Poly.coerce(p)
            if p.is_zero():
                continue
            extra = set(p.symbols) - set(unknowns)
            if extra:
                raise ValueError(f"polynomial involves non-unknowns {sorted(extra)}")
            if not p.is_constant():
                p = p.primitive()
            if p not in seen:
                seen.add(p)
                polys.append(p)
        object.__setattr__(self, "polynomials", tuple(polys))
        object.__setattr__(self, "unknowns", unknowns)

    def max_degree(self) -> int:
        return max((p.degree() for p in self.polynomials), default=0)

    def __len__(self):
        return len(self.polynomials)


@dataclass(frozen=True)
class SystemSolution:
    kind: SolutionKind
    coordinates: tuple
    residual: Fraction | None = None
    unknowns: tuple[str, ...] = ()

    @property
    def is_exact(self) -> bool:
        return self.kind is SolutionKind.EXACT_RATIONAL

    @property
    def is_real(self) -> bool:
        return self.kind is not SolutionKind.NUMERIC_COMPLEX

    def as_dict(self) -> dict:
        return dict(zip(self.unknowns, self.coordinates))

    def sort_key(self):
        order = {SolutionKind.EXACT_RATIONAL: 0, SolutionKind.NUMERIC_REAL: 1,
                 SolutionKind.NUMERIC_COMPLEX: 2}[self.kind]
        if self.is_exact:
            return (order, tuple(self.coordinates))
        return (order, tuple((float(mpmath.re(c)), float(mpmath.im(c))) for c in self.coordinates))


@dataclass(frozen=True)
class Component:
    """A positive-dimensional piece of the solution set."""

    equations: tuple[Poly, ...]
    dimension: int
    parametrization: dict | None = None
    samples: tuple[SystemSolution, ...] = ()


class Solutions(list):
    """Sorted isolated solutions plus positive-dimensional components."""

    def __init__(self, items=(), components=()):
        super().__init__(sorted(items, key=lambda s: s.sort_key()))
        self.components = list(components)

    @property
    def positive_dimensional(self) -> bool:
        return bool(self.components)

    def exact(self) -> list[SystemSolution]:
        return [s for s in self if s.is_exact]

    def all_samples(self) -> list[SystemSolution]:
        out = list(self.exact())
        for comp in self.components:
            out.extend(comp.samples)
        return out


# ---------------------------------------------------------------------------
# univariate root finding


def _univariate_coeffs(p: Poly, var: str) -> list[Fraction]:
    cs = p.coefficients_in(var)
    deg = max(cs) if cs else 0
    return [cs[k].constant_value() if k in cs else Fraction(0) for k in range(deg + 1)]


def rational_roots(p: Poly, var: str) -> list[Fraction]:
    coeffs = _univariate_coeffs(p, var)
    if len(coeffs) <= 1:
        return []
    return sorted(to_rat(r) for r, _m in flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator)
                                                         for c in coeffs]).roots())


def numeric_roots(p: Poly, var: str, dps: int = WORK_DPS) -> list[tuple[object, bool]]:
    """Irrational roots of ``p`` as (mpmath value, is_real), distinct, certified isolation."""
    coeffs = _univariate_coeffs(p, var)
    q = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in coeffs])
    # remove rational roots; they are reported exactly elsewhere
    for r, m in q.roots():
        q = q // flint.fmpq_poly([-r, 1]) ** m
    if q.degree() <= 0:
        return []
    zpoly = flint.fmpz_poly([int(c) for c in (q * q.denom()).numer().coeffs()])
    out = []
    old = flint.ctx.dps
    flint.ctx.dps = dps
    try:
        for fac, _m in zpoly.factor()[1]:
            for root, _mult in fac.complex_roots():
                if root.imag.is_zero():
                    out.append((mpmath.mpf(root.real.mid().str(dps, radius=False)), True))
                else:
                    re = mpmath.mpf(root.real.mid().str(dps, radius=False))
                    im = mpmath.mpf(root.imag.mid().str(dps, radius=False))
                    out.append((mpmath.mpc(re, im), False))
    finally:
        flint.ctx.dps = old
    return out


# ---------------------------------------------------------------------------
# core elimination


@dataclass
class _Partial:
    values: dict
    exact: bool
    real: bool = True


@dataclass
class _Result:
    points: list = field(default_factory=list)
    components: list = field(default_factory=list)  # (equations, vars, dimension)


def _gcd_all(polys: Sequence[Poly]) -> Poly:
    return reduce(lambda a, b: a.gcd(b), polys[1:], polys[0].monic())


def _choose_var(polys: Sequence[Poly], vars: Sequence[str]) -> str:
    def cost(v):
        degs = [p.degree(v) for p in polys if p.degree(v) > 0]
        return (max(degs) if degs else 0, -vars.index(v))

    return min(vars, key=cost)


def _numeric_eval(p: Poly, values: dict):
    return eval_poly_numeric(p, values)


def _lift(polys: Sequence[Poly], var: str, partial: _Partial, numeric: bool) -> tuple[list, bool]:
    """Extend a partial solution by the values of ``var``.

    Returns (list of _Partial, fiber_is_everything).
    """
    if partial.exact:
        subs = [p.subs(partial.values) for p in polys]
        subs = [p for p in subs if not p.is_zero()]
        if not subs:
            return [], True
        if any(p.is_constant() for p in subs):
            return [], False
        g = _gcd_all(subs)
        if g.is_constant():
            return [], False
        out = [_Partial({**partial.values, var: r}, True) for r in rational_roots(g, var)]
        if numeric:
            for val, is_real in numeric_roots(g, var):
                out.append(_Partial({**partial.values, var: val}, False, is_real))
        return out, False
    # numeric partial: pick the lowest-degree univariate specialization, filter by residuals
    cands = []
    for p in polys:
        if p.degree(var) <= 0:
            continue
        cs = p.coefficients_in(var)
        coeffs = [_numeric_eval(cs[k], partial.values) if k in cs else mpmath.mpf(0)
                  for k in range(max(cs) + 1)]
        scale = max(abs(c) for c in coeffs)
        while len(coeffs) > 1 and abs(coeffs[-1]) <= scale * mpmath.mpf(10) ** (-WORK_DPS // 2):
            coeffs.pop()
        if len(coeffs) > 1:
            cands.append(coeffs)
    if not cands:
        return [], True
    coeffs = min(cands, key=len)
    try:
        roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=200)
    except mpmath.libmp.libhyper.NoConvergence:
        return [], False
    out = []
    for r in roots:
        vals = {**partial.values, var: r}
        ok = all(abs(_numeric_eval(p, vals)) <= _tolerance(p, vals) for p in polys)
        if ok:
            is_real = partial.real and abs(mpmath.im(r)) <= mpmath.mpf(10) ** (-WORK_DPS // 3)
            if is_real:
                vals[var] = mpmath.re(r)
            out.append(_Partial(vals, False, is_real))
    return out, False


def _mp(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return v


def _tolerance(p: Poly, values: dict):
    big = max([mpmath.mpf(1)] + [abs(_mp(v)) for v in values.values()])
    size = sum((abs(c) for _e, c in p.numeric_terms()[1]), mpmath.mpf(0))
    return size * big ** max(p.degree(), 0) * mpmath.mpf(10) ** (-WORK_DPS // 3)


def _solve(polys: list[Poly], vars: tuple[str, ...], numeric: bool, cap: int) -> _Result:
    polys = [p for p in polys if not p.is_zero()]
    if any(p.is_constant() for p in polys):
        return _Result()
    if not polys:
        return _Result(components=[((), vars, len(vars))])
    res = _Result()
    g = _gcd_all(polys)
    if not g.is_constant():
        for f in g.irreducible_factors():
            res.components.append(((f,), vars, len(vars) - 1))
        if len(vars) == 1:
            # every root of g is a point; report them as isolated points instead
            res.components.clear()
            res.points.extend(_univariate_points(g, vars[0], numeric))
            return res
        polys = [p.exquo(g) for p in polys]
        if any(p.is_constant() for p in polys):
            return res
    if len(vars) == 1:
        return res
    used = sort_symbols(s for p in polys for s in p.symbols)
    v = _choose_var(polys, [x for x in vars if x in used] or list(vars))
    rest = tuple(x for x in vars if x != v)
    with_v = sorted((p for p in polys if p.degree(v) > 0), key=lambda p: (p.degree(v), len(p)))
    without = [p for p in polys if p.degree(v) <= 0]
    if not with_v:
        sub = _solve(without, rest, numeric, cap)
        for pt in sub.points:
            res.components.append((tuple(polys), vars, 1, pt))
        for eqs, cvars, dim, *_ in sub.components:
            res.components.append((tuple(polys), vars, dim + 1))
        return res
    if len(with_v) == 1:
        elim = without
        f = with_v[0]
        if not elim:
            res.components.append(((f,), vars, len(vars) - 1))
            return res
    else:
        h = _gcd_all(with_v)
        if h.degree(v) > 0:
            # V(h a_i, without) = V(h, without) u V(a_i, without)
            a = _solve([h] + without, vars, numeric, cap)
            b = _solve([p.exquo(h) for p in with_v] + without, vars, numeric, cap)
            res.points.extend(a.points + b.points)
            res.components.extend(a.components + b.components)
            return res
        p0 = with_v[0]
        elim = list(without)
        shared = None
        # one more eliminant than remaining unknowns is enough in practice;
        # further ones only cost time, since lifting rechecks every equation
        want = len(without) + len(rest) + 1
        for q in with_v[1:]:
            if len(elim) >= want:
                break
            if p0.gcd(q).degree(v) > 0:
                # the resultant would vanish; skipping q only enlarges the projection
                shared = shared or q
                continue
            r = resultant(p0, q, v)
            if r.degree() > cap * cap:
                raise DegreeCapExceeded("eliminant", r.degree(), cap * cap)
            if r.is_constant():
                return res
            elim.append(r.primitive())
        if len(elim) == len(without):
            # V(h a, h b) = V(h) u V(a, b) with a, b coprime
            h = p0.gcd(shared)
            others = [p for p in polys if p is not p0 and p is not shared]
            a = _solve([h] + others, vars, numeric, cap)
            b = _solve([p0.exquo(h), shared.exquo(h)] + others, vars, numeric, cap)
            res.points.extend(a.points + b.points)
            res.components.extend(a.components + b.components)
            return res
    sub = _solve(elim, rest, numeric, cap)
    for pt in sub.points:
        lifted, everything = _lift(polys, v, pt, numeric)
        if everything:
            res.components.append((tuple(polys), vars, 1))
        res.points.extend(lifted)
    for comp in sub.components:
        dim = comp[2]
        res.components.append((tuple(polys), vars, dim))
    return res


def _univariate_points(g: Poly, var: str, numeric: bool) -> list[_Partial]:
    pts = [_Partial({var: r}, True) for r in rational_roots(g, var)]
    if numeric:
        pts += [_Partial({var: val}, False, real) for val, real in numeric_roots(g, var)]
    return pts


# ---------------------------------------------------------------------------
# components


def _linear_parametrization(eqs: Sequence[Poly], vars: tuple[str, ...]) -> dict | None:
    if not eqs or any(p.degree() > 1 for p in eqs):
        return None
    rows, rhs = [], []
    for p in eqs:
        rows.append([p.diff(v).constant_value() if p.degree(v) > 0 else Fraction(0) for v in vars])
        rhs.append(-p.subs({v: 0 for v in vars}).constant_value())
    sol = solve_affine(rows, rhs)
    if sol is None:
        return None
    base, kernel = sol
    params = [Poly.var(f"u{i + 1}") for i in range(len(kernel))]
    return {v: Poly.const(base[i]) + sum((k[i] * u for k, u in zip(kernel, params)), Poly.const(0))
            for i, v in enumerate(vars)}


def _verify_exact(polys: Sequence[Poly], point: dict) -> bool:
    return all(p.subs(point).is_zero() for p in polys)


def _sample_component(eqs: Sequence[Poly], system: Sequence[Poly], vars: tuple[str, ...],
                      dim: int, count: int, cap: int) -> list[dict]:
    """Rational points of a positive-dimensional set, found by slicing coordinates."""
    found: list[dict] = []
    defining = list(eqs) or list(system)
    for slice_vars in itertools.combinations(vars, dim):
        free = tuple(v for v in vars if v not in slice_vars)
        for values in itertools.product(SLICE_VALUES, repeat=dim):
            point = dict(zip(slice_vars, values))
            sliced = [p.subs(point) for p in defining]
            if free:
                try:
                    sub = _solve([p for p in sliced], free, False, cap)
                except DegreeCapExceeded:
                    continue
                cands = [{**point, **pt.values} for pt in sub.points if pt.exact]
            else:
                cands = [point] if all(p.is_zero() for p in sliced) else []
            for cand in cands:
                if len(cand) == len(vars) and _verify_exact(system, cand) and cand not in found:
                    found.append(cand)
                    if len(found) >= count:
                        return found
        if found:
            return found
    return found


# ---------------------------------------------------------------------------
# public entry point


def solve_system(sys: PolySystem, mode: str = "exact", cap: int = DEFAULT_CAP,
                 samples: int = 3) -> Solutions:
    """All rational solutions (and in numeric mode, all isolated solutions).

    Positive-dimensional parts are returned in ``Solutions.components`` with
    up to ``samples`` exactly verified rational points each.
    """
    if mode not in ("exact", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    for p in sys.polynomials:
        if p.degree() > cap:
            raise DegreeCapExceeded("system polynomial", p.degree(), cap)
    numeric = mode == "numeric"
    raw = _solve(list(sys.polynomials), sys.unknowns, numeric, cap)
    items = []
    seen = set()
    for pt in raw.points:
        if len(pt.values) != len(sys.unknowns):
            continue
        coords = tuple(pt.values[v] for v in sys.unknowns)
        if pt.exact:
            if coords in seen or not _verify_exact(sys.polynomials, pt.values):
                continue
            seen.add(coords)
            items.append(SystemSolution(SolutionKind.EXACT_RATIONAL, coords, None, sys.unknowns))
        else:
            resid = max((abs(_numeric_eval(p, pt.values)) for p in sys.polynomials),
                        default=mpmath.mpf(0))
            key = tuple(mpmath.nstr(c, 15) for c in coords)
            if key in seen:
                continue
            seen.add(key)
            kind = SolutionKind.NUMERIC_REAL if pt.real else SolutionKind.NUMERIC_COMPLEX
            bound = Fraction(mpmath.nstr(resid * 2 + mpmath.mpf(10) ** (-WORK_DPS), 5, strip_zeros=False)
                             if resid else "0")
            items.append(SystemSolution(kind, coords, abs(bound), sys.unknowns))
    components = []
    for comp in raw.components:
        eqs, cvars, dim = comp[0], comp[1], comp[2]
        pts = _sample_component(eqs, sys.polynomials, sys.unknowns, dim, samples, cap)
        samples_ = tuple(SystemSolution(SolutionKind.EXACT_RATIONAL,
                                        tuple(p[v] for v in sys.unknowns), None, sys.unknowns)
                         for p in pts)
        param = _linear_parametrization(eqs, sys.unknowns) if eqs else None
        components.append(Component(tuple(eqs), dim, param, samples_))
    # isolated exact points lying on a reported component are kept: they are still solutions
    return Solutions(items, _dedupe_components(components))


def _dedupe_components(comps: list[Component]) -> list[Component]:
    out, keys = [], set()
    for c in comps:
        key = (tuple(str(p) for p in c.equations), c.dimension)
        if key not in keys:
            keys.add(key)
            out.append(c)
    return out
