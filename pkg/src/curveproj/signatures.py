"""Signature maps, implicit signature polynomials and group equivalence."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import Union

import mpmath

from .config import DEFAULT, Config
from .curves import (
    PlanarCurve,
    PlanarImplicitCurve,
    PlanarParametricCurve,
    canonical_sign,
    sample_values,
)
from .errors import DegreeCapExceeded, EliminationDegenerate, Exceptional
from .exactalg import Poly, RationalFunction, resultant
from .exactalg.ratfunc import eval_poly_numeric
from .exactalg.solve import numeric_roots, rational_roots
from .invariants import CurveKind, ExceptionalClass, classify, restrict_pair

RF = RationalFunction
KAPPA, TAU = "kappa", "tau"


@dataclass(frozen=True)
class SignatureMap:
    K: RationalFunction
    T: RationalFunction
    group: str
    curve: PlanarCurve

    @property
    def is_constant(self) -> bool:
        return self.K.is_constant() and self.T.is_constant()


@dataclass(frozen=True)
class SignatureObject:
    kind: str  # "Point" or "Curve"
    group: str
    point: tuple[Fraction, Fraction] | None = None
    poly: Poly | None = None

    @classmethod
    def make_point(cls, k, t, group):
        return cls("Point", group, (Fraction(k), Fraction(t)))

    @classmethod
    def make_curve(cls, poly: Poly, group):
        return cls("Curve", group, poly=canonical_sign(poly.primitive()))

    def __str__(self):
        if self.kind == "Point":
            return f"Point({_fmt(self.point[0])}, {_fmt(self.point[1])})"
        return f"Curve({self.poly})"


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Verdict(str, Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    COMPLEX_ONLY = "EquivalentOverComplexOnly"


@dataclass
class EquivalenceDecision:
    verdict: Verdict
    trace: list[str] = field(default_factory=list)

    @property
    def equivalent(self) -> bool:
        return self.verdict is Verdict.EQUIVALENT


# ---------------------------------------------------------------------------
# maps and elimination


def signature_map(curve: PlanarCurve, group: str) -> SignatureMap:
    cls = classify(curve, group)
    if cls.exceptional:
        raise Exceptional(cls)
    K, T = restrict_pair(curve, group)
    return SignatureMap(K, T, group, curve)


def _relation(f: RationalFunction, sym: str) -> Poly:
    return f.den * Poly.var(sym) - f.num


def _constant_on_implicit(f: RationalFunction, F: Poly, config: Config) -> Fraction | None:
    """Exact value of ``f`` if it is constant along F = 0, else None."""
    if f.is_constant():
        return f.constant_value()
    pts = _implicit_points(F, [f.den], 3, config)
    if not pts:
        return None
    vals = [eval_poly_numeric(f.num, p) / eval_poly_numeric(f.den, p) for p in pts]
    if any(abs(v - vals[0]) > mpmath.mpf(10) ** (-30) * (1 + abs(vals[0])) for v in vals):
        return None
    rel = _relation(f, KAPPA)
    r = resultant(F, rel, "y") if F.involves("y") and rel.involves("y") else rel
    for g in r.irreducible_factors():
        if g.symbols == (KAPPA,) and g.degree(KAPPA) == 1:
            root = rational_roots(g, KAPPA)[0]
            if abs(vals[0] - mpmath.mpf(root.numerator) / root.denominator) < mpmath.mpf(10) ** (-30):
                if F.divides(f.num - root * f.den):
                    return root
    return None


def _implicit_points(F: Poly, avoid: list[Poly], count: int, config: Config) -> list[dict]:
    """Real points of F = 0 (numeric), avoiding the zeros of ``avoid``."""
    xvar, yvar = ("x", "y") if F.involves("y") else ("y", "x")
    pts = []
    xs = sample_values(4 * count + 8, [F.leading_coeff_in(yvar)], xvar, config.sample_seed)
    for x0 in xs:
        g = F.subs({xvar: x0})
        if g.is_zero() or not g.involves(yvar):
            continue
        roots = [mpmath.mpf(r.numerator) / r.denominator for r in rational_roots(g, yvar)]
        roots += [r for r, real in numeric_roots(g, yvar) if real]
        for y0 in roots:
            p = {xvar: mpmath.mpf(x0.numerator) / x0.denominator, yvar: y0}
            if all(abs(eval_poly_numeric(a, p)) > mpmath.mpf(10) ** (-20) for a in avoid):
                pts.append(p)
        if len(pts) >= count:
            break
    return pts[:count]


def _keep_vanishing(r: Poly, pts: list[tuple], exact: bool) -> Poly:
    kept = []
    for f in r.irreducible_factors():
        if not (f.involves(KAPPA) or f.involves(TAU)):
            continue
        if exact:
            ok = all(f.subs({KAPPA: k, TAU: t}).is_zero() for k, t in pts)
        else:
            ok = all(abs(eval_poly_numeric(f, {KAPPA: k, TAU: t})) <
                     mpmath.mpf(10) ** (-25) * (1 + abs(k) + abs(t)) ** f.degree() for k, t in pts)
        if ok:
            kept.append(f)
    if not kept:
        raise EliminationDegenerate("no eliminant factor vanishes on the signature samples")
    return reduce(lambda a, b: a * b, kept)


def implicit_signature(smap: SignatureMap, config: Config = DEFAULT) -> SignatureObject:
    K, T, group = smap.K, smap.T, smap.group
    curve = smap.curve
    if isinstance(curve, PlanarImplicitCurve):
        return _implicit_signature_implicit(smap, config)
    t = curve.param if isinstance(curve, PlanarParametricCurve) else "t"
    if K.is_constant() and T.is_constant():
        return SignatureObject.make_point(K.constant_value(), T.constant_value(), group)
    if K.is_constant():
        return SignatureObject.make_curve(Poly.var(KAPPA) - K.constant_value(), group)
    if T.is_constant():
        return SignatureObject.make_curve(Poly.var(TAU) - T.constant_value(), group)
    cost = _degree(K, t) * _degree(T, t)
    if cost > config.elimination_cap:
        raise DegreeCapExceeded("signature elimination (deg K * deg T)", cost, config.elimination_cap)
    r = resultant(_relation(K, KAPPA), _relation(T, TAU), t)
    if r.is_zero():
        raise EliminationDegenerate("signature resultant vanishes identically")
    ts = sample_values(config.samples, [K.den, T.den], t, config.sample_seed)
    pts = [(K.evaluate({t: v}), T.evaluate({t: v})) for v in ts]
    return SignatureObject.make_curve(_keep_vanishing(r, pts, exact=True), group)


def _degree(f: RationalFunction, t: str) -> int:
    return max(f.num.degree(t), f.den.degree(t))


def _drop_free_factors(p: Poly, sym: str) -> Poly:
    """Squarefree product of the factors that involve ``sym``."""
    fs = [f for f in p.irreducible_factors() if f.involves(sym)]
    if not fs:
        raise EliminationDegenerate(f"eliminant does not involve {sym}")
    return reduce(lambda a, b: a * b, fs)


def _implicit_signature_implicit(smap: SignatureMap, config: Config) -> SignatureObject:
    F = smap.curve.F
    K, T = smap.K, smap.T
    k0 = _constant_on_implicit(K, F, config)
    t0 = _constant_on_implicit(T, F, config)
    if k0 is not None and t0 is not None:
        return SignatureObject.make_point(k0, t0, smap.group)
    if k0 is not None:
        return SignatureObject.make_curve(Poly.var(KAPPA) - k0, smap.group)
    if t0 is not None:
        return SignatureObject.make_curve(Poly.var(TAU) - t0, smap.group)
    # eliminate y, then x
    yvar, xvar = ("y", "x") if F.involves("y") else ("x", "y")
    r1 = _drop_free_factors(resultant(F, _relation(K, KAPPA), yvar), KAPPA)
    r2 = _drop_free_factors(resultant(F, _relation(T, TAU), yvar), TAU)
    r = resultant(r1, r2, xvar)
    if r.is_zero():
        raise EliminationDegenerate("signature resultant vanishes identically")
    pts = []
    for p in _implicit_points(F, [K.den, T.den], config.samples, config):
        pts.append((eval_poly_numeric(K.num, p) / eval_poly_numeric(K.den, p),
                    eval_poly_numeric(T.num, p) / eval_poly_numeric(T.den, p)))
    if not pts:
        raise EliminationDegenerate("no real regular points found to filter the eliminant")
    return SignatureObject.make_curve(_keep_vanishing(r, pts, exact=False), smap.group)


def signature(curve: PlanarCurve, group: str, config: Config = DEFAULT) -> SignatureObject:
    return implicit_signature(signature_map(curve, group), config)


def signatures_equal(s1: SignatureObject, s2: SignatureObject) -> Verdict:
    if s1.group != s2.group:
        raise ValueError("signatures belong to different groups")
    if s1.kind != s2.kind:
        return Verdict.NOT_EQUIVALENT
    if s1.kind == "Point":
        return Verdict.EQUIVALENT if s1.point == s2.point else Verdict.NOT_EQUIVALENT
    return Verdict.COMPLEX_ONLY if s1.poly == s2.poly else Verdict.NOT_EQUIVALENT


# ---------------------------------------------------------------------------
# equivalence


def conic_type(curve: PlanarCurve, config: Config = DEFAULT) -> str:
    """'ellipse', 'hyperbola' or 'parabola' from the quadratic part of the equation."""
    F = curve.F if isinstance(curve, PlanarImplicitCurve) else curve.implicit(config).F
    coeff = {}
    for exps, c in F.terms():
        d = dict(zip(F.gens, exps))
        key = (d.get("x", 0), d.get("y", 0))
        coeff[key] = c
    a, b, c = (Fraction(coeff.get(k, 0)) for k in ((2, 0), (1, 1), (0, 2)))
    disc = b * b - 4 * a * c
    if disc < 0:
        return "ellipse"
    if disc > 0:
        return "hyperbola"
    return "parabola"


def _is_projective_conic(curve: PlanarCurve) -> bool:
    from .invariants import discriminant_vanishes

    return discriminant_vanishes(curve, "delta2")


def _sample_signature_values(smap: SignatureMap, config: Config, count: int = 1):
    curve = smap.curve
    if isinstance(curve, PlanarParametricCurve):
        t = curve.param
        dens = [smap.K.den, smap.T.den, smap.K.num, smap.T.num, curve.x.den, curve.y.den]
        vals = sample_values(count, [d for d in dens if d.involves(t)], t, config.sample_seed + 7)
        return [(smap.K.evaluate({t: v}), smap.T.evaluate({t: v})) for v in vals]
    out = []
    for p in _implicit_points(curve.F, [smap.K.den, smap.T.den], count, config):
        out.append((eval_poly_numeric(smap.K.num, p) / eval_poly_numeric(smap.K.den, p),
                    eval_poly_numeric(smap.T.num, p) / eval_poly_numeric(smap.T.den, p)))
    return out


def _num(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return v


def _attains(smap: SignatureMap, k, tau) -> bool:
    """Whether (k, tau) is the signature of some real regular point of the curve."""
    curve = smap.curve
    tol = mpmath.mpf(10) ** (-20)
    if isinstance(curve, PlanarParametricCurve):
        t = curve.param
        rels = []
        for f, v in ((smap.K, k), (smap.T, tau)):
            if f.is_constant():
                if f.constant_value() != v:
                    return False
            else:
                rels.append(f.num - v * f.den)
        if not rels:
            return True
        g = reduce(lambda a, b: a.gcd(b), rels)
        if not g.involves(t):
            return False
        if rational_roots(g, t):
            return True
        return any(real for _r, real in numeric_roots(g, t))
    # implicit curve: scan real points numerically
    F = curve.F
    r1 = resultant(F, _relation(smap.K, KAPPA), "y") if F.involves("y") else None
    if r1 is None:
        return False
    xpoly = r1.subs({KAPPA: k}) if isinstance(k, Fraction) else None
    if xpoly is not None:
        xs = [mpmath.mpf(r.numerator) / r.denominator for r in rational_roots(xpoly, "x")]
        xs += [r for r, real in numeric_roots(xpoly, "x") if real]
    else:
        cs = _numeric_coeffs_sub(r1, KAPPA, k, "x")
        xs = [mpmath.re(r) for r in mpmath.polyroots(cs[::-1], maxsteps=200, extraprec=200)
              if abs(mpmath.im(r)) < tol]
    for x0 in xs:
        ycs = _numeric_coeffs_sub(F, "x", x0, "y")
        for y0 in mpmath.polyroots(ycs[::-1], maxsteps=200, extraprec=200):
            if abs(mpmath.im(y0)) > mpmath.mpf(10) ** (-15):
                continue
            p = {"x": x0, "y": mpmath.re(y0)}
            try:
                kv = eval_poly_numeric(smap.K.num, p) / eval_poly_numeric(smap.K.den, p)
                tv = eval_poly_numeric(smap.T.num, p) / eval_poly_numeric(smap.T.den, p)
            except ZeroDivisionError:
                continue
            if abs(kv - _num(k)) < 1e-10 * (1 + abs(kv)) and abs(tv - _num(tau)) < 1e-10 * (1 + abs(tv)):
                return True
    return False


def _numeric_coeffs_sub(p: Poly, var: str, value, keep: str):
    cs = p.coefficients_in(keep)
    out = []
    for k in range(max(cs) + 1):
        c = cs.get(k)
        out.append(eval_poly_numeric(c, {var: value}) if c is not None else mpmath.mpf(0))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _real_witness(m1: SignatureMap, m2: SignatureMap, config: Config) -> bool:
    for k, tau in _sample_signature_values(m1, config):
        if isinstance(k, Fraction) and isinstance(tau, Fraction) or isinstance(m2.curve, PlanarImplicitCurve):
            if _attains(m2, k, tau):
                return True
        else:
            if _attains_numeric(m2, k, tau):
                return True
    return False


def _attains_numeric(m2: SignatureMap, k, tau) -> bool:
    t = m2.curve.param
    f = m2.T if m2.K.is_constant() else m2.K
    target, other, otarget = (tau, m2.K, k) if m2.K.is_constant() else (k, m2.T, tau)
    cs = [a - _num(target) * b for a, b in _paired_coeffs(f.num, f.den, t)]
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    for r in mpmath.polyroots(cs[::-1], maxsteps=200, extraprec=200):
        if abs(mpmath.im(r)) > mpmath.mpf(10) ** (-20):
            continue
        r = mpmath.re(r)
        val = eval_poly_numeric(other.num, {t: r}) / eval_poly_numeric(other.den, {t: r})
        if abs(val - _num(otarget)) < mpmath.mpf(10) ** (-12) * (1 + abs(val)):
            return True
    return False


def _paired_coeffs(a: Poly, b: Poly, var: str):
    ca, cb = a.coefficients_in(var), b.coefficients_in(var)
    n = max(list(ca) + list(cb)) + 1
    z = Fraction(0)
    return [(_num(ca[k].constant_value() if k in ca else z), _num(cb[k].constant_value() if k in cb else z))
            for k in range(n)]


def _exceptional_decision(c1: ExceptionalClass, c2: ExceptionalClass, group: str) -> EquivalenceDecision | None:
    trace = [f"classes: {c1.kind.value} / {c2.kind.value} ({group})"]
    e1, e2 = c1.exceptional, c2.exceptional
    if e1 != e2:
        trace.append("exceptional versus non-exceptional curve")
        return EquivalenceDecision(Verdict.NOT_EQUIVALENT, trace)
    if not e1:
        return None
    if c1.kind is not c2.kind:
        trace.append("different exceptional classes")
        return EquivalenceDecision(Verdict.NOT_EQUIVALENT, trace)
    trace.append(f"both {c1.kind.value}: a single orbit")
    return EquivalenceDecision(Verdict.EQUIVALENT, trace)


def _projective_kind(cls: ExceptionalClass, curve: PlanarCurve) -> ExceptionalClass:
    # classify() reports Parabola before Conic; projectively a parabola is a conic
    if cls.kind is CurveKind.PARABOLA:
        return ExceptionalClass(CurveKind.CONIC, cls.group)
    return cls


def equivalent(c1: PlanarCurve, c2: PlanarCurve, group: str, config: Config = DEFAULT) -> EquivalenceDecision:
    k1, k2 = classify(c1, group), classify(c2, group)
    if group == "projective":
        k1, k2 = _projective_kind(k1, c1), _projective_kind(k2, c2)
    dec = _exceptional_decision(k1, k2, group)
    if dec is not None:
        return dec
    trace = [f"classes: {k1.kind.value} / {k2.kind.value} ({group})"]
    if group == "affine" and (k1.kind is CurveKind.CONIC or k2.kind is CurveKind.CONIC):
        if k1.kind is not k2.kind:
            trace.append("conic versus non-conic")
            return EquivalenceDecision(Verdict.NOT_EQUIVALENT, trace)
        t1, t2 = conic_type(c1, config), conic_type(c2, config)
        trace.append(f"affine conic types: {t1} / {t2}")
        return EquivalenceDecision(Verdict.EQUIVALENT if t1 == t2 else Verdict.NOT_EQUIVALENT, trace)
    m1, m2 = signature_map(c1, group), signature_map(c2, group)
    s1, s2 = implicit_signature(m1, config), implicit_signature(m2, config)
    trace.append(f"signatures: {s1} / {s2}")
    v = signatures_equal(s1, s2)
    if v is Verdict.COMPLEX_ONLY:
        if _real_witness(m1, m2, config) and _real_witness(m2, m1, config):
            trace.append("real point correspondence found in both directions")
            v = Verdict.EQUIVALENT
        else:
            trace.append("no real point correspondence found")
    return EquivalenceDecision(v, trace)
