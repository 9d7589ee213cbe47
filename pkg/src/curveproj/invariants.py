"""Affine and projective differential invariants of planar curves.

The rational invariants are kept as signed products of a few polynomials in
the jet symbols y2..y8.  Every such polynomial is weighted-homogeneous when
y_k carries weight 2k-1, which lets restriction to a curve run on polynomial
jet numerators and cancel the shared jet denominator exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

import mpmath

from .curves import (
    JET_SYMBOLS,
    JetFunctions,
    PlanarCurve,
    PlanarImplicitCurve,
    PlanarParametricCurve,
    is_line_planar,
    jets,
)
from .errors import ChainUndefined, ExceptionalDenominator
from .exactalg import Poly, RationalFunction

RF = RationalFunction

_y = {name: Poly.var(name) for name in JET_SYMBOLS}
y1, y2, y3, y4, y5, y6, y7, y8 = (_y[n] for n in JET_SYMBOLS)

DELTA1 = 3 * y4 * y2 - 5 * y3**2
DELTA2 = 9 * y5 * y2**2 - 45 * y4 * y3 * y2 + 40 * y3**3

# numerator of the affine torsion-type invariant
TA_NUM = (9 * y6 * y2**3 - 63 * y5 * y3 * y2**2 - 45 * y4**2 * y2**2
          + 255 * y4 * y3**2 * y2 - 160 * y3**4)

# cube root of the projective curvature-type numerator
KP_BASE = (18 * y7 * y2**4 * DELTA2 - 189 * y6**2 * y2**6
           + 126 * y6 * y2**4 * (9 * y5 * y3 * y2 + 15 * y4**2 * y2 - 25 * y4 * y3**2)
           - 189 * y5**2 * y2**4 * (4 * y3**2 + 15 * y2 * y4)
           + 210 * y5 * y3 * y2**2 * (63 * y4**2 * y2**2 - 60 * y4 * y3**2 * y2 + 32 * y3**4)
           - 525 * y4 * y2 * (9 * y4**3 * y2**3 + 15 * y4**2 * y3**2 * y2**2
                              - 60 * y4 * y3**4 * y2 + 64 * y3**6)
           + 11200 * y3**8)

TP_BASE = (2 * y8 * y2 * DELTA2**2
           - 8 * y7 * DELTA2 * (9 * y6 * y2**3 - 36 * y5 * y3 * y2**2 - 45 * y4**2 * y2**2
                                + 120 * y4 * y3**2 * y2 - 40 * y3**4)
           + 504 * y6**3 * y2**5
           - 504 * y6**2 * y2**3 * (9 * y5 * y3 * y2 + 15 * y4**2 * y2 - 25 * y4 * y3**2)
           + 28 * y6 * (432 * y5**2 * y3**2 * y2**3 + 243 * y5**2 * y4 * y2**4
                        - 1800 * y5 * y4 * y3**3 * y2**2 - 240 * y5 * y3**5 * y2
                        + 540 * y5 * y4**2 * y3 * y2**3 + 6600 * y4**2 * y3**4 * y2
                        - 2000 * y4 * y3**6 - 5175 * y4**3 * y3**2 * y2**2 + 1350 * y4**4 * y2**3)
           - 2835 * y5**4 * y2**4
           + 252 * y5**3 * y3 * y2**2 * (9 * y4 * y2 - 136 * y3**2)
           - 35840 * y5**2 * y3**6
           - 630 * y5**2 * y4 * y2 * (69 * y4**2 * y2**2 - 160 * y3**4 - 153 * y4 * y3**2 * y2)
           + 2100 * y5 * y4**2 * y3 * (72 * y3**4 + 63 * y4**2 * y2**2 - 193 * y4 * y3**2 * y2)
           - 7875 * y4**4 * (8 * y4**2 * y2**2 - 22 * y4 * y3**2 * y2 + 9 * y3**4))

# names reported when a denominator factor vanishes along a curve
_DISCRIMINANT_NAMES = {DELTA1: "delta1", DELTA2: "delta2", y2: "y2"}


def jet_weight(p: Poly) -> int | None:
    """Weight with y_k of weight 2k-1, or None if p is not weighted-homogeneous."""
    weights = set()
    for exps, _c in p.terms():
        w = 0
        for g, e in zip(p.gens, exps):
            if e:
                if g not in JET_SYMBOLS:
                    return None
                w += (2 * int(g[1:]) - 1) * e
        weights.add(w)
    return weights.pop() if len(weights) == 1 else None


@dataclass(frozen=True)
class JetExpression:
    """const * prod(factor^exponent) in the jet symbols."""

    name: str
    const: Fraction
    factors: tuple[tuple[Poly, int], ...]
    order: int

    @cached_property
    def expr(self) -> RationalFunction:
        num, den = Poly.const(self.const), Poly.const(1)
        for p, e in self.factors:
            if e > 0:
                num = num * p**e
            else:
                den = den * p ** (-e)
        return RF(num, den)

    def denominator_factors(self) -> list[Poly]:
        return [p for p, e in self.factors if e < 0]

    def __str__(self):
        return self.name


def delta1() -> JetExpression:
    return JetExpression("Delta1", Fraction(1), ((DELTA1, 1),), 4)


def delta2() -> JetExpression:
    return JetExpression("Delta2", Fraction(1), ((DELTA2, 1),), 5)


K_A = JetExpression("K_A", Fraction(1), ((DELTA2, 2), (DELTA1, -3)), 5)
T_A = JetExpression("T_A", Fraction(1), ((TA_NUM, 1), (DELTA1, -2)), 6)
K_P = JetExpression("K_P", Fraction(729, 8), ((KP_BASE, 3), (DELTA2, -8)), 7)
T_P = JetExpression("T_P", Fraction(243, 2), ((y2, 4), (TP_BASE, 1), (DELTA2, -4)), 8)


def affine_invariants() -> tuple[JetExpression, JetExpression]:
    return K_A, T_A


def projective_invariants() -> tuple[JetExpression, JetExpression]:
    return K_P, T_P


def invariants_for(group: str) -> tuple[JetExpression, JetExpression]:
    if group == "affine":
        return affine_invariants()
    if group == "projective":
        return projective_invariants()
    raise ValueError(f"unknown group {group!r}")


# ---------------------------------------------------------------------------
# restriction to curves


@dataclass
class _JetNumerators:
    """y_k = q_k / base^(2k-1) along a curve."""

    q: dict[str, Poly]
    base_factors: list[tuple[Poly, int]]
    curve_equation: Poly | None  # F for implicit curves, None for parametric ones
    variables: tuple[str, ...]


def _jet_numerators(j: JetFunctions, implicit_F: Poly | None) -> _JetNumerators:
    exps: dict[Poly, int] = {}
    for k, e in enumerate(j.entries, 1):
        if e.den.is_constant():
            continue
        _unit, fs = e.den.factor()
        for f, m in fs:
            exps[f] = max(exps.get(f, 0), -(-m // (2 * k - 1)))
    base = Poly.const(1)
    for f, m in exps.items():
        base = base * f**m
    q = {}
    for k, e in enumerate(j.entries, 1):
        q[JET_SYMBOLS[k - 1]] = e.num * (base ** (2 * k - 1)).exquo(e.den)
    return _JetNumerators(q, list(exps.items()), implicit_F, j.variables)


class _Accumulator:
    def __init__(self):
        self.const = Fraction(1)
        self.exps: dict[Poly, int] = {}

    def add(self, p: Poly, e: int):
        unit, fs = p.factor()
        self.const *= unit**e
        for f, m in fs:
            self.exps[f] = self.exps.get(f, 0) + m * e

    def build(self) -> RationalFunction:
        num, den = Poly.const(self.const), Poly.const(1)
        for f, e in sorted(self.exps.items(), key=lambda fe: str(fe[0])):
            if e > 0:
                num = num * f**e
            elif e < 0:
                den = den * f ** (-e)
        return RF(num, den)


def _vanishes_on_curve(value: Poly, nums: _JetNumerators) -> bool:
    if value.is_zero():
        return True
    F = nums.curve_equation
    return F is not None and F.divides(value)


def _restrict_with(inv: JetExpression, nums: _JetNumerators) -> RationalFunction:
    values = []
    for p, e in inv.factors:
        w = jet_weight(p)
        if w is None:
            raise ValueError(f"{inv.name}: factor is not weighted-homogeneous")
        values.append((p, e, w, p.compose(nums.q)))
    for p, e, _w, val in values:
        if e < 0 and _vanishes_on_curve(val, nums):
            raise ExceptionalDenominator(_DISCRIMINANT_NAMES.get(p, "delta2"))
    if any(val.is_zero() for _p, _e, _w, val in values):
        return RF.const(0)
    acc = _Accumulator()
    acc.const = inv.const
    base_weight = 0
    for _p, e, w, val in values:
        acc.add(val, e)
        base_weight += w * e
    for f, m in nums.base_factors:
        acc.exps[f] = acc.exps.get(f, 0) - m * base_weight
    return acc.build()


def _numerators_for(curve: PlanarCurve, order: int) -> _JetNumerators:
    j = jets(curve, order)
    F = None
    if isinstance(curve, PlanarImplicitCurve):
        F = curve.F.rename({"x": "y", "y": "x"}) if j.swapped else curve.F
    return _jet_numerators(j, F)


def _check_line(curve: PlanarCurve, nums: _JetNumerators):
    if _vanishes_on_curve(nums.q["y2"], nums):
        raise ExceptionalDenominator("y2")


def restrict(inv: JetExpression, curve: PlanarCurve) -> RationalFunction:
    """inv composed with the jet of ``curve``.

    Parametric curves give a function of the parameter; implicit curves give
    an unreduced function of (x, y).
    """
    nums = _numerators_for(curve, max(inv.order, 2))
    if inv.denominator_factors():
        _check_line(curve, nums)
    return _restrict_with(inv, nums)


def restrict_pair(curve: PlanarCurve, group: str) -> tuple[RationalFunction, RationalFunction]:
    """(K|curve, T|curve) for the given group, sharing one jet computation."""
    k_inv, t_inv = invariants_for(group)
    nums = _numerators_for(curve, t_inv.order)
    _check_line(curve, nums)
    return _restrict_with(k_inv, nums), _restrict_with(t_inv, nums)


# ---------------------------------------------------------------------------
# exceptional curves


class CurveKind(str, Enum):
    LINE = "Line"
    PARABOLA = "Parabola"
    CONIC = "Conic"
    GENERIC = "Generic"


@dataclass(frozen=True)
class ExceptionalClass:
    kind: CurveKind
    group: str

    @property
    def exceptional(self) -> bool:
        if self.group == "affine":
            return self.kind in (CurveKind.LINE, CurveKind.PARABOLA)
        return self.kind is not CurveKind.GENERIC

    @property
    def affine_exceptional(self) -> bool:
        return self.kind in (CurveKind.LINE, CurveKind.PARABOLA)

    @property
    def projective_exceptional(self) -> bool:
        return self.kind is not CurveKind.GENERIC


def discriminant_vanishes(curve: PlanarCurve, which: str) -> bool:
    """Whether delta1 / delta2 vanishes identically along the curve."""
    expr = {"delta1": delta1(), "delta2": delta2()}[which]
    nums = _numerators_for(curve, expr.order)
    val = expr.factors[0][0].compose(nums.q)
    return _vanishes_on_curve(val, nums)


def restricted_discriminant(curve: PlanarCurve, which: str) -> RationalFunction:
    expr = {"delta1": delta1(), "delta2": delta2()}[which]
    return restrict(expr, curve)


def classify(curve: PlanarCurve, group: str = "projective") -> ExceptionalClass:
    if group not in ("affine", "projective"):
        raise ValueError(f"unknown group {group!r}")
    if is_line_planar(curve):
        kind = CurveKind.LINE
    elif discriminant_vanishes(curve, "delta1"):
        kind = CurveKind.PARABOLA
    elif discriminant_vanishes(curve, "delta2"):
        kind = CurveKind.CONIC
    else:
        kind = CurveKind.GENERIC
    return ExceptionalClass(kind, group)


# ---------------------------------------------------------------------------
# numeric curvature chain (cross-check oracle)


@dataclass(frozen=True)
class NumericChainPoint:
    kappa: object
    kappa_s: object
    kappa_ss: object
    mu: object = None
    mu_a: object = None
    mu_aa: object = None
    mu_aaa: object = None
    eta: object = None
    eta_r: object = None
    reflected: bool = False

    @property
    def K_A(self):
        return self.mu_a**2 / self.mu**3

    @property
    def T_A(self):
        return self.mu_aa / (3 * self.mu**2)

    @property
    def K_P(self):
        return self.eta**3

    @property
    def T_P(self):
        return self.eta_r


class _Series:
    """Truncated power series with mpmath coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = list(coeffs)

    @property
    def n(self):
        return len(self.c)

    def _lift(self, other):
        if isinstance(other, _Series):
            return other
        return _Series([other] + [0] * (self.n - 1))

    def __add__(self, other):
        o = self._lift(other)
        m = min(self.n, o.n)
        return _Series([self.c[i] + o.c[i] for i in range(m)])

    __radd__ = __add__

    def __neg__(self):
        return _Series([-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, _Series):
            return _Series([a * other for a in self.c])
        m = min(self.n, other.n)
        return _Series([sum(self.c[i] * other.c[k - i] for i in range(k + 1)) for k in range(m)])

    __rmul__ = __mul__

    def inverse(self):
        a0 = self.c[0]
        if a0 == 0:
            raise ChainUndefined("division by a series vanishing at the point")
        out = [1 / a0]
        for k in range(1, self.n):
            out.append(-sum(self.c[i] * out[k - i] for i in range(1, k + 1)) / a0)
        return _Series(out)

    def __truediv__(self, other):
        if not isinstance(other, _Series):
            return _Series([a / other for a in self.c])
        return self * other.inverse()

    def power(self, r: Fraction):
        """Real power; odd-denominator exponents of negative series use real roots."""
        a0 = self.c[0]
        if a0 == 0:
            raise ChainUndefined("fractional power of a series vanishing at the point")
        sign = 1
        if a0 < 0:
            if r.denominator % 2 == 0:
                raise ChainUndefined("even root of a negative quantity")
            sign = -1 if r.numerator % 2 else 1
            a0 = -a0
            base = _Series([-a for a in self.c])
        else:
            base = self
        u = base / a0  # 1 + higher terms
        u.c[0] = mpmath.mpf(0)
        rr = mpmath.mpf(r.numerator) / r.denominator
        out = _Series([1] + [0] * (self.n - 1))
        term = _Series([1] + [0] * (self.n - 1))
        coeff = mpmath.mpf(1)
        for k in range(1, self.n):
            term = term * u
            coeff = coeff * (rr - k + 1) / k
            out = out + term * coeff
        return out * (sign * mpmath.power(a0, rr))

    def deriv(self):
        return _Series([k * self.c[k] for k in range(1, self.n)])

    def value(self):
        return self.c[0]


def _taylor(f: RationalFunction, var: str, t0: Fraction, n: int) -> _Series:
    h = RF.var("_h")
    shifted = f.compose({var: h + t0})
    num = _poly_series(shifted.num, n)
    den = _poly_series(shifted.den, n)
    return num / den


def _poly_series(p: Poly, n: int) -> _Series:
    cs = p.coefficients_in("_h")
    return _Series([mpmath.mpf(cs[k].constant_value().numerator) / cs[k].constant_value().denominator
                    if k in cs else mpmath.mpf(0) for k in range(n)])


def numeric_chain(curve: PlanarParametricCurve, t0, dps: int = 50, projective: bool = True,
                  terms: int = 14) -> NumericChainPoint:
    """Euclidean -> affine -> projective curvature chain at a curve point.

    Arc-length derivatives are taken on truncated Taylor series in the curve
    parameter.  When the curvature is negative the curve is reflected so that
    the real branch with positive curvature is used.
    """
    if not isinstance(curve, PlanarParametricCurve):
        raise TypeError("the numeric chain needs a parametrized curve")
    t0 = Fraction(t0)
    with mpmath.workdps(dps + 20):
        x = _taylor(curve.x, curve.param, t0, terms)
        y = _taylor(curve.y, curve.param, t0, terms)
        xd, yd = x.deriv(), y.deriv()
        xdd, ydd = xd.deriv(), yd.deriv()
        speed2 = xd * xd + yd * yd
        kappa = (ydd * xd - xdd * yd) / speed2.power(Fraction(3, 2))
        reflected = False
        if kappa.value() < 0:
            kappa = -kappa
            reflected = True
        elif kappa.value() == 0:
            raise ChainUndefined("curvature vanishes at the point")
        ds = speed2.power(Fraction(-1, 2))

        def d_s(f):
            return f.deriv() * ds

        k_s = d_s(kappa)
        k_ss = d_s(k_s)
        mu = (3 * kappa * (k_ss + 3 * kappa * kappa * kappa) - 5 * k_s * k_s) / (9 * kappa.power(Fraction(8, 3)))
        da = kappa.power(Fraction(-1, 3))

        def d_a(f):
            return d_s(f) * da

        mu_a = d_a(mu)
        mu_aa = d_a(mu_a)
        out = dict(kappa=kappa.value(), kappa_s=k_s.value(), kappa_ss=k_ss.value(),
                   mu=mu.value(), mu_a=mu_a.value(), mu_aa=mu_aa.value(), reflected=reflected)
        if projective:
            if mu_a.value() == 0:
                raise ChainUndefined("affine curvature derivative vanishes at the point")
            mu_aaa = d_a(mu_aa)
            eta = (6 * mu_aaa * mu_a - 7 * mu_aa * mu_aa - 9 * mu_a * mu_a * mu) / (6 * mu_a.power(Fraction(8, 3)))
            dr = mu_a.power(Fraction(-1, 3))
            eta_r = d_a(eta) * dr
            out.update(mu_aaa=mu_aaa.value(), eta=eta.value(), eta_r=eta_r.value())
        return NumericChainPoint(**{k: (+v if not isinstance(v, bool) else v) for k, v in out.items()})
