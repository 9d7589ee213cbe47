"""Reduced quotients of polynomials over Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

import mpmath

from ..errors import DegenerateInput
from .poly import Poly

Scalar = Union[int, Fraction]


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return num, Poly.const(1)
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_constant():
            num = num.exquo(g)
            den = den.exquo(g)
    # primitive integral denominator, positive leading coefficient
    scale = den.content()
    if den.leading_coefficient() < 0:
        scale = -scale
    if scale != 1:
        num = num / scale
        den = den / scale
    return num.trim(), den.trim()


class RationalFunction:
    """Canonical num/den: coprime, denominator primitive over Z with positive lead."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduce: bool = True):
        num = Poly.coerce(num)
        den = Poly.const(1) if den is None else Poly.coerce(den)
        if reduce:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        return cls(Poly.coerce(value))

    @classmethod
    def var(cls, name: str) -> "RationalFunction":
        return cls(Poly.var(name), reduce=False)

    @classmethod
    def const(cls, value: Scalar) -> "RationalFunction":
        return cls(Poly.const(value))

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = RationalFunction.coerce(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.num * other, self.den)
        other = RationalFunction.coerce(other)
        # cross-cancel first to keep intermediate sizes down
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        return RationalFunction(
            self.num.exquo(g1) * other.num.exquo(g2),
            self.den.exquo(g2) * other.den.exquo(g1),
        )

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError
            return RationalFunction(self.num, self.den * other)
        return self * RationalFunction.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num**n, self.den**n, reduce=False)

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunction.coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num.constant_value() / self.den.constant_value()

    @property
    def symbols(self) -> tuple[str, ...]:
        from .poly import sort_symbols

        return sort_symbols(self.num.symbols + self.den.symbols)

    def involves(self, var: str) -> bool:
        return self.num.involves(var) or self.den.involves(var)

    # -- calculus and substitution ------------------------------------------------

    def diff(self, var: str) -> "RationalFunction":
        dn = self.num.diff(var)
        dd = self.den.diff(var)
        if dd.is_zero():
            return RationalFunction(dn, self.den)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def subs(self, values: Mapping[str, Scalar]) -> "RationalFunction":
        den = self.den.subs(values)
        if den.is_zero():
            raise DegenerateInput("denominator vanishes under substitution")
        return RationalFunction(self.num.subs(values), den)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise DegenerateInput("denominator vanishes at the evaluation point")
        return self.num.evaluate(point) / d

    def compose(self, mapping: Mapping[str, "RationalFunction"]) -> "RationalFunction":
        """Substitute rational functions for variables."""
        return compose_poly(self.num, mapping) / compose_poly(self.den, mapping)

    def eval_float(self, point: Mapping[str, object]):
        """Evaluate at (possibly mpmath) numeric values."""
        return eval_poly_numeric(self.num, point) / eval_poly_numeric(self.den, point)

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        n = str(self.num)
        if len(self.num) > 1:
            n = f"({n})"
        d = str(self.den)
        if len(self.den) > 1 or self.den.leading_coefficient() != 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RationalFunction({self})"


def compose_poly(p: Poly, mapping: Mapping[str, RationalFunction]) -> RationalFunction:
    """p(mapping) as a rational function."""
    used = [g for g in p.symbols if g in mapping]
    if not used:
        return RationalFunction(p)
    images = {g: RationalFunction.coerce(mapping[g]) for g in used}
    if all(images[g].den == 1 for g in used):
        return RationalFunction(p.compose({g: images[g].num for g in used}))
    # clear each variable's denominator to the power of its degree in p
    common = Poly.const(1)
    for g in used:
        common = common * images[g].den ** p.degree(g)
    total = Poly.const(0)
    for exps, c in p.terms():
        term = Poly.const(c)
        for g, e in zip(p.gens, exps):
            if g in images:
                term = term * images[g].num**e * images[g].den ** (p.degree(g) - e)
            elif e:
                term = term * Poly.var(g) ** e
        total = total + term
    return RationalFunction(total, common)


def _mpnum(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return v


def eval_poly_numeric(p: Poly, point: Mapping[str, object]):
    gens, terms = p.numeric_terms()
    vals = [_mpnum(point[g]) for g in gens]
    powers = []
    for i, v in enumerate(vals):
        top = max((e[i] for e, _c in terms), default=0)
        pw = [mpmath.mpf(1)]
        for _ in range(top):
            pw.append(pw[-1] * v)
        powers.append(pw)
    acc = mpmath.mpf(0)
    for exps, c in terms:
        term = c
        for pw, e in zip(powers, exps):
            if e:
                term = term * pw[e]
        acc = acc + term
    return acc


def rf_from(value) -> RationalFunction:
    return RationalFunction.coerce(value)


def lcm_all(polys: Iterable[Poly]) -> Poly:
    out = Poly.const(1)
    for p in polys:
        out = (out * p).exquo(out.gcd(p))
    return out
